"""Deadlock witnesses: sets of paths in which no head can escape.

A witness is checked against the graph alone, so a report can be validated
without trusting the marking that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import marking as _marking
from .graph import RoutingGraph, is_d_path


@dataclass(frozen=True)
class WitnessSet:
    paths: tuple[tuple[int, ...], ...]
    dests: tuple[int, ...]
    union: tuple[int, ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Sequence[int], int]]) -> "WitnessSet":
        pairs = [(tuple(p), d) for p, d in pairs]
        paths = tuple(p for p, _ in pairs)
        return cls(paths, tuple(d for _, d in pairs), union_of(paths))

    def pairs(self) -> list[tuple[tuple[int, ...], int]]:
        return list(zip(self.paths, self.dests))

    def __len__(self):
        return len(self.paths)


def find_member_not_in(xs: Iterable[int], ys: Iterable[int]) -> int | None:
    """Smallest element of ``xs`` missing from ``ys``, or None."""
    ys = set(ys)
    missing = [x for x in xs if x not in ys]
    return min(missing) if missing else None


def union_of(paths: Iterable[Sequence[int]]) -> tuple[int, ...]:
    return tuple(sorted({c for p in paths for c in p}))


def build_witness(g: RoutingGraph, store: "_marking.MarkStore") -> WitnessSet:
    """Collect a path for every 3- and 4-marked channel.

    3-marked channels come first, in ascending order, each as a singleton
    path paired with its smallest blocked destination. Then every 4-marked
    channel, ascending, contributes its shortest path to a blocked channel.
    """
    threes = store.channels_marked(3)
    fours = store.channels_marked(4)
    if not threes and not fours:
        raise ValueError("no 3- or 4-marked channel: nothing to witness")
    pairs = []
    for c in threes:
        d = find_member_not_in(store.deps[c], store.escs[c])
        if d is None:
            raise AssertionError(f"3-marked channel {c} has deps within escs")
        pairs.append(((c,), d))
    for c in fours:
        found = _marking.find_d_path_to_blocked(g, c, threes, store.escs, store.deps)
        if found is None:
            raise AssertionError(f"4-marked channel {c} has no path to a 3-marked channel")
        pairs.append(found)
    return WitnessSet.from_pairs(pairs)


def check_witness(g: RoutingGraph, w: WitnessSet) -> bool:
    """True iff ``w`` is a non-empty set of paths without an escape.

    Each path must be a ``d``-path whose head has at least one next hop for
    ``d``, and every such next hop must lie on some path of the set.
    """
    try:
        if len(w.paths) == 0 or len(w.paths) != len(w.dests):
            return False
        union = set(union_of(w.paths))
        if set(w.union) != union:
            return False
        for p, d in zip(w.paths, w.dests):
            if not is_d_path(g, p, d):
                return False
            nxt = g._neighbors(p[-1], d)
            if not nxt or not union.issuperset(nxt):
                return False
        return True
    except (TypeError, IndexError):
        return False


def format_witness(w: WitnessSet) -> str:
    return "".join(f"path d={d} : {' '.join(map(str, p))}\n" for p, d in w.pairs())


def parse_witness(text: str) -> WitnessSet:
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        head, sep, body = line.partition(":")
        words = head.split()
        if not sep or len(words) != 2 or words[0] != "path" or not words[1].startswith("d="):
            raise ValueError(f"line {lineno}: expected 'path d=<dest> : <channels>'")
        pairs.append((tuple(int(c) for c in body.split()), int(words[1][2:])))
    return WitnessSet.from_pairs(pairs)
