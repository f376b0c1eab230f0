"""Channel marking: which channels are immune to deadlock.

Marks after analysis:

* 2 -- immune, no flit in the channel can be blocked forever;
* 3 -- a header flit for some destination can be blocked forever;
* 4 -- only tail flits can be blocked forever, because the channel starts a
  path that ends in a blockable header.

The suspect set (channels not marked 2) is computed as a greatest
fixpoint: start with every channel suspect and shrink until stable.
"""

from __future__ import annotations

import copy
import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Collection, Iterable, Optional, Sequence

from . import witness as _witness
from .graph import RoutingGraph


class Verdict(str, enum.Enum):
    DEADLOCK_FREE = "deadlock-free"
    DEADLOCK = "deadlock"

    def __str__(self):
        return self.value


@dataclass
class MarkStore:
    """Per-channel marks with their escape/dependency destination lists.

    ``escs[c]`` holds the destinations for which ``c`` has a sink or
    2-marked next hop, ``deps[c]`` those with a next hop that is a channel
    not marked 2. Both are ascending.
    """

    marks: list[int]
    escs: list[list[int]]
    deps: list[list[int]]

    @classmethod
    def unmarked(cls, num_channels: int) -> "MarkStore":
        return cls([0] * num_channels, [[] for _ in range(num_channels)], [[] for _ in range(num_channels)])

    def channels_marked(self, mark: int) -> list[int]:
        return [c for c, m in enumerate(self.marks) if m == mark]

    def copy(self) -> "MarkStore":
        return copy.deepcopy(self)


@dataclass
class AnalysisReport:
    verdict: Verdict
    store: MarkStore
    witness: Optional["_witness.WitnessSet"] = None
    rounds: int = 0
    suspect: frozenset = field(default_factory=frozenset)

    @property
    def deadlock_free(self) -> bool:
        return self.verdict is Verdict.DEADLOCK_FREE


def refine_three_set(g: RoutingGraph, suspect: Collection[int]) -> set[int]:
    """Channels with a destination whose every next hop is a suspect channel."""
    suspect = set(suspect)
    return {c for c in g.channels if _blocked_dests(g, c, suspect)}


def _blocked_dests(g: RoutingGraph, c: int, suspect: Collection[int]) -> list[int]:
    # destinations d for which all of neighbors(c, d) are suspect channels
    n = g.num_channels
    return [d for d, vs in g._routes(c).items() if all(v < n and v in suspect for v in vs)]


def compute_escs_deps(g: RoutingGraph, two_set: Collection[int]) -> tuple[list[list[int]], list[list[int]]]:
    """Escape and dependency destination lists for every channel.

    Sinks always count as escapes; channels escape iff they are in
    ``two_set``.
    """
    two_set = set(two_set)
    escs, deps = [], []
    for c in g.channels:
        e, p = [], []
        for d, vs in g._routes(c).items():
            if any(g.is_sink(v) or v in two_set for v in vs):
                e.append(d)
            if any(g.is_channel(v) and v not in two_set for v in vs):
                p.append(d)
        escs.append(e)
        deps.append(p)
    return escs, deps


def find_d_path_to_blocked(
    g: RoutingGraph,
    c: int,
    three_set: Collection[int],
    escs: Sequence[Sequence[int]],
    deps: Sequence[Sequence[int]],
) -> tuple[tuple[int, ...], int] | None:
    """Shortest path from ``c`` to a channel where its destination is stuck.

    A target is a channel ``e`` in ``three_set`` with ``d`` in
    ``deps[e]`` but not in ``escs[e]``. Destinations are tried in ascending
    order; within one destination a breadth-first search expands neighbors
    in ascending order and the first target reached wins.
    """
    targets: dict[int, set[int]] = {}
    for e in three_set:
        esc = set(escs[e])
        for d in deps[e]:
            if d not in esc:
                targets.setdefault(d, set()).add(e)
    for d in sorted(targets):
        path = _bfs_to(g, c, d, targets[d])
        if path is not None:
            return path, d
    return None


def _bfs_to(g: RoutingGraph, c: int, d: int, goal: Collection[int]) -> tuple[int, ...] | None:
    parent = {c: None}
    queue = deque([c])
    while queue:
        u = queue.popleft()
        if u in goal:
            path = []
            while u is not None:
                path.append(u)
                u = parent[u]
            return tuple(reversed(path))
        for v in g._neighbors(u, d):
            if v < g.num_channels and v not in parent:
                parent[v] = u
                queue.append(v)
    return None


def _reverse_channel_edges(g: RoutingGraph) -> dict[int, list[list[int]]]:
    rev = {d: [[] for _ in g.channels] for d in g.sinks}
    for (s, t), labels in g.edges.items():
        if g.is_channel(t):
            for d in labels:
                rev[d][t].append(s)
    return rev


def _reaching(rev: dict[int, list[list[int]]], blocked: dict[int, list[int]]) -> set[int]:
    """Channels with a ``d``-path into a channel blocked for ``d``, any ``d``."""
    found: set[int] = set()
    for d, starts in blocked.items():
        seen = set(starts)
        stack = list(starts)
        back = rev[d]
        while stack:
            v = stack.pop()
            for u in back[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        found |= seen
    return found


def greatest_suspect_set(g: RoutingGraph) -> tuple[set[int], set[int], int]:
    """Return ``(three_set, four_set, rounds)`` at the greatest fixpoint."""
    rev = _reverse_channel_edges(g)
    suspect = set(g.channels)
    rounds = 0
    while True:
        rounds += 1
        blocked: dict[int, list[int]] = {}
        three = set()
        # only suspect channels can stay suspect, the update is monotone
        for c in sorted(suspect):
            ds = _blocked_dests(g, c, suspect)
            if ds:
                three.add(c)
                for d in ds:
                    blocked.setdefault(d, []).append(c)
        four = _reaching(rev, blocked) - three
        new = three | four
        if new == suspect:
            return three, four, rounds
        suspect = new


def run_algorithm(g: RoutingGraph) -> AnalysisReport:
    """Mark every channel and decide deadlock freedom.

    On a deadlock verdict the report carries a witness: a non-empty set of
    paths in which no head can escape.
    """
    three, four, rounds = greatest_suspect_set(g)
    suspect = three | four
    marks = [3 if c in three else 4 if c in four else 2 for c in g.channels]
    escs, deps = compute_escs_deps(g, [c for c in g.channels if c not in suspect])
    store = MarkStore(marks, escs, deps)
    if not suspect:
        return AnalysisReport(Verdict.DEADLOCK_FREE, store, None, rounds, frozenset())
    w = _witness.build_witness(g, store)
    if not _witness.check_witness(g, w):
        raise AssertionError("constructed witness failed its check")
    return AnalysisReport(Verdict.DEADLOCK, store, w, rounds, frozenset(suspect))


def check_invariant_3marks(g: RoutingGraph, store: MarkStore) -> bool:
    """Every 3-marked channel has a dependency that is not an escape."""
    return all(
        not set(store.deps[c]) <= set(store.escs[c])
        for c, m in enumerate(store.marks)
        if m == 3
    )


def check_invariant_4marks(g: RoutingGraph, store: MarkStore) -> bool:
    """Every 4-marked channel starts a ``d``-path ending in a 3-marked channel."""
    threes = set(store.channels_marked(3))
    for c, m in enumerate(store.marks):
        if m != 4:
            continue
        if not any(_reaches(g, c, d, threes) for d in g.sinks):
            return False
    return True


def _reaches(g: RoutingGraph, c: int, d: int, goal: set[int]) -> bool:
    seen = {c}
    stack = [c]
    while stack:
        u = stack.pop()
        if u in goal:
            return True
        for v in g._neighbors(u, d):
            if g.is_channel(v) and v not in seen:
                seen.add(v)
                stack.append(v)
    return False


def is_consistent_marking(g: RoutingGraph, marks: Sequence[int]) -> bool:
    """Check a {2,3,4} labeling against the local marking rules.

    3 iff some destination has only non-2 channel next hops; otherwise 4
    iff a path reaches such a blocked destination; otherwise 2.
    """
    suspect = {c for c in g.channels if marks[c] != 2}
    three = {c for c in g.channels if _blocked_dests(g, c, suspect)}
    if three != {c for c in g.channels if marks[c] == 3}:
        return False
    escs, deps = compute_escs_deps(g, [c for c in g.channels if c not in suspect])
    for c in g.channels:
        if c in three:
            continue
        reach = find_d_path_to_blocked(g, c, three, escs, deps) is not None
        if reach != (marks[c] == 4):
            return False
    return True


def store_from_marks(g: RoutingGraph, marks: Iterable[int]) -> MarkStore:
    """Build a store with escs/deps derived from the given marks."""
    marks = list(marks)
    escs, deps = compute_escs_deps(g, [c for c in g.channels if marks[c] == 2])
    return MarkStore(marks, escs, deps)
