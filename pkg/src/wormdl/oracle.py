"""Brute-force references for the marking algorithm.

``max_escape_free_set`` enumerates every simple d-path and prunes paths
whose head can escape until nothing changes. Closed path sets are closed
under union, so the survivors form the unique largest escape-free set and
the deletion order does not matter.

``exists_disjoint_deadlock`` decides the exact condition, where the paths
must also be pairwise channel-disjoint. Disjointness breaks the union
property, so this one is an exponential subset search meant for graphs
with a handful of channels.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .graph import RoutingGraph, enumerate_simple_d_paths, is_d_path
from .witness import WitnessSet, union_of

DEFAULT_MAX_PATHS = 200_000
DEFAULT_MAX_SUBSETS = 2_000_000

Pair = tuple[tuple[int, ...], int]


class OracleLimitError(RuntimeError):
    """The search space exceeded a configured cap."""


@dataclass
class OracleResult:
    escape_free_exists: bool
    max_closed_set: WitnessSet
    disjoint_deadlock: WitnessSet | None = None
    path_count: int = 0
    subsets_visited: int = 0


def all_d_paths(g: RoutingGraph, max_paths: int = DEFAULT_MAX_PATHS) -> list[Pair]:
    """Every simple d-path that can hold a d-message, sorted by (channels, d).

    Paths whose head has no next hop for ``d`` are left out: no d-message
    is ever routed into such a position.
    """
    out: list[Pair] = []
    for d in g.sinks:
        for c in g.channels:
            if not g._neighbors(c, d):
                continue
            for p in enumerate_simple_d_paths(g, d, c, g.num_channels):
                if g._neighbors(p[-1], d):
                    out.append((p, d))
                    if len(out) > max_paths:
                        raise OracleLimitError(f"more than {max_paths} simple d-paths")
    out.sort()
    return out


def is_escape_free(g: RoutingGraph, pairs: Sequence[Pair]) -> bool:
    """Closure test on a raw list of (path, destination) pairs."""
    if not pairs:
        return False
    union = {c for p, _ in pairs for c in p}
    for p, d in pairs:
        if not is_d_path(g, p, d):
            return False
        nxt = g._neighbors(p[-1], d)
        if not nxt or any(v not in union for v in nxt):
            return False
    return True


def prune_to_closed(g: RoutingGraph, pairs: Sequence[Pair], order: Sequence[int] | None = None) -> list[Pair]:
    """Delete escaping paths until the survivors are escape-free.

    ``order`` is a permutation of ``range(len(pairs))`` giving the order in
    which deletions are attempted. Survivors come back in input order.
    """
    n = len(pairs)
    count: dict[int, int] = {}
    for p, _ in pairs:
        for c in p:
            count[c] = count.get(c, 0) + 1
    # head requirements, and which paths watch each channel
    watchers: dict[int, list[int]] = {}
    escaping = [False] * n
    for i, (p, d) in enumerate(pairs):
        for v in g._neighbors(p[-1], d):
            if not g.is_channel(v):
                escaping[i] = True
            else:
                watchers.setdefault(v, []).append(i)
    alive = [True] * n
    queue = deque(range(n) if order is None else order)

    def escapes(i):
        p, d = pairs[i]
        return escaping[i] or any(count.get(v, 0) == 0 for v in g._neighbors(p[-1], d))

    while queue:
        i = queue.popleft()
        if not alive[i] or not escapes(i):
            continue
        alive[i] = False
        for c in pairs[i][0]:
            count[c] -= 1
            if count[c] == 0:
                queue.extend(j for j in watchers.get(c, ()) if alive[j])
    return [pair for pair, keep in zip(pairs, alive) if keep]


def max_escape_free_set(g: RoutingGraph, max_paths: int = DEFAULT_MAX_PATHS) -> WitnessSet:
    """The inclusion-maximal set of d-paths in which no head escapes."""
    return WitnessSet.from_pairs(prune_to_closed(g, all_d_paths(g, max_paths)))


def exists_escape_free_set(g: RoutingGraph, max_paths: int = DEFAULT_MAX_PATHS) -> bool:
    return len(max_escape_free_set(g, max_paths)) > 0


class _SubsetSearch:
    """Depth-first walk over disjoint path subsets in lexicographic order."""

    def __init__(self, g: RoutingGraph, universe: Sequence[Pair], max_subsets: int):
        self.g = g
        self.universe = list(universe)
        self.sets = [frozenset(p) for p, _ in self.universe]
        self.needs = [frozenset(g._neighbors(p[-1], d)) for p, d in self.universe]
        self.holders: dict[int, list[int]] = {}
        for i, s in enumerate(self.sets):
            for c in s:
                self.holders.setdefault(c, []).append(i)
        self.max_subsets = max_subsets
        self.visited = 0

    def _coverable(self, needed, used, after):
        for c in needed:
            if not any(j > after and not (self.sets[j] & used) for j in self.holders.get(c, ())):
                return False
        return True

    def solutions(self) -> Iterator[list[int]]:
        chosen: list[int] = []

        def walk(start, used, needed):
            for i in range(start, len(self.universe)):
                if self.sets[i] & used:
                    continue
                self.visited += 1
                if self.visited > self.max_subsets:
                    raise OracleLimitError(f"more than {self.max_subsets} subsets visited")
                chosen.append(i)
                now_used = used | self.sets[i]
                now_needed = (needed | self.needs[i]) - now_used
                if not now_needed:
                    yield list(chosen)
                if self._coverable(now_needed, now_used, i):
                    yield from walk(i + 1, now_used, now_needed)
                chosen.pop()

        yield from walk(0, frozenset(), frozenset())

    def to_witness(self, idx: Iterable[int]) -> WitnessSet:
        return WitnessSet.from_pairs(self.universe[i] for i in idx)


def _disjoint_search(g, max_paths, max_subsets):
    survivors = prune_to_closed(g, all_d_paths(g, max_paths))
    return _SubsetSearch(g, survivors, max_subsets), survivors


def exists_disjoint_deadlock(
    g: RoutingGraph,
    max_paths: int = DEFAULT_MAX_PATHS,
    max_subsets: int = DEFAULT_MAX_SUBSETS,
) -> WitnessSet | None:
    """First pairwise-disjoint escape-free path set, or None.

    Candidates are ordered by (channels, destination); subsets are visited
    in lexicographic order of their index sequences.
    """
    search, _ = _disjoint_search(g, max_paths, max_subsets)
    for idx in search.solutions():
        return search.to_witness(idx)
    return None


def all_disjoint_deadlocks(
    g: RoutingGraph,
    max_paths: int = DEFAULT_MAX_PATHS,
    max_subsets: int = DEFAULT_MAX_SUBSETS,
) -> list[WitnessSet]:
    """Every pairwise-disjoint escape-free path set, in search order."""
    search, _ = _disjoint_search(g, max_paths, max_subsets)
    return [search.to_witness(idx) for idx in search.solutions()]


def analyze(
    g: RoutingGraph,
    max_paths: int = DEFAULT_MAX_PATHS,
    max_subsets: int = DEFAULT_MAX_SUBSETS,
    disjoint: bool = True,
) -> OracleResult:
    """Run both oracles, sharing the path enumeration."""
    paths = all_d_paths(g, max_paths)
    survivors = prune_to_closed(g, paths)
    closed = WitnessSet.from_pairs(survivors)
    result = OracleResult(bool(survivors), closed, None, len(paths))
    if disjoint and survivors:
        search = _SubsetSearch(g, survivors, max_subsets)
        for idx in search.solutions():
            result.disjoint_deadlock = search.to_witness(idx)
            break
        result.subsets_visited = search.visited
    return result
