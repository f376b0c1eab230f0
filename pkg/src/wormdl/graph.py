"""Destination-labeled channel dependency graphs.

Vertices ``0..C-1`` are channels and ``C..C+S-1`` are sinks. An edge
``(c, v)`` carries the set of destinations for which a message sitting in
channel ``c`` may be routed to ``v``. Destinations are sink identifiers.
"""

from __future__ import annotations

import random
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs and out-of-domain arguments."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class RoutingGraph:
    """Immutable labeled dependency graph.

    ``edges`` maps ``(src, dst)`` to a non-empty collection of destination
    labels. The constructor validates every invariant and raises
    :class:`GraphError` on the first violation.
    """

    __slots__ = ("num_channels", "num_sinks", "edges", "_nbrs", "_dests")

    def __init__(
        self,
        num_channels: int,
        num_sinks: int,
        edges: Mapping[tuple[int, int], Iterable[int]] | None = None,
    ):
        frozen = {
            (int(s), int(t)): frozenset(int(d) for d in labels)
            for (s, t), labels in (edges or {}).items()
        }
        validate(num_channels, num_sinks, frozen)
        object.__setattr__(self, "num_channels", num_channels)
        object.__setattr__(self, "num_sinks", num_sinks)
        object.__setattr__(self, "edges", dict(sorted(frozen.items())))

        nbrs: list[dict[int, list[int]]] = [{} for _ in range(num_channels)]
        for (s, t), labels in self.edges.items():
            for d in labels:
                nbrs[s].setdefault(d, []).append(t)
        # edges are sorted by (src, dst), so each neighbor list is ascending
        object.__setattr__(
            self,
            "_nbrs",
            [{d: tuple(vs) for d, vs in sorted(row.items())} for row in nbrs],
        )
        object.__setattr__(self, "_dests", [tuple(row) for row in self._nbrs])

    def __setattr__(self, name, value):
        raise AttributeError("RoutingGraph is immutable")

    def __eq__(self, other):
        if not isinstance(other, RoutingGraph):
            return NotImplemented
        return (
            self.num_channels == other.num_channels
            and self.num_sinks == other.num_sinks
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.num_channels, self.num_sinks, tuple(self.edges.items())))

    def __repr__(self):
        return (
            f"RoutingGraph(num_channels={self.num_channels}, "
            f"num_sinks={self.num_sinks}, edges={len(self.edges)})"
        )

    @property
    def channels(self) -> range:
        return range(self.num_channels)

    @property
    def sinks(self) -> range:
        return range(self.num_channels, self.num_channels + self.num_sinks)

    @property
    def num_vertices(self) -> int:
        return self.num_channels + self.num_sinks

    def is_channel(self, v: int) -> bool:
        return 0 <= v < self.num_channels

    def is_sink(self, v: int) -> bool:
        return self.num_channels <= v < self.num_vertices

    def num_labels(self) -> int:
        """Total number of (edge, destination) pairs."""
        return sum(len(labels) for labels in self.edges.values())

    # Unchecked fast paths used by the analysis modules.
    def _neighbors(self, c: int, d: int) -> tuple[int, ...]:
        return self._nbrs[c].get(d, ())

    def _routes(self, c: int) -> dict[int, tuple[int, ...]]:
        return self._nbrs[c]


def validate(num_channels: int, num_sinks: int, edges: Mapping[tuple[int, int], frozenset]) -> None:
    """Check the graph invariants, raising :class:`GraphError` on violation."""
    if num_channels < 0:
        raise GraphError(f"negative channel count {num_channels}")
    if num_sinks < 0:
        raise GraphError(f"negative sink count {num_sinks}")
    if edges and num_sinks < 1:
        raise GraphError("a graph with edges needs at least one sink")
    nv = num_channels + num_sinks
    for (s, t), labels in edges.items():
        if not 0 <= s < num_channels:
            if num_channels <= s < nv:
                raise GraphError(f"sink {s} has an outgoing edge to {t}")
            raise GraphError(f"edge source {s} is not a channel")
        if not 0 <= t < nv:
            raise GraphError(f"edge target {t} of edge ({s}, {t}) is not a vertex")
        if s == t:
            raise GraphError(f"self-loop on channel {s}")
        if not labels:
            raise GraphError(f"edge ({s}, {t}) has no destination labels")
        for d in labels:
            if not num_channels <= d < nv:
                raise GraphError(f"label {d} on edge ({s}, {t}) is not a sink")


def _check_channel(g: RoutingGraph, c: int) -> None:
    if not g.is_channel(c):
        raise GraphError(f"{c} is not a channel (C={g.num_channels})")


def _check_dest(g: RoutingGraph, d: int) -> None:
    if not g.is_sink(d):
        raise GraphError(f"{d} is not a destination")


def neighbors(g: RoutingGraph, c: int, d: int) -> tuple[int, ...]:
    """Next hops of channel ``c`` for destination ``d``, ascending."""
    _check_channel(g, c)
    _check_dest(g, d)
    return g._neighbors(c, d)


def defined_destinations(g: RoutingGraph, c: int) -> tuple[int, ...]:
    """Destinations for which channel ``c`` has at least one next hop."""
    _check_channel(g, c)
    return g._dests[c]


def is_d_path(g: RoutingGraph, p: Sequence[int], d: int) -> bool:
    """True iff ``p`` is a simple sequence of channels following ``d``-edges."""
    if not g.is_sink(d) or len(p) == 0:
        return False
    seen = set()
    for i, c in enumerate(p):
        if not isinstance(c, int) or not g.is_channel(c) or c in seen:
            return False
        seen.add(c)
        if i and c not in g._neighbors(p[i - 1], d):
            return False
    return True


def enumerate_simple_d_paths(g: RoutingGraph, d: int, start: int, max_len: int) -> list[tuple[int, ...]]:
    """All simple ``d``-paths from ``start`` of length at most ``max_len``.

    Paths come out in lexicographic order of their channel sequences.
    """
    _check_channel(g, start)
    _check_dest(g, d)
    if max_len < 1:
        raise GraphError(f"max_len must be at least 1, got {max_len}")
    out: list[tuple[int, ...]] = []
    path = [start]
    on_path = {start}

    def walk():
        out.append(tuple(path))
        if len(path) == max_len:
            return
        for v in g._neighbors(path[-1], d):
            if v < g.num_channels and v not in on_path:
                path.append(v)
                on_path.add(v)
                walk()
                on_path.remove(v)
                path.pop()

    walk()
    return out


# -- text format -----------------------------------------------------------

def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_graph(text: str) -> RoutingGraph:
    """Parse the line-oriented graph format.

    ::

        channels <C>
        sinks <S>
        edge <src> <dst> <d1>[,<d2>...]
    """
    header: dict[str, int] = {}
    edges: dict[tuple[int, int], set[int]] = {}
    edge_lines: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        key = words[0]
        if key in ("channels", "sinks"):
            expected = "channels" if not header else "sinks"
            if len(header) >= 2 or key != expected:
                raise GraphError(f"unexpected {key!r} declaration", lineno)
            if len(words) != 2:
                raise GraphError(f"'{key}' takes exactly one count", lineno)
            (header[key],) = _ints(words[1:], lineno)
        elif key == "edge":
            if len(header) < 2:
                raise GraphError("edge before 'channels'/'sinks' header", lineno)
            if len(words) != 4:
                raise GraphError("expected 'edge <src> <dst> <labels>'", lineno)
            src, dst = _ints(words[1:3], lineno)
            labels = _ints([t for t in words[3].split(",")], lineno)
            edges.setdefault((src, dst), set()).update(labels)
            edge_lines.setdefault((src, dst), lineno)
        else:
            raise GraphError(f"unknown directive {key!r}", lineno)
    if len(header) < 2:
        raise GraphError("missing 'channels'/'sinks' header")
    try:
        return RoutingGraph(header["channels"], header["sinks"], edges)
    except GraphError as exc:
        # point at the offending edge when there is one
        for (s, t), lineno in edge_lines.items():
            try:
                validate(header["channels"], header["sinks"], {(s, t): frozenset(edges[s, t])})
            except GraphError:
                raise GraphError(str(exc), lineno) from None
        raise


def serialize_graph(g: RoutingGraph) -> str:
    """Canonical text: edges sorted by ``(src, dst)``, labels ascending."""
    lines = [f"channels {g.num_channels}", f"sinks {g.num_sinks}"]
    for (s, t), labels in g.edges.items():
        lines.append(f"edge {s} {t} {','.join(map(str, sorted(labels)))}")
    return "\n".join(lines) + "\n"


def to_dot(g: RoutingGraph, marks: Sequence[int] | None = None, name: str = "routing") -> str:
    """Graphviz rendering; parallel labels on one edge are comma-joined."""
    lines = [f"digraph {name} {{"]
    for c in g.channels:
        label = f"{c}" if marks is None else f"{c}:{marks[c]}"
        lines.append(f'  {c} [shape=circle, label="{label}"];')
    for s in g.sinks:
        lines.append(f'  {s} [shape=doublecircle, label="{s}"];')
    for (s, t), labels in g.edges.items():
        lines.append(f'  {s} -> {t} [label="{",".join(map(str, sorted(labels)))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- generation ------------------------------------------------------------

def random_graph(num_channels: int, num_sinks: int, edge_density: float, seed: int) -> RoutingGraph:
    """Seeded random graph in which every channel routes somewhere.

    Each channel gets an edge to every other vertex independently with
    probability ``edge_density``. Edges into sink ``s`` carry only label
    ``s``; channel-to-channel edges carry one uniform label plus each other
    destination with probability 0.3. A channel that drew no edge gets one
    to a uniformly chosen vertex.
    """
    if num_channels < 1 or num_sinks < 1:
        raise GraphError(f"need C >= 1 and S >= 1, got C={num_channels}, S={num_sinks}")
    if not 0 < edge_density <= 1:
        raise GraphError(f"edge density must lie in (0, 1], got {edge_density}")
    rng = random.Random(seed)
    nv = num_channels + num_sinks
    dests = list(range(num_channels, nv))
    edges: dict[tuple[int, int], set[int]] = {}

    def labels_for(t):
        if t >= num_channels:
            return {t}
        first = rng.choice(dests)
        return {first} | {d for d in dests if d != first and rng.random() < 0.3}

    for c in range(num_channels):
        targets = [t for t in range(nv) if t != c and rng.random() < edge_density]
        if not targets:
            targets = [rng.choice([t for t in range(nv) if t != c])]
        for t in targets:
            edges[c, t] = labels_for(t)
    return RoutingGraph(num_channels, num_sinks, edges)
