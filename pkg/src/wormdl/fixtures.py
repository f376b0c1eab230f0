"""Small reference graphs used by the tests, demos and CLI examples."""

from .graph import RoutingGraph, parse_graph

# Three-node ring n0 -> n1 -> n2 -> n0 with channels c0 (n0->n1),
# c1 (n1->n2), c2 (n2->n0), delivery channels s0..s2 and destinations
# d0, d1. Vertex ids: c0=0 c1=1 c2=2 s0=3 s1=4 s2=5 d0=6 d1=7.
#
#   n   d   next hops
#   n0  d0  c0
#   n0  d1  s0, c0
#   n1  d0  s2
#   n1  d1  s1, c1
#   n2  d0  c2
#   n2  d1  c2
#
# A channel gets an edge to every next hop of the node it enters; a
# delivery channel gets an edge to its destination's sink.
EX1_TEXT = """\
# three-node ring with two destinations
channels 6
sinks 2
edge 0 5 6
edge 0 4 7
edge 0 1 7
edge 1 2 7
edge 2 0 6,7
edge 2 3 7
edge 3 7 7
edge 4 7 7
edge 5 6 6
"""

C0, C1, C2, S0, S1, S2, D0, D1 = range(8)


def ex1() -> RoutingGraph:
    return parse_graph(EX1_TEXT)


def ring3() -> RoutingGraph:
    """Three channels in a cycle for destination 3; nothing reaches the sink."""
    return RoutingGraph(3, 1, {(0, 1): {3}, (1, 2): {3}, (2, 0): {3}})


def ring3e() -> RoutingGraph:
    """The same cycle, but every channel may also deliver to the sink."""
    edges = {(0, 1): {3}, (1, 2): {3}, (2, 0): {3}}
    edges.update({(c, 3): {3} for c in range(3)})
    return RoutingGraph(3, 1, edges)


def hub3() -> RoutingGraph:
    """A false deadlock: escape-free path sets exist, disjoint ones do not.

    Channel 0 routes only to channels 1 and 2; those route back to 0 or to
    the sink. A header stuck in 0 needs worms in 1 and 2 whose heads sit in
    0 as well, so every escape-free set uses channel 0 twice.
    """
    return RoutingGraph(
        3,
        1,
        {(0, 1): {3}, (0, 2): {3}, (1, 0): {3}, (1, 3): {3}, (2, 0): {3}, (2, 3): {3}},
    )
