import itertools

import pytest

from wormdl import (
    MarkStore,
    RoutingGraph,
    Verdict,
    check_invariant_3marks,
    check_invariant_4marks,
    compute_escs_deps,
    find_d_path_to_blocked,
    refine_three_set,
    run_algorithm,
)
from wormdl.fixtures import C0, C1, C2, D0, D1, S0, S1, S2
from wormdl.marking import is_consistent_marking, store_from_marks

from .conftest import corpus


def test_ex1_final_marks(g_ex1):
    r = run_algorithm(g_ex1)
    assert r.verdict is Verdict.DEADLOCK
    assert r.store.marks == [4, 3, 3, 2, 2, 2]
    assert r.witness is not None
    assert r.rounds <= g_ex1.num_channels + 1


def test_ring3e_deadlock_free(g_ring3e):
    r = run_algorithm(g_ring3e)
    assert r.verdict is Verdict.DEADLOCK_FREE
    assert r.store.marks == [2, 2, 2]
    assert r.witness is None
    assert r.deadlock_free


def test_ring3_all_three(g_ring3):
    r = run_algorithm(g_ring3)
    assert r.verdict is Verdict.DEADLOCK
    assert r.store.marks == [3, 3, 3]


def test_empty_graph_is_deadlock_free():
    r = run_algorithm(RoutingGraph(0, 1))
    assert r.verdict is Verdict.DEADLOCK_FREE and r.rounds == 1


def test_refine_three_set_ex1(g_ex1):
    # with every channel suspect, c0's only d0 hop (s2) is suspect too
    assert refine_three_set(g_ex1, set(g_ex1.channels)) == {C0, C1, C2}
    # once the delivery channels are cleared, c0 has escapes for both d0 and d1
    assert refine_three_set(g_ex1, {C0, C1, C2}) == {C1, C2}


def test_refine_three_set_edge_cases(g_ex1, g_ring3):
    assert refine_three_set(g_ex1, set()) == set()
    assert refine_three_set(g_ring3, {0, 1, 2}) == {0, 1, 2}
    assert refine_three_set(g_ring3, {0, 1}) == {2, 0}


def test_compute_escs_deps_ex1(g_ex1):
    escs, deps = compute_escs_deps(g_ex1, {S0, S1, S2})
    assert (escs[C0], deps[C0]) == ([D0, D1], [D1])
    assert (escs[C1], deps[C1]) == ([], [D1])
    assert (escs[C2], deps[C2]) == ([D1], [D0, D1])


def test_compute_escs_deps_edge_cases(g_ex1):
    _, deps = compute_escs_deps(g_ex1, set(g_ex1.channels))
    assert all(d == [] for d in deps)
    g = RoutingGraph(2, 1, {(0, 2): {2}})
    escs, deps = compute_escs_deps(g, set())
    assert escs[1] == deps[1] == []
    assert escs[0] == [2] and deps[0] == []


def test_find_d_path_to_blocked_ex1(g_ex1):
    store = run_algorithm(g_ex1).store
    assert find_d_path_to_blocked(g_ex1, C0, {C1, C2}, store.escs, store.deps) == ((C0, C1), D1)
    assert find_d_path_to_blocked(g_ex1, C0, set(), store.escs, store.deps) is None
    # zero-hop: c2 is itself blocked for d0
    assert find_d_path_to_blocked(g_ex1, C2, {C1, C2}, store.escs, store.deps) == ((C2,), D0)
    assert find_d_path_to_blocked(g_ex1, S0, {C1, C2}, store.escs, store.deps) is None


def test_find_d_path_prefers_smaller_destination_then_shorter_path():
    # channel 0 reaches blocked channel 3 for d=6 in two hops and blocked
    # channel 1 for d=5 in three hops; d=5 wins because it is smaller
    g = RoutingGraph(
        5,
        2,
        {
            (0, 2): {5, 6},
            (2, 3): {6},
            (2, 4): {5},
            (4, 1): {5},
            (1, 4): {5},
            (3, 2): {6},
        },
    )
    marks = [2, 3, 2, 3, 2]
    store = store_from_marks(g, [4 if m == 2 else m for m in marks])
    path, d = find_d_path_to_blocked(g, 0, {1, 3}, store.escs, store.deps)
    assert d == 5 and path == (0, 2, 4, 1)


def test_find_d_path_breaks_ties_by_channel_id():
    # two shortest d-paths 0->1->3 and 0->2->3; ascending expansion takes 1
    g = RoutingGraph(4, 1, {(0, 2): {4}, (0, 1): {4}, (1, 3): {4}, (2, 3): {4}, (3, 0): {4}})
    store = store_from_marks(g, [4, 4, 4, 3])
    assert find_d_path_to_blocked(g, 0, {3}, store.escs, store.deps) == ((0, 1, 3), 4)


def test_invariant_3marks(g_ex1):
    store = run_algorithm(g_ex1).store
    assert check_invariant_3marks(g_ex1, store)
    assert check_invariant_3marks(g_ex1, MarkStore([2] * 6, [[]] * 6, [[]] * 6))
    bad = store.copy()
    bad.escs[C1] = [D1]
    assert not check_invariant_3marks(g_ex1, bad)


def test_invariant_4marks(g_ex1):
    store = run_algorithm(g_ex1).store
    assert check_invariant_4marks(g_ex1, store)
    assert check_invariant_4marks(g_ex1, store_from_marks(g_ex1, [3, 3, 3, 2, 2, 2]))
    bad = store.copy()
    bad.marks[C1] = bad.marks[C2] = 2
    assert not check_invariant_4marks(g_ex1, bad)


def _final_store_consistent(g, store):
    two = {c for c in g.channels if store.marks[c] == 2}
    escs, deps = compute_escs_deps(g, two)
    assert (store.escs, store.deps) == (escs, deps)
    for c in g.channels:
        for d, vs in g._routes(c).items():
            assert (d in store.escs[c]) == any(g.is_sink(v) or v in two for v in vs)
            assert (d in store.deps[c]) == any(g.is_channel(v) and v not in two for v in vs)
        if store.marks[c] == 3:
            assert not set(store.deps[c]) <= set(store.escs[c])
    assert is_consistent_marking(g, store.marks)


def test_corpus_properties():
    for g in corpus():
        r = run_algorithm(g)
        store = r.store
        assert set(store.marks) <= {2, 3, 4}
        assert r.rounds <= g.num_channels + 1
        assert (r.verdict is Verdict.DEADLOCK_FREE) == all(m == 2 for m in store.marks)
        assert (r.verdict is Verdict.DEADLOCK_FREE) == (r.witness is None)
        assert check_invariant_3marks(g, store)
        assert check_invariant_4marks(g, store)
        _final_store_consistent(g, store)


def test_determinism():
    for g in corpus()[:100]:
        a, b = run_algorithm(g), run_algorithm(g)
        assert a == b


def _brute_force_maximal(g):
    consistent = []
    for marks in itertools.product((2, 3, 4), repeat=g.num_channels):
        if is_consistent_marking(g, marks):
            consistent.append(frozenset(c for c, m in enumerate(marks) if m != 2))
    maximal = [s for s in consistent if not any(s < t for t in consistent)]
    return consistent, maximal


def test_two_cycle_with_escape_has_two_fixpoints():
    # c0 <-> c1 for d=2 and c0 may also deliver: both all-2 and {3,4}
    # satisfy the local rules; only the larger one is reported
    g = RoutingGraph(2, 1, {(0, 1): {2}, (1, 0): {2}, (0, 2): {2}})
    consistent, maximal = _brute_force_maximal(g)
    assert frozenset() in consistent
    assert maximal == [frozenset({0, 1})]
    r = run_algorithm(g)
    assert r.store.marks == [4, 3]


def test_maximality_small_corpus():
    graphs = [g for g in corpus() if g.num_channels <= 5][:60]
    for g in graphs:
        _, maximal = _brute_force_maximal(g)
        assert len(maximal) == 1
        assert run_algorithm(g).suspect == maximal[0]


@pytest.mark.parametrize("n", [1, 10, 50])
def test_chain_takes_many_rounds(n):
    # a line of channels each with one escape-free hop onward, the last
    # delivers: every channel clears, one per round from the far end
    edges = {(c, c + 1): {n + 1} for c in range(n)}
    edges[n, n + 1] = {n + 1}
    g = RoutingGraph(n + 1, 1, edges)
    r = run_algorithm(g)
    assert r.verdict is Verdict.DEADLOCK_FREE
    assert r.rounds <= g.num_channels + 1
