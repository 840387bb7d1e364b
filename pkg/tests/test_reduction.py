import json
import random

import pytest
from helpers import bounded_degree_graph, is_star_forest
from hypothesis import given, settings
from hypothesis import strategies as st

from kopt_pls import gadgets as gd
from kopt_pls.errors import DomainError, InfeasibleKError, ReductionError, UnsupportedDegreeError
from kopt_pls.matching import brute_force_matching_size
from kopt_pls.maxcut import MaxCutInstance
from kopt_pls.reduction import (
    Orientation,
    build_reduction,
    complete_instance,
    expected_counts,
    from_manifest,
    metricize,
    min_feasible_k,
    nonedge_weight,
    orientation_problems,
    partial_edge_orientation,
    to_manifest,
    triangle_inequality_holds,
)
from kopt_pls.tsp import Tour, TspInstance, enumerate_improving_k_swaps


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 40), st.integers(0, 10**9))
def test_orientation_properties(n, seed):
    H = bounded_degree_graph(random.Random(seed), n)
    o = partial_edge_orientation(H)
    assert orientation_problems(H, o) == []
    star = [H.edges[e][:2] for e in o.star_edges]
    assert is_star_forest(n, star)
    assert all(o.out_degree(v) <= 2 for v in range(n))
    assert sorted(list(o.star_edges) + [e for e, _, _ in o.directed]) == list(range(H.edge_count))
    for e, t, h in o.directed:
        assert {t, h} == set(H.edges[e][:2])


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 12), st.integers(0, 10**9))
def test_star_edges_contain_a_maximum_matching(n, seed):
    H = bounded_degree_graph(random.Random(seed), n)
    o = partial_edge_orientation(H)
    pairs = [e[:2] for e in H.edges]
    star_pairs = [pairs[e] for e in o.star_edges]
    assert brute_force_matching_size(n, star_pairs) == brute_force_matching_size(n, pairs)


def test_orientation_examples():
    o = partial_edge_orientation(MaxCutInstance(2, ((0, 1, 5),)))
    assert o.star_edges == (0,) and o.directed == ()
    o = partial_edge_orientation(MaxCutInstance(3, ((0, 1, 3), (1, 2, -2))))
    assert len(o.star_edges) == 1 and len(o.directed) == 1
    assert o.directed == ((1, 1, 2),)


def test_orientation_problems_detects_bad_input():
    H = MaxCutInstance(4, ((0, 1, 1), (1, 2, 1), (2, 3, 1)))
    assert orientation_problems(H, Orientation((0, 1, 2), ()))
    assert orientation_problems(H, Orientation((), ((0, 0, 1),)))


def test_degree_six_rejected():
    H = MaxCutInstance(7, tuple((0, v, 1) for v in range(1, 7)))
    with pytest.raises(UnsupportedDegreeError):
        partial_edge_orientation(H)
    with pytest.raises(UnsupportedDegreeError):
        build_reduction(H)


def test_min_feasible_k_examples():
    assert min_feasible_k(MaxCutInstance(2, ((0, 1, 5),))) == 3
    assert min_feasible_k(MaxCutInstance(3, ((0, 1, 3), (1, 2, -2)))) == 7
    star = MaxCutInstance(6, tuple((0, v, 1) for v in range(1, 6)))
    o = partial_edge_orientation(star)
    assert o.out_degree(0) == 2
    assert min_feasible_k(star, o) == 15


def test_isolated_vertex_needs_positive_xor_order():
    H = MaxCutInstance(3, ((0, 1, 2),))
    assert min_feasible_k(H) == 3
    assert min_feasible_k(MaxCutInstance(1, ())) == 2
    a = build_reduction(MaxCutInstance(1, ()))
    assert a.bundles[0].xor_order == 1


def test_h1_construction(art1):
    s = art1.summary()
    assert s["N"] == 15 and s["M"] == 10 and s["flexible"] == 1 and s["strict"] == 0
    assert [b.xor_order for b in art1.bundles] == [0, 0]
    roles = [r for r, *_ in art1.vertex_roles]
    assert roles.count("filler") + roles.count("x_l") + roles.count("x_r") + 2 == 9  # Z, Z' are gadget-local
    assert sum(1 for r in art1.vertex_roles if r[0] == "gadget-local" and r[2] >= 6) == 2
    assert min(w for w in art1.weights.values()) == 0
    assert sorted(art1.weights.values()).count(5) == 2


def test_h2_construction(art2, h2):
    assert art2.vertex_count == 57
    assert [(g.h_edge, g.kind, g.same_set_weight, g.diff_set_weight) for g in art2.gadgets] == [
        (1, gd.STRICT, 0, 2), (0, gd.FLEXIBLE, 3, 0)]
    strict = art2.gadgets[0]
    assert (strict.x_side, strict.y_side) == (1, 2)
    assert art2.gadget_of_edge == (1, 0)
    assert [b.xor_order for b in art2.bundles] == [4, 0, 4]
    # y's two gateways: xy's flexible (psi 1) comes after yz's strict (psi 0)
    assert art2.bundles[1].gadgets == (0, 1)
    assert art2.M == 10


def test_infeasible_k(h1):
    with pytest.raises(InfeasibleKError):
        build_reduction(h1, 2)


def test_nonedge_weights(art1):
    u, v = next((u, v) for u in range(15) for v in range(u + 1, 15)
                if not art1.is_g_edge(u, v) and max(art1.priority[u], art1.priority[v]) == 15)
    assert nonedge_weight(art1, u, v) == 10 * 4 ** 15 == 10737418240
    g_edge = next(iter(art1.weights))
    with pytest.raises(DomainError):
        nonedge_weight(art1, *g_edge)
    with pytest.raises(DomainError):
        nonedge_weight(art1, 0, 0)


def test_priorities(art1, art2):
    for a in (art1, art2):
        n2 = len(a.degree_two)
        assert sorted(a.priority) == list(range(1, a.vertex_count + 1))
        assert {v for v in range(a.vertex_count) if a.priority[v] > a.vertex_count - n2} == a.degree_two


def degree_audit(a):
    deg = [a.degree(v) for v in range(a.vertex_count)]
    assert set(deg) <= {2, 3, 4}
    for v in range(a.vertex_count):
        assert deg[v] == 2 or any(deg[u] == 2 for u in a.adjacency[v])
    gadget_vertices = {v for g in a.gadgets for v in g.local_to_global}
    assert all(v in gadget_vertices for v in range(a.vertex_count) if deg[v] == 4)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 10**9), st.integers(0, 4))
def test_random_artifacts(n, seed, extra_k):
    H = bounded_degree_graph(random.Random(seed), n)
    k = min_feasible_k(H) + extra_k
    a = build_reduction(H, k)
    degree_audit(a)
    assert (a.vertex_count, len(a.weights)) == expected_counts(H, a.orientation, k)
    assert a.M == sum(a.weights.values())
    # flexible H-edges form a forest
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for g in a.gadgets:
        if g.kind == gd.FLEXIBLE:
            ru, rv = find(g.x_side), find(g.y_side)
            assert ru != rv
            parent[ru] = rv
    for b in a.bundles:
        assert b.xor_order == k - 2 * b.degree - 2 * b.out_degree - 1 >= 0


def test_psi_puts_directed_first():
    H = MaxCutInstance(4, ((0, 1, 1), (1, 2, 1), (2, 3, 1), (1, 3, 1)))
    a = build_reduction(H)
    kinds = [g.kind for g in a.gadgets]
    assert kinds == sorted(kinds, key=lambda k: k != gd.STRICT)
    for g in a.gadgets:
        if g.kind == gd.STRICT:
            assert a.orientation.tail(g.h_edge) == g.x_side
        else:
            assert H.edges[g.h_edge][0] == g.x_side


def test_completion(art1, inst1):
    for (u, v), w in art1.weights.items():
        assert inst1.matrix[u][v] == w and inst1.edge_class(u, v) == "G"
    assert len(inst1.non_edges) == 15 * 14 // 2 - len(art1.weights)
    cheapest = min(inst1.matrix[u][v] for u, v in inst1.non_edges)
    # no standard tour weighs more than M
    assert cheapest > art1.M


def test_zero_weight_completion_warns():
    a = build_reduction(MaxCutInstance(2, ((0, 1, 0),)))
    with pytest.warns(UserWarning):
        inst = complete_instance(a)
    assert all(inst.matrix[u][v] == 0 for u, v in inst.non_edges)


def test_metricize_examples():
    tri = TspInstance(3, [[0, 1, 2], [1, 0, 10], [2, 10, 0]])
    m = metricize(tri)
    assert sorted([m.matrix[0][1], m.matrix[0][2], m.matrix[1][2]]) == [11, 12, 20]
    assert triangle_inequality_holds(m) and not triangle_inequality_holds(tri)
    zero = TspInstance(4, lambda u, v: 0)
    assert metricize(zero) == zero


def test_metricize_preserves_swap_deltas(art1, inst1):
    m = metricize(inst1)
    assert triangle_inequality_holds(m)
    rng = random.Random(7)
    for _ in range(100):
        t = Tour(tuple(rng.sample(range(15), 15)))
        moves = list(enumerate_improving_k_swaps(inst1, t, 2))
        if not moves:
            continue
        mv = rng.choice(moves)
        assert mv.delta(inst1) == mv.delta(m)
    assert list(enumerate_improving_k_swaps(inst1, t, 3)) == list(enumerate_improving_k_swaps(m, t, 3))


def test_manifest_roundtrip(art2):
    data = json.loads(json.dumps(to_manifest(art2)))
    assert data["M"] == "10"
    back = from_manifest(data)
    assert back.weights == art2.weights and back.priority == art2.priority
    data["priority"][0] += 1
    with pytest.raises(ReductionError):
        from_manifest(data)
