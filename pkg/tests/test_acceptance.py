"""Acceptance gate: one test per criterion, pass/fail lines printed in the terminal summary."""

import hashlib
import os
import random
import subprocess
import sys
import time
from itertools import product

import pytest
from helpers import bounded_degree_graph, is_star_forest, random_suite

from kopt_pls import gadgets as gd
from kopt_pls.correspondence import (
    NonStandard,
    classify_tour,
    cut_to_tour,
    standard_transition_graph,
    tour_to_cut,
    x_change,
    x_change_tally,
)
from kopt_pls.matching import brute_force_matching_size, maximum_matching
from kopt_pls.maxcut import all_cuts, cut_value, maxcut_transition_graph
from kopt_pls.reduction import build_reduction, orientation_problems, partial_edge_orientation
from kopt_pls.tsp import hamiltonian_cycles, tour_weight
from kopt_pls.verify import (
    check_gadget_suite,
    check_local_search_end_to_end,
    check_neighborhood_completeness,
    check_no_nonedge_local_optimum,
)


@pytest.fixture(scope="module")
def suite():
    return [build_reduction(H) for H in random_suite(5)]


@pytest.mark.criterion(1)
def test_criterion_1_gadget_lemmas():
    start = time.perf_counter()
    s, f = gd.build_parity_gadget(gd.STRICT), gd.build_parity_gadget(gd.FLEXIBLE)
    ss, fs = gd.enumerate_subtours(s), gd.enumerate_subtours(f)
    assert len(ss) == 4 and all(c.tag == "standard" for _, c in ss)
    assert len(fs) == 7 and sum(c.tag == "standard" for _, c in fs) == 4
    assert sum(c.tag == "non-standard" for _, c in fs) == 3
    assert gd.subtour_change_size(s, 1, 2) == gd.subtour_change_size(s, 3, 4) == 7
    assert gd.subtour_change_size(s, 1, 3) == gd.subtour_change_size(s, 2, 4) == 3
    assert min(gd.subtour_change_size(s, 1, 4), gd.subtour_change_size(s, 2, 3)) > 7
    assert gd.subtour_change_size(f, 1, 2) == gd.subtour_change_size(f, 3, 4) == 3
    assert gd.subtour_change_size(f, 1, 3) == gd.subtour_change_size(f, 2, 4) == 3
    assert min(gd.subtour_change_size(f, 1, 4), gd.subtour_change_size(f, 2, 3)) > 3
    for g in (s, f):
        std = gd.standard_subtours(g)
        for sigma, delta in ((7, 0), (0, 4)):
            w = {i: gd.subtour_weight(g, std[i], sigma, delta) for i in std}
            assert w[1] == w[4] == sigma and w[2] == w[3] == delta
    for p in range(2, 7):
        x = gd.XorGadget(p)
        a, b = gd.enumerate_xor_subtours(x)
        assert len(a - b) == p - 1
    assert check_gadget_suite().passed
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(2)
def test_criterion_2_orientation():
    start = time.perf_counter()
    rng = random.Random(2)
    for i in range(200):
        n = rng.randint(1, 40)
        H = bounded_degree_graph(rng, n, density=rng.choice((0.1, 0.3, 0.6)))
        o = partial_edge_orientation(H)
        assert orientation_problems(H, o) == []
        assert is_star_forest(n, [H.edges[e][:2] for e in o.star_edges])
        assert all(o.out_degree(v) <= 2 for v in range(n))
        if n <= 12:
            pairs = [e[:2] for e in H.edges]
            mate = maximum_matching(n, pairs)
            assert sum(m != -1 for m in mate) // 2 == brute_force_matching_size(n, pairs)
    assert time.perf_counter() - start < 30


@pytest.mark.criterion(3)
def test_criterion_3_tour_census(art1, art2):
    start = time.perf_counter()
    for a, want in ((art1, 4), (art2, 8)):
        tours = list(hamiltonian_cycles(a.edge_list, a.vertex_count, limit=a.vertex_count))
        assert len(tours) == want
        assert not any(isinstance(classify_tour(a, t), NonStandard) for t in tours)
    assert time.perf_counter() - start < 60


@pytest.mark.criterion(4)
def test_criterion_4_bijection_and_duality(art1, art2, inst1, inst2):
    for a, inst in ((art1, inst1), (art2, inst2)):
        H = a.source
        cuts = list(all_cuts(H.vertex_count))
        tours = [cut_to_tour(a, c) for c in cuts]
        assert [tour_to_cut(a, t) for t in tours] == cuts
        assert [cut_to_tour(a, tour_to_cut(a, t)) for t in tours] == tours
        w = [tour_weight(inst, t) for t in tours]
        v = [cut_value(H, c) for c in cuts]
        for i, j in product(range(len(cuts)), repeat=2):
            assert w[i] - w[j] == v[j] - v[i]


@pytest.mark.criterion(5)
def test_criterion_5_x_change_audit(art1, art2, suite):
    for a in [art1, art2] + suite:
        for c in all_cuts(a.source.vertex_count):
            t = cut_to_tour(a, c)
            for x in range(a.source.vertex_count):
                m = x_change(a, t, x)
                assert len(m.remove) == len(m.add) == a.k
                tally = x_change_tally(a, m, x)
                assert tally["counted"] == tally["predicted"]
                assert tally["unattributed"] == 0
                assert sum(tally["counted"].values()) == 2 * a.k


@pytest.mark.criterion(6)
def test_criterion_6_isomorphism(art1, art2, suite):
    start = time.perf_counter()
    for a in [art1, art2] + suite:
        assert a.source.vertex_count <= 4
        cg = maxcut_transition_graph(a.source)
        tg = standard_transition_graph(a)
        assert cg.is_isomorphic_under(tg, lambda c: cut_to_tour(a, c))
        assert tg.is_isomorphic_under(cg, lambda t: tour_to_cut(a, t))
    assert time.perf_counter() - start < 300


@pytest.mark.criterion(7)
def test_criterion_7_neighborhood_completeness(art1, inst1):
    rep = check_neighborhood_completeness(art1, inst1)
    assert rep.passed, rep.render()


@pytest.mark.criterion(8)
def test_criterion_8_nonedge_three_swaps(art1, art2, inst1, inst2):
    start = time.perf_counter()
    for a, inst in ((art1, inst1), (art2, inst2)):
        rep = check_no_nonedge_local_optimum(a, samples=1000, seed=8, inst=inst)
        assert rep.counters["samples"] >= 1000 and rep.counters["misses"] == 0, rep.render()
        assert rep.passed
    assert time.perf_counter() - start < 600


@pytest.mark.criterion(9)
def test_criterion_9_end_to_end(art1, inst1):
    rep = check_local_search_end_to_end(art1, starts=50, seed=9, inst=inst1)
    assert rep.counters["terminated"] > 0
    assert rep.passed, rep.render()


def _run_cli(args, cwd, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run([sys.executable, "-m", "kopt_pls", *args], cwd=cwd, env=env,
                          capture_output=True, text=True, check=False)


def _digest(root):
    h = hashlib.sha256()
    for p in sorted(root.rglob("*")):
        if p.is_file():
            h.update(str(p.relative_to(root)).encode())
            h.update(p.read_bytes())
    return h.hexdigest()


@pytest.mark.criterion(10)
def test_criterion_10_determinism(tmp_path):
    digests = []
    for run, hashseed in enumerate((1, 4242)):
        d = tmp_path / f"run{run}"
        d.mkdir()
        (d / "h2.txt").write_text("3 2\n0 1 3\n1 2 -2\n")
        steps = [
            ["reduce", "h2.txt", "--out", "art"],
            ["solve", "tsp", "art/instance.tsp", "--start", "random", "--seed", "5", "--k", "2",
             "--out", "tour.txt", "--trace", "trace.json"],
            ["solve", "maxcut", "h2.txt", "--start", "random", "--seed", "5", "--pivot", "best",
             "--out", "cut.txt", "--trace", "flips.json"],
            ["verify", "h2.txt", "--samples", "100", "--starts", "2", "--budget", "200000", "--seed", "3",
             "--summary", "summary.txt", "--check", "tours", "--check", "isomorphism", "--check", "nonedge",
             "--check", "x-change"],
            ["transition-graph", "h2.txt", "--kind", "tsp", "--out", "graph.dot"],
            ["map", "--manifest", "art/manifest.json", "--to-cut", "tour.txt", "--out", "mapped.txt"],
            ["describe-gadget", "strict", "--out", "strict.txt"],
        ]
        stdout = []
        for args in steps:
            res = _run_cli(args, d, hashseed)
            assert res.returncode == 0, (args, res.stderr)
            stdout.append(res.stdout)
        (d / "stdout.txt").write_text("".join(stdout))
        (d / "h2.txt").unlink()
        digests.append(_digest(d))
    assert digests[0] == digests[1]
