"""Executable checks for the gadget, correspondence and completion lemmas."""

from __future__ import annotations

import random

from . import gadgets as gd
from .correspondence import (
    NonStandard,
    classify_tour,
    cut_to_tour,
    is_standard,
    standard_transition_graph,
    standard_tours,
    tour_to_cut,
    x_change,
    x_change_tally,
)
from .errors import BudgetExceeded, EnumerationLimitError
from .maxcut import DEFAULT_ENUMERATION_LIMIT, all_cuts, flip, improving_flips, maxcut_transition_graph
from .reduction import ReductionArtifact, complete_instance
from .report import CheckReport
from .tsp import (
    Tour,
    TspInstance,
    apply_swap,
    enumerate_improving_k_swaps,
    find_improving_3swap,
    hamiltonian_cycles,
    k_opt_local_search,
    neighborhood_size,
)

TOUR_ENUMERATION_LIMIT = 512  # vertices of G; the census is cheap on these sparse graphs
DEFAULT_SAMPLES = 1000
DEFAULT_STARTS = 50
DEFAULT_BUDGET = 2_000_000
COMPLETENESS_LIMIT = 2_000_000  # candidates per standard tour


def check_gadget_suite(strict: gd.ParityGadget | None = None, flexible: gd.ParityGadget | None = None) -> CheckReport:
    r = CheckReport("gadget_suite")
    r.merge(gd.verify_parity_gadget(strict or gd.STRICT), "strict")
    r.merge(gd.verify_parity_gadget(flexible or gd.FLEXIBLE), "flexible")
    for p in range(7):
        x = gd.XorGadget(p)
        if p == 0:
            r.check("xor p=0 is empty", x.vertex_count == 0 and not x.edges())
            continue
        subs = gd.enumerate_xor_subtours(x)
        want = 2 if p >= 2 else 1
        r.check(f"xor p={p} has {want} subtours", len(subs) == want, len(subs))
        closed = {x.subtour_from("a"), x.subtour_from("b")}
        r.check(f"xor p={p} subtours match the zig-zag closed form", set(subs) == closed)
        if p >= 2:
            a, b = x.subtour_from("a"), x.subtour_from("b")
            r.check(f"xor p={p} inter-subtour swap has {p - 1} edges", len(a - b) == p - 1, len(a - b))
    return r


def check_all_tours_standard(a: ReductionArtifact, limit: int = TOUR_ENUMERATION_LIMIT) -> CheckReport:
    r = CheckReport("all_tours_standard")
    try:
        tours = list(hamiltonian_cycles(a.edge_list, a.vertex_count, limit=limit))
    except EnumerationLimitError as exc:
        r.skip(str(exc))
        return r
    n = a.source.vertex_count
    r.counters["tours"] = len(tours)
    r.check(f"G has exactly 2^{n} tours", len(tours) == 2 ** n, len(tours))
    bad = [str(w) for w in (classify_tour(a, t) for t in tours) if isinstance(w, NonStandard)]
    r.check("every tour of G is standard", not bad, bad[:1] or None)
    images = {tour_to_cut(a, t) for t in tours}
    r.check("tours of G map onto distinct cuts", len(images) == len(tours))
    return r


def check_isomorphism(a: ReductionArtifact, inst: TspInstance | None = None,
                      limit: int = DEFAULT_ENUMERATION_LIMIT) -> CheckReport:
    r = CheckReport("isomorphism")
    try:
        cut_graph = maxcut_transition_graph(a.source, limit)
        tour_graph = standard_transition_graph(a, inst, limit)
    except EnumerationLimitError as exc:
        r.skip(str(exc))
        return r
    r.counters["nodes"] = len(cut_graph.nodes)
    r.counters["arcs"] = len(cut_graph.arcs)
    phi_inv = lambda c: cut_to_tour(a, c)  # noqa: E731
    phi = lambda t: tour_to_cut(a, t)  # noqa: E731
    r.check("cut -> tour carries arcs exactly onto arcs", cut_graph.is_isomorphic_under(tour_graph, phi_inv))
    r.check("tour -> cut carries arcs exactly onto arcs", tour_graph.is_isomorphic_under(cut_graph, phi))
    r.check("sinks correspond", {phi(t) for t in tour_graph.sinks()} == set(cut_graph.sinks()))
    return r


def check_x_changes(a: ReductionArtifact, limit: int = DEFAULT_ENUMERATION_LIMIT) -> CheckReport:
    """Every x-change from every standard tour has size k and the predicted role tally."""
    r = CheckReport("x_change_audit")
    try:
        tours = standard_tours(a, limit)
    except EnumerationLimitError as exc:
        r.skip(str(exc))
        return r
    size_ok = tally_ok = landing_ok = True
    for t in tours:
        cut = tour_to_cut(a, t)
        for x in range(a.source.vertex_count):
            move = x_change(a, t, x)
            tally = x_change_tally(a, move, x)
            size_ok &= move.size == a.k
            tally_ok &= tally["predicted"] == tally["counted"] and tally["unattributed"] == 0
            landing_ok &= apply_swap(t, move) == cut_to_tour(a, flip(cut, x))
    r.counters["moves"] = len(tours) * a.source.vertex_count
    r.check(f"every x-change swaps exactly k={a.k} edges", size_ok)
    r.check("involved-edge tally matches d+2 / 2p / 3d+4d+ term by term", tally_ok)
    r.check("x-change lands on the tour of the flipped cut", landing_ok)
    return r


def check_neighborhood_completeness(a: ReductionArtifact, inst: TspInstance | None = None,
                                    budget: int = COMPLETENESS_LIMIT) -> CheckReport:
    """Improving k-swaps between standard tours are exactly the improving x-changes."""
    r = CheckReport("neighborhood_completeness")
    inst = inst or complete_instance(a)
    if neighborhood_size(a.vertex_count, a.k) > budget:
        r.skip(f"k-swap neighborhood of {neighborhood_size(a.vertex_count, a.k)} candidates exceeds {budget}")
        return r
    tours = standard_tours(a)
    found_arcs, extra = set(), []
    for t in tours:
        xs = {x_change(a, t, x): x for x in range(a.source.vertex_count)}
        for move in enumerate_improving_k_swaps(inst, t, a.k):
            target = apply_swap(t, move)
            if not is_standard(a, target):
                continue
            if move not in xs:
                extra.append(move)
            found_arcs.add((t, target))
    graph = standard_transition_graph(a, inst)
    r.counters["arcs"] = len(found_arcs)
    r.check("every improving swap between standard tours is an x-change", not extra,
            len(extra) if extra else None)
    r.check("improving arcs equal the standard transition graph", found_arcs == set(graph.arcs))
    return r


def sample_nonedge_tours(a: ReductionArtifact, inst: TspInstance, samples: int, seed: int):
    """Half uniform random tours, half standard tours with one vertex relocated.

    Every sample contains at least one non-edge; samples without one are redrawn.
    """
    rng = random.Random(seed)
    N = a.vertex_count
    bases = standard_tours(a) if a.source.vertex_count <= DEFAULT_ENUMERATION_LIMIT else []
    out = []
    while len(out) < samples:
        if len(out) % 2 == 0 or not bases:
            order = list(range(N))
            rng.shuffle(order)
        else:
            order = list(rng.choice(bases).order)
            v = order.pop(rng.randrange(N))
            order.insert(rng.randrange(N), v)
        t = Tour(tuple(order))
        if t.edges() & inst.non_edges:
            out.append(t)
    return out


def check_no_nonedge_local_optimum(a: ReductionArtifact, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                                   inst: TspInstance | None = None) -> CheckReport:
    r = CheckReport("no_nonedge_local_optimum")
    if a.M == 0:
        r.skip("M = 0, non-edges carry no penalty")
        return r
    inst = inst or complete_instance(a)
    hits = misses = 0
    first_miss = None
    for t in sample_nonedge_tours(a, inst, samples, seed):
        if find_improving_3swap(inst, t) is None:
            misses += 1
            first_miss = first_miss or str(t)
        else:
            hits += 1
    r.counters.update(samples=samples, hits=hits, misses=misses)
    r.check("every sampled non-edge tour has an improving 3-swap", misses == 0, first_miss)
    return r


def check_local_search_end_to_end(a: ReductionArtifact, starts: int = DEFAULT_STARTS, seed: int = 0,
                                  budget: int = DEFAULT_BUDGET, inst: TspInstance | None = None) -> CheckReport:
    r = CheckReport("local_search_end_to_end")
    inst = inst or complete_instance(a)
    rng = random.Random(seed)
    terminated = exhausted = 0
    standard_ok = nonedge_ok = optimal_ok = decreasing_ok = True
    for _ in range(starts):
        order = list(range(a.vertex_count))
        rng.shuffle(order)
        try:
            res = k_opt_local_search(inst, Tour(tuple(order)), a.k, "first", budget)
        except BudgetExceeded:
            exhausted += 1
            continue
        terminated += 1
        decreasing_ok &= all(x > y for x, y in zip(res.weights, res.weights[1:]))
        nonedge_ok &= not (res.tour.edges() & inst.non_edges)
        standard_ok &= is_standard(a, res.tour)
        optimal_ok &= not improving_flips(a.source, tour_to_cut(a, res.tour))
    r.counters.update(starts=starts, terminated=terminated, budget_exhausted=exhausted)
    if not terminated:
        r.skip(f"no run terminated within a budget of {budget} candidates")
        return r
    r.check("weights strictly decrease along every trace", decreasing_ok)
    r.check("every terminal tour is non-edge-free", nonedge_ok)
    r.check("every terminal tour is standard", standard_ok)
    r.check("every terminal tour maps to a Flip local optimum", optimal_ok)
    return r


def check_tightness(a: ReductionArtifact, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                    inst: TspInstance | None = None) -> CheckReport:
    """R = standard tours: R holds every local optimum, g round-trips, R-arcs map to arcs."""
    r = CheckReport("tightness")
    inst = inst or complete_instance(a)
    census = check_all_tours_standard(a)
    r.merge(census, "local optima in R")
    r.merge(check_no_nonedge_local_optimum(a, samples, seed, inst), "local optima in R")
    if a.source.vertex_count > DEFAULT_ENUMERATION_LIMIT:
        r.skip("too many cuts for the round-trip condition")
        return r
    cuts = list(all_cuts(a.source.vertex_count))
    r.check("every cut lands in R and round-trips through g",
            all(tour_to_cut(a, cut_to_tour(a, c)) == c for c in cuts))
    r.check("an improving flip always has an improving x-change",
            all(x_change(a, cut_to_tour(a, c), x).delta(inst) < 0
                for c in cuts for x in improving_flips(a.source, c)))
    r.merge(check_isomorphism(a, inst), "arcs in R")
    return r


CHECKS = {
    "gadgets": lambda a, **kw: check_gadget_suite(),
    "tours": lambda a, **kw: check_all_tours_standard(a),
    "isomorphism": lambda a, **kw: check_isomorphism(a, kw.get("inst")),
    "x-change": lambda a, **kw: check_x_changes(a),
    "completeness": lambda a, **kw: check_neighborhood_completeness(a, kw.get("inst")),
    "nonedge": lambda a, **kw: check_no_nonedge_local_optimum(a, kw["samples"], kw["seed"], kw.get("inst")),
    "end-to-end": lambda a, **kw: check_local_search_end_to_end(
        a, kw["starts"], kw["seed"], kw["budget"], kw.get("inst")),
    "tightness": lambda a, **kw: check_tightness(a, kw["samples"], kw["seed"], kw.get("inst")),
}


def run_checks(a: ReductionArtifact, names=None, samples: int = DEFAULT_SAMPLES, seed: int = 0,
               starts: int = DEFAULT_STARTS, budget: int = DEFAULT_BUDGET) -> list[CheckReport]:
    inst = complete_instance(a)
    names = list(names or CHECKS)
    return [CHECKS[name](a, samples=samples, seed=seed, starts=starts, budget=budget, inst=inst) for name in names]
