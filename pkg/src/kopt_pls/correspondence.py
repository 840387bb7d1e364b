"""Maps between cuts of H and standard tours of G, and the x-change move."""

from __future__ import annotations

from dataclasses import dataclass

from . import gadgets as gd
from .errors import DimensionError, EnumerationLimitError, InvalidVertexError, NonStandardTourError
from .maxcut import DEFAULT_ENUMERATION_LIMIT, Cut, all_cuts, flip
from .reduction import ReductionArtifact, complete_instance
from .transition import TransitionGraph, build_transition_graph
from .tsp import SwapMove, Tour, TspInstance, tour_weight


@dataclass(frozen=True)
class StandardTourWitness:
    first_set: tuple[bool, ...]  # per H-vertex: the tour uses x's first-set edges
    patterns: tuple[int, ...]  # per psi index: standard subtour pattern 1..4

    @property
    def cut(self) -> Cut:
        return Cut(self.first_set)


@dataclass(frozen=True)
class NonStandard:
    reason: str
    gadget: int | None = None  # psi index of the first offending gadget

    def __str__(self):
        where = f" (gadget psi={self.gadget})" if self.gadget is not None else ""
        return f"non-standard: {self.reason}{where}"


def _check_cut(a: ReductionArtifact, cut: Cut):
    if len(cut) != a.source.vertex_count:
        raise DimensionError(f"cut has {len(cut)} entries, H has {a.source.vertex_count} vertices")


def cut_edges(a: ReductionArtifact, cut: Cut) -> frozenset:
    """Edge set of the standard tour that encodes ``cut``."""
    _check_cut(a, cut)
    es = set(a.forced_edges)
    for b in a.bundles:
        es |= b.first_set_edges if cut.membership[b.x] else b.second_set_edges
    for g in a.gadgets:
        es |= g.standard[g.pattern_for(cut.membership[g.x_side], cut.membership[g.y_side])]
    return frozenset(es)


def cut_to_tour(a: ReductionArtifact, cut: Cut) -> Tour:
    return Tour.from_edges(a.vertex_count, cut_edges(a, cut))


def classify_tour(a: ReductionArtifact, tour: Tour) -> StandardTourWitness | NonStandard:
    if len(tour) != a.vertex_count:
        raise DimensionError(f"tour has {len(tour)} vertices, G has {a.vertex_count}")
    es = tour.edges()
    if any(e not in a.weights for e in es):
        return NonStandard("tour uses a non-edge")
    first = tuple(b.left_first_set in es for b in a.bundles)
    for b in a.bundles:
        bundle = b.first_set_edges if first[b.x] else b.second_set_edges
        if not bundle <= es:
            return NonStandard(f"vertex bundle of H-vertex {b.x} is incomplete")
    patterns = []
    for g in a.gadgets:
        cls = gd.classify_subtour(g.gadget, g.local_subtour(es))
        if cls.tag != "standard":
            return NonStandard(f"gadget subtour is {cls}", g.psi)
        if cls.pattern != g.pattern_for(first[g.x_side], first[g.y_side]):
            return NonStandard("gadget pattern disagrees with its endpoint bundles", g.psi)
        patterns.append(cls.pattern)
    return StandardTourWitness(first, tuple(patterns))


def is_standard(a: ReductionArtifact, tour: Tour) -> bool:
    return isinstance(classify_tour(a, tour), StandardTourWitness)


def tour_to_cut(a: ReductionArtifact, tour: Tour) -> Cut:
    """The solution map g: the encoded cut for standard tours, the all-first cut otherwise."""
    w = classify_tour(a, tour)
    if isinstance(w, StandardTourWitness):
        return w.cut
    return Cut.all_first(a.source.vertex_count)


def x_change(a: ReductionArtifact, tour: Tour, x: int) -> SwapMove:
    """The swap taking the standard tour of cut c to the standard tour of flip(c, x)."""
    if not 0 <= x < a.source.vertex_count:
        raise InvalidVertexError(f"H-vertex {x} out of range")
    w = classify_tour(a, tour)
    if isinstance(w, NonStandard):
        raise NonStandardTourError(str(w))
    before = tour.edges()
    after = cut_edges(a, flip(w.cut, x))
    return SwapMove(frozenset(before - after), frozenset(after - before))


TALLY_TERMS = ("doors_and_left_first_set", "xor_and_right_edges", "gadget_internal")


def x_change_tally(a: ReductionArtifact, move: SwapMove, x: int) -> dict:
    """Involved edges of an x-change split by role, next to the predicted counts."""
    b = a.bundles[x]
    predicted = {
        TALLY_TERMS[0]: b.degree + 2,
        TALLY_TERMS[1]: 2 * b.xor_order,
        TALLY_TERMS[2]: 3 * b.degree + 4 * b.out_degree,
    }
    counted = dict.fromkeys(TALLY_TERMS, 0)
    other = 0
    for e in move.remove | move.add:
        role, owner = a.edge_roles[e]
        if role in ("door", "first_set") and owner == x:
            counted[TALLY_TERMS[0]] += 1
        elif role in ("xor", "right_first_set", "right_second_set") and owner == x:
            counted[TALLY_TERMS[1]] += 1
        elif role == "gadget" and owner in b.gadgets:
            counted[TALLY_TERMS[2]] += 1
        else:
            other += 1
    return {"predicted": predicted, "counted": counted, "unattributed": other, "total": 2 * a.k}


def standard_tours(a: ReductionArtifact, limit: int = DEFAULT_ENUMERATION_LIMIT) -> list[Tour]:
    n = a.source.vertex_count
    if n > limit:
        raise EnumerationLimitError(f"{n} H-vertices exceeds enumeration limit {limit}")
    return [cut_to_tour(a, c) for c in all_cuts(n)]


def standard_transition_graph(
    a: ReductionArtifact, inst: TspInstance | None = None, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> TransitionGraph:
    """Standard tours, with an arc for every weight-decreasing x-change."""
    inst = inst or complete_instance(a)
    tours = standard_tours(a, limit)
    weight = {t: tour_weight(inst, t) for t in tours}

    def improving(t):
        out = []
        for x in range(a.source.vertex_count):
            nxt = cut_to_tour(a, flip(tour_to_cut(a, t), x))
            if weight[nxt] < weight[t]:
                out.append(nxt)
        return out

    return build_transition_graph(tours, improving)
