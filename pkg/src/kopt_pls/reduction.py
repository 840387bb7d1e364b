"""Compile a Max-Cut instance of maximum degree five into a TSP instance.

Layout of the sparse graph G, in vertex-id order:

* base cycle ``c_0 .. c_{3(n+m)-1}``; H-vertex x owns ``(c_{3x}, c_{3x+1}) = (x_l, x_r)``,
  H-edge e owns ``(c_{3(n+e)}, c_{3(n+e)+1})``, and every ``c_{3j+2}`` is a degree-two filler;
* second-set path internals ``x_1, x'_1, .., x_d, x'_d`` per H-vertex;
* XOR gadget vertices per H-vertex (rail a, rail b, rung midpoints);
* non-terminal parity-gadget vertices, gadgets taken in psi-order.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

from . import gadgets as gd
from .errors import DomainError, InfeasibleKError, ReductionError, UnsupportedDegreeError
from .matching import brute_force_matching_size, maximum_matching
from .maxcut import MaxCutInstance
from .tsp import TspInstance, edge

MAX_H_DEGREE = 5
WORST_CASE_K = 15
MATCHING_CROSSCHECK_LIMIT = 12


# -- partial edge orientation --------------------------------------------------

@dataclass(frozen=True)
class Orientation:
    star_edges: tuple[int, ...]
    directed: tuple[tuple[int, int, int], ...]  # (edge id, tail, head), edge-id order

    @cached_property
    def _tails(self) -> dict[int, int]:
        return {e: t for e, t, _ in self.directed}

    def is_directed(self, e: int) -> bool:
        return e in self._tails

    def tail(self, e: int) -> int:
        return self._tails[e]

    def out_degree(self, v: int) -> int:
        return sum(t == v for _, t, _ in self.directed)


def orientation_problems(H: MaxCutInstance, o: Orientation) -> list[str]:
    """Empty iff ``o`` is a valid partial orientation of H (stars + out-degree <= 2)."""
    problems = []
    star, directed = set(o.star_edges), {e for e, _, _ in o.directed}
    if star & directed or star | directed != set(range(H.edge_count)):
        problems.append("E1 and E2 must partition the edge set")
    deg1 = [0] * H.vertex_count
    for e in star:
        u, v, _ = H.edges[e]
        deg1[u] += 1
        deg1[v] += 1
    for e in star:
        u, v, _ = H.edges[e]
        if deg1[u] >= 2 and deg1[v] >= 2:
            problems.append(f"star edges contain a path of length three through edge {e}")
    for e, t, h in o.directed:
        if {t, h} != set(H.edges[e][:2]):
            problems.append(f"edge {e} oriented between wrong endpoints")
    for v in range(H.vertex_count):
        if o.out_degree(v) > 2:
            problems.append(f"vertex {v} has out-degree {o.out_degree(v)}")
    return problems


def partial_edge_orientation(H: MaxCutInstance) -> Orientation:
    """Split E(H) into a star forest E1 and an orientation of the rest with out-degree <= 2.

    E1 is a maximum matching plus one edge per exposed degree-five vertex; the remaining
    edges are oriented along maximal trails, each started at the lowest vertex of odd
    remaining degree when there is one.
    """
    if H.max_degree() > MAX_H_DEGREE:
        raise UnsupportedDegreeError(f"maximum degree {H.max_degree()} exceeds {MAX_H_DEGREE}")
    pairs = [(u, v) for u, v, _ in H.edges]
    mate = maximum_matching(H.vertex_count, pairs)
    star = {e for e, (u, v) in enumerate(pairs) if mate[u] == v}
    if H.vertex_count <= MATCHING_CROSSCHECK_LIMIT:
        if len(star) != brute_force_matching_size(H.vertex_count, pairs):
            raise ReductionError("blossom matching is not maximum (exhaustive cross-check failed)")
    for v in range(H.vertex_count):
        if mate[v] == -1 and H.degree(v) == MAX_H_DEGREE:
            star.add(min(idx for _, idx in H.adjacency[v]))

    rest = [e for e in range(H.edge_count) if e not in star]
    unused = set(rest)
    incident = [[] for _ in range(H.vertex_count)]
    for e in rest:
        u, v = pairs[e]
        incident[u].append((e, v))
        incident[v].append((e, u))

    def remaining(v):
        return sum(e in unused for e, _ in incident[v])

    directed = []
    while unused:
        odd = [v for v in range(H.vertex_count) if remaining(v) % 2 == 1]
        cur = odd[0] if odd else min(v for v in range(H.vertex_count) if remaining(v))
        while True:
            step = next(((e, w) for e, w in incident[cur] if e in unused), None)
            if step is None:
                break
            e, w = step
            unused.discard(e)
            directed.append((e, cur, w))
            cur = w
    o = Orientation(tuple(sorted(star)), tuple(sorted(directed)))
    problems = orientation_problems(H, o)
    if problems:
        raise ReductionError("orientation postcondition violated: " + "; ".join(problems))
    return o


def xor_order(H: MaxCutInstance, o: Orientation, k: int, x: int) -> int:
    return k - 2 * H.degree(x) - 2 * o.out_degree(x) - 1


def min_feasible_k(H: MaxCutInstance, o: Orientation | None = None) -> int:
    """Smallest k giving every H-vertex a nonnegative XOR order.

    An isolated H-vertex additionally needs order >= 1, otherwise its first-set edge and
    its one-edge second-set path would be parallel.
    """
    o = o or partial_edge_orientation(H)
    need = 0
    for x in range(H.vertex_count):
        d = H.degree(x)
        need = max(need, 2 * d + 2 * o.out_degree(x) + (1 if d else 2))
    return need


# -- artifact ------------------------------------------------------------------

@dataclass(frozen=True)
class VertexBundle:
    """Bookkeeping for one H-vertex x inside G."""

    x: int
    degree: int
    out_degree: int
    xor_order: int
    x_l: int
    x_r: int
    path: tuple[int, ...]  # second-set path x_l, x_1, x'_1, .., x'_d (up to the XOR splice)
    doors: tuple[tuple[int, int], ...]
    closest_door: tuple[int, int]
    left_first_set: tuple[int, int]
    right_first_set: tuple[int, int]
    right_second_set: tuple[int, int]
    rail_a: tuple[int, ...]
    rail_b: tuple[int, ...]
    rung_mids: tuple[int, ...]
    xor_internal: frozenset
    xor_first: frozenset  # XOR subtour incident to the left/right first-set edges
    xor_second: frozenset  # XOR subtour incident to the closest door / right second-set edge
    gadgets: tuple[int, ...]  # psi indices along the second-set path

    @property
    def first_set_edges(self) -> frozenset:
        return frozenset({self.left_first_set, self.right_first_set}) | self.xor_first

    @property
    def second_set_edges(self) -> frozenset:
        return frozenset(self.doors) | {self.right_second_set} | self.xor_second


@dataclass(frozen=True)
class GadgetInstance:
    psi: int
    h_edge: int
    kind: str
    x_side: int
    y_side: int
    same_set_weight: int
    diff_set_weight: int
    local_to_global: tuple[int, ...]
    internal: dict  # global edge -> local edge (frozenset)
    standard: dict  # pattern -> frozenset of global edges

    @property
    def gadget(self) -> gd.ParityGadget:
        return gd.build_parity_gadget(self.kind)

    def local_subtour(self, tour_edges) -> list[tuple[int, int]]:
        return [tuple(self.internal[e]) for e in self.internal if e in tour_edges]

    def pattern_for(self, x_first: bool, y_first: bool) -> int:
        return {(True, True): 1, (False, True): 2, (True, False): 3, (False, False): 4}[(x_first, y_first)]


@dataclass(frozen=True)
class ReductionArtifact:
    source: MaxCutInstance
    k: int
    orientation: Orientation
    vertex_count: int
    weights: dict  # G-edge -> weight
    edge_roles: dict  # G-edge -> (role, owner)
    labels: tuple[str, ...]
    bundles: tuple[VertexBundle, ...]
    gadgets: tuple[GadgetInstance, ...]  # indexed by psi
    gadget_of_edge: tuple[int, ...]  # H-edge -> psi
    priority: tuple[int, ...]
    M: int

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.vertex_count)]
        for u, v in self.weights:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def vertex_roles(self) -> tuple[tuple, ...]:
        """Per G-vertex ``(role, owner, local id)``; gadget membership wins over path roles."""
        roles: list = [None] * self.vertex_count
        n = self.source.vertex_count
        for j in range(3 * (n + self.source.edge_count)):
            roles[j] = ("filler", j // 3, None)
        for b in self.bundles:
            roles[b.x_l] = ("x_l", b.x, None)
            roles[b.x_r] = ("x_r", b.x, None)
            for v in b.path[1:]:
                roles[v] = ("door-endpoint", b.x, None)
            for v in b.rail_a + b.rail_b:
                roles[v] = ("xor-rail", b.x, None)
            for v in b.rung_mids:
                roles[v] = ("xor-midpoint", b.x, None)
        for g in self.gadgets:
            for lv, v in enumerate(g.local_to_global):
                roles[v] = ("gadget-local", g.psi, lv)
        return tuple(roles)

    @cached_property
    def degree_two(self) -> frozenset:
        return frozenset(v for v in range(self.vertex_count) if self.degree(v) == 2)

    @cached_property
    def forced_edges(self) -> frozenset:
        """Edges incident to a degree-two vertex; every tour of G contains them."""
        return frozenset(e for e in self.weights if e[0] in self.degree_two or e[1] in self.degree_two)

    def is_g_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.weights

    @property
    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.weights)

    def summary(self) -> dict:
        return {
            "N": self.vertex_count,
            "g_edges": len(self.weights),
            "non_edges": self.vertex_count * (self.vertex_count - 1) // 2 - len(self.weights),
            "M": self.M,
            "k": self.k,
            "psi_entries": len(self.gadgets),
            "strict": sum(g.kind == gd.STRICT for g in self.gadgets),
            "flexible": sum(g.kind == gd.FLEXIBLE for g in self.gadgets),
        }


def _parity_weights(w: int) -> tuple[int, int]:
    return (w, 0) if w >= 0 else (0, -w)


def psi_order(H: MaxCutInstance, o: Orientation) -> list[int]:
    directed = [e for e in range(H.edge_count) if o.is_directed(e)]
    return directed + [e for e in range(H.edge_count) if not o.is_directed(e)]


def build_reduction(H: MaxCutInstance, k: int | None = None) -> ReductionArtifact:
    """Build G, its weights, priorities and all role bookkeeping; ``k`` defaults to the minimum."""
    if H.max_degree() > MAX_H_DEGREE:
        raise UnsupportedDegreeError(f"maximum degree {H.max_degree()} exceeds {MAX_H_DEGREE}")
    o = partial_edge_orientation(H)
    kmin = min_feasible_k(H, o)
    if k is None:
        k = kmin
    if k < kmin:
        raise InfeasibleKError(f"k={k} is infeasible; the minimum feasible k is {kmin}")
    n, m = H.vertex_count, H.edge_count

    labels: list[str] = []

    def new_vertex(label):
        labels.append(label)
        return len(labels) - 1

    weights: dict = {}
    roles: dict = {}

    def add(u, v, role, owner=None, w=0):
        e = edge(u, v)
        if e in weights or u == v:
            raise ReductionError(f"construction produced a repeated edge {e}")
        weights[e] = w
        roles[e] = (role, owner)
        return e

    L = 3 * (n + m)
    for j in range(L):
        if j % 3 == 2:
            new_vertex(f"fill{j // 3}")
        elif j // 3 < n:
            new_vertex(f"x{j // 3}_{'l' if j % 3 == 0 else 'r'}")
        else:
            new_vertex(f"e{j // 3 - n}_{'Z' if j % 3 == 0 else 'Zp'}")
    for j in range(L):
        if j % 3 == 0 and j // 3 >= n:
            continue  # H-edge edges are replaced by parity gadgets
        if j % 3 == 0:
            continue  # first-set edges are added with the XOR splice
        add(j, (j + 1) % L, "base")

    paths = []
    for x in range(n):
        path = [3 * x]
        for i in range(1, H.degree(x) + 1):
            path.append(new_vertex(f"x{x}_{i}"))
            path.append(new_vertex(f"x{x}_{i}p"))
        paths.append(path)
        # doors x_l x_1, x'_1 x_2, ..; the door closest to x_r goes in with the XOR splice
        for i in range(H.degree(x)):
            add(path[2 * i], path[2 * i + 1], "door", x)
    xor_parts = []
    for x in range(n):
        p = xor_order(H, o, k, x)
        if p < 0 or (H.degree(x) == 0 and p == 0):
            raise InfeasibleKError(f"H-vertex {x} would get XOR order {p}")
        a = tuple(new_vertex(f"x{x}_a{i}") for i in range(1, p + 1))
        b = tuple(new_vertex(f"x{x}_b{i}") for i in range(1, p + 1))
        mids = tuple(new_vertex(f"x{x}_u{i}") for i in range(1, p + 1))
        xor_parts.append((p, a, b, mids))
    for x in range(n):
        p, a, b, mids = xor_parts[x]
        x_l, x_r, v = 3 * x, 3 * x + 1, paths[x][-1]
        if p == 0:
            add(x_l, x_r, "first_set", x)
            add(v, x_r, "door", x)
            continue
        add(x_l, a[0], "first_set", x)
        add(v, b[0], "door", x)
        for i in range(p - 1):
            add(a[i], a[i + 1], "xor", x)
            add(b[i], b[i + 1], "xor", x)
        for i in range(p):
            add(a[i], mids[i], "xor", x)
            add(mids[i], b[i], "xor", x)
        first_end, second_end = (a[-1], b[-1]) if p % 2 == 0 else (b[-1], a[-1])
        add(x_r, first_end, "right_first_set", x)
        add(x_r, second_end, "right_second_set", x)

    order = psi_order(H, o)
    gadget_of_edge = [None] * m
    next_gateway = [0] * n
    gadget_list = []
    for psi, e in enumerate(order):
        u, v, w = H.edges[e]
        if o.is_directed(e):
            kind = gd.STRICT
            xs = o.tail(e)
            ys = v if xs == u else u
        else:
            kind, xs, ys = gd.FLEXIBLE, u, v
        g = gd.build_parity_gadget(kind)
        sigma, delta = _parity_weights(w)
        gmap = [None] * g.vertex_count
        for side, (T, TP) in ((xs, (gd.X, gd.XP)), (ys, (gd.Y, gd.YP))):
            i = next_gateway[side]
            next_gateway[side] += 1
            gmap[T] = paths[side][2 * i + 1]
            gmap[TP] = paths[side][2 * i + 2]
        gmap[gd.Z] = 3 * (n + e)
        gmap[gd.ZP] = 3 * (n + e) + 1
        for lv in range(6, g.vertex_count):
            gmap[lv] = new_vertex(f"g{psi}_{g.labels[lv]}")
        internal = {}
        for la, lb, r in g.edges:
            w_edge = sigma if r == gd.SAME else delta if r == gd.DIFF else 0
            ge = add(gmap[la], gmap[lb], "gadget", psi, w_edge)
            internal[ge] = frozenset((la, lb))
        standard = {
            i: frozenset(edge(*(gmap[lv] for lv in le)) for le in es)
            for i, es in gd.standard_subtours(g).items()
        }
        gadget_list.append(GadgetInstance(psi, e, kind, xs, ys, sigma, delta, tuple(gmap), internal, standard))
        gadget_of_edge[e] = psi

    bundles = []
    for x in range(n):
        p, a, b, mids = xor_parts[x]
        x_l, x_r, v = 3 * x, 3 * x + 1, paths[x][-1]
        path = paths[x]
        doors = tuple(edge(path[2 * i], path[2 * i + 1]) for i in range(H.degree(x)))
        if p == 0:
            left = right = edge(x_l, x_r)
            closest = right_second = edge(v, x_r)
            xi = xf = xs_ = frozenset()
        else:
            left, closest = edge(x_l, a[0]), edge(v, b[0])
            ends = (a[-1], b[-1]) if p % 2 == 0 else (b[-1], a[-1])
            right, right_second = edge(x_r, ends[0]), edge(x_r, ends[1])
            ladder = gd.XorGadget(p)
            gid = list(a) + list(b) + list(mids)

            def lift(es):
                return frozenset(edge(*(gid[lv] for lv in le)) for le in es)

            xi = lift(ladder.edges())
            xf, xs_ = lift(ladder.subtour_from("a")), lift(ladder.subtour_from("b"))
        related = tuple(g.psi for g in gadget_list if x in (g.x_side, g.y_side))
        bundles.append(VertexBundle(
            x, H.degree(x), o.out_degree(x), p, x_l, x_r, tuple(path), doors + (closest,), closest,
            left, right, right_second, a, b, mids, xi, xf, xs_, related,
        ))

    N = len(labels)
    art = ReductionArtifact(
        source=H, k=k, orientation=o, vertex_count=N, weights=weights, edge_roles=roles,
        labels=tuple(labels), bundles=tuple(bundles), gadgets=tuple(gadget_list),
        gadget_of_edge=tuple(gadget_of_edge), priority=(), M=sum(weights.values()),
    )
    object.__setattr__(art, "priority", _assign_priorities(art))
    problems = artifact_problems(art)
    if problems:
        raise ReductionError("artifact invariants violated: " + "; ".join(problems))
    return art


def _assign_priorities(a: ReductionArtifact) -> tuple[int, ...]:
    """Priorities from N down to 1: degree-two vertices, every x_l, XOR blocks, gadgets."""
    sequence = sorted(a.degree_two)
    sequence += [b.x_l for b in a.bundles]
    for b in a.bundles:
        sequence += list(b.rail_a) + [b.x_r] + list(reversed(b.rail_b))
    for g in a.gadgets:
        sequence += [g.local_to_global[lv] for lv in g.gadget.priority_order]
    lam = [0] * a.vertex_count
    value = a.vertex_count
    for v in sequence:
        if lam[v]:
            raise ReductionError(f"vertex {a.labels[v]} receives two priorities")
        lam[v] = value
        value -= 1
    return tuple(lam)


def expected_counts(H: MaxCutInstance, o: Orientation, k: int) -> tuple[int, int]:
    """Closed-form (vertex count, edge count) of G."""
    n, m = H.vertex_count, H.edge_count
    s = len(o.directed)
    f = m - s
    sp = sum(xor_order(H, o, k, x) for x in range(n))
    vertices = 3 * (n + m) + 4 * m + 3 * sp + 8 * s + 2 * f
    edges = 4 * n + 4 * m + 18 * s + 10 * f + 4 * sp
    return vertices, edges


def artifact_problems(a: ReductionArtifact) -> list[str]:
    H, o = a.source, a.orientation
    problems = []
    deg = [a.degree(v) for v in range(a.vertex_count)]
    if any(d not in (2, 3, 4) for d in deg):
        problems.append("vertex degree outside {2, 3, 4}")
    for v in range(a.vertex_count):
        if deg[v] != 2 and not any(deg[u] == 2 for u in a.adjacency[v]):
            problems.append(f"{a.labels[v]} neither degree two nor adjacent to one")
    in_gadget = {v for g in a.gadgets for v in g.local_to_global}
    if any(deg[v] == 4 and v not in in_gadget for v in range(a.vertex_count)):
        problems.append("degree-four vertex outside every parity gadget")
    for g in a.gadgets:
        want = {gd.Z, gd.ZP, 6, gd.YP} if g.kind == gd.STRICT else {gd.Z, gd.ZP, gd.XP, gd.YP}
        got = {lv for lv, v in enumerate(g.local_to_global) if deg[v] == 4}
        if got != want:
            problems.append(f"gadget psi={g.psi} has degree-four set {sorted(got)}")
    if sorted(a.priority) != list(range(1, a.vertex_count + 1)):
        problems.append("priorities are not a bijection onto 1..N")
    n2 = len(a.degree_two)
    if {v for v in range(a.vertex_count) if a.priority[v] > a.vertex_count - n2} != set(a.degree_two):
        problems.append("degree-two vertices do not hold the top priorities")
    if a.M != sum(a.weights.values()):
        problems.append("M differs from the total G weight")
    if any(b.xor_order < 0 for b in a.bundles):
        problems.append("negative XOR order")
    if (a.vertex_count, len(a.weights)) != expected_counts(H, o, a.k):
        problems.append(f"counts {(a.vertex_count, len(a.weights))} != closed form {expected_counts(H, o, a.k)}")
    flexible = [H.edges[g.h_edge][:2] for g in a.gadgets if g.kind == gd.FLEXIBLE]
    if not _is_forest(H.vertex_count, flexible):
        problems.append("flexible-gadget H-edges contain a cycle")
    for b in a.bundles:
        if list(b.gadgets) != sorted(b.gadgets):
            problems.append(f"gadgets along x{b.x}'s second-set path are not in psi-order")
        # gateway i of x carries the i-th gadget in psi-order
        for i, psi in enumerate(b.gadgets):
            g = a.gadgets[psi]
            T = gd.X if g.x_side == b.x else gd.Y
            if g.local_to_global[T] != b.path[2 * i + 1]:
                problems.append(f"gadget psi={psi} sits on the wrong gateway of x{b.x}")
    return problems


def _is_forest(n: int, pairs) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


# -- completion ----------------------------------------------------------------

def nonedge_weight(a: ReductionArtifact, u: int, v: int) -> int:
    if u == v:
        raise DomainError("no weight for a loop")
    if a.is_g_edge(u, v):
        raise DomainError(f"{edge(u, v)} is an edge of G")
    return a.M * 4 ** max(a.priority[u], a.priority[v])


def complete_instance(a: ReductionArtifact) -> TspInstance:
    if a.M == 0:
        warnings.warn("M = 0: all non-edge weights are zero, the completion does not penalize non-edges",
                      stacklevel=2)
    n = a.vertex_count
    power = [4 ** a.priority[v] for v in range(n)]
    non_edges = []

    def weight(u, v):
        e = edge(u, v)
        if e in a.weights:
            return a.weights[e]
        non_edges.append(e)
        return a.M * max(power[u], power[v])

    inst = TspInstance(n, weight)
    inst.non_edges = frozenset(non_edges)
    return inst


def metricize(inst: TspInstance) -> TspInstance:
    """Add the largest pair weight to every pair; swap deltas are unchanged."""
    c = max((inst.matrix[u][v] for u, v in inst.pairs()), default=0)
    return TspInstance(inst.vertex_count, lambda u, v: inst.matrix[u][v] + c, inst.non_edges)


def triangle_inequality_holds(inst: TspInstance) -> bool:
    w, n = inst.matrix, inst.vertex_count
    return all(
        w[u][v] <= w[u][x] + w[x][v]
        for u in range(n) for v in range(u + 1, n) for x in range(n) if x not in (u, v)
    )


# -- manifest -------------------------------------------------------------------

def to_manifest(a: ReductionArtifact) -> dict:
    H = a.source
    return {
        "format": "kopt-pls-manifest/1",
        "source": {"vertex_count": H.vertex_count, "edges": [list(e) for e in H.edges]},
        "k": a.k,
        "M": str(a.M),
        "counts": {key: (str(v) if key == "M" else v) for key, v in a.summary().items()},
        "psi": [
            {"psi": g.psi, "h_edge": g.h_edge, "kind": g.kind, "x_side": g.x_side, "y_side": g.y_side,
             "same_set_weight": g.same_set_weight, "diff_set_weight": g.diff_set_weight}
            for g in a.gadgets
        ],
        "priority": list(a.priority),
        "labels": list(a.labels),
        "h_vertices": [
            {"x": b.x, "degree": b.degree, "out_degree": b.out_degree, "xor_order": b.xor_order,
             "x_l": b.x_l, "x_r": b.x_r, "doors": [list(d) for d in b.doors],
             "left_first_set": list(b.left_first_set), "right_first_set": list(b.right_first_set),
             "right_second_set": list(b.right_second_set), "closest_door": list(b.closest_door)}
            for b in a.bundles
        ],
    }


def from_manifest(data: dict) -> ReductionArtifact:
    """Rebuild the artifact from the embedded source and k, checking it matches the manifest."""
    src = data["source"]
    H = MaxCutInstance(src["vertex_count"], tuple(tuple(e) for e in src["edges"]))
    a = build_reduction(H, data["k"])
    if str(a.M) != data["M"] or list(a.priority) != data["priority"]:
        raise ReductionError("manifest does not match the rebuilt artifact")
    return a
