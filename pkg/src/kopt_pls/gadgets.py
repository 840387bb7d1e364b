"""Parity gadgets (strict and flexible) and XOR gadgets, with their subtour oracles.

Local vertex ids 0..5 are the terminals X, X', Y, Y', Z, Z' in every parity gadget, so
the reduction glues gadgets by role. Edge roles: ``S`` same-set, ``D`` different-set,
``P`` plain (weight zero).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import TranscriptionError
from .report import CheckReport

X, XP, Y, YP, Z, ZP = range(6)
TERMINALS = ("X", "X'", "Y", "Y'", "Z", "Z'")
SAME, DIFF, PLAIN = "S", "D", "P"
STRICT, FLEXIBLE = "strict", "flexible"

# Standard patterns as sets of path endpoint pairs.
PATTERNS = {
    1: frozenset({frozenset({Z, ZP})}),
    2: frozenset({frozenset({X, XP}), frozenset({Z, ZP})}),
    3: frozenset({frozenset({Y, YP}), frozenset({Z, ZP})}),
    4: frozenset({frozenset({X, XP}), frozenset({Y, YP}), frozenset({Z, ZP})}),
}
# (r_x, r_y) parameters and vertices of degree four once glued into the graph.
PARAMETERS = {STRICT: (4, 2), FLEXIBLE: (2, 2)}

_STRICT_LABELS = TERMINALS + ("a", "a'", "b", "b'", "m(a'X)", "m(aX')", "m(bb')", "m(YY')")
_A, _AP, _B, _BP = 6, 7, 8, 9
_STRICT_EDGES = (
    # subdivided edges that every subtour contains
    (_AP, 10, PLAIN), (10, X, PLAIN),
    (_A, 11, PLAIN), (11, XP, PLAIN),
    (_B, 12, PLAIN), (12, _BP, PLAIN),
    (Y, 13, PLAIN), (13, YP, PLAIN),
    (_B, _A, PLAIN),
    (_A, ZP, DIFF),
    (ZP, Z, SAME),
    (Z, YP, DIFF),
    (X, _B, PLAIN),
    (YP, _A, SAME),
    (XP, _BP, PLAIN),
    (_BP, _AP, PLAIN),
    (Y, ZP, PLAIN),
    (Z, _AP, PLAIN),
)
_STRICT_PRIORITY = (Y, X, _B, XP, _BP, _AP, Z, ZP, _A, YP)

_FLEX_LABELS = TERMINALS + ("R", "S")
_R, _S = 6, 7
_FLEX_EDGES = (
    (X, _R, PLAIN), (_R, XP, PLAIN),
    (YP, _S, PLAIN), (_S, Y, PLAIN),
    (Y, ZP, PLAIN),
    (Z, X, PLAIN),
    (ZP, Z, SAME),
    (XP, YP, SAME),
    (YP, Z, DIFF),
    (XP, ZP, DIFF),
)
_FLEX_PRIORITY = (Y, X, Z, ZP, XP, YP)


@dataclass(frozen=True)
class ParityGadget:
    kind: str
    labels: tuple[str, ...]
    edges: tuple[tuple[int, int, str], ...]
    priority_order: tuple[int, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    def local_degree(self, v: int) -> int:
        return sum(v in (a, b) for a, b, _ in self.edges)

    def glued_degree(self, v: int) -> int:
        """Degree in the reduced graph, where each terminal carries one external edge."""
        return self.local_degree(v) + (1 if v < 6 else 0)

    def edge_keys(self) -> list[frozenset]:
        return [frozenset((a, b)) for a, b, _ in self.edges]

    def role(self, e) -> str:
        key = frozenset(e)
        for a, b, r in self.edges:
            if frozenset((a, b)) == key:
                return r
        raise KeyError(e)

    def dump(self) -> str:
        return "".join(f"{a} {b} {r}\n" for a, b, r in self.edges)

    def without_edge(self, index: int) -> "ParityGadget":
        """Negative-control copy with one edge deleted."""
        edges = self.edges[:index] + self.edges[index + 1:]
        return ParityGadget(self.kind, self.labels, edges, self.priority_order)


@dataclass(frozen=True)
class SubtourClass:
    tag: str  # "standard", "non-standard" or "invalid"
    pattern: int | None = None

    def __str__(self):
        return f"standard({self.pattern})" if self.tag == "standard" else self.tag


INVALID = SubtourClass("invalid")
NONSTANDARD = SubtourClass("non-standard")


def _raw_gadget(kind: str) -> ParityGadget:
    if kind == STRICT:
        return ParityGadget(STRICT, _STRICT_LABELS, _STRICT_EDGES, _STRICT_PRIORITY)
    if kind == FLEXIBLE:
        return ParityGadget(FLEXIBLE, _FLEX_LABELS, _FLEX_EDGES, _FLEX_PRIORITY)
    raise ValueError(f"unknown gadget kind {kind!r}")


@lru_cache(maxsize=None)
def build_parity_gadget(kind: str) -> ParityGadget:
    g = _raw_gadget(kind)
    report = verify_gadget(g)
    if not report.passed:
        raise TranscriptionError(f"{kind} gadget fails its checks: {report.failures()}")
    return g


# -- subtours ----------------------------------------------------------------

def _path_endpoint_pairs(n: int, edges) -> frozenset | None:
    """Endpoint pairs of a linear forest covering all n vertices, or None."""
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    if any(not 1 <= len(a) <= 2 for a in adj):
        return None
    seen = [False] * n
    pairs = []
    for s in range(n):
        if seen[s] or len(adj[s]) != 1:
            continue
        prev, cur = None, s
        seen[s] = True
        while True:
            nxt = [u for u in adj[cur] if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            seen[cur] = True
        pairs.append(frozenset((s, cur)))
    if not all(seen):
        return None  # leftover cycle
    return frozenset(pairs)


def classify_subtour(g: ParityGadget, edges) -> SubtourClass:
    """Classify a set of local edges (pairs) against the subtour definition."""
    edges = [tuple(e) for e in edges]
    keys = set(g.edge_keys())
    if any(frozenset(e) not in keys for e in edges) or len({frozenset(e) for e in edges}) != len(edges):
        return INVALID
    pairs = _path_endpoint_pairs(g.vertex_count, edges)
    if pairs is None:
        return INVALID
    endpoints = set().union(*pairs)
    if Z not in endpoints or ZP not in endpoints or not endpoints <= set(range(6)):
        return INVALID
    for i, pat in PATTERNS.items():
        if pairs == pat:
            return SubtourClass("standard", i)
    return NONSTANDARD


def enumerate_subtours(g: ParityGadget) -> list[tuple[frozenset, SubtourClass]]:
    """All subtours of ``g`` as (edge set of local pairs, class), by pruned subset search."""
    n = g.vertex_count
    edges = [(a, b) for a, b, _ in g.edges]
    remaining = [0] * n
    for a, b in edges:
        remaining[a] += 1
        remaining[b] += 1
    degree = [0] * n
    chosen = []
    out = []

    def cap(v):
        return 1 if v in (Z, ZP) else 2

    def feasible_tail(v):
        return degree[v] + remaining[v] >= 1

    def rec(i):
        if i == len(edges):
            cls = classify_subtour(g, chosen)
            if cls is not INVALID:
                out.append((frozenset(frozenset(e) for e in chosen), cls))
            return
        a, b = edges[i]
        remaining[a] -= 1
        remaining[b] -= 1
        if degree[a] < cap(a) and degree[b] < cap(b):
            degree[a] += 1
            degree[b] += 1
            chosen.append((a, b))
            rec(i + 1)
            chosen.pop()
            degree[a] -= 1
            degree[b] -= 1
        if feasible_tail(a) and feasible_tail(b):
            rec(i + 1)
        remaining[a] += 1
        remaining[b] += 1

    rec(0)
    return out


def standard_subtours(g: ParityGadget) -> dict[int, frozenset]:
    """Pattern -> edge set of the standard subtour; requires exactly one per pattern."""
    found: dict[int, list] = {}
    for es, cls in enumerate_subtours(g):
        if cls.tag == "standard":
            found.setdefault(cls.pattern, []).append(es)
    if sorted(found) != [1, 2, 3, 4] or any(len(v) != 1 for v in found.values()):
        raise TranscriptionError(f"{g.kind} gadget lacks unique standard subtours")
    return {i: v[0] for i, v in found.items()}


def subtour_weight(g: ParityGadget, subtour, same_set_w: int, diff_set_w: int) -> int:
    subtour = [tuple(e) for e in subtour]
    if classify_subtour(g, subtour) is INVALID:
        raise ValueError("edge set is not a subtour of the gadget")
    total = 0
    for e in subtour:
        r = g.role(e)
        total += same_set_w if r == SAME else diff_set_w if r == DIFF else 0
    return total


def subtour_change_size(g: ParityGadget, i: int, j: int) -> int:
    if i not in PATTERNS or j not in PATTERNS:
        raise ValueError(f"pattern index must be in 1..4, got {i}, {j}")
    subs = _cached_standard(g)
    return len(subs[i] ^ subs[j])


@lru_cache(maxsize=None)
def _cached_standard(g: ParityGadget) -> dict[int, frozenset]:
    return standard_subtours(g)


def verify_gadget(g: ParityGadget) -> CheckReport:
    report = CheckReport(f"parity-gadget:{g.kind}")
    subs = enumerate_subtours(g)
    standard: dict[int, list] = {}
    for es, cls in subs:
        if cls.tag == "standard":
            standard.setdefault(cls.pattern, []).append(es)
    nonstandard = sum(cls.tag == "non-standard" for _, cls in subs)
    unique = all(len(standard.get(i, [])) == 1 for i in PATTERNS)
    report.check("unique standard subtour per pattern", unique, {i: len(standard.get(i, [])) for i in PATTERNS})
    want_ns = 0 if g.kind == STRICT else 3
    report.check("non-standard subtour count", nonstandard == want_ns, f"{nonstandard} (want {want_ns})")
    roles = [r for *_, r in g.edges]
    report.check("two same-set and two different-set edges", roles.count(SAME) == 2 and roles.count(DIFF) == 2)
    want_deg4 = {Z, ZP, _A, YP} if g.kind == STRICT else {Z, ZP, XP, YP}
    deg4 = {v for v in range(g.vertex_count) if g.glued_degree(v) == 4}
    report.check("degree-four vertices", deg4 == want_deg4, sorted(g.labels[v] for v in deg4))
    prio = set(g.priority_order)
    deg2 = {v for v in range(g.vertex_count) if g.glued_degree(v) == 2}
    report.check("priority order covers exactly the non-degree-two vertices",
                 prio == set(range(g.vertex_count)) - deg2 and len(prio) == len(g.priority_order))
    if not unique:
        report.check("subtour weights", False, "skipped: standard subtours not unique")
        report.check("parity parameters", False, "skipped: standard subtours not unique")
        return report
    sub = {i: [tuple(e) for e in standard[i][0]] for i in PATTERNS}
    weights_ok = True
    for sigma, delta in ((5, 0), (0, 2), (3, 7), (0, 0)):
        ws = {i: subtour_weight(g, sub[i], sigma, delta) for i in PATTERNS}
        weights_ok &= ws[1] == ws[4] == sigma and ws[2] == ws[3] == delta
    report.check("subtours (1),(4) weigh same-set, (2),(3) different-set", weights_ok)
    rx, ry = PARAMETERS[g.kind]
    es = {i: standard[i][0] for i in PATTERNS}
    size = {(i, j): len(es[i] ^ es[j]) for i, j in combinations(PATTERNS, 2)}
    ok = (
        size[1, 2] == size[3, 4] == 2 * rx - 1
        and size[1, 3] == size[2, 4] == 2 * ry - 1
        and min(size[1, 4], size[2, 3]) > 2 * max(rx, ry) - 1
    )
    report.check(f"({rx},{ry})-parity gadget change sizes", ok, {f"{i}{j}": v for (i, j), v in size.items()})
    report.counters.update(subtours=len(subs), nonstandard=nonstandard)
    return report


def verify_parity_gadget(kind) -> CheckReport:
    """Run the lemma checks on a gadget kind (or on a given, possibly corrupted, gadget)."""
    return verify_gadget(kind if isinstance(kind, ParityGadget) else _raw_gadget(kind))


# -- XOR gadgets -------------------------------------------------------------

@dataclass(frozen=True)
class XorGadget:
    """Ladder of order p: rail a is ids 0..p-1, rail b is p..2p-1, rung midpoints 2p..3p-1."""

    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("XOR gadget order must be nonnegative")

    @property
    def vertex_count(self) -> int:
        return 3 * self.order

    def a(self, i: int) -> int:
        return i - 1

    def b(self, i: int) -> int:
        return self.order + i - 1

    def mid(self, i: int) -> int:
        return 2 * self.order + i - 1

    def rail_edges(self) -> list[tuple[int, int]]:
        p = self.order
        return [(self.a(i), self.a(i + 1)) for i in range(1, p)] + [(self.b(i), self.b(i + 1)) for i in range(1, p)]

    def rung_edges(self) -> list[tuple[int, int]]:
        out = []
        for i in range(1, self.order + 1):
            out += [(self.a(i), self.mid(i)), (self.mid(i), self.b(i))]
        return out

    def edges(self) -> list[tuple[int, int]]:
        return self.rail_edges() + self.rung_edges()

    def subtour_from(self, start_rail: str) -> frozenset:
        """The zig-zag subtour with an endpoint at a_1 (``"a"``) or b_1 (``"b"``).

        Rail step i -> i+1 runs on the opposite rail of the step before; from a_1 the
        first step is on rail b.
        """
        if self.order == 0:
            return frozenset()
        on_b = start_rail == "a"
        es = set(frozenset(e) for e in self.rung_edges())
        for i in range(1, self.order):
            rail = self.b if on_b else self.a
            es.add(frozenset((rail(i), rail(i + 1))))
            on_b = not on_b
        return frozenset(es)


def build_xor_gadget(p: int) -> XorGadget:
    return XorGadget(p)


def enumerate_xor_subtours(x: XorGadget) -> list[frozenset]:
    """Spanning paths with both endpoints in {a_1, a_p, b_1, b_p}, by exhaustive DFS."""
    p = x.order
    if p == 0:
        return [frozenset()]
    n = x.vertex_count
    adj = [[] for _ in range(n)]
    for u, v in x.edges():
        adj[u].append(v)
        adj[v].append(u)
    ends = {x.a(1), x.a(p), x.b(1), x.b(p)}
    found = set()

    def dfs(path, visited):
        cur = path[-1]
        if len(path) == n:
            if cur in ends:
                found.add(frozenset(frozenset(e) for e in zip(path, path[1:])))
            return
        for nb in adj[cur]:
            if nb not in visited:
                visited.add(nb)
                path.append(nb)
                dfs(path, visited)
                path.pop()
                visited.discard(nb)

    for s in sorted(ends):
        dfs([s], {s})
    return sorted(found, key=lambda es: sorted(tuple(sorted(e)) for e in es))
