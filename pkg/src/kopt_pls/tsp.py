"""TSP instances with integer weights of unbounded size, tours, k-swaps and k-Opt.

A k-swap removes ``s <= k`` tour edges, leaving ``s`` segments, and reconnects the
segment endpoints into a single Hamiltonian cycle. Reconnections are enumerated as
orderings of segments 1..s-1 (segment 0 fixed and kept forward) times orientations,
which produces every single-cycle pairing exactly once. Pairings that re-add a removed
edge are dropped: the resulting tour is reached by a strictly smaller swap, which is
enumerated earlier, so the neighborhood stays complete.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from pathlib import Path
from typing import Iterator

from .errors import (
    BudgetExceeded,
    DimensionError,
    EnumerationLimitError,
    InvalidSwapError,
    ParseError,
    PreconditionError,
)

G_EDGE, NON_EDGE = "G", "X"
PIVOTS = ("first", "best")
DEFAULT_HAMILTONIAN_LIMIT = 64


def edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class TspInstance:
    """Complete graph on ``vertex_count`` vertices with a symmetric nonnegative weight matrix."""

    def __init__(self, vertex_count: int, weights, non_edges=frozenset()):
        if vertex_count < 3:
            raise ValueError("a TSP instance needs at least 3 vertices")
        n = vertex_count
        matrix = [[0] * n for _ in range(n)]
        if callable(weights):
            for u in range(n):
                for v in range(u + 1, n):
                    matrix[u][v] = matrix[v][u] = int(weights(u, v))
        else:
            for u in range(n):
                for v in range(u + 1, n):
                    w = int(weights[u][v])
                    if w != int(weights[v][u]):
                        raise ValueError(f"weights not symmetric at ({u}, {v})")
                    matrix[u][v] = matrix[v][u] = w
        for u in range(n):
            for v in range(u + 1, n):
                if matrix[u][v] < 0:
                    raise ValueError(f"negative weight at ({u}, {v})")
        self.vertex_count = n
        self.matrix = matrix
        self.non_edges = frozenset(edge(u, v) for u, v in non_edges)

    def weight(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError("no loop weights")
        return self.matrix[u][v]

    def edge_class(self, u: int, v: int) -> str:
        return NON_EDGE if edge(u, v) in self.non_edges else G_EDGE

    def pairs(self):
        n = self.vertex_count
        for u in range(n):
            for v in range(u + 1, n):
                yield u, v

    def __eq__(self, other):
        return (
            isinstance(other, TspInstance)
            and self.matrix == other.matrix
            and self.non_edges == other.non_edges
        )

    def __repr__(self):
        return f"TspInstance(vertex_count={self.vertex_count}, non_edges={len(self.non_edges)})"


@dataclass(frozen=True)
class Tour:
    """A Hamiltonian cycle, stored rotated to start at 0 with the smaller neighbor of 0 second."""

    order: tuple[int, ...]

    def __post_init__(self):
        o = tuple(int(v) for v in self.order)
        n = len(o)
        if n < 3 or sorted(o) != list(range(n)):
            raise ValueError("a tour must list every vertex 0..n-1 exactly once (n >= 3)")
        i = o.index(0)
        o = o[i:] + o[:i]
        if o[-1] < o[1]:
            o = (0,) + tuple(reversed(o[1:]))
        object.__setattr__(self, "order", o)

    def __len__(self):
        return len(self.order)

    def edges(self) -> frozenset:
        o, n = self.order, len(self.order)
        return frozenset(edge(o[i], o[(i + 1) % n]) for i in range(n))

    def neighbors(self, v: int) -> tuple[int, int]:
        i = self.order.index(v)
        n = len(self.order)
        return self.order[i - 1], self.order[(i + 1) % n]

    @classmethod
    def from_edges(cls, n: int, edges) -> "Tour":
        """Rebuild a tour from its edge set; raises InvalidSwapError unless it is one n-cycle."""
        adj = [[] for _ in range(n)]
        count = 0
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
            count += 1
        if count != n or any(len(a) != 2 for a in adj):
            raise InvalidSwapError("edge set is not 2-regular on all vertices")
        order, prev, cur = [0], None, 0
        while True:
            a, b = adj[cur]
            nxt = b if a == prev else a
            if nxt == 0:
                break
            order.append(nxt)
            prev, cur = cur, nxt
            if len(order) > n:
                break
        if len(order) != n:
            raise InvalidSwapError(f"edge set splits into several cycles (first has {len(order)} vertices)")
        return cls(tuple(order))

    def __str__(self):
        return " ".join(map(str, self.order))


@dataclass(frozen=True)
class SwapMove:
    remove: frozenset
    add: frozenset

    def __post_init__(self):
        object.__setattr__(self, "remove", frozenset(edge(*e) for e in self.remove))
        object.__setattr__(self, "add", frozenset(edge(*e) for e in self.add))
        if len(self.remove) != len(self.add) or not self.remove:
            raise ValueError("a swap exchanges equally many (>= 1) edges")

    @property
    def size(self) -> int:
        return len(self.remove)

    def reversed(self) -> "SwapMove":
        return SwapMove(self.add, self.remove)

    def sort_key(self):
        return (self.size, tuple(sorted(self.remove)), tuple(sorted(self.add)))

    def delta(self, inst: TspInstance) -> int:
        w = inst.matrix
        return sum(w[u][v] for u, v in self.add) - sum(w[u][v] for u, v in self.remove)

    def to_json(self) -> dict:
        return {"remove": [list(e) for e in sorted(self.remove)], "add": [list(e) for e in sorted(self.add)]}

    @classmethod
    def from_json(cls, data) -> "SwapMove":
        return cls(frozenset(tuple(e) for e in data["remove"]), frozenset(tuple(e) for e in data["add"]))


def tour_weight(inst: TspInstance, tour: Tour) -> int:
    if len(tour) != inst.vertex_count:
        raise DimensionError(f"tour has {len(tour)} vertices, instance has {inst.vertex_count}")
    w, o = inst.matrix, tour.order
    return sum(w[o[i - 1]][o[i]] for i in range(len(o)))


def apply_swap(tour: Tour, move: SwapMove) -> Tour:
    current = tour.edges()
    if not move.remove <= current:
        raise PreconditionError("swap removes edges that are not in the tour")
    if move.add & current:
        raise PreconditionError("swap adds edges that are already in the tour")
    return Tour.from_edges(len(tour), (current - move.remove) | move.add)


# -- exhaustive k-swap neighborhood -------------------------------------------

@lru_cache(maxsize=None)
def reconnection_templates(s: int) -> tuple:
    """All single-cycle reconnections of ``s`` segments.

    Segment j has endpoint slots 2j (head) and 2j+1 (tail). Each template is
    ``(pairs, sequence)``: the added edges as slot pairs, and the segment traversal order
    as ``(segment, reversed)`` tuples.
    """
    out = []
    for perm in permutations(range(1, s)):
        for flips in product((False, True), repeat=s - 1):
            seq = ((0, False),) + tuple(zip(perm, flips))
            pairs = []
            for (a, ra), (b, rb) in zip(seq, seq[1:] + seq[:1]):
                pairs.append((2 * a if ra else 2 * a + 1, 2 * b + 1 if rb else 2 * b))
            out.append((tuple(pairs), seq))
    return tuple(out)


def neighborhood_size(n: int, k: int) -> int:
    """Upper bound on the candidates ``enumerate_improving_k_swaps`` evaluates."""
    return sum(math.comb(n, s) * len(reconnection_templates(s)) for s in range(2, min(k, n) + 1))


class _Counter:
    __slots__ = ("budget", "used")

    def __init__(self, budget):
        self.budget = budget
        self.used = 0

    def tick(self, amount: int):
        self.used += amount
        if self.budget is not None and self.used > self.budget:
            raise BudgetExceeded(self.budget)


def _improving_candidates(inst: TspInstance, tour: Tour, k: int, counter: _Counter, sizes=None):
    """Yield ``(move, delta, builder)`` for improving swaps in enumeration order.

    Order: ascending size, then lexicographic remove-set, then lexicographic add-set.
    ``builder()`` returns the resulting tour.
    """
    order, n, w = tour.order, len(tour.order), inst.matrix
    tour_edges = sorted((edge(order[i], order[(i + 1) % n]), i) for i in range(n))
    for s in sizes or range(2, min(k, n) + 1):
        templates = reconnection_templates(s)
        for combo in combinations(tour_edges, s):
            counter.tick(len(templates))
            removed = {e for e, _ in combo}
            removed_weight = sum(w[u][v] for u, v in removed)
            pos = sorted(i for _, i in combo)
            ends = []
            for j in range(s):
                ends.append(order[(pos[j] + 1) % n])
                ends.append(order[pos[(j + 1) % s]])
            found = {}
            for pairs, seq in templates:
                added = []
                total = 0
                for a, b in pairs:
                    e = edge(ends[a], ends[b])
                    if e in removed:
                        break
                    added.append(e)
                    total += w[e[0]][e[1]]
                else:
                    if total < removed_weight:
                        key = tuple(sorted(added))
                        if key not in found:
                            found[key] = (total - removed_weight, seq)
            if not found:
                continue
            removal = frozenset(removed)
            for key in sorted(found):
                delta, seq = found[key]
                yield (
                    SwapMove(removal, frozenset(key)),
                    delta,
                    _builder(order, pos, seq),
                )


def _builder(order, pos, seq):
    def build():
        n, s = len(order), len(pos)
        segments = []
        for j in range(s):
            start, stop = pos[j] + 1, pos[(j + 1) % s]
            if stop < start:
                stop += n
            segments.append([order[i % n] for i in range(start, stop + 1)])
        out = []
        for idx, rev in seq:
            out.extend(reversed(segments[idx]) if rev else segments[idx])
        return Tour(tuple(out))

    return build


def enumerate_improving_k_swaps(inst: TspInstance, tour: Tour, k: int, budget: int | None = None) -> Iterator[SwapMove]:
    """Stream every improving swap of at most ``k`` edges, in enumeration order.

    The cost is about ``neighborhood_size(n, k)`` candidate evaluations; pass ``budget`` to
    raise BudgetExceeded instead of running past that many.
    """
    if len(tour) != inst.vertex_count:
        raise DimensionError("tour/instance size mismatch")
    counter = _Counter(budget)
    for move, _, _ in _improving_candidates(inst, tour, k, counter):
        yield move


def find_improving_3swap(inst: TspInstance, tour: Tour) -> SwapMove | None:
    return next(enumerate_improving_k_swaps(inst, tour, 3), None)


@dataclass
class SearchResult:
    tour: Tour
    trace: list
    weights: list
    candidates: int


def k_opt_local_search(
    inst: TspInstance,
    start: Tour,
    k: int,
    pivot: str = "first",
    budget: int | None = None,
) -> SearchResult:
    """Apply improving swaps of size <= k until none is left.

    ``budget`` caps the candidates evaluated over the whole run; BudgetExceeded carries
    no partial result, callers that need one should catch and rerun with a larger cap.
    """
    if pivot not in PIVOTS:
        raise ValueError(f"unknown pivot {pivot!r}; expected one of {PIVOTS}")
    if len(start) != inst.vertex_count:
        raise DimensionError("tour/instance size mismatch")
    counter = _Counter(budget)
    tour, trace = start, []
    weights = [tour_weight(inst, tour)]
    while True:
        stream = _improving_candidates(inst, tour, k, counter)
        if pivot == "first":
            chosen = next(stream, None)
        else:
            chosen = None
            for cand in stream:
                if chosen is None or cand[1] < chosen[1]:
                    chosen = cand
        if chosen is None:
            return SearchResult(tour, trace, weights, counter.used)
        move, delta, build = chosen
        tour = build()
        trace.append(move)
        weights.append(weights[-1] + delta)


def replay_swaps(inst: TspInstance, start: Tour, trace) -> tuple[Tour, list[int]]:
    tour = start
    weights = [tour_weight(inst, tour)]
    for move in trace:
        tour = apply_swap(tour, move)
        weights.append(tour_weight(inst, tour))
    return tour, weights


# -- Hamiltonian cycles of a sparse graph -------------------------------------

def hamiltonian_cycles(edges, vertex_count: int, limit: int = DEFAULT_HAMILTONIAN_LIMIT) -> Iterator[Tour]:
    """Every Hamiltonian cycle of the graph, once each, in canonical form.

    Branch-and-propagate over edge states: a vertex with two chosen edges loses its
    other edges, a vertex with exactly two remaining options takes both, and partial
    subcycles are rejected.
    """
    n = vertex_count
    if n > limit:
        raise EnumerationLimitError(f"{n} vertices exceeds Hamiltonian-cycle limit {limit}")
    elist = sorted({edge(u, v) for u, v in edges})
    incident = [[] for _ in range(n)]
    for i, (u, v) in enumerate(elist):
        incident[u].append(i)
        incident[v].append(i)

    def propagate(state):
        changed = True
        while changed:
            changed = False
            for v in range(n):
                chosen = undecided = 0
                for i in incident[v]:
                    if state[i] is True:
                        chosen += 1
                    elif state[i] is None:
                        undecided += 1
                if chosen > 2 or chosen + undecided < 2:
                    return False
                if undecided and (chosen == 2 or chosen + undecided == 2):
                    fill = chosen != 2
                    for i in incident[v]:
                        if state[i] is None:
                            state[i] = fill
                    changed = True
        return not _has_short_cycle(state)

    def _has_short_cycle(state):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        chosen = 0
        for i, (u, v) in enumerate(elist):
            if state[i] is True:
                chosen += 1
                ru, rv = find(u), find(v)
                if ru == rv:
                    return chosen < n
                parent[ru] = rv
        return False

    def search(state):
        if not propagate(state):
            return
        best = None
        for v in range(n):
            und = [i for i in incident[v] if state[i] is None]
            if und and (best is None or len(und) < len(best)):
                best = und
        if best is None:
            yield Tour.from_edges(n, (elist[i] for i in range(len(elist)) if state[i]))
            return
        for choice in (True, False):
            branch = list(state)
            branch[best[0]] = choice
            yield from search(branch)

    if n < 3:
        return
    yield from search([None] * len(elist))


# -- text formats -------------------------------------------------------------

def format_tsp(inst: TspInstance) -> str:
    lines = [str(inst.vertex_count)]
    for u, v in inst.pairs():
        lines.append(f"{u} {v} {inst.matrix[u][v]} {inst.edge_class(u, v)}")
    return "\n".join(lines) + "\n"


def parse_tsp(text: str) -> TspInstance:
    """Parse ``N`` then one ``u v w class`` line per pair ``u < v`` with class G or X."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty TSP file")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"first line must be the vertex count, got {lines[0]!r}") from None
    expected = n * (n - 1) // 2
    if len(lines) - 1 != expected:
        raise ParseError(f"expected {expected} pair lines for N={n}, found {len(lines) - 1}")
    matrix = [[0] * n for _ in range(n)]
    seen, non_edges = set(), set()
    for lineno, line in enumerate(lines[1:], 2):
        toks = line.split()
        if len(toks) != 4 or toks[3] not in (G_EDGE, NON_EDGE):
            raise ParseError(f"line {lineno}: expected 'u v w G|X'")
        try:
            u, v, w = int(toks[0]), int(toks[1]), int(toks[2])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer field") from None
        if not 0 <= u < v < n:
            raise ParseError(f"line {lineno}: need 0 <= u < v < N")
        if (u, v) in seen:
            raise ParseError(f"line {lineno}: duplicate pair")
        if w < 0:
            raise ParseError(f"line {lineno}: negative weight")
        seen.add((u, v))
        matrix[u][v] = matrix[v][u] = w
        if toks[3] == NON_EDGE:
            non_edges.add((u, v))
    return TspInstance(n, matrix, non_edges)


def read_tsp(path) -> TspInstance:
    return parse_tsp(Path(path).read_text())


def parse_tour(text: str, n: int | None = None) -> Tour:
    try:
        tour = Tour(tuple(int(t) for t in text.split()))
    except ValueError as exc:
        raise ParseError(f"bad tour file: {exc}") from None
    if n is not None and len(tour) != n:
        raise DimensionError(f"tour has {len(tour)} vertices, expected {n}")
    return tour


def format_tour(tour: Tour) -> str:
    return str(tour) + "\n"
