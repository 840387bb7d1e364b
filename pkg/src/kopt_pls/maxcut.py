"""Max-Cut instances, cuts, and the Flip local search."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import DimensionError, EnumerationLimitError, InvalidVertexError, ParseError
from .transition import TransitionGraph, build_transition_graph

PIVOTS = ("first", "best")
DEFAULT_ENUMERATION_LIMIT = 20


@dataclass(frozen=True)
class MaxCutInstance:
    """Weighted simple undirected graph on vertices ``0..vertex_count-1``.

    Edge ids are positions in ``edges``; the reduction relies on that input order.
    """

    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]
    adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("a Max-Cut instance needs at least one vertex")
        edges = tuple((int(u), int(v), int(w)) for u, v, w in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        incident = [[] for _ in range(self.vertex_count)]
        for idx, (u, v, _) in enumerate(edges):
            for x in (u, v):
                if not 0 <= x < self.vertex_count:
                    raise InvalidVertexError(f"edge {idx}: vertex {x} out of range")
            if u == v:
                raise ValueError(f"edge {idx}: self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"edge {idx}: parallel edge {key}")
            seen.add(key)
            incident[u].append((v, idx))
            incident[v].append((u, idx))
        object.__setattr__(self, "adjacency", tuple(tuple(a) for a in incident))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def weight(self, idx: int) -> int:
        return self.edges[idx][2]

    def _check_vertex(self, v):
        if not 0 <= v < self.vertex_count:
            raise InvalidVertexError(f"vertex {v} not in [0, {self.vertex_count})")


@dataclass(frozen=True)
class Cut:
    """``membership[v]`` is True iff v lies in the first set."""

    membership: tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "membership", tuple(bool(b) for b in self.membership))

    def __len__(self):
        return len(self.membership)

    def __getitem__(self, v):
        return self.membership[v]

    @classmethod
    def all_first(cls, n: int) -> "Cut":
        return cls((True,) * n)

    @classmethod
    def from_index(cls, index: int, n: int) -> "Cut":
        """Bit v of ``index`` set means v is in the second set; index 0 is the all-first cut."""
        return cls(tuple(not (index >> v) & 1 for v in range(n)))

    def index(self) -> int:
        return sum(1 << v for v, first in enumerate(self.membership) if not first)

    def complement(self) -> "Cut":
        return Cut(tuple(not b for b in self.membership))

    def __str__(self):
        return "".join("0" if b else "1" for b in self.membership)


def all_cuts(n: int):
    for i in range(1 << n):
        yield Cut.from_index(i, n)


def _check_cut(inst: MaxCutInstance, cut: Cut):
    if len(cut) != inst.vertex_count:
        raise DimensionError(f"cut has {len(cut)} entries, instance has {inst.vertex_count} vertices")


def cut_value(inst: MaxCutInstance, cut: Cut) -> int:
    _check_cut(inst, cut)
    return sum(w for u, v, w in inst.edges if cut[u] != cut[v])


def flip_gain(inst: MaxCutInstance, cut: Cut, v: int) -> int:
    _check_cut(inst, cut)
    inst._check_vertex(v)
    gain = 0
    for u, idx in inst.adjacency[v]:
        w = inst.edges[idx][2]
        gain += -w if cut[u] != cut[v] else w
    return gain


def flip(cut: Cut, v: int) -> Cut:
    if not 0 <= v < len(cut):
        raise InvalidVertexError(f"vertex {v} not in [0, {len(cut)})")
    m = list(cut.membership)
    m[v] = not m[v]
    return Cut(tuple(m))


def improving_flips(inst: MaxCutInstance, cut: Cut) -> list[int]:
    return [v for v in range(inst.vertex_count) if flip_gain(inst, cut, v) > 0]


def flip_local_search(inst: MaxCutInstance, start: Cut, pivot: str = "first") -> tuple[Cut, list[int]]:
    """Run Flip until no improving flip remains.

    ``first`` flips the lowest-id improving vertex, ``best`` the one with the largest gain
    (ties to the lowest id). Returns the final cut and the flipped vertices in order.
    """
    if pivot not in PIVOTS:
        raise ValueError(f"unknown pivot {pivot!r}; expected one of {PIVOTS}")
    _check_cut(inst, start)
    cut, trace = start, []
    while True:
        gains = [(flip_gain(inst, cut, v), v) for v in range(inst.vertex_count)]
        candidates = [(g, v) for g, v in gains if g > 0]
        if not candidates:
            return cut, trace
        if pivot == "first":
            v = candidates[0][1]
        else:
            v = min(candidates, key=lambda gv: (-gv[0], gv[1]))[1]
        cut = flip(cut, v)
        trace.append(v)


def replay_flips(inst: MaxCutInstance, start: Cut, trace) -> list[int]:
    """Cut values along a flip trace, starting with the value of ``start``."""
    values = [cut_value(inst, start)]
    cut = start
    for v in trace:
        cut = flip(cut, v)
        values.append(cut_value(inst, cut))
    return values


def maxcut_transition_graph(inst: MaxCutInstance, limit: int = DEFAULT_ENUMERATION_LIMIT) -> TransitionGraph:
    if inst.vertex_count > limit:
        raise EnumerationLimitError(f"{inst.vertex_count} vertices exceeds enumeration limit {limit}")
    return build_transition_graph(
        all_cuts(inst.vertex_count),
        lambda c: [flip(c, v) for v in improving_flips(inst, c)],
    )


# -- text format -------------------------------------------------------------

def parse_maxcut(text: str) -> MaxCutInstance:
    """Parse ``n m`` followed by ``m`` lines ``u v w``; ``#`` lines are comments."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("empty Max-Cut file")
    lineno, head = rows[0]
    try:
        n, m = (int(t) for t in head)
    except ValueError:
        raise ParseError(f"line {lineno}: expected 'n m', got {' '.join(head)!r}") from None
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)}")
    edges, seen = [], set()
    for lineno, toks in body:
        if len(toks) != 3:
            raise ParseError(f"line {lineno}: expected 'u v w'")
        try:
            u, v, w = (int(t) for t in toks)
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer field") from None
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"line {lineno}: duplicate edge {u} {v}")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: vertex id out of range [0, {n})")
        seen.add(key)
        edges.append((u, v, w))
    return MaxCutInstance(n, tuple(edges))


def format_maxcut(inst: MaxCutInstance) -> str:
    lines = [f"{inst.vertex_count} {inst.edge_count}"]
    lines += [f"{u} {v} {w}" for u, v, w in inst.edges]
    return "\n".join(lines) + "\n"


def read_maxcut(path) -> MaxCutInstance:
    return parse_maxcut(Path(path).read_text())


def parse_cut(text: str, n: int | None = None) -> Cut:
    """Cut files hold one side per vertex: ``0`` first set, ``1`` second set."""
    toks = "".join(text.split())
    if any(t not in "01" for t in toks):
        raise ParseError("cut file may only contain 0/1 digits")
    cut = Cut(tuple(t == "0" for t in toks))
    if n is not None and len(cut) != n:
        raise DimensionError(f"cut has {len(cut)} entries, expected {n}")
    return cut


def format_cut(cut: Cut) -> str:
    return str(cut) + "\n"
