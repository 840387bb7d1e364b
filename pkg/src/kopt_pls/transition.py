"""Directed transition graphs over finite solution spaces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable


@dataclass(frozen=True)
class TransitionGraph:
    """Nodes are solutions; an arc (s, t) means t is a strictly better neighbor of s."""

    nodes: tuple
    arcs: frozenset

    def successors(self, node: Hashable) -> list:
        return sorted((t for s, t in self.arcs if s == node), key=self.nodes.index)

    def sinks(self) -> list:
        sources = {s for s, _ in self.arcs}
        return [v for v in self.nodes if v not in sources]

    def is_isomorphic_under(self, other: "TransitionGraph", mapping: Callable) -> bool:
        """True iff ``mapping`` is a bijection of node sets that carries arcs exactly onto arcs."""
        image = [mapping(v) for v in self.nodes]
        if len(set(image)) != len(image) or set(image) != set(other.nodes):
            return False
        return {(mapping(s), mapping(t)) for s, t in self.arcs} == set(other.arcs)

    def to_dot(self, label: Callable[[Hashable], str], name: str = "T") -> str:
        index = {v: i for i, v in enumerate(self.nodes)}
        sinks = set(self.sinks())
        lines = [f"digraph {name} {{"]
        for v in self.nodes:
            shape = "doublecircle" if v in sinks else "circle"
            lines.append(f'  n{index[v]} [label="{label(v)}", shape={shape}];')
        for s, t in sorted(self.arcs, key=lambda a: (index[a[0]], index[a[1]])):
            lines.append(f"  n{index[s]} -> n{index[t]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_transition_graph(nodes: Iterable, neighbors: Callable[[Hashable], Iterable]) -> TransitionGraph:
    nodes = tuple(nodes)
    arcs = frozenset((s, t) for s in nodes for t in neighbors(s))
    return TransitionGraph(nodes, arcs)
