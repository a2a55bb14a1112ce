"""Jump-deformation graphs between metric algebras of one dimension."""

from __future__ import annotations

from dataclasses import dataclass

from .store import all_entries, edges, load


@dataclass(frozen=True)
class GraphEdge:
    source: str
    target: str
    confirmed: bool
    text_only: bool = False
    iso: str | None = None
    details: dict | None = None

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "confirmed": self.confirmed,
            "text_only": self.text_only,
            "iso": self.iso,
            "details": self.details,
        }


@dataclass(frozen=True)
class Graph:
    dim: int
    nodes: tuple
    edges: tuple

    def edge_set(self) -> set:
        return {(e.source, e.target) for e in self.edges}

    def to_json(self) -> dict:
        return {"dim": self.dim, "nodes": list(self.nodes), "edges": [e.to_json() for e in self.edges]}

    def to_dot(self, unicode: bool = False) -> str:
        return to_dot(self, unicode)


def deformation_graph(dim: int, verify: bool = True) -> Graph:
    """Nodes: listed metric entries of dimension ``dim``.  Edges: the recorded
    jump deformations, each replayed (unobstructed cocycle, isomorphism at two
    parameter values, separating invariant) unless ``verify`` is off."""
    from .verify import TheoremRecord, _edge, _edge_anchor  # heavy imports only on demand

    entries = [e for e in all_entries() if e.dim == dim]
    if not entries:
        raise ValueError(f"no catalog entries of dimension {dim}")
    nodes = tuple(e.id for e in entries if e.metric and e.listed)
    out = []
    for d in edges():
        if d["source"] not in nodes or d["target"] not in nodes:
            continue
        ok, details = True, None
        if verify:
            rec = TheoremRecord("deformation_edge", f"edge {d['source']} -> {d['target']}", _edge_anchor(d), d)
            ok, details = _edge(rec)
        out.append(GraphEdge(d["source"], d["target"], ok, d.get("text_only", False), d.get("iso"), details))
    out.sort(key=lambda e: (e.source, e.target))
    return Graph(dim, nodes, tuple(out))


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph, unicode: bool = False) -> str:
    lines = [f"digraph metric_deformations_dim{g.dim} {{", "  rankdir=TB;", "  node [shape=plaintext];"]
    for n in g.nodes:
        e = load(n)
        lines.append(f"  {_quote(n)} [label={_quote(e.unicode if unicode else e.label)}];")
    for e in g.edges:
        attrs = []
        if e.text_only:
            attrs += ["style=dashed", 'label="text-only"']
        if not e.confirmed:
            attrs += ["color=red", 'xlabel="discrepancy"']
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(e.source)} -> {_quote(e.target)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
