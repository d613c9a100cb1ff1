"""Structural type of a connected signed graph with smallest eigenvalue above -2."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .constructions import (
    Multigraph,
    double_edge_extension,
    format_multigraph,
    l_dagger,
    line_graph,
    representation_matrix,
)
from .graph import SignedGraph, canonical_form, format_esg, relabel, switch
from .lines import embed_gram, generate_lines
from .spectra import Definiteness, matmul, shifted_definiteness, transpose

__all__ = [
    "Label",
    "RepresentationData",
    "ClassificationResult",
    "gram_plus_2i",
    "integral_representation",
    "representation_graph",
    "classify",
    "switching_certificate",
]


class Label(str, enum.Enum):
    TREE_LINE = "TreeLine"
    ODD_UNICYCLIC = "OddUnicyclic"
    EVEN_UNICYCLIC_DAGGER = "EvenUnicyclicDagger"
    DOUBLE_EDGE_TREE = "DoubleEdgeTree"
    EXCEPTIONAL = "Exceptional"


def gram_plus_2i(g: SignedGraph) -> list[list[int]]:
    return [[x + 2 * (i == j) for j, x in enumerate(row)] for i, row in enumerate(g.adjacency)]


def _require_admissible(g: SignedGraph):
    if not g.is_connected():
        raise ValueError("graph is not connected")
    if shifted_definiteness(g.adjacency, 2) is not Definiteness.POSITIVE_DEFINITE:
        raise ValueError("smallest eigenvalue is not greater than -2")


@dataclass(frozen=True)
class RepresentationData:
    """Integer matrix ``M`` with ``M^T M = A + 2I`` and its representation graph.

    Column ``j`` of ``M`` corresponds to edge ``h.edges[j]``.
    """

    matrix: tuple
    h: Multigraph

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix], "h": format_multigraph(self.h)}


def representation_graph(matrix) -> Multigraph:
    """Multigraph whose edges are the column supports of ``matrix``."""
    rows = [list(r) for r in matrix]
    if any(not any(r) for r in rows):
        raise ValueError("zero row present")
    n = len(rows)
    m = len(rows[0]) if rows else 0
    edges = []
    for j in range(m):
        support = [i for i in range(n) if rows[i][j]]
        if len(support) != 2 or any(abs(rows[i][j]) != 1 for i in support):
            raise ValueError(f"column {j} is not a norm-2 two-support vector")
        edges.append(tuple(support))
    h = Multigraph(n, tuple(edges))
    if h.is_connected():
        # connected representation graphs have n = m + 1 (tree) or n = m
        if n not in (m, m + 1):
            raise AssertionError(f"representation graph has {n} vertices for {m} edges")
    return h


def integral_representation(g: SignedGraph):
    """Integer representation of ``g`` or ``None`` when ``g`` is exceptional."""
    _require_admissible(g)
    system = generate_lines(f"D({max(g.n + 1, 4)})")
    emb = embed_gram(gram_plus_2i(g), system)
    if emb is None:
        return None
    cols = [[s * x for x in system.lines[l].vector] for l, s in emb]
    matrix = [row for row in map(list, zip(*cols)) if any(row)]
    assert matmul(transpose(matrix), matrix) == gram_plus_2i(g)
    return RepresentationData(tuple(map(tuple, matrix)), representation_graph(matrix))


def switching_certificate(g: SignedGraph, target: SignedGraph):
    """``(switch_set, perm)`` with ``relabel(switch(g, switch_set), perm) == target``.

    Tries the identity permutation first, then composes canonical forms.
    Returns ``None`` if the graphs are not switching equivalent.
    """
    if g.n != target.n or len(g.edges) != len(target.edges):
        return None
    if g.underlying() == target.underlying():
        side = [None] * g.n
        ok = True
        for s in range(g.n):
            if side[s] is not None:
                continue
            side[s] = 0
            stack = [s]
            while stack and ok:
                v = stack.pop()
                for w in g.neighbours(v):
                    want = side[v] ^ (g.sign(v, w) != target.sign(v, w))
                    if side[w] is None:
                        side[w] = want
                        stack.append(w)
                    elif side[w] != want:
                        ok = False
                        break
        if ok:
            return sorted(v for v in range(g.n) if side[v]), list(range(g.n))
    cg, ct = canonical_form(g), canonical_form(target)
    if cg.key != ct.key:
        return None
    inv = [0] * g.n
    for i, p in enumerate(ct.perm):
        inv[p] = i
    perm = [inv[cg.perm[i]] for i in range(g.n)]
    wt = set(ct.switch_set)
    ws = set(cg.switch_set) ^ {i for i in range(g.n) if perm[i] in wt}
    return sorted(ws), perm


@dataclass(frozen=True)
class ClassificationResult:
    """``relabel(switch(g, switch_set), perm) == construction``; the
    representation, when present, is that of ``construction``."""

    label: Label
    representation: RepresentationData | None
    construction: SignedGraph
    switch_set: tuple
    perm: tuple
    dagger: tuple | None = None
    e8_embedding: tuple | None = None

    def to_json(self) -> dict:
        out = {
            "label": self.label.value,
            "construction": format_esg(self.construction),
            "certificate": {"switch_set": list(self.switch_set), "permutation": list(self.perm)},
        }
        if self.representation is not None:
            out["matrix"] = [list(r) for r in self.representation.matrix]
            out["h"] = format_multigraph(self.representation.h)
        if self.dagger is not None:
            out["dagger"] = list(self.dagger)
        if self.e8_embedding is not None:
            out["e8_embedding"] = [{"line": l, "sign": s} for l, s in self.e8_embedding]
        return out


def _dagger_pair(h: Multigraph):
    cycle = h.cycle_edges()
    for a in cycle:
        for b in cycle:
            if a < b and set(h.edges[a]) & set(h.edges[b]):
                return a, b
    raise AssertionError("cycle without adjacent edges")


def _construction(rep: RepresentationData, m: int):
    h = rep.h
    if h.n == m + 1:
        return Label.TREE_LINE, line_graph(h), None
    if h.double_edges():
        return Label.DOUBLE_EDGE_TREE, double_edge_extension(h), None
    if len(h.cycle_edges()) % 2:
        return Label.ODD_UNICYCLIC, line_graph(h), None
    pair = _dagger_pair(h)
    return Label.EVEN_UNICYCLIC_DAGGER, l_dagger(h, *pair), pair


def classify(g: SignedGraph) -> ClassificationResult:
    """Label, witness and switching certificate for ``g``.

    The canonical representative of the switching class is classified, so the
    label depends only on the class.
    """
    _require_admissible(g)
    rep_graph = canonical_form(g).representative
    rep = integral_representation(rep_graph)
    dagger = None
    emb = None
    if rep is None:
        label, target = Label.EXCEPTIONAL, rep_graph
        emb = embed_gram(gram_plus_2i(g), generate_lines("E8"))
        if emb is None:
            raise AssertionError("graph embeds in neither D nor E8")
        emb = tuple(emb)
    else:
        label, target, dagger = _construction(rep, g.n)
        # report the representation of the construction itself
        matrix = representation_matrix(rep.h, dagger)
        assert matmul(transpose(matrix), matrix) == gram_plus_2i(target)
        rep = RepresentationData(tuple(map(tuple, matrix)), rep.h)
    cert = switching_certificate(g, target)
    if cert is None:
        raise AssertionError(f"{label.value} construction is not switching equivalent to the input")
    ws, perm = cert
    assert relabel(switch(g, ws), perm) == target
    return ClassificationResult(label, rep, target, tuple(ws), tuple(perm), dagger, emb)
