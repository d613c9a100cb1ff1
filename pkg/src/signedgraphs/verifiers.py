"""Exhaustive small-scale verification campaigns with JSON reports."""
from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import networkx as nx

from .classification import gram_plus_2i
from .constructions import (
    Multigraph,
    double_edge_extension,
    enumerate_double_edge_trees,
    enumerate_trees,
    enumerate_unicyclic,
    family_x,
    family_x_eigenvector,
    l_dagger,
    line_graph,
    modified_adjacency,
    signed_cycle,
)
from .graph import SignedGraph, canonical_key, format_esg, parse_esg
from .lines import embed_gram, generate_lines
from .spectra import (
    Definiteness,
    Ordering,
    compare_smallest,
    shifted_definiteness,
    verify_eigenpair,
)

__all__ = [
    "VerificationReport",
    "verify_hoffman_conjecture",
    "verify_theorem11",
    "verify_lemma_cycle",
    "verify_minus2_families",
    "verify_integral_rep_theorem",
    "construction_universe",
    "connected_classes",
    "tree_line_end_vertices",
    "load_exceptional_catalog",
]


@dataclass
class VerificationReport:
    campaign: str
    instances: int
    failures: list = field(default_factory=list)
    duration: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "campaign": self.campaign,
            "instances": self.instances,
            "failures": self.failures,
            "duration_seconds": round(self.duration, 3),
            "details": self.details,
        }


def _map(fn, items, threads):
    if threads > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * threads))))
    return [fn(x) for x in items]


def _run(name, fn, items, threads, details=None):
    start = time.perf_counter()
    failures = []
    count = 0
    for n, fails in _map(fn, items, threads):
        count += n
        failures.extend(fails)
    failures.sort(key=lambda f: json.dumps(f, sort_keys=True))
    return VerificationReport(name, count, failures, time.perf_counter() - start, details or {})


# ---------------------------------------------------------------------------
# line graphs of trees

def tree_line_end_vertices(g: SignedGraph):
    """End-edge vertices if the underlying graph of ``g`` is the line graph of
    a tree, else ``None``.

    Connected line graphs of trees are the connected block graphs whose blocks
    are cliques and whose vertices lie in at most two blocks; end-edges lie in
    exactly one block.
    """
    if not g.is_connected():
        return None
    if g.n == 1:
        return [0]
    ug = nx.Graph(list(g.edges))
    blocks = [set(b) for b in nx.biconnected_components(ug)]
    for b in blocks:
        k = len(b)
        if ug.subgraph(b).number_of_edges() != k * (k - 1) // 2:
            return None
    count = [0] * g.n
    for b in blocks:
        for v in b:
            count[v] += 1
    if max(count) > 2:
        return None
    return [v for v in range(g.n) if count[v] == 1]


# ---------------------------------------------------------------------------
# hoffman's conjecture

def _end_edges(t: Multigraph) -> list[int]:
    deg = [t.degree(v) for v in range(t.n)]
    return [i for i, (a, b) in enumerate(t.edges) if deg[a] == 1 or deg[b] == 1]


def _check_tree(t: Multigraph):
    if not t.m:
        return 0, []
    g = line_graph(t)
    a = g.adjacency
    fails = []
    ends = _end_edges(t)
    for e in ends:
        ah = modified_adjacency(g, e)
        rec = {"tree": [list(x) for x in t.edges], "end_edge": e}
        if compare_smallest(ah, a) is not Ordering.LESS:
            fails.append(dict(rec, reason="smallest eigenvalue of the modified matrix is not smaller"))
        if shifted_definiteness(ah, 2) is not Definiteness.POSITIVE_DEFINITE:
            fails.append(dict(rec, reason="smallest eigenvalue of the modified matrix is not above -2"))
    return len(ends), fails


def verify_hoffman_conjecture(max_n: int, threads: int = 1) -> VerificationReport:
    """Every free tree on ``1..max_n`` vertices and every end-edge ``e``:
    ``lambda_1(A^(L(T), e)) < lambda_1(L(T))`` and ``lambda_1(A^(L(T), e)) > -2``."""
    if not 2 <= max_n <= 12:
        raise ValueError("need 2 <= max_n <= 12")
    trees = [t for n in range(1, max_n + 1) for t in enumerate_trees(n)]
    return _run("hoffman", _check_tree, trees, threads, {"max_n": max_n, "trees": len(trees)})


# ---------------------------------------------------------------------------
# the modified-adjacency trichotomy

def construction_universe(max_size: int):
    """Connected graphs from every structural family with at most ``max_size`` vertices.

    Yields ``(family, graph)``: line graphs of trees with at most ``max_size``
    edges, line graphs of odd unicyclic graphs and every dagger signing of even
    unicyclic graphs with at most ``max_size`` edges, and double-edge extensions
    of trees with at most ``max_size - 1`` edges.
    """
    for n in range(2, max_size + 2):
        for t in enumerate_trees(n):
            yield "TreeLine", line_graph(t)
    for n in range(3, max_size + 1):
        for h in enumerate_unicyclic(n):
            cycle = h.cycle_edges()
            if len(cycle) % 2:
                yield "OddUnicyclic", line_graph(h)
                continue
            for u, w in itertools.combinations(cycle, 2):
                if set(h.edges[u]) & set(h.edges[w]):
                    yield "EvenUnicyclicDagger", l_dagger(h, u, w)
    for n in range(2, max_size + 1):
        for h in enumerate_double_edge_trees(n):
            g = double_edge_extension(h)
            if g.is_connected():
                yield "DoubleEdgeTree", g


@lru_cache(maxsize=None)
def _catalog_text() -> str:
    return resources.files("signedgraphs").joinpath("data/exceptional.jsonl").read_text()


def load_exceptional_catalog() -> list[dict]:
    """The shipped catalog of exceptional switching classes (one dict per class)."""
    return [json.loads(line) for line in _catalog_text().splitlines() if line.strip()]


def _check_trichotomy(item):
    family, text = item
    g = parse_esg(text)
    a = g.adjacency
    fails = []
    if shifted_definiteness(a, 2) is not Definiteness.POSITIVE_DEFINITE:
        return g.n, [{"family": family, "esg": text, "reason": "smallest eigenvalue is not above -2"}]
    ends = tree_line_end_vertices(g)
    for v in range(g.n):
        ah = modified_adjacency(g, v)
        above = shifted_definiteness(ah, 2) is Definiteness.POSITIVE_DEFINITE
        # lambda_1(A^) <= -2 < lambda_1(A) already gives strict inequality
        if above and compare_smallest(ah, a) is not Ordering.LESS:
            fails.append({"family": family, "esg": text, "vertex": v, "reason": "not strictly smaller"})
        predicted = ends is not None and v in ends
        if above != predicted:
            fails.append({
                "family": family, "esg": text, "vertex": v,
                "reason": "above -2 without being a tree end-edge" if above else "tree end-edge but not above -2",
            })
    return g.n, fails


def verify_theorem11(max_size: int, include_exceptional: bool = True, threads: int = 1,
                     extra=()) -> VerificationReport:
    """For every graph of the universe with smallest eigenvalue above -2 and
    every vertex ``v``: the modified matrix has a strictly smaller least
    eigenvalue, which is above -2 exactly when the underlying graph is the line
    graph of a tree and ``v`` is an end-edge, and at most -2 otherwise."""
    if not 1 <= max_size <= 9:
        raise ValueError("need 1 <= max_size <= 9")
    items = [(fam, format_esg(g)) for fam, g in construction_universe(max_size)]
    n_cons = len(items)
    if include_exceptional:
        items += [("Exceptional", rec["esg_text"]) for rec in load_exceptional_catalog()]
    items += [(fam, format_esg(g)) for fam, g in extra]
    details = {"max_size": max_size, "constructions": n_cons, "graphs": len(items)}
    return _run("theorem11", _check_trichotomy, items, threads, details)


def connected_classes(max_n: int, bound: int = 2, strict: bool = True) -> dict[int, list[SignedGraph]]:
    """Switching classes of connected signed graphs on ``1..max_n`` vertices with
    smallest eigenvalue above ``-bound`` (or at least ``-bound`` if not strict).

    Grown by attaching a vertex with every possible row of signs to each class
    one size smaller.  This is complete because the property passes to induced
    subgraphs and every connected graph has a vertex whose removal keeps it
    connected.
    """
    want = {Definiteness.POSITIVE_DEFINITE} if strict else {
        Definiteness.POSITIVE_DEFINITE, Definiteness.PSD_SINGULAR}
    levels = {1: [SignedGraph(1, frozenset(), frozenset())]}
    for k in range(1, max_n):
        found = {}
        for g in levels[k]:
            for row in itertools.product((0, 1, -1), repeat=k):
                if not any(row):
                    continue
                plus = set(g.plus) | {(i, k) for i in range(k) if row[i] == 1}
                minus = set(g.minus) | {(i, k) for i in range(k) if row[i] == -1}
                child = SignedGraph(k + 1, frozenset(plus), frozenset(minus))
                if shifted_definiteness(child.adjacency, bound) not in want:
                    continue
                key = canonical_key(child)
                if key not in found:
                    found[key] = key.graph()
        levels[k + 1] = [found[key] for key in sorted(found)]
    return levels


# ---------------------------------------------------------------------------
# signed cycles, the -2 families, integral representations

def _check_cycle(length):
    fails = []
    for plus in range(length + 1):
        d = shifted_definiteness(signed_cycle(length, plus).adjacency, 2)
        want = Definiteness.POSITIVE_DEFINITE if plus % 2 else Definiteness.PSD_SINGULAR
        if d is not want:
            fails.append({"length": length, "plus_count": plus, "found": d.name, "expected": want.name})
    return length + 1, fails


def verify_lemma_cycle(max_len: int, threads: int = 1) -> VerificationReport:
    """Signed cycles: smallest eigenvalue above -2 iff the number of (+)-edges is odd,
    and exactly -2 otherwise."""
    if not 3 <= max_len <= 14:
        raise ValueError("need 3 <= max_len <= 14")
    return _run("cycles", _check_cycle, list(range(3, max_len + 1)), threads, {"max_len": max_len})


def _check_family(item):
    kind, params = item
    g, v = family_x(kind, *params)
    ah = modified_adjacency(g, v)
    rec = {"family": kind, "params": list(params)}
    fails = []
    if not verify_eigenpair(ah, family_x_eigenvector(kind, *params), -2):
        fails.append(dict(rec, reason="eigenvector identity fails"))
    if shifted_definiteness(ah, 2) is not Definiteness.PSD_SINGULAR:
        fails.append(dict(rec, reason="-2 is not the smallest eigenvalue"))
    rest = [w for w in range(g.n) if w != v]
    if shifted_definiteness(g.induced(rest).adjacency, 2) is not Definiteness.POSITIVE_DEFINITE:
        fails.append(dict(rec, reason="graph minus the distinguished vertex is not above -2"))
    return 1, fails


def verify_minus2_families(n_max: int, k_max: int, l_max: int, threads: int = 1) -> VerificationReport:
    if n_max < 3 or k_max < 1 or l_max < 1:
        raise ValueError("need n_max >= 3 and k_max, l_max >= 1")
    items = [("X1", (n,)) for n in range(3, n_max + 1)]
    items += [(kind, (k, l)) for kind in ("X2", "X3")
              for k in range(1, k_max + 1) for l in range(1, l_max + 1)]
    return _run("families", _check_family, items, threads,
                {"n_max": n_max, "k_max": k_max, "l_max": l_max})


def _check_integral(text):
    g = parse_esg(text)
    hits = [v for v in range(g.n)
            if shifted_definiteness(modified_adjacency(g, v), 2) is not Definiteness.INDEFINITE]
    if not hits:
        return 0, []
    system = generate_lines(f"D({max(g.n + 1, 4)})")
    if embed_gram(gram_plus_2i(g), system) is None:
        return len(hits), [{"esg": text, "vertices": hits, "reason": "no integral representation"}]
    return len(hits), []


def verify_integral_rep_theorem(max_vertices: int, threads: int = 1) -> VerificationReport:
    """Connected graphs with some ``v`` where the modified matrix has least
    eigenvalue at least -2 embed in a D line system."""
    if not 1 <= max_vertices <= 7:
        raise ValueError("need 1 <= max_vertices <= 7")
    levels = connected_classes(max_vertices, strict=False)
    items = [format_esg(g) for k in sorted(levels) for g in levels[k]]
    return _run("integral", _check_integral, items, threads,
                {"max_vertices": max_vertices, "classes": len(items)})
