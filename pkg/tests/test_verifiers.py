import math

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from signedgraphs.constructions import Multigraph, enumerate_trees, line_graph, modified_adjacency, signed_cycle
from signedgraphs.graph import SignedGraph, format_esg
from signedgraphs.spectra import (
    Definiteness,
    Ordering,
    compare_smallest,
    shifted_definiteness,
    smallest_root,
)
from signedgraphs.verifiers import (
    VerificationReport,
    _check_integral,
    _check_tree,
    _check_trichotomy,
    connected_classes,
    tree_line_end_vertices,
    verify_hoffman_conjecture,
    verify_integral_rep_theorem,
    verify_lemma_cycle,
    verify_minus2_families,
    verify_theorem11,
)

from conftest import cycle, triangle


def _above(a):
    return shifted_definiteness(a, 2) is Definiteness.POSITIVE_DEFINITE


def test_hoffman_examples():
    p3 = Multigraph(3, ((0, 1), (1, 2)))
    assert _check_tree(p3) == (2, [])
    g = line_graph(p3)
    r = smallest_root(modified_adjacency(g, 0))
    r.refine_to(1e-12)
    assert abs(r.approx() - (-1 - math.sqrt(5)) / 2) < 1e-9
    e6 = line_graph(Multigraph(6, ((0, 1), (1, 2), (2, 3), (3, 4), (2, 5))))
    ah = modified_adjacency(e6, 4)
    assert compare_smallest(ah, e6.adjacency) is Ordering.LESS and _above(ah)


def test_hoffman_campaign_small():
    rep = verify_hoffman_conjecture(7)
    assert rep.ok and rep.details["trees"] == 1 + 1 + 1 + 2 + 3 + 6 + 11
    with pytest.raises(ValueError):
        verify_hoffman_conjecture(1)


def test_trichotomy_examples():
    k3 = triangle()
    assert all(_above(modified_adjacency(k3, v)) for v in range(3))
    c5 = cycle(5)
    assert not any(_above(modified_adjacency(c5, v)) for v in range(5))
    p5 = line_graph(Multigraph(5, ((0, 1), (1, 2), (2, 3), (3, 4))))
    assert not _above(modified_adjacency(p5, 1)) and not _above(modified_adjacency(p5, 2))
    assert _above(modified_adjacency(p5, 0))
    for g in (k3, c5, p5, cycle(4, [0])):
        assert _check_trichotomy(("test", format_esg(g)))[1] == []


def test_trichotomy_requires_connected_universe():
    # two isolated vertices: the modified matrix reaches -1 but the least
    # eigenvalue does not move strictly
    g = SignedGraph(2)
    assert compare_smallest(modified_adjacency(g, 0), g.adjacency) is Ordering.LESS
    g = SignedGraph.unsigned(3, [(0, 1)])
    assert compare_smallest(modified_adjacency(g, 2), g.adjacency) is Ordering.EQUAL


def test_trichotomy_small():
    rep = verify_theorem11(5, include_exceptional=False)
    assert rep.ok and rep.instances > 0
    with pytest.raises(ValueError):
        verify_theorem11(10)


def test_cycle_examples():
    assert shifted_definiteness(signed_cycle(5, 0).adjacency, 2) is Definiteness.PSD_SINGULAR
    assert shifted_definiteness(signed_cycle(4, 1).adjacency, 2) is Definiteness.POSITIVE_DEFINITE
    assert shifted_definiteness(signed_cycle(6, 6).adjacency, 2) is Definiteness.PSD_SINGULAR
    rep = verify_lemma_cycle(8)
    assert rep.ok and rep.instances == sum(n + 1 for n in range(3, 9))
    with pytest.raises(ValueError):
        verify_lemma_cycle(2)


def test_family_examples():
    rep = verify_minus2_families(3, 1, 1)
    assert rep.ok and rep.instances == 3
    with pytest.raises(ValueError):
        verify_minus2_families(2, 1, 1)


def test_integral_examples():
    p4 = line_graph(Multigraph(5, ((0, 1), (1, 2), (2, 3), (3, 4))))
    assert _above(modified_adjacency(p4, 0))
    assert _check_integral(format_esg(p4)) == (2, [])
    k2 = SignedGraph(2, minus={(0, 1)})
    assert _check_integral(format_esg(k2)) == (2, [])
    rep = verify_integral_rep_theorem(5)
    assert rep.ok and rep.instances == 82


def test_reports_are_deterministic():
    a = verify_integral_rep_theorem(4).to_json()
    b = verify_integral_rep_theorem(4, threads=2).to_json()
    a.pop("duration_seconds"), b.pop("duration_seconds")
    assert a == b


def test_report_shape():
    rep = VerificationReport("demo", 3, [{"x": 1}], 0.5)
    assert not rep.ok
    assert rep.to_json() == {"campaign": "demo", "instances": 3, "failures": [{"x": 1}],
                             "duration_seconds": 0.5, "details": {}}


def test_connected_classes_counts():
    assert [len(v) for _, v in sorted(connected_classes(5).items())] == [1, 1, 2, 6, 17]


def _end_vertex_oracle(g):
    """Vertices mapped to a leaf edge by some isomorphism onto L(T), or None."""
    n = g.n
    ug = nx.Graph(list(g.edges))
    ug.add_nodes_from(range(n))
    for t in enumerate_trees(n + 1):
        lt = nx.Graph(list(line_graph(t).edges))
        lt.add_nodes_from(range(n))
        gm = GraphMatcher(ug, lt)
        if not gm.is_isomorphic():
            continue
        deg = [t.degree(v) for v in range(t.n)]
        ends = {i for i, (a, b) in enumerate(t.edges) if deg[a] == 1 or deg[b] == 1}
        hits = set()
        for iso in gm.isomorphisms_iter():
            hits |= {v for v in range(n) if iso[v] in ends}
        return sorted(hits)
    return None


def test_tree_line_recognition_matches_oracle():
    checked = 0
    for ug in nx.graph_atlas_g()[1:]:
        n = ug.number_of_nodes()
        if n > 6 or not nx.is_connected(ug):
            continue
        g = SignedGraph.unsigned(n, ug.edges)
        assert tree_line_end_vertices(g) == _end_vertex_oracle(g)
        checked += 1
    assert checked == 1 + 1 + 2 + 6 + 21 + 112


def test_inverse_line_graph_agrees():
    for ug in nx.graph_atlas_g()[1:]:
        n = ug.number_of_nodes()
        if n > 7 or n < 2 or not nx.is_connected(ug):
            continue
        try:
            root = nx.inverse_line_graph(ug)
        except nx.NetworkXError:
            root = None
        is_tree_line = root is not None and nx.is_tree(root)
        assert (tree_line_end_vertices(SignedGraph.unsigned(n, ug.edges)) is not None) == is_tree_line
