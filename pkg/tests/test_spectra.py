from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, strategies as st

from signedgraphs.constructions import Multigraph, laplacian, line_graph, modified_adjacency, oriented_incidence
from signedgraphs.spectra import (
    Definiteness,
    IntPolynomial,
    Ordering,
    char_poly,
    compare_smallest,
    count_real_roots,
    determinant,
    kernel_at_root,
    leading_minors,
    matmul,
    shifted_definiteness,
    smallest_eig_interval,
    smallest_root,
    transpose,
    verify_eigenpair,
)

from conftest import all_signed_graphs, cycle, random_signed_graph, triangle

X = sympy.Symbol("x")


@st.composite
def sym_matrices(draw, max_n=6, lo=-3, hi=3):
    n = draw(st.integers(1, max_n))
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = draw(st.integers(lo, hi))
    return a


def sympy_charpoly(a):
    coeffs = sympy.Matrix(a).charpoly(X).all_coeffs()
    return IntPolynomial(tuple(int(c) for c in reversed(coeffs)))


def e6_tree_line_graph():
    return line_graph(Multigraph(6, ((0, 1), (1, 2), (2, 3), (3, 4), (2, 5))))


def test_definiteness_examples():
    assert shifted_definiteness(triangle().adjacency, 2) is Definiteness.POSITIVE_DEFINITE
    assert leading_minors([[2, 1, 1], [1, 2, 1], [1, 1, 2]]) == [2, 3, 4]
    neg = triangle((-1, -1, -1)).adjacency
    assert shifted_definiteness(neg, 2) is Definiteness.PSD_SINGULAR
    assert leading_minors([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]) == [2, 3, 0]
    assert shifted_definiteness([[0]], 2) is Definiteness.POSITIVE_DEFINITE
    assert shifted_definiteness(cycle(4).adjacency, 1) is Definiteness.INDEFINITE


def test_char_poly_examples():
    assert char_poly(triangle().adjacency).to_json() == [-2, -3, 0, 1]
    assert char_poly([[0]]).to_json() == [0, 1]
    assert char_poly(cycle(4, minus_edges=[0]).adjacency).to_json() == [4, 0, -4, 0, 1]


@given(sym_matrices(max_n=7))
def test_char_poly_matches_sympy(a):
    assert char_poly(a) == sympy_charpoly(a)


@given(sym_matrices(max_n=7, lo=-5, hi=5))
def test_determinant_matches_sympy(a):
    assert determinant(a) == int(sympy.Matrix(a).det())


@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_determinant_nonsymmetric(n, _, data):
    a = [[data.draw(st.integers(-4, 4)) for _ in range(n)] for _ in range(n)]
    assert determinant(a) == int(sympy.Matrix(a).det())


def test_interval_examples():
    iv, exact = smallest_eig_interval(cycle(5, minus_edges=range(5)).adjacency, Fraction(1, 1000))
    assert exact and iv.lo == iv.hi == -2
    iv, exact = smallest_eig_interval(e6_tree_line_graph().adjacency)
    golden = -(1 + 5 ** 0.5) / 2
    assert not exact
    assert iv.width <= Fraction(1, 2 ** 32)
    assert float(iv.lo) <= golden <= float(iv.hi)
    phi = -(1 + sympy.sqrt(5)) / 2
    assert sympy.Rational(iv.lo.numerator, iv.lo.denominator) < phi <= sympy.Rational(iv.hi.numerator, iv.hi.denominator)
    iv, exact = smallest_eig_interval(triangle().adjacency)
    assert exact and iv.lo == -1
    with pytest.raises(ValueError):
        smallest_eig_interval(triangle().adjacency, 0)


@given(sym_matrices(max_n=6))
def test_interval_contains_numpy_eigenvalue(a):
    iv, exact = smallest_eig_interval(a, Fraction(1, 2 ** 20))
    lam = np.linalg.eigvalsh(np.array(a, dtype=float))[0]
    assert float(iv.lo) - 1e-9 <= lam <= float(iv.hi) + 1e-9
    if exact:
        assert abs(lam - float(iv.lo)) < 1e-7


def test_compare_examples():
    a = modified_adjacency(line_graph(Multigraph(3, ((0, 1), (1, 2)))), 0)
    assert a == [[-1, 1], [1, 0]]
    k2 = [[0, 1], [1, 0]]
    assert compare_smallest(a, k2) is Ordering.LESS
    assert compare_smallest(k2, a) is Ordering.GREATER
    assert compare_smallest(a, a) is Ordering.EQUAL
    e6 = e6_tree_line_graph()
    # the end-edge (2,5) is vertex 4 of the line graph
    assert compare_smallest(e6.adjacency, modified_adjacency(e6, 4)) is Ordering.GREATER
    with pytest.raises(ValueError):
        compare_smallest([], k2)


def test_compare_equal_irrational():
    # same irrational least eigenvalue from two different matrices
    e6 = e6_tree_line_graph().adjacency
    bigger = [list(r) + [0] for r in e6] + [[0] * 5 + [0]]
    assert compare_smallest(e6, bigger) is Ordering.EQUAL


@given(sym_matrices(max_n=5), sym_matrices(max_n=5))
def test_compare_matches_sympy(a, b):
    la = min(sympy.Matrix(a).charpoly(X).as_expr().as_poly().real_roots())
    lb = min(sympy.Matrix(b).charpoly(X).as_expr().as_poly().real_roots())
    want = Ordering.LESS if la < lb else Ordering.GREATER if la > lb else Ordering.EQUAL
    assert compare_smallest(a, b) is want


def test_eigenpair_examples():
    x3 = [[0, 0, 1], [0, 0, 1], [1, 1, -1]]  # star at e3, -1 on the e3 diagonal
    assert verify_eigenpair(x3, [-1, -1, 2], -2)
    t = triangle().adjacency
    assert verify_eigenpair(t, [1, 1, 1], 2)
    assert not verify_eigenpair(t, [1, 1, 1], -1)
    with pytest.raises(ValueError):
        verify_eigenpair(t, [1, 1], 2)


def test_definiteness_matches_least_root():
    graphs = list(all_signed_graphs(4))
    import random

    rng = random.Random(7)
    graphs += [random_signed_graph(rng, n, 0.6) for n in (5, 6) for _ in range(150)]
    for g in graphs:
        d = shifted_definiteness(g.adjacency, 2)
        r = smallest_root(g.adjacency)
        s = r.compare_int(-2)
        assert d is {1: Definiteness.POSITIVE_DEFINITE, 0: Definiteness.PSD_SINGULAR,
                     -1: Definiteness.INDEFINITE}[s]


@given(st.integers(1, 8), st.integers(1, 10), st.data())
def test_gram_and_outer_share_nonzero_spectrum(r, c, data):
    m = [[data.draw(st.integers(-2, 2)) for _ in range(c)] for _ in range(r)]
    mt = transpose(m)
    p = char_poly(matmul(mt, m)) * IntPolynomial.x_power(r)
    q = char_poly(matmul(m, mt)) * IntPolynomial.x_power(c)
    assert p == q


def _bipartite_check(h):
    b = oriented_incidence(h, bipartite_orientation=True)
    a = line_graph(h).adjacency
    btb = matmul(transpose(b), b)
    assert btb == [[x + (2 if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(a)]
    assert matmul(b, transpose(b)) == laplacian(h)
    # spectrum of L equals spectrum of A + 2I up to zeros
    lp = char_poly(laplacian(h)) * IntPolynomial.x_power(h.m)
    ap = char_poly(a).shift(-2) * IntPolynomial.x_power(h.n)
    assert lp == ap


def test_laplacian_line_graph_spectra():
    from signedgraphs.constructions import enumerate_trees

    for n in range(2, 9):
        for t in enumerate_trees(n):
            _bipartite_check(t)
    for c in (4, 6, 8, 10):
        _bipartite_check(Multigraph(c, tuple((i, (i + 1) % c) for i in range(c))))


def test_sturm_counts_all_roots():
    import random

    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 8)
        g = random_signed_graph(rng, n)
        assert count_real_roots(char_poly(g.adjacency)) == n


def _kernel_numeric(a, basis, root):
    theta = float(root.interval.lo + root.interval.hi) / 2
    out = []
    for vec in basis:
        v = np.array([sum(float(c) * theta ** k for k, c in enumerate(e)) for e in vec])
        out.append(v)
    return theta, out


@given(sym_matrices(max_n=5))
def test_kernel_at_root_numeric(a):
    root = smallest_root(a)
    basis, is_zero = kernel_at_root(a, root)
    root.refine_to(Fraction(1, 2 ** 60))
    lams = np.linalg.eigvalsh(np.array(a, dtype=float))
    mult = int(np.sum(np.abs(lams - lams[0]) < 1e-6))
    assert len(basis) == mult
    theta, vecs = _kernel_numeric(a, basis, root)
    am = np.array(a, dtype=float)
    for v in vecs:
        assert np.linalg.norm(am @ v - theta * v) < 1e-6 * max(1, np.linalg.norm(v))


def test_kernel_e6_end_edge_zero():
    a = e6_tree_line_graph().adjacency
    root = smallest_root(a)
    basis, is_zero = kernel_at_root(a, root)
    assert len(basis) == 1
    assert is_zero(basis[0][4])
    assert not any(is_zero(basis[0][i]) for i in range(4))


def _decrement_candidates():
    import random

    rng = random.Random(11)
    for _ in range(80):
        n = rng.randint(2, 5)
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                a[i][j] = a[j][i] = rng.randint(-2, 2)
        yield a


def test_decrementing_diagonal_lowers_least_eigenvalue():
    tested = 0
    for a in _decrement_candidates():
        root = smallest_root(a)
        basis, is_zero = kernel_at_root(a, root)
        if not any(not is_zero(v[0]) for v in basis):
            continue
        b = [row[:] for row in a]
        b[0][0] -= 1
        assert compare_smallest(b, a) is Ordering.LESS
        tested += 1
    assert tested > 30
