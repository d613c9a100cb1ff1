"""Exact eigenvalue decisions for integer symmetric matrices.

Everything here runs on Python integers and :class:`fractions.Fraction`;
no floating point enters a decision.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

__all__ = [
    "IntSymMatrix",
    "IntPolynomial",
    "RationalInterval",
    "Definiteness",
    "Ordering",
    "as_int_matrix",
    "leading_minors",
    "determinant",
    "char_poly",
    "shifted_definiteness",
    "SmallestRoot",
    "smallest_root",
    "smallest_eig_interval",
    "compare_smallest",
    "verify_eigenpair",
    "count_real_roots",
    "kernel_at_root",
    "matmul",
    "transpose",
    "DEFAULT_WIDTH",
]

DEFAULT_WIDTH = Fraction(1, 2**32)

IntSymMatrix = tuple  # tuple of tuples of int, symmetric


def as_int_matrix(a: Sequence[Sequence[int]], symmetric: bool = True) -> tuple:
    m = tuple(tuple(int(x) for x in row) for row in a)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    if symmetric:
        for i in range(n):
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i},{j})")
    return m


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def _shift(a, c):
    return [[x + (c if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(a)]


def leading_minors(a) -> list[int]:
    """Leading principal minors by fraction-free (Bareiss) elimination.

    Stops after the first zero minor, since later ones are not produced
    without pivoting.
    """
    m = [list(row) for row in a]
    n = len(m)
    minors = []
    prev = 1
    for k in range(n):
        piv = m[k][k]
        minors.append(piv)
        if piv == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * piv - m[i][k] * m[k][j]) // prev
        prev = piv
    return minors


def determinant(a) -> int:
    """Exact determinant by Bareiss elimination with row pivoting."""
    m = [list(row) for row in a]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * piv - m[i][k] * m[k][j]) // prev
        prev = piv
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# polynomials: coefficient tuples, constant term first

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _primitive(c):
    """Integer polynomial with positive content divided out (sign kept)."""
    c = _trim(c)
    if not c:
        return c
    den = 1
    for x in c:
        if isinstance(x, Fraction):
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in c]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def _deriv(c):
    return tuple(i * c[i] for i in range(1, len(c)))


def _divmod(a, b):
    """Division over Q; returns Fraction-coefficient quotient and remainder."""
    a = [Fraction(x) for x in _trim(a)]
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    lead = Fraction(b[-1])
    q = [Fraction(0)] * max(len(a) - db, 1)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        f = a[-1] / lead
        q[shift] = f
        for i, x in enumerate(b):
            a[i + shift] -= f * x
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return _trim(q), _trim(a)


def _gcd(a, b):
    a, b = _primitive(a), _primitive(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, _primitive(r)
    if a and a[-1] < 0:
        a = tuple(-x for x in a)
    return a


def _exact_quotient(a, b):
    q, r = _divmod(a, b)
    if r:
        raise ArithmeticError("division is not exact")
    return q


def _mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _squarefree(c):
    c = _primitive(c)
    if len(c) <= 2:
        return c
    g = _gcd(c, _deriv(c))
    return _primitive(_exact_quotient(c, g)) if len(g) > 1 else c


def _yun(c):
    """Square-free decomposition: list of (factor, multiplicity)."""
    c = _primitive(c)
    out = []
    if len(c) <= 1:
        return out
    d = _deriv(c)
    a = _gcd(c, d)
    # b and cc must share one scale, so both are divided by the same gcd
    b = _exact_quotient(c, a)
    cc = _exact_quotient(d, a)
    i = 1
    while len(b) > 1:
        y = _sub(cc, _deriv(b))
        g = _gcd(b, y) if y else _primitive(b)
        if len(g) > 1:
            out.append((g, i))
        b = _exact_quotient(b, g)
        cc = _exact_quotient(y, g) if y else ()
        i += 1
    return out


def _sign_at(c, x: Fraction) -> int:
    """Sign of c(x) for integer c and rational x, by homogeneous Horner."""
    p, q = x.numerator, x.denominator
    d = len(c) - 1
    if d < 0:
        return 0
    # sum c_i p^i q^(d-i), evaluated from the top coefficient
    qpow = 1
    v = c[d]
    for i in range(d - 1, -1, -1):
        qpow *= q
        v = v * p + c[i] * qpow
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, ``coeffs[i]`` multiplies ``x**i``."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        v = 0
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(_mul(self.coeffs, other.coeffs))

    def shift(self, c: int) -> "IntPolynomial":
        """The polynomial ``x -> p(x + c)``."""
        out: list[int] = []
        for a in reversed(self.coeffs):
            # out <- out * (x + c) + a
            nxt = [0] * (len(out) + 1)
            for i, v in enumerate(out):
                nxt[i + 1] += v
                nxt[i] += c * v
            nxt[0] += a
            out = nxt
        return IntPolynomial(out)

    def divides(self, other: "IntPolynomial") -> bool:
        _, r = _divmod(other.coeffs, self.coeffs)
        return not r

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    @classmethod
    def x_power(cls, k: int) -> "IntPolynomial":
        return cls((0,) * k + (1,))

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(c) if (abs(c) != 1 or i == 0) else ("-" if c < 0 else "")
            terms.append(f"{coef}{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def char_poly(a) -> IntPolynomial:
    """``det(xI - A)`` by the Faddeev-LeVerrier recurrence (exact divisions)."""
    a = [list(row) for row in a]
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    am = [[0] * n for _ in range(n)]  # A M_{k-1}
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        c_prev = coeffs[n - k + 1]
        m = [[am[i][j] + (c_prev if i == j else 0) for j in range(n)] for i in range(n)]
        am = matmul(a, m)
        tr = sum(am[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs[n - k] = -tr // k
    return IntPolynomial(coeffs)


def _sturm_chain(p):
    chain = [p, _primitive(_deriv(p))]
    while len(chain[-1]) > 1:
        _, r = _divmod(chain[-2], chain[-1])
        r = _primitive(r)
        if not r:
            break
        chain.append(tuple(-x for x in r))
    return chain


def _variations(chain, x) -> int:
    signs = [s for s in (_sign_at(c, x) for c in chain) if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _root_bound(p) -> int:
    """Integer B with every real root of p inside (-B, B)."""
    lead = abs(p[-1])
    return 2 + max(abs(c) for c in p[:-1]) // lead if len(p) > 1 else 1


def count_real_roots(p: IntPolynomial, multiplicity: bool = True) -> int:
    """Number of real roots by Sturm counts over the square-free factors."""
    total = 0
    for f, mult in _yun(p.coeffs):
        if len(f) < 2:
            continue
        chain = _sturm_chain(f)
        b = Fraction(_root_bound(f))
        k = _variations(chain, -b) - _variations(chain, b)
        total += k * (mult if multiplicity else 1)
    return total


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def to_json(self) -> dict:
        return {"lo": _ratstr(self.lo), "hi": _ratstr(self.hi)}


def _ratstr(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class SmallestRoot:
    """The least real root of an integer polynomial, kept as an isolating
    interval ``(lo, hi]`` over the square-free part, or as an exact integer.
    """

    def __init__(self, p: IntPolynomial):
        sf = _squarefree(p.coeffs)
        if len(sf) < 2:
            raise ValueError("polynomial has no roots")
        if sf[-1] < 0:
            sf = tuple(-c for c in sf)
        self.poly = sf
        self.chain = _sturm_chain(sf)
        b = _root_bound(sf)
        lo, hi = Fraction(-b), Fraction(b)
        if _variations(self.chain, lo) == _variations(self.chain, hi):
            raise ValueError("polynomial has no real roots")
        self._v_lo = _variations(self.chain, lo)
        # shrink hi until (lo, hi] holds exactly one root
        while self._count(lo, hi) > 1:
            mid = (lo + hi) / 2
            if self._count(lo, mid) >= 1:
                hi = mid
            else:
                lo = mid
        self.lo, self.hi = lo, hi
        self.exact = None
        self._check_integer()

    def _count(self, lo, hi) -> int:
        return _variations(self.chain, lo) - _variations(self.chain, hi)

    def _check_integer(self):
        # monic integer char polys have only integer rational roots;
        # for a general primitive poly we test integers inside the bracket
        if self.exact is not None:
            return
        if self.hi - self.lo <= 1:
            k = math.floor(self.hi)
            if self.lo < k <= self.hi and _sign_at(self.poly, Fraction(k)) == 0:
                self.exact = Fraction(k)
                self.lo = self.hi = self.exact
                return
            if self.poly[-1] != 1:
                r = self._rational_candidate()
                if r is not None:
                    self.exact = r
                    self.lo = self.hi = r

    def _rational_candidate(self):
        # only linear factors can produce a rational root
        g = self.poly
        if len(g) == 2:
            return Fraction(-g[0], g[1])
        return None

    def refine(self) -> None:
        """Halve the bracket once (no-op when exact)."""
        if self.exact is not None:
            return
        mid = (self.lo + self.hi) / 2
        if self._count(self.lo, mid) == 1:
            self.hi = mid
        else:
            self.lo = mid
        self._check_integer()

    def refine_to(self, width: Fraction) -> None:
        while self.exact is None and self.hi - self.lo > width:
            self.refine()

    @property
    def interval(self) -> RationalInterval:
        return RationalInterval(self.lo, self.hi)

    def contains_root_of(self, q) -> bool:
        """True iff q vanishes at this root."""
        q = q.coeffs if isinstance(q, IntPolynomial) else _primitive(q)
        if not q:
            return True
        if self.exact is not None:
            return _sign_at(q, self.exact) == 0
        g = _gcd(self.poly, q)
        if len(g) < 2:
            return False
        chain = _sturm_chain(_squarefree(g))
        return _variations(chain, self.lo) - _variations(chain, self.hi) == 1

    def compare_int(self, c) -> int:
        """Sign of (root - c) for a rational c."""
        c = Fraction(c)
        if self.exact is not None:
            return (self.exact > c) - (self.exact < c)
        while self.lo < c <= self.hi:
            if _sign_at(self.poly, c) == 0 and self._count(self.lo, c) == 1:
                return 0
            self.refine()
            if self.exact is not None:
                return (self.exact > c) - (self.exact < c)
        return 1 if c <= self.lo else -1

    def approx(self) -> float:
        return float((self.lo + self.hi) / 2)


def smallest_root(a) -> SmallestRoot:
    return SmallestRoot(char_poly(a))


def smallest_eig_interval(a, width: Fraction = DEFAULT_WIDTH):
    """Isolating interval for the least eigenvalue and an exact-root flag."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    r = smallest_root(a)
    r.refine_to(width)
    return r.interval, r.exact is not None


class Ordering(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


def compare_smallest(a, b) -> Ordering:
    """Exact ordering of the least eigenvalues of two symmetric matrices."""
    if not len(a) or not len(b):
        raise ValueError("matrices must be non-empty")
    ra, rb = smallest_root(a), smallest_root(b)
    return _compare_roots(ra, rb)


def _compare_roots(ra: SmallestRoot, rb: SmallestRoot) -> Ordering:
    common = None
    while True:
        if ra.exact is not None and rb.exact is not None:
            return _order(ra.exact, rb.exact)
        if ra.hi < rb.lo or (ra.hi == rb.lo and rb.exact is None):
            return Ordering.LESS
        if rb.hi < ra.lo or (rb.hi == ra.lo and ra.exact is None):
            return Ordering.GREATER
        if ra.exact is not None:
            s = rb.compare_int(ra.exact)
            return _order(0, s) if s else Ordering.EQUAL
        if rb.exact is not None:
            s = ra.compare_int(rb.exact)
            return _order(s, 0) if s else Ordering.EQUAL
        # brackets overlap: equal iff the common factor has a root in the overlap
        if common is None:
            common = _gcd(ra.poly, rb.poly)
        if len(common) > 1:
            lo, hi = max(ra.lo, rb.lo), min(ra.hi, rb.hi)
            chain = _sturm_chain(_squarefree(common))
            if _variations(chain, lo) - _variations(chain, hi) >= 1:
                return Ordering.EQUAL
        if ra.hi - ra.lo >= rb.hi - rb.lo:
            ra.refine()
        else:
            rb.refine()


def _order(x, y) -> Ordering:
    if x < y:
        return Ordering.LESS
    if x > y:
        return Ordering.GREATER
    return Ordering.EQUAL


class Definiteness(enum.Enum):
    POSITIVE_DEFINITE = "positive_definite"
    PSD_SINGULAR = "positive_semidefinite_singular"
    INDEFINITE = "indefinite"


def shifted_definiteness(a, c: int) -> Definiteness:
    """Classify ``A + cI``: all leading minors positive gives PD; otherwise
    the least eigenvalue is compared with ``-c`` by Sturm counts."""
    shifted = _shift(a, c)
    if not shifted:
        return Definiteness.POSITIVE_DEFINITE
    minors = leading_minors(shifted)
    if len(minors) == len(shifted) and all(m > 0 for m in minors):
        return Definiteness.POSITIVE_DEFINITE
    p = char_poly(a)
    sf = _squarefree(p.coeffs)
    chain = _sturm_chain(sf)
    b = Fraction(_root_bound(sf))
    x = Fraction(-c)
    if _variations(chain, -b) - _variations(chain, x) > (1 if _sign_at(sf, x) == 0 else 0):
        return Definiteness.INDEFINITE
    if _sign_at(sf, x) == 0:
        return Definiteness.PSD_SINGULAR
    # leading minors said "not PD" yet no root at or below -c
    raise ArithmeticError("inconsistent definiteness certificates")


def verify_eigenpair(a, x: Sequence[int], lam: int) -> bool:
    n = len(a)
    if len(x) != n:
        raise ValueError("dimension mismatch")
    if not any(x):
        raise ValueError("eigenvector must be non-zero")
    return all(sum(a[i][j] * x[j] for j in range(n)) == lam * x[i] for i in range(n))


# ---------------------------------------------------------------------------
# eigenvectors at an algebraic root: elimination in Q[x]/(m), splitting m on
# zero divisors and keeping the factor that vanishes at the root

class _Residues:
    def __init__(self, root: SmallestRoot):
        self.root = root
        self.mod = tuple(Fraction(c) for c in root.poly)

    def reduce(self, c):
        _, r = _divmod(c, self.mod)
        return r

    def mul(self, a, b):
        return self.reduce(_mul(a, b)) if a and b else ()

    def is_zero(self, c) -> bool:
        c = self.reduce(c)
        if not c:
            return True
        g = _gcd(_primitive(self.mod), _primitive(c))
        if len(g) < 2:
            return False
        if self.root.contains_root_of(g):
            # the root lies on g: restrict the modulus to g
            self.mod = tuple(Fraction(x) for x in g)
            return True
        self.mod = tuple(Fraction(x) for x in _exact_quotient(_primitive(self.mod), g))
        return False

    def inverse(self, c):
        # extended Euclid over Q
        r0, r1 = self.mod, self.reduce(c)
        s0, s1 = (), (Fraction(1),)
        while len(r1) > 1:
            q, r = _divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _sub(s0, _mul(q, s1))
        inv = Fraction(1) / r1[0]
        return self.reduce(tuple(x * inv for x in s1))


def kernel_at_root(a, root: SmallestRoot):
    """Basis of ``ker(A - theta I)`` for the root ``theta`` represented by ``root``.

    Entries are residues (coefficient tuples in ``theta``); the returned
    ``is_zero`` callback decides whether a residue vanishes at ``theta``.
    """
    n = len(a)
    res = _Residues(root)
    x = (Fraction(0), Fraction(1))
    rows = [[_sub((Fraction(a[i][j]),), x if i == j else ()) for j in range(n)] for i in range(n)]
    pivots = []
    r = 0
    for col in range(n):
        pr = None
        for i in range(r, n):
            if not res.is_zero(rows[i][col]):
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = res.inverse(rows[r][col])
        rows[r] = [res.mul(v, inv) for v in rows[r]]
        for i in range(n):
            if i != r and not res.is_zero(rows[i][col]):
                f = rows[i][col]
                rows[i] = [res.reduce(_sub(v, _mul(f, w))) for v, w in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [() for _ in range(n)]
        vec[fcol] = (Fraction(1),)
        for i, pcol in enumerate(pivots):
            vec[pcol] = res.reduce(tuple(-v for v in rows[i][fcol]))
        basis.append(vec)
    return basis, res.is_zero
