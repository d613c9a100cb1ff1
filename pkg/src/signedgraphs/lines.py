"""Root line systems A(n), D(n), E6, E7, E8 and Gram embedding search."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from importlib import resources
from typing import Sequence

from .spectra import determinant

__all__ = [
    "RootLine",
    "LineSystem",
    "generate_lines",
    "line_compare",
    "line_sort_key",
    "gram_of_lines",
    "embed_gram",
    "cartan_matrix",
    "positive_roots",
    "E8_EDGES",
]

# simple roots 1..8, Bourbaki numbering
E8_EDGES = ((1, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8))


@dataclass(frozen=True)
class RootLine:
    """A line spanned by a root, stored as its positive representative.

    ``coeffs`` are coefficients over the simple roots of ``system``; A and D
    lines also carry their ambient integer vector.
    """

    system: str
    coeffs: tuple
    vector: tuple | None = None

    @property
    def height(self) -> int:
        return sum(self.coeffs)


def line_sort_key(line: RootLine):
    # smaller coefficient sum first; ties go to the larger coefficient at the
    # first differing index
    return (sum(line.coeffs), tuple(-c for c in line.coeffs))


def line_compare(a: RootLine, b: RootLine) -> int:
    """-1 if ``a`` precedes ``b``, 0 if equal, 1 otherwise."""
    if a.system != b.system:
        raise ValueError(f"cannot compare lines of {a.system} and {b.system}")
    ka, kb = line_sort_key(a), line_sort_key(b)
    return (ka > kb) - (ka < kb)


def cartan_matrix(edges: Sequence[tuple[int, int]], rank: int) -> list[list[int]]:
    """Gram matrix of simple roots for a simply-laced Dynkin diagram (1-based edges)."""
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for a, b in edges:
        c[a - 1][b - 1] = c[b - 1][a - 1] = -1
    return c


def _form(c, x, y) -> int:
    return sum(x[i] * c[i][j] * y[j] for i in range(len(x)) if x[i] for j in range(len(y)) if y[j])


def positive_roots(cartan: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Positive roots in simple-root coordinates, by closure from the simple roots.

    For a simply-laced system ``beta + alpha_i`` is a root whenever
    ``(beta, alpha_i) = -1``.
    """
    rank = len(cartan)
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(rank):
                if sum(beta[j] * cartan[j][i] for j in range(rank)) == -1:
                    gamma = beta[:i] + (beta[i] + 1,) + beta[i + 1:]
                    if gamma not in found:
                        found.add(gamma)
                        nxt.append(gamma)
        frontier = nxt
    assert all(_form(cartan, r, r) == 2 for r in found)
    return sorted(found)


@dataclass(frozen=True)
class LineSystem:
    kind: str
    lines: tuple
    gram_form: tuple = field(repr=False)

    def __len__(self) -> int:
        return len(self.lines)

    @cached_property
    def inner(self) -> tuple:
        """Table of inner products between the positive representatives."""
        g = self.gram_form
        coeffs = [ln.coeffs for ln in self.lines]
        # work through the image of each line under the form
        images = [
            tuple(sum(c[i] * g[i][j] for i in range(len(c)) if c[i]) for j in range(len(c)))
            for c in coeffs
        ]
        return tuple(
            tuple(sum(a * b for a, b in zip(img, c)) for c in coeffs) for img in images
        )

    def index(self, line: RootLine) -> int:
        return self.lines.index(line)

    def to_json(self) -> list[list[int]]:
        return [list(ln.coeffs) for ln in self.lines]


_KIND = re.compile(r"^(A|D)\((\d+)\)$|^(E[678])$")


def _a_simple(n):
    # alpha_i = e_i - e_{i+1} in R^{n+1}
    return [tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n + 1)) for i in range(n)]


def _d_simple(n):
    simple = [tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n)) for i in range(n - 1)]
    simple.append(tuple(1 if k >= n - 2 else 0 for k in range(n)))
    return simple


def _solve_coeffs(simple, vector):
    """Coefficients of ``vector`` over ``simple`` by Cramer's rule on the Gram system."""
    rank = len(simple)
    gram = [[sum(a * b for a, b in zip(s, t)) for t in simple] for s in simple]
    rhs = [sum(a * b for a, b in zip(s, vector)) for s in simple]
    det = determinant(gram)
    coeffs = []
    for j in range(rank):
        m = [row[:j] + [rhs[i]] + row[j + 1:] for i, row in enumerate(gram)]
        num = determinant(m)
        if num % det:
            raise AssertionError("vector outside the root lattice")
        coeffs.append(num // det)
    return tuple(coeffs)


def _ambient_lines(kind, n):
    if kind == "A":
        simple = _a_simple(n)
        dim = n + 1
        vecs = [
            tuple(1 if k == i else -1 if k == j else 0 for k in range(dim))
            for i in range(dim) for j in range(i + 1, dim)
        ]
    else:
        simple = _d_simple(n)
        vecs = []
        for i in range(n):
            for j in range(i + 1, n):
                for s in (-1, 1):
                    vecs.append(tuple(1 if k == i else s if k == j else 0 for k in range(n)))
    gram = tuple(tuple(sum(a * b for a, b in zip(s, t)) for t in simple) for s in simple)
    lines = []
    for v in vecs:
        c = _solve_coeffs(simple, v)
        if any(x < 0 for x in c):
            v, c = tuple(-x for x in v), tuple(-x for x in c)
        lines.append(RootLine(f"{kind}({n})", c, v))
    return lines, gram


@lru_cache(maxsize=None)
def generate_lines(kind: str) -> LineSystem:
    """``"A(n)"``, ``"D(n)"``, ``"E6"``, ``"E7"`` or ``"E8"``, sorted by ``line_compare``."""
    m = _KIND.match(kind.replace(" ", ""))
    if not m:
        raise ValueError(f"unknown line system {kind!r}")
    if m.group(3):
        e = m.group(3)
        cartan = cartan_matrix(E8_EDGES, 8)
        roots = positive_roots(cartan)
        keep = {"E8": 8, "E7": 7, "E6": 6}[e]
        # E7 drops alpha_8, E6 drops alpha_7 and alpha_8; coordinates are kept at length 8
        lines = [RootLine(e, r) for r in roots if not any(r[keep:])]
        gram = tuple(map(tuple, cartan))
    else:
        letter, n = m.group(1), int(m.group(2))
        if letter == "A" and n < 1:
            raise ValueError("A(n) needs n >= 1")
        if letter == "D" and n < 4:
            raise ValueError("D(n) needs n >= 4")
        lines, gram = _ambient_lines(letter, n)
        kind = f"{letter}({n})"
    lines.sort(key=line_sort_key)
    return LineSystem(kind, tuple(lines), gram)


def e8_golden() -> list[list[int]]:
    """The shipped E8 line list (coefficient vectors in sorted order)."""
    text = resources.files("signedgraphs").joinpath("data/e8_lines.json").read_text()
    return json.loads(text)


def gram_of_lines(lines: Sequence[RootLine], signs: Sequence[int], system: LineSystem | None = None):
    """Gram matrix of the vectors ``signs[i] * lines[i]``."""
    if len(lines) != len(signs):
        raise ValueError("lines and signs differ in length")
    if len({ln.system for ln in lines}) > 1:
        raise ValueError("lines come from different systems")
    if any(s not in (1, -1) for s in signs):
        raise ValueError("signs must be +1 or -1")
    if not lines:
        return []
    if system is None:
        system = generate_lines(lines[0].system)
    g = system.gram_form
    return [
        [si * sj * _form(g, a.coeffs, b.coeffs) for b, sj in zip(lines, signs)]
        for a, si in zip(lines, signs)
    ]


def _check_target(target):
    n = len(target)
    for i, row in enumerate(target):
        if len(row) != n:
            raise ValueError("target is not square")
        if row[i] != 2:
            raise ValueError("target diagonal must be 2")
        for j, x in enumerate(row):
            if i != j and (x not in (0, 1, -1) or target[j][i] != x):
                raise ValueError("off-diagonal entries must be symmetric and in {0, 1, -1}")


def _search_order(target):
    """Most-constrained-first order; each non-root vertex has an earlier neighbour."""
    n = len(target)
    order, placed = [], set()
    while len(order) < n:
        rest = [v for v in range(n) if v not in placed]
        # prefer vertices tied to placed ones; among them the most tied, then the densest
        v = max(rest, key=lambda v: (sum(1 for p in placed if target[v][p]),
                                      sum(1 for w in range(n) if w != v and target[v][w]), -v))
        order.append(v)
        placed.add(v)
    return order


def embed_gram(target: Sequence[Sequence[int]], system: LineSystem):
    """Distinct lines and signs realising ``target``, or ``None`` if none exist.

    Returns a list of ``(line_index, sign)`` aligned with the rows of ``target``.
    The search is exhaustive.  The first vertex is pinned to line 0 (the line
    systems here are root systems of irreducible simply-laced type, whose Weyl
    group is transitive on lines) and the first vertex of every further
    component takes sign +1 (negating a component is a switching), except in
    D systems where the sign reduction below is used instead.

    For A and D systems, coordinates not yet touched by a placed vector are
    interchangeable, so a new vector may only use the lowest untouched ones;
    for D, whose lines are also closed under coordinate sign changes, its
    entries there are taken positive.
    """
    target = [list(r) for r in target]
    _check_target(target)
    n = len(target)
    if n == 0:
        return []
    ip = system.inner
    nl = len(system)
    nonzero = [[j for j in range(nl) if j != i and ip[i][j]] for i in range(nl)]
    order = _search_order(target)
    anchors = []
    for k, v in enumerate(order):
        earlier = [p for p in order[:k] if target[v][p]]
        anchors.append(earlier[0] if earlier else None)
    line = [None] * n
    sign = [0] * n
    used = set()
    ambient = all(ln.vector is not None for ln in system.lines)
    if ambient:
        dim = len(system.lines[0].vector)
        support = [[c for c, x in enumerate(ln.vector) if x] for ln in system.lines]
        signed_coords = system.kind.startswith("D")
        touched = [0] * dim

    def fresh_ok(l, s):
        fresh = [c for c in support[l] if not touched[c]]
        if not fresh:
            return True
        free = [c for c in range(dim) if not touched[c]][: len(fresh)]
        if fresh != free:
            return False
        return not signed_coords or all(s * system.lines[l].vector[c] > 0 for c in fresh)

    def consistent(v, l, s, k):
        for p in order[:k]:
            if s * sign[p] * ip[l][line[p]] != target[v][p]:
                return False
        return True

    def rec(k):
        if k == n:
            return True
        v = order[k]
        a = anchors[k]
        if a is None:
            if k == 0:
                cands = [(0, 1)]
            elif ambient and signed_coords:
                # fresh coordinate signs are normalised instead of the component sign
                cands = [(l, s) for l in range(nl) for s in (1, -1)]
            else:
                cands = [(l, 1) for l in range(nl)]
        else:
            la, sa = line[a], sign[a]
            cands = [(l, target[v][a] * sa * ip[l][la]) for l in nonzero[la]]
        for l, s in cands:
            if l in used or not consistent(v, l, s, k):
                continue
            if ambient and k and not fresh_ok(l, s):
                continue
            line[v], sign[v] = l, s
            used.add(l)
            if ambient:
                for c in support[l]:
                    touched[c] += 1
            if rec(k + 1):
                return True
            used.discard(l)
            if ambient:
                for c in support[l]:
                    touched[c] -= 1
        line[v], sign[v] = None, 0
        return False

    if not rec(0):
        return None
    return [(line[v], sign[v]) for v in range(n)]
