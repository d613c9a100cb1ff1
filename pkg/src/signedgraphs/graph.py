"""Edge-signed graphs, switching, and switching-class canonical keys."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "SignedGraph",
    "SwitchingKey",
    "CanonicalForm",
    "EsgParseError",
    "MAX_CANON_VERTICES",
    "adjacency_matrix",
    "switch",
    "relabel",
    "canonical_form",
    "canonical_key",
    "switching_equivalent",
    "contains_unsigned_member",
    "parse_esg",
    "format_esg",
]

MAX_CANON_VERTICES = 10

# symbol per matrix entry in the key encoding
_SYMBOL = {1: 0, 0: 1, -1: 2}


class EsgParseError(ValueError):
    """Raised on malformed ``.esg`` text."""


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SignedGraph:
    """Vertices ``0..n-1`` with disjoint sets of (+)-edges and (-)-edges."""

    n: int
    plus: frozenset = field(default_factory=frozenset)
    minus: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        plus = frozenset(_pair(*e) for e in self.plus)
        minus = frozenset(_pair(*e) for e in self.minus)
        for u, v in plus | minus:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {{{u},{v}}} out of range for n={self.n}")
        if plus & minus:
            raise ValueError(f"edges signed both ways: {sorted(plus & minus)}")
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    @classmethod
    def from_matrix(cls, a: Sequence[Sequence[int]]) -> "SignedGraph":
        """Read a symmetric {0, +1, -1} matrix; the diagonal is ignored."""
        n = len(a)
        plus, minus = [], []
        for i in range(n):
            if len(a[i]) != n:
                raise ValueError("matrix is not square")
            for j in range(i + 1, n):
                x = int(a[i][j])
                if x != int(a[j][i]):
                    raise ValueError("matrix is not symmetric")
                if x == 1:
                    plus.append((i, j))
                elif x == -1:
                    minus.append((i, j))
                elif x != 0:
                    raise ValueError(f"entry {x} at ({i},{j}) is not in {{0, +1, -1}}")
        return cls(n, frozenset(plus), frozenset(minus))

    @classmethod
    def unsigned(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SignedGraph":
        return cls(n, frozenset(edges), frozenset())

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        a = [[0] * self.n for _ in range(self.n)]
        for u, v in self.plus:
            a[u][v] = a[v][u] = 1
        for u, v in self.minus:
            a[u][v] = a[v][u] = -1
        return tuple(tuple(row) for row in a)

    @property
    def edges(self) -> frozenset:
        return self.plus | self.minus

    def sign(self, u: int, v: int) -> int:
        return self.adjacency[u][v]

    def neighbours(self, v: int) -> list[int]:
        return [w for w, x in enumerate(self.adjacency[v]) if x]

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.neighbours(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def induced(self, vertices: Sequence[int]) -> "SignedGraph":
        """Induced subgraph, relabelled ``vertices[i] -> i``."""
        index = {v: i for i, v in enumerate(vertices)}
        a = self.adjacency
        plus, minus = [], []
        for u, v in itertools.combinations(vertices, 2):
            if a[u][v] == 1:
                plus.append((index[u], index[v]))
            elif a[u][v] == -1:
                minus.append((index[u], index[v]))
        return SignedGraph(len(vertices), frozenset(plus), frozenset(minus))

    def underlying(self) -> "SignedGraph":
        return SignedGraph(self.n, self.edges, frozenset())

    def __repr__(self) -> str:
        return f"SignedGraph(n={self.n}, plus={sorted(self.plus)}, minus={sorted(self.minus)})"


def adjacency_matrix(g: SignedGraph) -> list[list[int]]:
    """Signed adjacency matrix as a fresh list of lists."""
    return [list(row) for row in g.adjacency]


def switch(g: SignedGraph, w: Iterable[int]) -> SignedGraph:
    """Flip the sign of every edge with exactly one endpoint in ``w``."""
    w = set(w)
    for v in w:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    plus, minus = set(), set()
    for u, v in g.edges:
        s = g.adjacency[u][v]
        if (u in w) != (v in w):
            s = -s
        (plus if s == 1 else minus).add((u, v))
    return SignedGraph(g.n, frozenset(plus), frozenset(minus))


def relabel(g: SignedGraph, perm: Sequence[int]) -> SignedGraph:
    """Move vertex ``i`` to position ``perm[i]``."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm is not a permutation of the vertex set")
    return SignedGraph(
        g.n,
        frozenset((perm[u], perm[v]) for u, v in g.plus),
        frozenset((perm[u], perm[v]) for u, v in g.minus),
    )


@dataclass(frozen=True, order=True)
class SwitchingKey:
    """Canonical code of a switching class; equal keys iff switching equivalent."""

    n: int
    code: bytes

    def hex(self) -> str:
        return f"{self.n:02x}" + self.code.hex()

    @classmethod
    def fromhex(cls, text: str) -> "SwitchingKey":
        raw = bytes.fromhex(text)
        if not raw:
            raise ValueError("empty key")
        n = raw[0]
        if len(raw) - 1 != n * (n - 1) // 2:
            raise ValueError("key length does not match its vertex count")
        return cls(n, raw[1:])

    def graph(self) -> SignedGraph:
        """The canonical representative this key encodes."""
        plus, minus = [], []
        pos = 0
        for j in range(1, self.n):
            for i in range(j):
                s = self.code[pos]
                pos += 1
                if s == 0:
                    plus.append((i, j))
                elif s == 2:
                    minus.append((i, j))
        return SignedGraph(self.n, frozenset(plus), frozenset(minus))

    def __str__(self) -> str:
        return self.hex()


@dataclass(frozen=True)
class CanonicalForm:
    """A minimising labelling: ``relabel(switch(g, switch_set), perm)`` is the
    canonical representative."""

    key: SwitchingKey
    perm: tuple[int, ...]
    switch_set: frozenset

    @property
    def representative(self) -> SignedGraph:
        return self.key.graph()


def canonical_form(g: SignedGraph, max_vertices: int = MAX_CANON_VERTICES) -> CanonicalForm:
    """Lexicographically least code over every relabelling and switching.

    The code lists the upper triangle column by column, i.e. entries
    ``(0,1), (0,2), (1,2), (0,3), ...``, with symbols ``+1 -> 0``,
    ``0 -> 1``, ``-1 -> 2``. The search places vertices one at a time and
    keeps only the partial labellings whose code prefix is minimal. For a
    fixed order the switching that minimises the next column is forced
    (the first entry touching each not-yet-linked component is made +1),
    so the only branching is over vertex choice; partial labellings whose
    futures are provably identical are merged.
    """
    n = g.n
    if n > max_vertices:
        raise ValueError(f"canonical form is brute force; n={n} exceeds bound {max_vertices}")
    a = g.adjacency
    if n <= 1:
        return CanonicalForm(SwitchingKey(n, b""), tuple(range(n)), frozenset())

    # state: (order, comp, sign); comp[i]/sign[i] describe position i's
    # component (min position label) and sign relative to that component
    states = [((v,), (0,), (1,)) for v in range(n)]
    code = bytearray()
    for k in range(1, n):
        best = None
        survivors = []
        seen = set()
        for order, comp, sign in states:
            placed = set(order)
            for x in range(n):
                if x in placed:
                    continue
                col = []
                flip = {}
                for i in range(k):
                    e = a[order[i]][x]
                    if e == 0:
                        col.append(1)
                        continue
                    c = comp[i]
                    t = flip.get(c)
                    if t is None:
                        t = sign[i] * e
                        flip[c] = t
                    col.append(0 if t * sign[i] * e == 1 else 2)
                col = tuple(col)
                if best is not None and col > best:
                    continue
                if best is None or col < best:
                    best = col
                    survivors = []
                    seen = set()
                new_order = order + (x,)
                if flip:
                    root = min(flip)
                    new_comp = tuple(root if c in flip else c for c in comp) + (root,)
                    new_sign = tuple(
                        flip[c] * s if c in flip else s for c, s in zip(comp, sign)
                    ) + (1,)
                else:
                    new_comp = comp + (k,)
                    new_sign = sign + (1,)
                sig = _future_signature(a, n, new_order, new_comp, new_sign)
                if sig in seen:
                    continue
                seen.add(sig)
                survivors.append((new_order, new_comp, new_sign))
        code.extend(best)
        states = survivors

    order, comp, sign = states[0]
    perm = [0] * n
    switched = set()
    for pos, v in enumerate(order):
        perm[v] = pos
        if sign[pos] == -1:
            switched.add(v)
    return CanonicalForm(SwitchingKey(n, bytes(code)), tuple(perm), frozenset(switched))


def _future_signature(a, n, order, comp, sign):
    # two partial labellings with equal signatures complete identically
    placed = set(order)
    rest = tuple(x for x in range(n) if x not in placed)
    rows = tuple(tuple(sign[i] * a[v][x] for i, v in enumerate(order)) for x in rest)
    return rest, comp, rows


def canonical_key(g: SignedGraph, max_vertices: int = MAX_CANON_VERTICES) -> SwitchingKey:
    return canonical_form(g, max_vertices).key


def switching_equivalent(g: SignedGraph, h: SignedGraph) -> bool:
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    return canonical_key(g) == canonical_key(h)


def contains_unsigned_member(g: SignedGraph) -> bool:
    """True iff some switching of ``g`` has no (-)-edges.

    Decided by 2-colouring: every cycle must carry an even number of
    (-)-edges, equivalently a vertex signing with ``s_u s_v = sign(uv)``
    exists.
    """
    side = [0] * g.n
    a = g.adjacency
    for start in range(g.n):
        if side[start]:
            continue
        side[start] = 1
        stack = [start]
        while stack:
            u = stack.pop()
            for v in range(g.n):
                e = a[u][v]
                if not e:
                    continue
                want = side[u] * e
                if side[v] == 0:
                    side[v] = want
                    stack.append(v)
                elif side[v] != want:
                    return False
    return True


_VERTICES = re.compile(r"^vertices\s+(\d+)$")
_EDGE = re.compile(r"^edge\s+(\d+)\s+(\d+)\s+(\S+)$")


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def parse_esg(text: str) -> SignedGraph:
    """Parse the ``.esg`` grammar: ``vertices <n>`` then ``edge <u> <v> <+|->``."""
    n = None
    plus, minus = set(), set()
    for lineno, line in _content_lines(text):
        if n is None:
            m = _VERTICES.match(line)
            if not m:
                raise EsgParseError(f"line {lineno}: expected 'vertices <n>'")
            n = int(m.group(1))
            continue
        m = _EDGE.match(line)
        if not m:
            raise EsgParseError(f"line {lineno}: expected 'edge <u> <v> <+|->'")
        u, v, s = int(m.group(1)), int(m.group(2)), m.group(3)
        if not u < v:
            raise EsgParseError(f"line {lineno}: need u < v")
        if v >= n:
            raise EsgParseError(f"line {lineno}: vertex {v} out of range")
        if (u, v) in plus or (u, v) in minus:
            raise EsgParseError(f"line {lineno}: duplicate edge {u} {v}")
        if s == "+":
            plus.add((u, v))
        elif s == "-":
            minus.add((u, v))
        else:
            raise EsgParseError(f"line {lineno}: sign must be '+' or '-'")
    if n is None:
        raise EsgParseError("missing 'vertices <n>' line")
    return SignedGraph(n, frozenset(plus), frozenset(minus))


def format_esg(g: SignedGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"vertices {g.n}")
    for u, v in sorted(g.edges):
        lines.append(f"edge {u} {v} {'+' if (u, v) in g.plus else '-'}")
    return "\n".join(lines) + "\n"
