"""Builders for the graph families used throughout the package."""
from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import EsgParseError, SignedGraph, _content_lines
from .spectra import matmul, transpose, verify_eigenpair

__all__ = [
    "Multigraph",
    "line_graph",
    "l_dagger",
    "double_edge_extension",
    "representation_matrix",
    "modified_adjacency",
    "signed_cycle",
    "family_x",
    "family_x_eigenvector",
    "enumerate_trees",
    "enumerate_unicyclic",
    "enumerate_double_edge_trees",
    "oriented_incidence",
    "laplacian",
    "parse_multigraph",
    "format_multigraph",
    "MAX_TREE_VERTICES",
]

MAX_TREE_VERTICES = 12


@dataclass(frozen=True)
class Multigraph:
    """Loopless multigraph on ``0..n-1``; every pair appears at most twice."""

    n: int
    edges: tuple

    def __post_init__(self):
        edges = tuple((min(u, v), max(u, v)) for u, v in self.edges)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            if not (0 <= u and v < self.n):
                raise ValueError(f"edge {{{u},{v}}} out of range for n={self.n}")
        over = [e for e, k in Counter(edges).items() if k > 2]
        if over:
            raise ValueError(f"multiplicity above 2 on {over}")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def multiplicity(self) -> Counter:
        return Counter(self.edges)

    def is_simple(self) -> bool:
        return all(k == 1 for k in self.multiplicity().values())

    def double_edges(self) -> list[tuple[int, int]]:
        return sorted(e for e, k in self.multiplicity().items() if k == 2)

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for u, w in self.edges)

    def adjacency_lists(self) -> list[list[int]]:
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = self.adjacency_lists()
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def is_tree(self) -> bool:
        return self.is_simple() and self.m == self.n - 1 and self.is_connected()

    def cycle_edges(self) -> list[int]:
        """Indices of edges on the unique cycle of a connected unicyclic graph."""
        if not (self.is_connected() and self.m == self.n):
            raise ValueError("not a connected unicyclic graph")
        alive = set(range(self.m))
        deg = [self.degree(v) for v in range(self.n)]
        leaves = [v for v in range(self.n) if deg[v] == 1]
        while leaves:
            v = leaves.pop()
            for i in list(alive):
                if v in self.edges[i]:
                    alive.discard(i)
                    w = self.edges[i][0] if self.edges[i][1] == v else self.edges[i][1]
                    deg[v] -= 1
                    deg[w] -= 1
                    if deg[w] == 1:
                        leaves.append(w)
        return sorted(alive)


def line_graph(h: Multigraph) -> SignedGraph:
    """All-(+) line graph; parallel edges are adjacent."""
    isolated = [v for v in range(h.n) if h.degree(v) == 0]
    if isolated:
        raise ValueError(f"isolated vertices {isolated}")
    plus = [
        (i, j)
        for (i, e), (j, f) in itertools.combinations(enumerate(h.edges), 2)
        if set(e) & set(f)
    ]
    return SignedGraph(h.m, frozenset(plus), frozenset())


def _shared_vertex(e, f):
    common = set(e) & set(f)
    return common.pop() if len(common) == 1 else None


def l_dagger(h: Multigraph, u: int, u_prime: int) -> SignedGraph:
    """Line graph with (-)-edges from ``u`` to the rest of the clique through ``uu'``.

    ``u`` and ``u_prime`` are edge indices of ``h`` on its cycle.
    """
    if not h.is_simple():
        raise ValueError("H must be simple")
    cycle = h.cycle_edges()
    if len(cycle) < 4:
        raise ValueError("the cycle of H must have at least 4 vertices")
    if u not in cycle or u_prime not in cycle or u == u_prime:
        raise ValueError("u and u' must be distinct cycle edges")
    v = _shared_vertex(h.edges[u], h.edges[u_prime])
    if v is None:
        raise ValueError("uu' is not an edge of the line graph of the cycle")
    # without triangles in H, the maximal clique through uu' is the star at v
    clique = {i for i, e in enumerate(h.edges) if v in e}
    base = line_graph(h)
    minus = {(min(u, x), max(u, x)) for x in clique if x != u}
    return SignedGraph(h.m, base.plus - minus, frozenset(minus))


def representation_matrix(h: Multigraph, dagger: tuple[int, int] | None = None):
    """Integer matrix ``M`` (rows: vertices of H, columns: edges of H) whose
    Gram matrix is ``A + 2I`` for the corresponding signed graph.

    Plain incidence for trees and odd unicyclic graphs; with ``dagger=(u, u')``
    the entry at the vertex shared by ``u`` and ``u'`` in column ``u`` is
    negated; the second copy of a doubled edge ``{v, w}`` gets ``+1`` at ``v``
    and ``-1`` at ``w``.
    """
    m = [[0] * h.m for _ in range(h.n)]
    seen = set()
    for j, (a, b) in enumerate(h.edges):
        if (a, b) in seen:
            m[a][j], m[b][j] = 1, -1
        else:
            m[a][j] = m[b][j] = 1
            seen.add((a, b))
    if dagger is not None:
        u, u_prime = dagger
        v = _shared_vertex(h.edges[u], h.edges[u_prime])
        if v is None:
            raise ValueError("dagger edges do not share a vertex")
        m[v][u] = -1
    return m


def _graph_from_columns(m) -> SignedGraph:
    gram = matmul(transpose(m), m)
    for i in range(len(gram)):
        gram[i][i] -= 2
    return SignedGraph.from_matrix(gram)


def double_edge_extension(h: Multigraph) -> SignedGraph:
    """Signed graph of a tree with one doubled edge; the second copy is ``u'``."""
    doubles = h.double_edges()
    if len(doubles) != 1:
        raise ValueError(f"need exactly one double edge, found {len(doubles)}")
    tree = Multigraph(h.n, tuple(dict.fromkeys(h.edges)))
    if not tree.is_tree():
        raise ValueError("underlying graph is not a tree")
    return _graph_from_columns(representation_matrix(h))


def modified_adjacency(g: SignedGraph, v: int) -> list[list[int]]:
    """Adjacency matrix with ``-1`` at diagonal position ``v``."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    a = [list(row) for row in g.adjacency]
    a[v][v] = -1
    return a


def signed_cycle(length: int, plus_count: int) -> SignedGraph:
    """Cycle ``0-1-...-(length-1)-0``; the first ``plus_count`` edges are (+)."""
    if length < 3 or not 0 <= plus_count <= length:
        raise ValueError("need length >= 3 and 0 <= plus_count <= length")
    edges = [(i, (i + 1) % length) for i in range(length)]
    return SignedGraph(length, frozenset(edges[:plus_count]), frozenset(edges[plus_count:]))


def _x1(n):
    # e_j -> j-1; path e_n..e_3 with e_1, e_2 pendant at e_3
    plus = [(0, 2), (1, 2)] + [(j, j + 1) for j in range(2, n - 1)]
    return SignedGraph(n, frozenset(plus), frozenset()), n - 1


def _cycle_with_tail(cycle_len, l, minus_edges=()):
    # e_1..e_c -> 0..c-1, f_1..f_l -> c..c+l-1; f_1 sits on e_1 and e_c
    c = cycle_len
    edges = [(i, i + 1) for i in range(c - 1)] + [(0, c - 1)]
    edges += [(0, c), (c - 1, c)] + [(c + i, c + i + 1) for i in range(l - 1)]
    minus = {(min(a, b), max(a, b)) for a, b in minus_edges}
    plus = {(min(a, b), max(a, b)) for a, b in edges} - minus
    return SignedGraph(c + l, frozenset(plus), frozenset(minus)), c + l - 1


def family_x_eigenvector(kind: str, *params: int) -> list[int]:
    """Integer eigenvector for eigenvalue -2 of the modified adjacency matrix."""
    if kind == "X1":
        (n,) = params
        return [-1, -1] + [(-1) ** (j + 1) * 2 for j in range(3, n + 1)]
    k, l = params
    if kind == "X2":
        e = [(-1) ** (j + 1) for j in range(1, 2 * k + 2)]
    elif kind == "X3":
        e = [(-1) ** j for j in range(1, 2 * k + 3)]
    else:
        raise ValueError(f"unknown family {kind!r}")
    return e + [(-1) ** j * 2 for j in range(1, l + 1)]


def family_x(kind: str, *params: int) -> tuple[SignedGraph, int]:
    """Graph and distinguished vertex of the X1(n), X2(k, l) or X3(k, l) family."""
    if kind == "X1":
        (n,) = params
        if n < 3:
            raise ValueError("X1 needs n >= 3")
        g, v = _x1(n)
    elif kind in ("X2", "X3"):
        k, l = params
        if k < 1 or l < 1:
            raise ValueError(f"{kind} needs k, l >= 1")
        if kind == "X2":
            g, v = _cycle_with_tail(2 * k + 1, l)
        else:
            c = 2 * k + 2
            g, v = _cycle_with_tail(c, l, minus_edges=[(0, c - 1), (0, c)])
    else:
        raise ValueError(f"unknown family {kind!r}")
    if not verify_eigenpair(modified_adjacency(g, v), family_x_eigenvector(kind, *params), -2):
        raise AssertionError(f"{kind}{params}: eigenvector identity fails")
    return g, v


# ---------------------------------------------------------------------------
# trees and other small multigraph families

def _rooted_code(adj, root, parent) -> str:
    return "(" + "".join(sorted(_rooted_code(adj, c, root) for c in adj[root] if c != parent)) + ")"


def _centers(adj) -> list[int]:
    n = len(adj)
    if n <= 2:
        return list(range(n))
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return layer


def tree_code(t: Multigraph) -> str:
    """Isomorphism-invariant string of a free tree (AHU at the centre)."""
    adj = t.adjacency_lists()
    return min(_rooted_code(adj, c, -1) for c in _centers(adj))


def enumerate_trees(n: int) -> list[Multigraph]:
    """One tree per isomorphism class of free trees on ``n`` vertices.

    Built by attaching a leaf to every vertex of every tree on ``n - 1``
    vertices, keeping the first tree seen for each canonical code.
    """
    if not 1 <= n <= MAX_TREE_VERTICES:
        raise ValueError(f"need 1 <= n <= {MAX_TREE_VERTICES}")
    level = {tree_code(Multigraph(1, ())): Multigraph(1, ())}
    for size in range(2, n + 1):
        nxt = {}
        for t in level.values():
            for v in range(t.n):
                child = Multigraph(size, t.edges + ((v, size - 1),))
                nxt.setdefault(tree_code(child), child)
        level = nxt
    return [level[c] for c in sorted(level)]


def _unsigned_key(h: Multigraph):
    from .graph import canonical_key

    return canonical_key(SignedGraph.unsigned(h.n, h.edges))


def enumerate_unicyclic(n: int) -> list[Multigraph]:
    """Connected simple unicyclic graphs on ``n >= 3`` vertices, up to isomorphism."""
    if n < 3:
        return []
    out = {}
    for t in enumerate_trees(n):
        present = set(t.edges)
        for u, v in itertools.combinations(range(n), 2):
            if (u, v) not in present:
                h = Multigraph(n, t.edges + ((u, v),))
                out.setdefault(_unsigned_key(h), h)
    return [out[k] for k in sorted(out)]


def _edge_rooted_code(t: Multigraph, e) -> str:
    adj = t.adjacency_lists()
    a, b = e
    return "".join(sorted((_rooted_code(adj, a, b), _rooted_code(adj, b, a))))


def enumerate_double_edge_trees(n: int) -> list[Multigraph]:
    """Trees on ``n >= 2`` vertices with one edge doubled, up to isomorphism.

    The doubled edge's second copy is listed last.
    """
    out = {}
    for t in enumerate_trees(n):
        for e in t.edges:
            code = (tree_code(t), _edge_rooted_code(t, e))
            out.setdefault(code, Multigraph(n, t.edges + (e,)))
    return [out[k] for k in sorted(out)]


def two_colouring(h: Multigraph) -> list[int] | None:
    colour = [-1] * h.n
    adj = h.adjacency_lists()
    for s in range(h.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return None
    return colour


def oriented_incidence(h: Multigraph, bipartite_orientation: bool = False) -> list[list[int]]:
    """``n x m`` matrix with one +1 and one -1 per column.

    With ``bipartite_orientation`` every edge gets +1 on its colour-0 end,
    so ``B^T B - 2I`` is the all-(+) line graph adjacency.
    """
    b = [[0] * h.m for _ in range(h.n)]
    if bipartite_orientation:
        colour = two_colouring(h)
        if colour is None:
            raise ValueError("graph is not bipartite")
        for j, (u, v) in enumerate(h.edges):
            head, tail = (u, v) if colour[u] == 0 else (v, u)
            b[head][j], b[tail][j] = 1, -1
    else:
        for j, (u, v) in enumerate(h.edges):
            b[u][j], b[v][j] = 1, -1
    return b


def laplacian(h: Multigraph) -> list[list[int]]:
    lap = [[0] * h.n for _ in range(h.n)]
    for u, v in h.edges:
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    return lap


_MEDGE = re.compile(r"^edge\s+(\d+)\s+(\d+)(?:\s+\*(\d+))?$")


def parse_multigraph(text: str) -> Multigraph:
    """``vertices <n>`` then ``edge <u> <v>`` or ``edge <u> <v> *2``."""
    n = None
    edges = []
    seen = set()
    for lineno, line in _content_lines(text):
        if n is None:
            m = re.match(r"^vertices\s+(\d+)$", line)
            if not m:
                raise EsgParseError(f"line {lineno}: expected 'vertices <n>'")
            n = int(m.group(1))
            continue
        m = _MEDGE.match(line)
        if not m:
            raise EsgParseError(f"line {lineno}: expected 'edge <u> <v> [*2]'")
        u, v = int(m.group(1)), int(m.group(2))
        mult = int(m.group(3) or 1)
        if not u < v or v >= n:
            raise EsgParseError(f"line {lineno}: need 0 <= u < v < n")
        if mult not in (1, 2):
            raise EsgParseError(f"line {lineno}: multiplicity must be 1 or 2")
        if (u, v) in seen:
            raise EsgParseError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add((u, v))
        edges.extend([(u, v)] * mult)
    if n is None:
        raise EsgParseError("missing 'vertices <n>' line")
    return Multigraph(n, tuple(edges))


def format_multigraph(h: Multigraph) -> str:
    lines = [f"vertices {h.n}"]
    for (u, v), k in sorted(h.multiplicity().items()):
        lines.append(f"edge {u} {v}" + (" *2" if k == 2 else ""))
    return "\n".join(lines) + "\n"


def iter_prufer_trees(n: int) -> Iterator[Multigraph]:
    """Every labelled tree on ``n >= 2`` vertices via Prüfer sequences."""
    for seq in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(v for v in range(n) if degree[v] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = [v for v in range(n) if degree[v] == 1]
        edges.append((u, v))
        yield Multigraph(n, tuple(edges))
