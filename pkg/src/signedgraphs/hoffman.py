"""Hoffman graphs, their B-matrices and special graphs."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .graph import EsgParseError, SignedGraph, _content_lines
from .spectra import Definiteness, char_poly, shifted_definiteness

__all__ = [
    "HoffmanGraph",
    "HoffmanError",
    "b_matrix",
    "special_graph",
    "smallest_eig_gt",
    "build_from_partition",
    "check_special_graph_admissible",
    "find_obstruction",
    "parse_partition",
    "parse_hoffman",
    "format_hoffman",
]


class HoffmanError(ValueError):
    pass


@dataclass(frozen=True)
class HoffmanGraph:
    """Slim vertices ``0..n_slim-1`` followed by fat vertices."""

    n_slim: int
    n_fat: int
    edges: frozenset

    def __post_init__(self):
        n = self.n_slim + self.n_fat
        norm = set()
        for u, v in self.edges:
            u, v = min(u, v), max(u, v)
            if u == v or u < 0 or v >= n:
                raise HoffmanError(f"bad edge {{{u},{v}}}")
            if u >= self.n_slim:
                raise HoffmanError(f"fat vertices {u} and {v} are adjacent")
            norm.add((u, v))
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def slim(self) -> range:
        return range(self.n_slim)

    @property
    def fat(self) -> range:
        return range(self.n_slim, self.n_slim + self.n_fat)

    def fat_neighbours(self, v: int) -> list[int]:
        return sorted(w for u, w in self.edges if u == v and w >= self.n_slim)

    def is_fat(self) -> bool:
        return all(self.fat_neighbours(v) for v in self.slim)


def b_matrix(h: HoffmanGraph) -> list[list[int]]:
    """``A_s - C C^T``."""
    k = h.n_slim
    b = [[0] * k for _ in range(k)]
    fat_of = [set(h.fat_neighbours(v)) for v in range(k)]
    for u, v in h.edges:
        if v < k:
            b[u][v] = b[v][u] = 1
    for u in range(k):
        for v in range(k):
            b[u][v] -= len(fat_of[u] & fat_of[v])
    return b


def special_graph(h: HoffmanGraph) -> SignedGraph:
    b = b_matrix(h)
    k = h.n_slim
    plus, minus = set(), set()
    for u in range(k):
        for v in range(u + 1, k):
            x = b[u][v]
            if x == 1:
                plus.add((u, v))
            elif x == -1:
                minus.add((u, v))
            elif x:
                raise HoffmanError(f"B entry {x} at ({u},{v}) is not a sign")
    return SignedGraph(k, frozenset(plus), frozenset(minus))


def smallest_eig_gt(h: HoffmanGraph, bound: int) -> bool:
    """Exact test of ``lambda_1(B(h)) > bound``."""
    return shifted_definiteness(b_matrix(h), -bound) is Definiteness.POSITIVE_DEFINITE


def _minus_components(s: SignedGraph) -> list[int]:
    comp = list(range(s.n))

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for u, v in s.minus:
        comp[find(u)] = find(v)
    return [find(v) for v in range(s.n)]


def find_obstruction(s: SignedGraph):
    """A cycle whose edges are all (-) except one, as a vertex list, or ``None``.

    Such a cycle is a (+)-edge ``uv`` closed by a (-)-path from ``v`` back to
    ``u``, found by depth-first search over the (-)-edges.
    """
    minus_adj = [[] for _ in range(s.n)]
    for u, v in s.minus:
        minus_adj[u].append(v)
        minus_adj[v].append(u)
    for u, v in sorted(s.plus):
        parent = {v: None}
        stack = [v]
        while stack:
            x = stack.pop()
            if x == u:
                path = []
                while x is not None:
                    path.append(x)
                    x = parent[x]
                return path
            for y in sorted(minus_adj[x]):
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
    return None


def check_special_graph_admissible(s: SignedGraph) -> bool:
    return find_obstruction(s) is None


def build_from_partition(s: SignedGraph, parts) -> HoffmanGraph:
    """Fat Hoffman graph with one fat vertex per part and special graph ``s``."""
    parts = [sorted(p) for p in parts]
    flat = sorted(v for p in parts for v in p)
    if flat != list(range(s.n)) or any(not p for p in parts):
        raise HoffmanError("parts must be non-empty and partition the vertex set")
    part_of = {v: i for i, p in enumerate(parts) for v in p}
    for u, v in s.plus:
        if part_of[u] == part_of[v]:
            raise HoffmanError(f"(+)-edge {{{u},{v}}} inside part {part_of[u]}")
    for u, v in s.minus:
        if part_of[u] != part_of[v]:
            raise HoffmanError(f"(-)-edge {{{u},{v}}} crosses parts")
    cycle = find_obstruction(s)
    if cycle is not None:
        raise HoffmanError(f"cycle {cycle} has exactly one (+)-edge")
    k = s.n
    edges = {(v, k + part_of[v]) for v in range(k)}
    signed = s.edges
    for u in range(k):
        for v in range(u + 1, k):
            same = part_of[u] == part_of[v]
            if same and (u, v) not in signed:
                edges.add((u, v))
            elif not same and (u, v) in s.plus:
                edges.add((u, v))
    h = HoffmanGraph(k, len(parts), frozenset(edges))
    if special_graph(h) != s:
        raise AssertionError("special graph differs from the input")
    if char_poly(b_matrix(h)) != char_poly(s.adjacency).shift(1):
        raise AssertionError("B is not A - I")
    return h


def parse_partition(spec: str) -> list[list[int]]:
    """``"0,2;1"`` -> ``[[0, 2], [1]]``."""
    try:
        return [[int(x) for x in part.split(",")] for part in spec.split(";") if part.strip()]
    except ValueError as e:
        raise HoffmanError(f"bad partition {spec!r}") from e


def parse_hoffman(text: str) -> HoffmanGraph:
    """``slim <k>``, ``fat <l>``, then ``edge <a> <b>`` with fat vertices after slim."""
    header = {}
    edges = []
    for lineno, line in _content_lines(text):
        m = re.match(r"^(slim|fat)\s+(\d+)$", line)
        if m:
            if m.group(1) in header or edges:
                raise EsgParseError(f"line {lineno}: misplaced '{m.group(1)}' line")
            header[m.group(1)] = int(m.group(2))
            continue
        m = re.match(r"^edge\s+(\d+)\s+(\d+)$", line)
        if not m or len(header) != 2:
            raise EsgParseError(f"line {lineno}: expected 'slim', 'fat' then 'edge <a> <b>'")
        edges.append((int(m.group(1)), int(m.group(2))))
    if len(header) != 2:
        raise EsgParseError("missing 'slim' or 'fat' line")
    if len({(min(e), max(e)) for e in edges}) != len(edges):
        raise EsgParseError("duplicate edge")
    try:
        return HoffmanGraph(header["slim"], header["fat"], frozenset(edges))
    except HoffmanError as e:
        raise EsgParseError(str(e)) from e


def format_hoffman(h: HoffmanGraph) -> str:
    lines = [f"slim {h.n_slim}", f"fat {h.n_fat}"]
    lines += [f"edge {u} {v}" for u, v in sorted(h.edges)]
    return "\n".join(lines) + "\n"
