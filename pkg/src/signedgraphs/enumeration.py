"""Switching classes of connected signed graphs represented in E8, grown one vertex at a time."""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .classification import integral_representation
from .graph import (
    SignedGraph,
    SwitchingKey,
    canonical_form,
    contains_unsigned_member,
    format_esg,
)
from .lines import generate_lines

__all__ = [
    "ClassRecord",
    "grow_classes",
    "enumerate_exceptional",
    "is_exceptional",
    "catalog_jsonl",
    "summary_csv",
    "MAX_LEVEL",
]

MAX_LEVEL = 8


@dataclass(frozen=True)
class ClassRecord:
    """Canonical representative of one switching class with an E8 witness.

    Vertex ``i`` of ``graph`` is realised by ``signs[i]`` times line
    ``lines[i]`` of the sorted E8 line list.
    """

    key: SwitchingKey
    graph: SignedGraph
    lines: tuple
    signs: tuple

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def unsigned(self) -> bool:
        return contains_unsigned_member(self.graph)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "key": self.key.hex(),
            "esg_text": format_esg(self.graph),
            "unsigned": self.unsigned,
            "e8_lines": list(self.lines),
            "e8_signs": list(self.signs),
        }


@lru_cache(maxsize=None)
def _e8_table():
    return generate_lines("E8").inner


def _inverse(gram):
    """Exact inverse of a nonsingular rational matrix."""
    n = len(gram)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(gram)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c])
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _record(graph: SignedGraph, lines, signs) -> ClassRecord:
    cf = canonical_form(graph)
    k = graph.n
    new_lines = [None] * k
    new_signs = [None] * k
    for i in range(k):
        j = cf.perm[i]
        new_lines[j] = lines[i]
        new_signs[j] = -signs[i] if i in cf.switch_set else signs[i]
    return ClassRecord(cf.key, cf.representative, tuple(new_lines), tuple(new_signs))


def _children(rec: ClassRecord) -> list[ClassRecord]:
    """Every connected one-vertex extension with nonsingular Gram, deduplicated."""
    ip = _e8_table()
    k = rec.n
    gram = [[x + 2 * (i == j) for j, x in enumerate(row)] for i, row in enumerate(rec.graph.adjacency)]
    inv = _inverse(gram)
    used = set(rec.lines)
    seen = {}
    for l in range(len(ip)):
        if l in used:
            continue
        r = [s * ip[l][p] for p, s in zip(rec.lines, rec.signs)]
        if not any(r):
            continue
        # det of the bordered Gram is det(G) * (2 - r^T G^-1 r)
        q = sum(r[i] * inv[i][j] * r[j] for i in range(k) if r[i] for j in range(k) if r[j])
        if q == 2:
            continue
        if tuple(r) in seen:
            continue
        plus = set(rec.graph.plus) | {(i, k) for i in range(k) if r[i] == 1}
        minus = set(rec.graph.minus) | {(i, k) for i in range(k) if r[i] == -1}
        child = SignedGraph(k + 1, frozenset(plus), frozenset(minus))
        seen[tuple(r)] = _record(child, rec.lines + (l,), rec.signs + (1,))
    out = {}
    for c in seen.values():
        out.setdefault(c.key, c)
    return list(out.values())


def _extend_level(parents: list[ClassRecord], threads: int = 1) -> list[ClassRecord]:
    if threads > 1 and len(parents) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(_children, parents, chunksize=max(1, len(parents) // (4 * threads))))
    else:
        batches = [_children(p) for p in parents]
    merged = {}
    # parents are processed in key order, so the first witness kept is deterministic
    for batch in batches:
        for c in batch:
            merged.setdefault(c.key, c)
    return [merged[k] for k in sorted(merged)]


def _root() -> ClassRecord:
    return _record(SignedGraph(1, frozenset(), frozenset()), (0,), (1,))


def grow_classes(upto: int, threads: int = 1) -> dict[int, list[ClassRecord]]:
    """All switching classes of connected signed graphs with smallest eigenvalue
    above -2 on ``1..upto`` vertices, each with an E8 witness."""
    if not 1 <= upto <= MAX_LEVEL:
        raise ValueError(f"need 1 <= upto <= {MAX_LEVEL}")
    levels = {1: [_root()]}
    for k in range(2, upto + 1):
        levels[k] = _extend_level(levels[k - 1], threads)
    return levels


def is_exceptional(g: SignedGraph) -> bool:
    """No integer representation; decided by exhaustive D(n+1) search."""
    return integral_representation(g) is None


def _filter_exceptional(records, threads):
    if threads > 1 and len(records) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            flags = list(pool.map(is_exceptional, [r.graph for r in records], chunksize=16))
    else:
        flags = [is_exceptional(r.graph) for r in records]
    return [r for r, f in zip(records, flags) if f]


def enumerate_exceptional(max_vertices: int = 8, threads: int = 1, full_frontier: bool = False):
    """Exceptional classes on 6..max_vertices vertices, keyed by vertex count.

    Sizes 7 and 8 are grown from exceptional parents only (every exceptional
    graph on 7 or 8 vertices has an exceptional induced subgraph one vertex
    smaller); with ``full_frontier`` they are filtered out of the complete
    level instead.
    """
    if not 6 <= max_vertices <= MAX_LEVEL:
        raise ValueError(f"need 6 <= max_vertices <= {MAX_LEVEL}")
    if full_frontier:
        levels = grow_classes(max_vertices, threads)
        return {n: _filter_exceptional(levels[n], threads) for n in range(6, max_vertices + 1)}
    levels = grow_classes(6, threads)
    out = {6: _filter_exceptional(levels[6], threads)}
    for n in range(7, max_vertices + 1):
        out[n] = _filter_exceptional(_extend_level(out[n - 1], threads), threads)
    return out


def catalog_jsonl(catalog: dict[int, list[ClassRecord]]) -> str:
    return "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for n in sorted(catalog) for r in catalog[n])


def summary_csv(catalog: dict[int, list[ClassRecord]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "total_classes", "unsigned_classes"])
    for n in sorted(catalog):
        w.writerow([n, len(catalog[n]), sum(r.unsigned for r in catalog[n])])
    return buf.getvalue()
