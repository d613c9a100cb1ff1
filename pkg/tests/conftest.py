import itertools
import random

import pytest
from hypothesis import settings, strategies as st

from signedgraphs.graph import SignedGraph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def signed_graphs(draw, min_n=1, max_n=6, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    signs = draw(st.lists(st.sampled_from((0, 1, -1)), min_size=len(pairs), max_size=len(pairs)))
    if connected:
        # a random spanning tree keeps the graph connected
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            i = pairs.index((u, v))
            if signs[i] == 0:
                signs[i] = draw(st.sampled_from((1, -1)))
    plus = frozenset(p for p, s in zip(pairs, signs) if s == 1)
    minus = frozenset(p for p, s in zip(pairs, signs) if s == -1)
    return SignedGraph(n, plus, minus)


@st.composite
def permutations_of(draw, n):
    return tuple(draw(st.permutations(range(n))))


def random_signed_graph(rng: random.Random, n: int, density=0.5) -> SignedGraph:
    plus, minus = set(), set()
    for e in itertools.combinations(range(n), 2):
        if rng.random() < density:
            (plus if rng.random() < 0.5 else minus).add(e)
    return SignedGraph(n, frozenset(plus), frozenset(minus))


def all_signed_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for signs in itertools.product((0, 1, -1), repeat=len(pairs)):
        yield SignedGraph(
            n,
            frozenset(p for p, s in zip(pairs, signs) if s == 1),
            frozenset(p for p, s in zip(pairs, signs) if s == -1),
        )


def triangle(signs=(1, 1, 1)):
    edges = [(0, 1), (0, 2), (1, 2)]
    return SignedGraph(
        3,
        frozenset(e for e, s in zip(edges, signs) if s == 1),
        frozenset(e for e, s in zip(edges, signs) if s == -1),
    )


def cycle(n, minus_edges=()):
    edges = [(i, (i + 1) % n) for i in range(n)]
    minus = {tuple(sorted(edges[i])) for i in minus_edges}
    plus = {tuple(sorted(e)) for e in edges} - minus
    return SignedGraph(n, frozenset(plus), frozenset(minus))


@pytest.fixture
def rng():
    return random.Random(20261015)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
