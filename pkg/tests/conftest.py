from __future__ import annotations

import random

import pytest

from turanlab.h3core import Hypergraph3, triple_rank
from turanlab.patterns import FamilySpec, PatternSpec, through_in_masks
from turanlab.search import SearchConfig, turan_exact

P4 = FamilySpec.of(PatternSpec.minimal_path(4))


def random_hypergraph(rng: random.Random, n: int, p: float) -> Hypergraph3:
    bits = 0
    for c in range(n):
        for b in range(c):
            for a in range(b):
                if rng.random() < p:
                    bits |= 1 << triple_rank(a, b, c)
    return Hypergraph3(n, bits)


def random_connected_p4_free(rng: random.Random, n: int) -> Hypergraph3:
    """Greedy random growth that keeps the edge set connected and free of minimal 4-paths."""
    triples = [(a, b, c) for c in range(n) for b in range(c) for a in range(b)]
    rng.shuffle(triples)
    target = rng.randint(3, 3 * n)
    pattern = PatternSpec.minimal_path(4)
    masks: list[int] = []
    union = 0
    bits = 0
    for a, b, c in triples:
        m = (1 << a) | (1 << b) | (1 << c)
        if masks and not m & union:
            continue
        masks.append(m)
        if through_in_masks(masks, len(masks) - 1, pattern, n):
            masks.pop()
            continue
        union |= m
        bits |= 1 << triple_rank(a, b, c)
        if len(masks) >= target:
            break
    return Hypergraph3(n, bits)


@pytest.fixture(scope="session")
def p4_n8():
    return turan_exact(SearchConfig(P4, 8))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
