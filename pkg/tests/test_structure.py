from __future__ import annotations

import random
from itertools import combinations

import pytest
from conftest import random_connected_p4_free

from turanlab.constructions import ConstructionKind, construct
from turanlab.h3core import Hypergraph3, from_pairs, from_triples, is_connected
from turanlab.patterns import matching_number, maximum_matching, rr_bb_path_exists
from turanlab.structure import (
    cross_intersecting,
    decompose_by_matching,
    degree_obstruction,
    pair_mask,
    rrbb_free_table,
    verify_lemma_degree,
    verify_lemma_five,
    verify_split_lemma,
)

K5_PAIRS = list(combinations(range(5), 2))


def test_single_edge_decomposition():
    H = from_triples(3, [(0, 1, 2)])
    D = decompose_by_matching(H, [(0, 1, 2)])
    assert D.parts == {frozenset({1}): [(0, 1, 2)]}


def test_decomposition_validates_matching():
    H = construct(ConstructionKind.sk(9))
    with pytest.raises(ValueError):
        decompose_by_matching(H, [(0, 1, 2)] if (0, 1, 2) not in H else [(6, 7, 8)])
    M = maximum_matching(H)
    with pytest.raises(ValueError):
        decompose_by_matching(H, M[:1])


def test_cross_intersecting_basics():
    star = [(0, a, b) for a, b in combinations(range(1, 6), 2)]
    assert cross_intersecting(star, star)
    assert not cross_intersecting([(0, 1, 2)], [(3, 4, 5)])


def test_sk9_has_three_parts():
    H = construct(ConstructionKind.sk(9))
    D = decompose_by_matching(H, maximum_matching(H))
    assert sorted(map(sorted, D.parts)) == [[1], [1, 2], [2]]
    assert all(D.parts.values())


@pytest.mark.parametrize("n", range(9, 15))
def test_split_clauses_on_constructions(n):
    for kind, nu in (("sk", 2), ("sp", 2), ("balloon", 3)):
        report = verify_split_lemma(construct(ConstructionKind(kind, n)))
        assert report["nu"] == nu
        assert report["passed"], (kind, n, report)
    b = verify_split_lemma(construct(ConstructionKind.balloon(n)))
    assert b["clauses"]["iii_f123_nonempty"]
    assert "13" not in b["parts"] and "23" not in b["parts"]


def _random_deletion(rng: random.Random) -> Hypergraph3 | None:
    n = 8
    name = rng.choice(["sk", "sp", "starplus", "compact_balloon"])
    H = construct(ConstructionKind(name, n))
    keep = [e for e in H.edges if rng.random() < 0.75]
    G = from_triples(n, keep)
    core = sorted({x for e in keep for x in e})
    if not keep or not is_connected(from_triples(len(core), [tuple(core.index(x) for x in e) for e in keep])):
        return None
    return G


def test_split_clauses_on_random_graphs():
    rng = random.Random(2024)
    checked = 0
    while checked < 500:
        G = random_connected_p4_free(rng, rng.randint(6, 11)) if checked % 2 else _random_deletion(rng)
        if G is None or matching_number(G) not in (2, 3):
            continue
        report = verify_split_lemma(G)
        assert report["passed"], (G, report)
        checked += 1


def test_split_rejects_bad_inputs():
    with pytest.raises(ValueError):
        verify_split_lemma(construct(ConstructionKind.full_star(7)))  # nu = 1
    with pytest.raises(ValueError):
        verify_split_lemma(from_triples(9, [(0, 1, 2), (3, 4, 5), (3, 4, 6)]))  # disconnected
    with pytest.raises(ValueError):
        verify_split_lemma(construct(ConstructionKind.path_member((1, 1, 1))))


def test_rrbb_table_agrees_with_direct_check():
    table = rrbb_free_table()
    rng = random.Random(3)
    for _ in range(400):
        Rp = [p for p in K5_PAIRS if rng.random() < 0.5]
        Bp = [p for p in K5_PAIRS if rng.random() < 0.5]
        free = bool(table[pair_mask(Rp), pair_mask(Bp)])
        assert free == (not rr_bb_path_exists(from_pairs(5, Rp), from_pairs(5, Bp)))


def test_lemma_five_report():
    report = verify_lemma_five()
    assert report["max_sum"] == 13 and report["passed"]
    assert report["types_ok"]
    table = rrbb_free_table()
    k5 = pair_mask(K5_PAIRS)
    assert table[k5, pair_mask([(1, 2), (3, 4)])]
    assert not table[k5, k5]


def test_degree_lemma_report():
    report = verify_lemma_degree()
    assert report["max_sum"] <= 10 and report["passed"]
    w = report["witness"]
    assert len(w["R"]) + len(w["B"]) == report["max_sum"]


def test_degree_obstruction():
    out = degree_obstruction()
    assert out["multisets"] == 15 and not out["hit"]
    assert degree_obstruction((4, 11, 26), 30, 4)["hit"]  # 4 + 4 + 11 + 11
    assert degree_obstruction((1, 2), 5, 3)["hit"]
