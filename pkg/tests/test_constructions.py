from __future__ import annotations

from math import comb

import pytest

from turanlab.constructions import ConstructionKind, construct, expected_size, self_check
from turanlab.h3core import embeds, is_connected
from turanlab.patterns import find_minimal_cycle, find_minimal_path, matching_number

# published construction columns, rows n = 8..14: S+1, SP, SK, CB, B
TABLE = {
    8: (22, 22, 22, 17, 17),
    9: (29, 27, 26, 22, 21),
    10: (37, 32, 30, 28, 26),
    11: (46, 37, 34, 35, 32),
    12: (56, 42, 38, 43, 39),
    13: (67, 47, 42, 52, 47),
    14: (79, 52, 46, 62, 56),
}
KINDS = ("starplus", "sp", "sk", "compact_balloon", "balloon")


def _closed_form(name, n):
    return {
        "starplus": comb(n - 1, 2) + 1,
        "sp": 5 * n - 18,
        "sk": 4 * n - 10,
        "compact_balloon": comb(n - 3, 2) + 7,
        "balloon": comb(n - 4, 2) + 11,
    }[name]


@pytest.mark.parametrize("n", sorted(TABLE))
def test_table_row(n):
    assert tuple(expected_size(ConstructionKind(k, n)) for k in KINDS) == TABLE[n]
    assert tuple(len(construct(ConstructionKind(k, n))) for k in KINDS) == TABLE[n]


@pytest.mark.parametrize("n", range(8, 21))
@pytest.mark.parametrize("name", KINDS)
def test_sizes_match_closed_forms(name, n):
    kind = ConstructionKind(name, n)
    H = construct(kind)
    assert len(H) == expected_size(kind) == _closed_form(name, n)
    assert H.n == n
    assert construct(kind) == H


def test_small_kinds():
    assert len(construct(ConstructionKind.complete_plus_isolated(6, 1))) == 20
    assert construct(ConstructionKind.complete_plus_isolated(6, 1)).n == 7
    assert len(construct(ConstructionKind.full_star(7))) == comb(6, 2)
    assert len(construct(ConstructionKind.complete(6))) == 20
    C4 = construct(ConstructionKind.c4())
    assert len(C4) == 4 and find_minimal_cycle(C4, 4) is not None
    # triples through the centre meeting the support: C(6,2) minus the pair {5,6}
    assert len(construct(ConstructionKind.partial_star(7, 0, {1, 2, 3, 4}))) == comb(6, 2) - 1


def test_path_members_are_minimal_paths():
    for sig in ((1, 1, 1), (2, 1, 2), (1, 2, 1), (2, 1, 1)):
        H = construct(ConstructionKind.path_member(sig))
        assert find_minimal_path(H, len(sig) + 1) is not None
        assert len(H) == len(sig) + 1


def test_linear_path_and_matching():
    L = construct(ConstructionKind.linear_path(3))
    assert L.n == 7 and len(L) == 3
    assert matching_number(construct(ConstructionKind.matching(3))) == 3


@pytest.mark.parametrize(
    "bad",
    [
        lambda: ConstructionKind.starplus(4),
        lambda: ConstructionKind.compact_balloon(7),
        lambda: ConstructionKind("nonsense", 9),
        lambda: ConstructionKind.path_member((3,)),
        lambda: ConstructionKind.partial_star(5, 0, {0, 1}),
    ],
)
def test_out_of_range_parameters_raise(bad):
    with pytest.raises(ValueError):
        bad()


@pytest.mark.parametrize("n", range(8, 15))
def test_self_checks_hold(n):
    for name in KINDS:
        if name == "balloon" and n < 8:
            continue
        report = self_check(ConstructionKind(name, n))
        assert all(report.values()), (name, n, report)


def test_special_vertices_and_structure():
    SK = construct(ConstructionKind.sk(10))
    # the centre is vertex 0 and the graph is connected
    assert sorted(set(sum((list(e) for e in SK.edges), [])))[0] == 0
    assert is_connected(SK)
    assert embeds(construct(ConstructionKind.compact_balloon(9)), construct(ConstructionKind.starplus(9))) is None
    assert matching_number(construct(ConstructionKind.balloon(10))) == 3
