from __future__ import annotations

import dataclasses
from itertools import combinations_with_replacement
from math import comb

import pytest

from turanlab.constructions import ConstructionKind, construct
from turanlab.h3core import FormatError, from_triples
from turanlab.patterns import FamilySpec, PatternSpec, parse_family
from turanlab.ramsey import (
    Coloring,
    DerivationError,
    TuranFact,
    format_coloring,
    is_proper,
    lower_bound_class_check,
    parse_coloring,
    pinned_p4_facts,
    ramsey_exhaustive,
    ramsey_formula_p2,
    ramsey_lower_bound,
    s_r,
    t_r,
    turan_to_ramsey_upper,
    verify_theorem_rn,
)
from turanlab.search import SearchConfig, TuranRecord, turan_exact

P4 = parse_family("p4")
P2 = parse_family("p2")


def oracle_s(r):
    # direct from the definition, scanning upward
    best = None
    for s in range(5, 40):
        if sum(comb(k, 2) for k in range(6, s + 1)) <= r - 1:
            best = s
    return best


def oracle_t(r):
    return max(t for t in range(3, 40) if comb(t, 3) <= r)


@pytest.mark.parametrize("r", range(1, 60))
def test_s_and_t_match_their_definitions(r):
    assert s_r(r) == oracle_s(r)
    assert t_r(r) == oracle_t(r)


def test_s_and_t_examples():
    assert (s_r(15), s_r(16)) == (5, 6)
    assert (t_r(3), t_r(4), t_r(10), t_r(20)) == (3, 4, 5, 6)


@pytest.mark.parametrize("r", range(1, 21))
def test_lower_bound_colorings_are_proper(r):
    n, c = ramsey_lower_bound(r)
    assert n == r + max(s_r(r), t_r(r))
    assert c.n == n and c.r == r
    ok, witness = is_proper(c, P4)
    assert ok and witness is None
    assert all(lower_bound_class_check(c))


def test_two_colour_lower_bound_shape():
    n, c = ramsey_lower_bound(2)
    assert n == 7
    star, rest = c.classes()
    assert all(0 in e for e in star.edges) and len(star) == comb(6, 2)
    assert len(rest) == 20 and all(0 not in e for e in rest.edges)


def test_lower_bound_values_for_four_and_sixteen_colours():
    assert ramsey_lower_bound(4)[0] + 1 == 10
    assert ramsey_lower_bound(16)[0] + 1 == 23


def test_monochromatic_complete_graph_is_improper():
    c = Coloring(8, 1, (0,) * comb(8, 3))
    ok, (colour, pattern, edges) = is_proper(c, P4)
    assert not ok and colour == 0 and pattern == "p4" and len(edges) == 4


def test_six_vertices_are_always_proper():
    import random

    rng = random.Random(0)
    for _ in range(20):
        c = Coloring(6, 3, tuple(rng.randrange(3) for _ in range(20)))
        assert is_proper(c, P4)[0]


def test_coloring_round_trip_and_errors():
    c = ramsey_lower_bound(3)[1]
    assert parse_coloring(format_coloring(c)) == c
    with pytest.raises(FormatError):
        parse_coloring("col 4 2\n0 1 2 0\n")
    with pytest.raises(FormatError) as err:
        parse_coloring("col 4 2\n0 1 2 0\n0 1 3 5\n0 2 3 0\n1 2 3 0\n")
    assert err.value.line == 3
    with pytest.raises(FormatError):
        parse_coloring("col 4 2\n0 1 3 0\n0 1 2 0\n0 2 3 0\n1 2 3 0\n")
    with pytest.raises(ValueError):
        Coloring(4, 2, (0, 1, 2, 0))


def test_p2_formula_and_exhaustive_agree():
    assert [ramsey_formula_p2(r) for r in (2, 3, 4)] == [4, 4, 5]
    assert ramsey_exhaustive(4, 3, P2)[0]
    forced, c = ramsey_exhaustive(4, 4, P2)
    assert not forced and sorted(c.assignment) == [0, 1, 2, 3]
    assert ramsey_exhaustive(5, 4, P2)[0]
    for r in (1, 2, 3, 4):
        n = ramsey_formula_p2(r)
        assert ramsey_exhaustive(n, r, P2)[0]
        assert not ramsey_exhaustive(n - 1, r, P2)[0]


def test_exhaustive_guard():
    with pytest.raises(ValueError):
        ramsey_exhaustive(7, 3, P4)


def test_exhaustive_p4_two_colours_on_six_vertices():
    # any colouring of six vertices is proper
    forced, c = ramsey_exhaustive(6, 2, P4)
    assert not forced and is_proper(c, P4)[0]


def test_averaging_certificates():
    cert = turan_to_ramsey_upper(8, 2, 22)
    assert cert is not None and cert.edges == 56 and "R <= 8" in cert.statement
    assert turan_to_ramsey_upper(10, 3, 37) is not None
    assert turan_to_ramsey_upper(8, 3, 22) is None
    assert turan_to_ramsey_upper(8, 2, TuranFact(8, 1, 22, "paper")).provenance == "paper"


def test_incomplete_records_never_certify():
    rec = turan_exact(SearchConfig(P4, 8, node_limit=50))
    assert not rec.complete
    assert turan_to_ramsey_upper(8, 2, rec) is None


def test_complete_record_certifies(p4_n8):
    cert = turan_to_ramsey_upper(8, 2, p4_n8)
    assert cert is not None and cert.provenance == "search"


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_replayed_arguments(r):
    d = verify_theorem_rn(r, pinned_p4_facts())
    assert d.verdict == d.claimed == r + 6
    assert all(step.ok for step in d.chain)
    assert d.paper_inputs and not d.search_inputs


def test_four_colour_chain_contains_degree_obstruction():
    d = verify_theorem_rn(4, pinned_p4_facts())
    step = next(s for s in d.chain if s.kind == "obstruction")
    sums = {sum(c) for c in combinations_with_replacement((4, 11, 26), 4)}
    assert 36 not in sums and "36" in step.statement


@pytest.mark.parametrize("key", [(7, 1), (8, 1), (9, 1), (9, 2), (10, 1), (10, 2), (10, 3)])
@pytest.mark.parametrize("delta", [-1, 1])
def test_perturbed_inputs_break_the_chain(key, delta):
    facts = pinned_p4_facts()
    facts[key] = dataclasses.replace(facts[key], value=facts[key].value + delta)
    needs = {1: [(7, 1)], 2: [(8, 1)], 3: [(8, 1), (9, 1), (9, 2)]}
    needs[4] = needs[3] + [(10, 1), (10, 2), (10, 3)]
    for r, keys in needs.items():
        if key in keys:
            with pytest.raises(DerivationError):
                verify_theorem_rn(r, facts)


def test_wrong_extremal_family_breaks_the_chain():
    facts = pinned_p4_facts()
    facts[(10, 3)] = dataclasses.replace(facts[(10, 3)], extremal=("sk", "sp"))
    with pytest.raises(DerivationError) as err:
        verify_theorem_rn(4, facts)
    assert "Ex^(3)(10)" in err.value.step


def test_missing_inputs_are_named():
    with pytest.raises(DerivationError) as err:
        verify_theorem_rn(3, {})
    assert "ex^(1)(8)" in err.value.step or "ex^(1)(9)" in err.value.step
    with pytest.raises(ValueError):
        verify_theorem_rn(5, pinned_p4_facts())


def test_search_values_are_tagged(p4_n8):
    from turanlab.ramsey import facts_from_records

    facts = facts_from_records([p4_n8])
    assert facts[(8, 1)].provenance == "search"
    assert facts[(8, 1)].extremal == ("sk", "sp", "starplus")
    d = verify_theorem_rn(2, facts)
    assert d.search_inputs == ["ex^(1)(8)"] and not d.paper_inputs
