"""A tour of the named constructions and the structural checks around them."""

from __future__ import annotations

from turanlab.constructions import ConstructionKind, construct, expected_size
from turanlab.patterns import find_minimal_cycle, is_family_free, matching_number, parse_family
from turanlab.structure import verify_lemma_five, verify_split_lemma

P4, P4M3 = parse_family("p4"), parse_family("p4,m3")
kinds = ("starplus", "sp", "sk", "compact_balloon", "balloon")

print("n   " + "".join(f"{k:>17s}" for k in kinds))
for n in range(8, 15):
    print(f"{n:<4d}" + "".join(f"{expected_size(ConstructionKind(k, n)):>17d}" for k in kinds))

print()
for n in (9, 12):
    for k in kinds:
        H = construct(ConstructionKind(k, n))
        print(f"{k}_{n}: P4-free={is_family_free(H, P4)} M3-free={is_family_free(H, P4M3)} "
              f"nu={matching_number(H)} has C4={find_minimal_cycle(H, 4) is not None}")

# the split checks apply to P4-free graphs with matching number 2 or 3
rep = verify_split_lemma(construct(ConstructionKind.sk(11)))
print("\nsplit check on SK_11 passed:", rep["passed"])

five = verify_lemma_five()
print("5-vertex two-colour enumeration:", five["pairs"], "pairs, max", five["max_sum"], "types", five["types_seen"])
