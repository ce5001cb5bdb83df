"""Walk through exact Turán numbers for the 4-edge loose path on few vertices.

Run with ``python3 demos/small_turan_numbers.py``; the whole thing takes well
under a minute.
"""

from __future__ import annotations

import time

from turanlab.constructions import ConstructionKind, construct
from turanlab.h3core import canonical_form, degrees
from turanlab.patterns import find_minimal_path, parse_family
from turanlab.search import SearchConfig, turan_exact, turan_hierarchy

P4 = parse_family("p4")

# Up to 6 vertices a 3-graph simply has too few triples to host a 4-edge path,
# so the complete graph wins.
for n in range(3, 8):
    t0 = time.perf_counter()
    rec = turan_exact(SearchConfig(P4, n))
    print(f"ex({n}; P4) = {rec.value:3d}  classes={len(rec.extremal)}  {time.perf_counter() - t0:.2f}s")

# At 8 vertices three non-isomorphic graphs tie.  Name them by matching
# canonical forms against the known constructions.
rec = turan_exact(SearchConfig(P4, 8))
named = {canonical_form(construct(k)): k.name for k in (
    ConstructionKind.starplus(8), ConstructionKind.sp(8), ConstructionKind.sk(8))}
print("n=8 extremal:", sorted(named.get(c, "?") for c in rec.extremal))

for kind in ("starplus", "sp", "sk"):
    H = construct(ConstructionKind(kind, 8))
    print(f"  {kind:9s} edges={len(H)} degrees={sorted(degrees(H).degrees, reverse=True)} path={find_minimal_path(H, 4)}")

# Forbidding the top answer (up to isomorphism) gives the next level down.
for r in turan_hierarchy(SearchConfig(P4, 8), 3):
    print(f"ex^({r.order})(8; P4) = {r.value}  classes={len(r.extremal)}")
