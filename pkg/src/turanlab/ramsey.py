"""Edge colourings of complete 3-graphs and Ramsey bounds for minimal 4-paths.

Lower bounds come from explicit colourings in which every colour class is a
star plus at most one extra edge (or a complete 3-graph on six vertices).
Upper bounds come from edge-count averaging against Turán numbers; for up
to four colours the full case analysis is replayed step by step, with
every inequality recomputed and every Turán input tagged by provenance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations_with_replacement
from math import comb

from .constructions import ConstructionKind, construct
from .h3core import FormatError, Hypergraph3, canonical_form, degrees, embeds, triple_rank, triple_unrank
from .patterns import FamilySpec, PatternSpec, family_witness, through_in_masks

__all__ = [
    "Coloring",
    "s_r",
    "t_r",
    "ramsey_lower_bound",
    "lower_bound_class_check",
    "is_proper",
    "ramsey_exhaustive",
    "ramsey_formula_p2",
    "turan_to_ramsey_upper",
    "UpperCertificate",
    "TuranFact",
    "pinned_p4_facts",
    "facts_from_records",
    "verify_theorem_rn",
    "RamseyDerivation",
    "DerivationError",
    "format_coloring",
    "parse_coloring",
]

P4 = FamilySpec.of(PatternSpec.minimal_path(4))
EXHAUSTIVE_LIMIT = 1 << 24


# ---------------------------------------------------------------------------
# colourings


@dataclass(frozen=True)
class Coloring:
    """Colour ``assignment[rank]`` in ``[0, r)`` for every triple of ``K_n``."""

    n: int
    r: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("need at least one colour")
        if len(self.assignment) != comb(self.n, 3):
            raise ValueError(f"expected {comb(self.n, 3)} colours, got {len(self.assignment)}")
        if any(not 0 <= c < self.r for c in self.assignment):
            raise ValueError("colour out of range")

    def color_class(self, c: int) -> Hypergraph3:
        bits = 0
        for rank, col in enumerate(self.assignment):
            if col == c:
                bits |= 1 << rank
        return Hypergraph3(self.n, bits)

    def classes(self) -> list[Hypergraph3]:
        return [self.color_class(c) for c in range(self.r)]


def format_coloring(c: Coloring) -> str:
    lines = [f"col {c.n} {c.r}"]
    for rank, col in enumerate(c.assignment):
        a, b, d = triple_unrank(rank)
        lines.append(f"{a} {b} {d} {col}")
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> Coloring:
    rows = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines()) if ln.strip() and not ln.startswith("#")]
    if not rows:
        raise FormatError("empty coloring file", 1)
    lineno, head = rows[0]
    if len(head) != 3 or head[0] != "col" or not head[1].isdigit() or not head[2].isdigit():
        raise FormatError("header must be 'col <n> <r>'", lineno)
    n, r = int(head[1]), int(head[2])
    body = rows[1:]
    if len(body) != comb(n, 3):
        line = body[-1][0] if body else lineno
        raise FormatError(f"expected {comb(n, 3)} triple lines, found {len(body)}", line)
    colors = []
    for expect, (lineno, parts) in enumerate(body):
        if len(parts) != 4 or not all(p.lstrip("-").isdigit() for p in parts):
            raise FormatError("expected '<a> <b> <c> <color>'", lineno)
        a, b, d, col = map(int, parts)
        if not 0 <= a < b < d < n:
            raise FormatError(f"triple {a} {b} {d} out of range or not ascending", lineno)
        if triple_rank(a, b, d) != expect:
            raise FormatError("triples must be listed in colex order", lineno)
        if not 0 <= col < r:
            raise FormatError(f"colour {col} outside [0, {r})", lineno)
        colors.append(col)
    return Coloring(n, r, tuple(colors))


# ---------------------------------------------------------------------------
# lower bounds


def s_r(r: int) -> int:
    """Largest s with sum_{k=6}^{s} C(k,2) <= r-1 (the empty sum is 0)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    s, total = 5, 0
    while total + comb(s + 1, 2) <= r - 1:
        s += 1
        total += comb(s, 2)
    return s


def t_r(r: int) -> int:
    """Largest t with C(t,3) <= r."""
    if r < 1:
        raise ValueError("r must be >= 1")
    t = 3
    while comb(t + 1, 3) <= r:
        t += 1
    return t


def ramsey_lower_bound(r: int) -> tuple[int, Coloring]:
    """A proper r-colouring of ``K_n`` with ``n = r + max(s_r, t_r)``, so R >= n + 1."""
    s, t = s_r(r), t_r(r)
    m = max(s, t)
    n = r + m
    colors = [0] * comb(n, 3)
    if t >= s:
        # colour i: all triples with minimum vertex i, then the C(m,3) <= r
        # triples inside the last m vertices take distinct colours
        spare = 0
        for rank in range(comb(n, 3)):
            a, _, _ = triple_unrank(rank)
            if a < r:
                colors[rank] = a
            else:
                colors[rank] = spare
                spare += 1
    else:
        # colours 0..r-2 are stars at 0..r-2, the few triples with minimum
        # vertex in r-1..n-7 take distinct colours, the last six vertices
        # form a complete 3-graph in colour r-1
        spare = 0
        for rank in range(comb(n, 3)):
            a, _, _ = triple_unrank(rank)
            if a < r - 1:
                colors[rank] = a
            elif a <= n - 7:
                colors[rank] = spare
                spare += 1
            else:
                colors[rank] = r - 1
        assert spare <= max(r - 1, 0)
    coloring = Coloring(n, r, tuple(colors))
    ok, witness = is_proper(coloring, P4)
    if not ok:
        raise AssertionError(f"lower-bound colouring is improper: {witness}")
    return n, coloring


def lower_bound_class_check(coloring: Coloring) -> list[bool]:
    """Per colour: embeds into a starplus, or spans at most six vertices."""
    n = coloring.n
    host = construct(ConstructionKind.starplus(n)) if n >= 5 else None
    out = []
    for H in coloring.classes():
        support = {x for e in H.edges for x in e}
        if len(support) <= 6 and len(H) == comb(len(support), 3):
            out.append(True)
        else:
            out.append(host is not None and embeds(H, host) is not None)
    return out


def is_proper(c: Coloring, family: FamilySpec = P4):
    """``(True, None)`` if no colour class contains a member, else ``(False, (colour, pattern, edges))``."""
    for col, H in enumerate(c.classes()):
        hit = family_witness(H, family)
        if hit is not None:
            pattern, edges = hit
            return False, (col, pattern.id, edges)
    return True, None


# ---------------------------------------------------------------------------
# exhaustive decision for tiny instances


def ramsey_exhaustive(n: int, r: int, family: FamilySpec, limit: int = EXHAUSTIVE_LIMIT):
    """``(True, None)`` iff every r-colouring of ``K_n`` has a monochromatic member.

    Otherwise ``(False, coloring)`` with a proper colouring.  Colours must
    first appear in increasing order along colex ranks.
    """
    m = comb(n, 3)
    if r < 1:
        raise ValueError("r must be >= 1")
    if r ** m > limit:
        raise ValueError(f"{r}^{m} colourings exceed the exhaustive limit {limit}")
    masks = [(1 << a) | (1 << b) | (1 << c) for a, b, c in (triple_unrank(i) for i in range(m))]
    classes: list[list[int]] = [[] for _ in range(r)]
    assign = [0] * m
    patterns = family.patterns

    def rec(i: int, used: int) -> bool:
        if i == m:
            return True
        for col in range(min(used + 1, r)):
            cls = classes[col]
            cls.append(masks[i])
            if not any(through_in_masks(cls, len(cls) - 1, p, n) for p in patterns):
                assign[i] = col
                if rec(i + 1, max(used, col + 1)):
                    return True
            cls.pop()
        return False

    if rec(0, 0):
        return False, Coloring(n, r, tuple(assign))
    return True, None


def ramsey_formula_p2(r: int) -> int:
    """min n with C(n,3) / floor(n/3) > r."""
    if r < 1:
        raise ValueError("r must be >= 1")
    n = 3
    while comb(n, 3) <= r * (n // 3):
        n += 1
    return n


# ---------------------------------------------------------------------------
# Turán inputs and averaging certificates


@dataclass(frozen=True)
class TuranFact:
    """ex^{(order)}(n; P4) with its extremal constructions and where it came from."""

    n: int
    order: int
    value: int
    provenance: str  # "search" or "paper"
    extremal: tuple[str, ...] = ()
    note: str = ""


def pinned_p4_facts() -> dict[tuple[int, int], TuranFact]:
    raw = json.loads(resources.files("turanlab.data").joinpath("pinned_p4.json").read_text())
    out = {}
    for row in raw["values"]:
        f = TuranFact(row["n"], row["order"], row["value"], "paper", tuple(row.get("extremal", ())), row.get("note", ""))
        out[(f.n, f.order)] = f
    return out


_NAMED = ("complete", "starplus", "sp", "sk", "balloon", "compact_balloon", "full_star")


def _name_forms(n: int) -> dict:
    names = {}
    for name in _NAMED:
        try:
            names[canonical_form(construct(ConstructionKind(name, n)))] = name
        except ValueError:
            continue
    if n > 6:
        names[canonical_form(construct(ConstructionKind.complete_plus_isolated(6, n - 6)))] = "k6"
    return names


def facts_from_records(records) -> dict[tuple[int, int], TuranFact]:
    """Complete, unconditional P4 search records turned into facts."""
    out = {}
    for rec in records:
        if rec.family != P4.id or not rec.complete or rec.connected or rec.required or rec.value is None:
            continue
        names = _name_forms(rec.n)
        ext = tuple(sorted(names.get(cf, "x" + cf.hex()) for cf in rec.extremal))
        out[(rec.n, rec.order)] = TuranFact(rec.n, rec.order, rec.value, "search", ext)
    return out


@dataclass(frozen=True)
class UpperCertificate:
    n: int
    r: int
    edges: int
    turan_value: int
    provenance: str

    @property
    def statement(self) -> str:
        return (
            f"C({self.n},3)/{self.r} = {self.edges}/{self.r} > {self.turan_value} = ex({self.n}) "
            f"[{self.provenance}] => R <= {self.n}"
        )


def turan_to_ramsey_upper(n: int, r: int, turan, provenance: str = "search") -> UpperCertificate | None:
    """A certificate for R <= n when C(n,3)/r exceeds the certified Turán number.

    ``turan`` is an int (with ``provenance``), a :class:`TuranFact`, or a
    search record; incomplete records never yield a certificate.
    """
    if hasattr(turan, "complete"):
        if not turan.complete or turan.value is None:
            return None
        value, provenance = turan.value, "search"
    elif isinstance(turan, TuranFact):
        value, provenance = turan.value, turan.provenance
    else:
        value = int(turan)
    edges = comb(n, 3)
    if edges > r * value:
        return UpperCertificate(n, r, edges, value, provenance)
    return None


# ---------------------------------------------------------------------------
# the case analysis for r <= 4


class DerivationError(ValueError):
    def __init__(self, step: str, detail: str):
        super().__init__(f"step {step!r} failed: {detail}")
        self.step = step


@dataclass
class Step:
    name: str
    kind: str  # citation | averaging | deletion | obstruction | construction | lower
    statement: str
    ok: bool
    uses: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"name": self.name, "kind": self.kind, "statement": self.statement, "ok": self.ok, "uses": self.uses}


@dataclass
class RamseyDerivation:
    r: int
    claimed: int
    chain: list[Step]
    verdict: int | None
    paper_inputs: list[str]
    search_inputs: list[str]

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "claimed": self.claimed,
            "verdict": self.verdict,
            "chain": [s.to_json() for s in self.chain],
            "paper_pinned_inputs": self.paper_inputs,
            "search_certified_inputs": self.search_inputs,
        }


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _off_centre(name: str, n: int) -> int:
    """Edges of the named construction that avoid its centre (vertex 0)."""
    H = construct(ConstructionKind(name, n))
    return sum(1 for e in H.edges if 0 not in e)


def verify_theorem_rn(r: int, turan_db: dict[tuple[int, int], TuranFact]) -> RamseyDerivation:
    """Replay the upper-bound argument R(P4; r) <= r + 6 and pair it with the lower bound."""
    if r not in (1, 2, 3, 4):
        raise ValueError("the replayed argument covers r = 1..4")
    chain: list[Step] = []
    used: set[tuple[int, int]] = set()

    def fact(n: int, order: int) -> TuranFact:
        f = turan_db.get((n, order))
        if f is None:
            raise DerivationError(f"input ex^({order})({n})", "missing from the Turán table")
        used.add((n, order))
        return f

    def add(name, kind, statement, ok, uses=()):
        chain.append(Step(name, kind, statement, bool(ok), list(uses)))
        if not ok:
            raise DerivationError(name, statement)

    def tag(n, order):
        return f"ex^({order})({n})"

    def consistent(n: int, order: int, kind: str) -> int:
        # a pinned or searched value must agree with the construction attaining it
        f = fact(n, order)
        if kind == "k6":
            size = len(construct(ConstructionKind.complete_plus_isolated(6, n - 6)))
        else:
            size = len(construct(ConstructionKind(kind, n)))
        add(
            f"value {tag(n, order)}",
            "construction",
            f"{tag(n, order)} = {f.value} [{f.provenance}] equals |{kind}_{n}| = {size}",
            f.value == size,
            [tag(n, order)],
        )
        return f.value

    def averaging(n: int, colours: int, edges: int, name: str) -> None:
        ex = consistent(n, 1, "starplus")
        big = _ceil_div(edges, colours)
        add(
            name,
            "averaging",
            f"some colour of {edges} edges in {colours} colours has >= {big} > {ex} = {tag(n, 1)} edges",
            big > ex,
            [tag(n, 1)],
        )

    lower_n, _ = ramsey_lower_bound(r)
    add(
        "lower bound",
        "lower",
        f"a proper {r}-colouring of K_{lower_n} exists (detector-verified), so R >= {lower_n + 1}",
        True,
    )
    target = r + 6

    if r == 1:
        ex7 = consistent(7, 1, "k6")
        add("one colour", "averaging", f"C(7,3) = 35 > {ex7} = ex(7)", comb(7, 3) > ex7, [tag(7, 1)])
    elif r == 2:
        averaging(8, 2, comb(8, 3), "two colours on K_8")
    else:
        # r = 3 part, also used inside r = 4
        ex8 = consistent(8, 1, "starplus")
        ex9 = consistent(9, 1, "starplus")
        ex9_2 = consistent(9, 2, "sp")
        add("hierarchy n=9", "citation", f"ex(9) = {ex9} > ex^(2)(9) = {ex9_2}", ex9 > ex9_2, [tag(9, 1), tag(9, 2)])
        ext9 = fact(9, 1).extremal
        add(
            "Ex(9) is the starplus",
            "citation",
            f"first-order extremal family at n=9 is {list(ext9)}",
            tuple(ext9) == ("starplus",),
            [tag(9, 1)],
        )
        h9 = comb(9, 3) - 2
        big = _ceil_div(h9, 3)
        add(
            "three colours on 82 edges",
            "averaging",
            f"a colour of a proper 3-colouring of >= {h9} edges has >= {big} > {ex9_2} = ex^(2)(9) edges, "
            f"so it lies inside a first-order extremal graph (the starplus)",
            big > ex9_2,
            [tag(9, 2)],
        )
        extra = _off_centre("starplus", 9)
        left = comb(8, 3) - 2 - extra
        add(
            "delete the centre",
            "deletion",
            f"removing the centre and the {extra} edge(s) off it leaves a proper 2-colouring "
            f"of >= C(8,3) - 2 - {extra} = {left} edges on 8 vertices",
            left == 53,
        )
        big8 = _ceil_div(left, 2)
        add(
            "two colours on 53 edges",
            "averaging",
            f"some colour has >= {big8} > {ex8} = ex(8) edges",
            big8 > ex8,
            [tag(8, 1)],
        )
        if r == 4:
            ex10 = consistent(10, 1, "starplus")
            ex10_2 = consistent(10, 2, "sp")
            ex10_3 = consistent(10, 3, "sk")
            add(
                "hierarchy n=10",
                "citation",
                f"{ex10} > {ex10_2} > {ex10_3}",
                ex10 > ex10_2 > ex10_3,
                [tag(10, 1), tag(10, 2), tag(10, 3)],
            )
            for order, want in ((1, "starplus"), (2, "sp"), (3, "sk")):
                got = fact(10, order).extremal
                add(
                    f"Ex^({order})(10)",
                    "citation",
                    f"order-{order} extremal family at n=10 is {list(got)}",
                    tuple(got) == (want,),
                    [tag(10, order)],
                )
            worst = max(_off_centre("starplus", 10), _off_centre("sp", 10))
            left = comb(10, 3) - comb(9, 2) - worst
            add(
                "starplus or SP colour",
                "deletion",
                f"a colour inside S+1_10 or SP_10: deleting its centre and <= {worst} more edges "
                f"leaves >= {left} = C(9,3) - 2 edges on 9 vertices, 3 colours (case above)",
                left >= comb(9, 3) - 2,
            )
            total = comb(10, 3)
            add(
                "all colours are SK_10",
                "averaging",
                f"otherwise every colour has <= ex^(3)(10) = {ex10_3} edges and 4 * {ex10_3} = {4 * ex10_3} "
                f"{'=' if 4 * ex10_3 == total else '<'} {total}, so each colour is an order-3 extremal graph",
                4 * ex10_3 <= total,
                [tag(10, 3)],
            )
            if 4 * ex10_3 == total:
                sk = construct(ConstructionKind.sk(10))
                degset = sorted(set(degrees(sk).degrees))
                sums = sorted({sum(c) for c in combinations_with_replacement(degset, 4)})
                nsets = len(list(combinations_with_replacement(degset, 4)))
                add(
                    "degree obstruction",
                    "obstruction",
                    f"SK_10 degrees {degset}; the {nsets} four-multisets sum to {sums}; "
                    f"none is C(9,2) = {comb(9, 2)}",
                    comb(9, 2) not in sums and nsets == 15,
                )
    provenance = {tag(n, o): turan_db[(n, o)].provenance for n, o in sorted(used)}
    return RamseyDerivation(
        r=r,
        claimed=target,
        chain=chain,
        verdict=target,
        paper_inputs=[k for k, v in provenance.items() if v == "paper"],
        search_inputs=[k for k, v in provenance.items() if v == "search"],
    )


def contains_member(H: Hypergraph3, family: FamilySpec = P4) -> bool:
    return family_witness(H, family) is not None
