"""Command-line front end.

Exit codes: 0 verified or affirmative, 1 refuted, 2 usage or input error,
3 out of budget (or missing certified inputs).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import ramsey, structure
from .constructions import ConstructionKind, construct, expected_size, parse_kind, self_check
from .h3core import FormatError, format_h3, parse_h3, triple_rank
from .patterns import FamilySpec, family_witness, parse_family
from .search import (
    DecideAtLeast,
    EnumerateExtremal,
    Maximize,
    SearchConfig,
    TuranRecord,
    decide_exists,
    enumerate_extremal,
    turan_order,
)
from .store import DataIntegrityError, ResultStore

log = logging.getLogger("turanlab")

OK, REFUTED, USAGE, BUDGET = 0, 1, 2, 3
TABLE_ROWS = range(8, 15)
TABLE_KINDS = ("starplus", "sp", "sk", "compact_balloon", "balloon")


class UsageError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(args, payload: dict, text: str) -> None:
    if args.emit == "json":
        print(json.dumps(payload))
    else:
        print(text)


def _family(spec: str) -> FamilySpec:
    try:
        return parse_family(spec)
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_detect(args) -> int:
    H = parse_h3(_read_text(args.input))
    family = _family(args.pattern)
    hit = family_witness(H, family)
    if hit is None:
        _emit(args, {"found": False}, "FREE")
        return OK
    pattern, edges = hit
    ranks = [triple_rank(*e) for e in edges]
    _emit(args, {"found": True, "pattern": pattern.id, "ranks": ranks, "edges": [list(e) for e in edges]},
          "FOUND " + " ".join(map(str, ranks)))
    return REFUTED if args.expect_free else OK


def cmd_construct(args) -> int:
    try:
        kind = parse_kind(args.kind, args.n)
        H = construct(kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(format_h3(H))
    if args.check:
        report = self_check(kind)
        print(json.dumps({"kind": kind.name, "n": H.n, "edges": len(H), "expected": expected_size(kind), "checks": report}))
        return OK if all(report.values()) else REFUTED
    return OK


def _parse_mode(text: str):
    if text == "max":
        return Maximize()
    head, _, arg = text.partition(":")
    if head in ("decide", "enum") and arg.isdigit():
        return DecideAtLeast(int(arg)) if head == "decide" else EnumerateExtremal(int(arg))
    raise UsageError(f"bad --mode {text!r}; use max, decide:<t> or enum:<v>")


def _record_text(rec: TuranRecord) -> str:
    status = "complete" if rec.complete else "INCOMPLETE (budget)"
    lines = [f"ex^({rec.order})(n={rec.n}; {rec.family}) = {rec.value}  [{status}]"]
    if rec.connected or rec.required:
        lines.append(f"  conditions: connected={rec.connected} required={rec.required}")
    lines.append(f"  extremal classes: {len(rec.extremal)}")
    lines.extend(f"    {cf.hex()}" for cf in rec.extremal)
    lines.append(f"  nodes={rec.stats.nodes} elapsed_ms={rec.stats.elapsed_ms} prunes={rec.stats.prunes}")
    return "\n".join(lines)


def cmd_turan(args) -> int:
    family = _family(args.family)
    required = parse_h3(_read_text(args.require)) if args.require else None
    mode = _parse_mode(args.mode)
    try:
        cfg = SearchConfig(family, args.n, mode=mode, connected_only=args.connected, required_subgraph=required,
                           time_budget=args.budget, worker_count=args.threads)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    if isinstance(mode, DecideAtLeast):
        if args.order != 1:
            raise UsageError("decide mode only supports --order 1")
        d = decide_exists(cfg)
        payload = {"family": family.id, "n": args.n, "t": mode.t, "exists": d.witness is not None,
                   "complete": d.complete, "nodes": d.stats.nodes, "elapsed_ms": d.stats.elapsed_ms}
        if d.witness is not None:
            payload["witness"] = [list(e) for e in d.witness.edges]
            text = f"EXISTS: a {family.id}-free graph with {len(d.witness)} >= {mode.t} edges\n" + format_h3(d.witness)
            code = OK
        elif d.complete:
            text = f"NONE: no {family.id}-free graph on {args.n} vertices has {mode.t} edges (exhaustive)"
            code = REFUTED
        else:
            text = "INDETERMINATE: budget exhausted"
            code = BUDGET
        _emit(args, payload, text)
        return code

    store = ResultStore(args.store)
    req_hex = None
    if required is not None:
        from .h3core import canonical_form

        req_hex = canonical_form(required).hex()
    if isinstance(mode, EnumerateExtremal):
        rec = enumerate_extremal(cfg)
    else:
        cached = None if args.force else store.get(family.id, args.n, args.order, args.connected, req_hex)
        if cached is not None:
            log.info("using cached record from %s", store.path)
            rec = cached
        else:
            lower = []
            for o in range(1, args.order):
                prev = None if args.force else store.get(family.id, args.n, o, args.connected, req_hex)
                if prev is None:
                    prev = turan_order(cfg, o, lower)
                    store.put(prev)
                if not prev.complete:
                    _emit(args, prev.to_json(), _record_text(prev))
                    return BUDGET
                lower.append(prev)
            rec = turan_order(cfg, args.order, lower)
            store.put(rec)
    _emit(args, rec.to_json(), _record_text(rec))
    return OK if rec.complete else BUDGET


def cmd_ramsey_lb(args) -> int:
    n, coloring = ramsey.ramsey_lower_bound(args.r)
    classes = ramsey.lower_bound_class_check(coloring)
    text = ramsey.format_coloring(coloring)
    if args.out:
        Path(args.out).write_text(text)
    payload = {"r": args.r, "s_r": ramsey.s_r(args.r), "t_r": ramsey.t_r(args.r), "n": n,
               "lower_bound": n + 1, "proper": True, "class_shapes_ok": all(classes)}
    summary = (f"r={args.r}: proper {args.r}-colouring of K_{n} (s_r={payload['s_r']}, t_r={payload['t_r']}), "
               f"so R(P4;{args.r}) >= {n + 1}")
    if args.emit == "json":
        if not args.out:
            payload["coloring"] = text
        print(json.dumps(payload))
    else:
        print(summary, file=sys.stderr if not args.out else sys.stdout)
        if not args.out:
            sys.stdout.write(text)
    return OK if all(classes) else REFUTED


def _turan_db(store: ResultStore, pin: str | None) -> dict:
    db = {}
    if pin is not None:
        if pin == "builtin":
            db.update(ramsey.pinned_p4_facts())
        else:
            raw = json.loads(_read_text(pin))
            for row in raw["values"]:
                f = ramsey.TuranFact(row["n"], row["order"], row["value"], "paper", tuple(sorted(row.get("extremal", ()))))
                db[(f.n, f.order)] = f
    # search-certified values override pinned ones
    db.update(ramsey.facts_from_records(store.records()))
    return db


def cmd_ramsey_verify(args) -> int:
    if args.r not in (1, 2, 3, 4):
        raise UsageError("--r must be 1, 2, 3 or 4")
    store = ResultStore(args.store)
    db = _turan_db(store, args.pin_paper_values)
    try:
        d = ramsey.verify_theorem_rn(args.r, db)
    except ramsey.DerivationError as exc:
        missing = str(exc).startswith("step 'input")
        payload = {"r": args.r, "verified": False, "failed_step": exc.step, "error": str(exc)}
        _emit(args, payload, f"FAILED at {exc.step}: {exc}" + (
            "\n  (run `turanlab turan` for it or pass --pin-paper-values)" if missing else ""))
        return BUDGET if missing else REFUTED
    report = {"kind": "derivation", **d.to_json()}
    store.put_report(report)
    lines = [f"R(P4; {d.r}) = {d.verdict}"]
    for st in d.chain:
        tags = [f"{u}:{db[_fact_key(u)].provenance}" for u in st.uses]
        lines.append(f"  [{'ok' if st.ok else 'FAIL'}] {st.name}: {st.statement}" + (f"  <{', '.join(tags)}>" if tags else ""))
    lines.append(f"  paper-pinned inputs: {', '.join(d.paper_inputs) or 'none'}")
    lines.append(f"  search-certified inputs: {', '.join(d.search_inputs) or 'none'}")
    _emit(args, {"verified": True, **d.to_json()}, "\n".join(lines))
    return OK


def _fact_key(tag: str) -> tuple[int, int]:
    # "ex^(o)(n)"
    o = int(tag[tag.index("(") + 1: tag.index(")")])
    n = int(tag[tag.rindex("(") + 1: -1])
    return n, o


def cmd_ramsey_exhaustive(args) -> int:
    family = _family(args.family)
    try:
        forced, coloring = ramsey.ramsey_exhaustive(args.n, args.r, family, limit=args.limit)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {"n": args.n, "r": args.r, "family": family.id, "every_coloring_has_member": forced}
    if forced:
        _emit(args, payload, f"every {args.r}-colouring of K_{args.n} has a monochromatic {family.id} member: R <= {args.n}")
        return OK
    payload["coloring"] = ramsey.format_coloring(coloring)
    _emit(args, payload, f"proper colouring found, so R > {args.n}\n" + payload["coloring"].rstrip())
    return REFUTED


def cmd_lemma_verify(args) -> int:
    if args.which == "five":
        report = structure.verify_lemma_five()
    elif args.which == "degree":
        report = structure.verify_lemma_degree()
    else:
        if args.input:
            targets = [("input", parse_h3(_read_text(args.input)))]
        else:
            targets = [(f"{k}_{n}", construct(ConstructionKind(k, n))) for k in ("sk", "sp", "balloon") for n in range(9, 15)]
        results = {}
        for name, H in targets:
            try:
                results[name] = structure.verify_split_lemma(H)
            except ValueError as exc:
                results[name] = {"passed": False, "error": str(exc)}
        report = {"graphs": results, "passed": all(r["passed"] for r in results.values())}
    print(json.dumps(report, indent=None if args.emit == "json" else 1))
    return OK if report["passed"] else REFUTED


def table1_report(store: ResultStore | None) -> tuple[list[dict], str]:
    """Construction sizes for n = 8..14 with cached P4 values of orders 1..3 overlaid."""
    rows = []
    for n in TABLE_ROWS:
        row = {"n": n}
        for k in TABLE_KINDS:
            row[k] = expected_size(ConstructionKind(k, n))
        for o in (1, 2, 3):
            rec = store.get("p4", n, o) if store is not None else None
            row[f"ex{o}"] = rec.value if rec is not None else None
        rows.append(row)
    head = f"{'n':>3} {'S+1':>5} {'SP':>5} {'SK':>5} {'CB':>5} {'B':>5} | {'ex':>5} {'ex2':>5} {'ex3':>5}"
    lines = [head, "-" * len(head)]
    for row in rows:
        cached = " ".join(f"{row[f'ex{o}'] if row[f'ex{o}'] is not None else '-':>5}" for o in (1, 2, 3))
        lines.append(f"{row['n']:>3} " + " ".join(f"{row[k]:>5}" for k in TABLE_KINDS) + " | " + cached)
    lines.append("(ex columns: complete search records from the store; '-' = not cached)")
    return rows, "\n".join(lines)


def cmd_table1(args) -> int:
    rows, text = table1_report(ResultStore(args.store))
    _emit(args, {"rows": rows}, text)
    return OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="turanlab", description="Turán and Ramsey computations for 3-graphs.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--emit", choices=("json", "text"), default="text")
    common.add_argument("--store", default=None, help="JSON-lines result store (default: $TURANLAB_STORE)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("detect", parents=[common], help="look for a pattern in an h3 file")
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--pattern", required=True)
    s.add_argument("--expect-free", action="store_true")
    s.set_defaults(func=cmd_detect)

    s = sub.add_parser("construct", parents=[common], help="emit a named construction")
    s.add_argument("--kind", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--check", action="store_true")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("turan", parents=[common], help="exact (higher-order, conditional) Turán numbers")
    s.add_argument("--family", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--order", type=int, default=1)
    s.add_argument("--require", default=None, help="h3 file that every host must contain")
    s.add_argument("--connected", action="store_true")
    s.add_argument("--mode", default="max")
    s.add_argument("--budget", type=float, default=3600.0)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--force", action="store_true", help="ignore cached records")
    s.set_defaults(func=cmd_turan)

    s = sub.add_parser("ramsey-lb", parents=[common], help="lower-bound colouring for P4")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_ramsey_lb)

    s = sub.add_parser("ramsey-verify", parents=[common], help="replay the R(P4; r) argument, r <= 4")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--pin-paper-values", nargs="?", const="builtin", default=None, metavar="FILE",
                   help="use published Turán values (bundled constants, or a JSON file)")
    s.set_defaults(func=cmd_ramsey_verify)

    s = sub.add_parser("ramsey-exhaustive", parents=[common], help="decide R <= n by enumerating colourings")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--family", required=True)
    s.add_argument("--limit", type=int, default=ramsey.EXHAUSTIVE_LIMIT)
    s.set_defaults(func=cmd_ramsey_exhaustive)

    s = sub.add_parser("lemma-verify", parents=[common], help="exhaustive lemma checks")
    s.add_argument("--which", choices=("five", "degree", "split"), required=True)
    s.add_argument("--input", default=None, help="h3 file for --which split")
    s.set_defaults(func=cmd_lemma_verify)

    s = sub.add_parser("table1", parents=[common], help="construction sizes and cached values, n = 8..14")
    s.set_defaults(func=cmd_table1)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"turanlab: input error: {exc}", file=sys.stderr)
        return USAGE
    except UsageError as exc:
        print(f"turanlab: {exc}", file=sys.stderr)
        return USAGE
    except DataIntegrityError as exc:
        print(f"turanlab: data integrity error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())
