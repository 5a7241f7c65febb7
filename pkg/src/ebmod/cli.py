"""Command-line interface.

Subcommands
    idempotents  enumerate idempotent residues mod n
    davenport    exact Davenport constant of (Z/nZ)^x with witness
    eb           exact idempotent-product constant I(n) with witness
    construct    the extremal free sequence certifying the lower bound
    extract      constructive idempotent-product witness inside a given
                 threshold-length sequence (prime power or squarefree n)
    verify       all provable consistency checks for one n
    scan         equality table over a range of moduli

Formats: human table (default) and JSON everywhere; scan adds CSV and
NDJSON streaming.  Exit codes: 0 success, 2 domain error, 3 undecided
at budget under --strict, 4 internal inconsistency (a proved fact
failed to verify — always a bug, never a finding).

The only environment variable consulted is NO_COLOR.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
import time

from .arith import factorize, idempotents, is_idempotent
from .davenport import davenport_exact, davenport_formula_bound
from .ebconstant import (
    SCAN_UNDECIDED,
    STATUS_EXACT,
    STATUS_UNDECIDED,
    conjecture_scan,
    construct_extremal,
    eb_exact,
    extract_witness_prime_power,
    extract_witness_squarefree,
    verify_theorem,
)
from .errors import DomainError, InconsistencyError, UndecidedError
from .search import SearchBudget
from .sequences import (
    ResidueSequence,
    format_sequence,
    is_idempotent_product_free,
    parse_sequence_literal,
    pi,
    product_set,
)
from .unitgroup import totient, unit_group_shape, units

_GREEN, _YELLOW, _RED, _RESET = "\x1b[32m", "\x1b[33m", "\x1b[31m", "\x1b[0m"


def _use_color() -> bool:
    return sys.stdout.isatty() and "NO_COLOR" not in os.environ


def _paint(status: str) -> str:
    if not _use_color():
        return status
    color = _YELLOW if status == SCAN_UNDECIDED else (
        _RED if status == "COUNTEREXAMPLE" else _GREEN
    )
    return f"{color}{status}{_RESET}"


def _budget(args) -> SearchBudget:
    return SearchBudget(max_states=args.max_states, max_seconds=args.max_seconds)


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v) if v else "(empty)"
    return str(v)


def _emit(args, record: dict) -> None:
    """One record: aligned key/value table or a JSON object."""
    if args.format == "json":
        print(json.dumps(record, indent=2))
        return
    results = record.get("results", {})
    width = max((len(k) for k in results), default=0)
    for k, v in results.items():
        print(f"{k:<{width}}  {_fmt(v)}")
    print(f"{'time':<{width}}  {record['timing_seconds']:.3f}s")


def _record(args, results: dict, t0: float) -> dict:
    rec = {
        "command": args.cmd,
        "inputs": {k: getattr(args, k) for k in ("n",) if hasattr(args, k)},
        "results": results,
        "timing_seconds": round(time.perf_counter() - t0, 6),
    }
    if hasattr(args, "max_states"):
        rec["budget"] = {
            "max_states": args.max_states,
            "max_seconds": args.max_seconds,
        }
    return rec


def _witness_list(seq) -> list[int] | None:
    return list(seq) if seq is not None else None


def _roundtrip_check(witness, n: int, verify) -> str:
    """Serialize the witness, parse it back, re-verify through the
    library; used by --check."""
    T = parse_sequence_literal(format_sequence(witness), n)
    if T != witness:
        raise InconsistencyError("witness does not round-trip")
    verify(T)
    return "ok"


def cmd_idempotents(args) -> int:
    t0 = time.perf_counter()
    f = factorize(args.n)
    E = idempotents(args.n)
    results = {
        "n": args.n,
        "factorization": f.summary(),
        "omega": f.omega,
        "count": len(E),
        "members": list(E),
    }
    _emit(args, _record(args, results, t0))
    return 0


def cmd_davenport(args) -> int:
    t0 = time.perf_counter()
    f = factorize(args.n)
    shape = unit_group_shape(f)
    base = {
        "n": args.n,
        "phi": totient(f),
        "group": list(shape.invariant_factors),
        "formula_bound": davenport_formula_bound(shape),
    }
    try:
        res = davenport_exact(args.n, _budget(args))
    except UndecidedError as exc:
        base.update(
            {"value": None, "status": STATUS_UNDECIDED, "bounds": list(exc.bounds)}
        )
        _emit(args, _record(args, base, t0))
        return 3 if args.strict else 0
    base.update({"value": res.value, "method": res.method, "status": STATUS_EXACT})
    if args.witness or args.format == "json":
        base["witness"] = _witness_list(res.witness)
    if args.check:
        base["check"] = _roundtrip_check(
            res.witness, args.n, lambda T: _verify_davenport_witness(T, res.value)
        )
    _emit(args, _record(args, base, t0))
    return 0


def _verify_davenport_witness(T: ResidueSequence, value: int) -> None:
    us = set(units(T.n))
    if any(a not in us for a in T):
        raise InconsistencyError("witness contains a non-unit")
    if len(T) != value - 1:
        raise InconsistencyError("witness length mismatch")
    if len(T) > 0 and 1 in product_set(T):
        raise InconsistencyError("witness is not product-one free")


def cmd_eb(args) -> int:
    t0 = time.perf_counter()
    f = factorize(args.n)
    res = eb_exact(args.n, _budget(args))
    results = {
        "n": args.n,
        "factorization": f.summary(),
        "omega": f.omega,
        "big_omega": f.big_omega,
        "davenport": res.lower_bound - (f.big_omega - f.omega)
        if res.lower_bound is not None
        else None,
        "lower_bound": res.lower_bound,
        "eb_value": res.value,
        "status": res.status,
    }
    if res.bounds is not None:
        results["bounds"] = list(res.bounds)
    if res.witness is not None and (args.witness or args.format == "json"):
        results["witness"] = _witness_list(res.witness)
    if args.check and res.witness is not None:
        results["check"] = _roundtrip_check(
            res.witness,
            args.n,
            lambda T: _verify_eb_witness(T, res.value),
        )
    _emit(args, _record(args, results, t0))
    if res.status == STATUS_UNDECIDED:
        return 3 if args.strict else 0
    return 0


def _verify_eb_witness(T: ResidueSequence, value: int) -> None:
    if len(T) != value - 1:
        raise InconsistencyError("witness length mismatch")
    if len(T) > 0 and not is_idempotent_product_free(T):
        raise InconsistencyError("witness is not idempotent-product free")


def cmd_construct(args) -> int:
    t0 = time.perf_counter()
    f = factorize(args.n)
    T = construct_extremal(args.n, _budget(args))
    dav = davenport_exact(args.n, _budget(args))
    results = {
        "n": args.n,
        "factorization": f.summary(),
        "davenport": dav.value,
        "length": len(T),
        "lower_bound": len(T) + 1,
        "witness": _witness_list(T),
        "free": True,  # construct_extremal verifies before returning
    }
    if args.check:
        results["check"] = _roundtrip_check(
            T,
            args.n,
            lambda W: _verify_free(W),
        )
    _emit(args, _record(args, results, t0))
    return 0


def _verify_free(T: ResidueSequence) -> None:
    if len(T) > 0 and not is_idempotent_product_free(T):
        raise InconsistencyError("sequence is not idempotent-product free")


def cmd_extract(args) -> int:
    t0 = time.perf_counter()
    f = factorize(args.n)
    T = parse_sequence_literal(args.seq, args.n, reduce=args.reduce)
    if f.is_prime_power:
        W = extract_witness_prime_power(T, args.n, _budget(args))
        mode = "prime-power"
    elif f.is_squarefree:
        W = extract_witness_squarefree(T, args.n, _budget(args))
        mode = "squarefree"
    else:
        raise DomainError(
            f"{args.n} is neither a prime power nor squarefree; "
            "no constructive extractor applies"
        )
    results = {
        "n": args.n,
        "mode": mode,
        "input_length": len(T),
        "witness": _witness_list(W),
        "product": pi(W),
        "idempotent": True,  # extractor verifies before returning
    }
    if args.check:
        results["check"] = _roundtrip_check(
            W, args.n, lambda V: _verify_idempotent_product(V)
        )
    _emit(args, _record(args, results, t0))
    return 0


def _verify_idempotent_product(W: ResidueSequence) -> None:
    if len(W) == 0 or not is_idempotent(pi(W), W.n):
        raise InconsistencyError("extracted product is not idempotent")


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    rep = verify_theorem(args.n, _budget(args))
    spot = _extension_spot_checks(rep, args.seed)
    results = {
        "n": rep.n,
        "factorization": rep.factorization,
        "omega": rep.omega,
        "big_omega": rep.big_omega,
        "davenport": rep.davenport,
        "davenport_bounds": list(rep.davenport_bounds)
        if rep.davenport_bounds
        else None,
        "lower_bound": rep.lower_bound,
        "lower_bound_certified": rep.lower_bound_certified,
        "eb_value": rep.eb_value,
        "eb_bounds": list(rep.eb_bounds) if rep.eb_bounds else None,
        "equality_class": rep.equality_class,
        "equality_holds": rep.equality_holds,
        "extension_spot_checks": spot,
        "witness": _witness_list(rep.witness),
        "notes": list(rep.notes),
    }
    if args.check and rep.witness is not None:
        results["check"] = _roundtrip_check(rep.witness, args.n, _verify_free)
    _emit(args, _record(args, results, t0))
    undecided = rep.eb_value is None or rep.davenport is None
    if undecided:
        return 3 if args.strict else 0
    return 0


def _extension_spot_checks(rep, seed: int) -> int:
    """Sample non-idempotent extensions of an exact maximum witness and
    confirm each one breaks freeness; count of samples tried."""
    if rep.eb_value is None or rep.witness is None:
        return 0
    n = rep.n
    E = idempotents(n)
    pool = [a for a in range(n) if a not in E]
    if not pool:
        return 0
    rng = random.Random(seed)
    k = min(16, len(pool))
    for a in rng.sample(pool, k):
        extended = rep.witness.extended(a)
        if is_idempotent_product_free(extended, E):
            raise InconsistencyError(
                f"witness for n={n} extends by {a} and stays free"
            )
    return k


_SCAN_FIELDS = [
    "n",
    "factorization",
    "omega",
    "big_omega",
    "davenport",
    "davenport_bounds",
    "lower_bound",
    "eb_value",
    "eb_bounds",
    "status",
    "witness",
    "note",
]


def _row_dict(row, as_json: bool) -> dict:
    def bounds(b):
        if b is None:
            return None if as_json else ""
        return list(b) if as_json else f"{b[0]}..{b[1]}"

    witness = (
        (list(row.witness) if as_json else ",".join(map(str, row.witness)))
        if row.witness is not None
        else (None if as_json else "")
    )
    return {
        "n": row.n,
        "factorization": row.factorization,
        "omega": row.omega,
        "big_omega": row.big_omega,
        "davenport": row.davenport if as_json else _fmt(row.davenport),
        "davenport_bounds": bounds(row.davenport_bounds),
        "lower_bound": row.lower_bound if as_json else _fmt(row.lower_bound),
        "eb_value": row.eb_value if as_json else _fmt(row.eb_value),
        "eb_bounds": bounds(row.eb_bounds),
        "status": row.status,
        "witness": witness,
        "note": row.note,
    }


def cmd_scan(args) -> int:
    budget = _budget(args)
    rows_iter = conjecture_scan(args.n_lo, args.n_hi, budget, jobs=args.jobs)
    any_undecided = False
    if args.check:
        rows_iter = _checked_rows(rows_iter)

    if args.format == "json" and not args.stream:
        rows = list(rows_iter)
        any_undecided = any(r.status == SCAN_UNDECIDED for r in rows)
        print(json.dumps([_row_dict(r, True) for r in rows], indent=2))
    elif args.format == "json":  # NDJSON
        for r in rows_iter:
            any_undecided |= r.status == SCAN_UNDECIDED
            print(json.dumps(_row_dict(r, True)), flush=True)
    elif args.format == "csv":
        writer = csv.DictWriter(sys.stdout, fieldnames=_SCAN_FIELDS)
        writer.writeheader()
        for r in rows_iter:
            any_undecided |= r.status == SCAN_UNDECIDED
            writer.writerow(_row_dict(r, False))
            if args.stream:
                sys.stdout.flush()
    else:
        widths = [4, 14, 5, 5, 9, 12, 11, 8, 10, 22, 28, 0]
        header = [
            "n",
            "factors",
            "omega",
            "Omega",
            "davenport",
            "dav_bounds",
            "lower_bnd",
            "eb_value",
            "eb_bounds",
            "status",
            "witness",
            "note",
        ]
        print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
        for r in rows_iter:
            any_undecided |= r.status == SCAN_UNDECIDED
            d = _row_dict(r, False)
            cells = [str(d[k]) for k in _SCAN_FIELDS]
            padded = []
            for c, w, k in zip(cells, widths, _SCAN_FIELDS):
                shown = _paint(c) if k == "status" else c
                padded.append(shown + " " * max(0, w - len(c)))
            print("  ".join(padded).rstrip())
            if args.stream:
                sys.stdout.flush()
    return 3 if any_undecided and args.strict else 0


def _checked_rows(rows):
    for r in rows:
        if r.witness is not None:
            T = parse_sequence_literal(
                ",".join(map(str, r.witness)), r.n
            )
            _verify_free(T)
        yield r


def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--max-states",
        type=int,
        default=1 << 26,
        help="memo-table state cap per exact search (default: 2^26)",
    )
    p.add_argument(
        "--max-seconds",
        type=float,
        default=None,
        help="wall-clock cap per exact search (default: none)",
    )
    p.add_argument(
        "--strict",
        action="store_true",
        help="exit 3 when a result is undecided at budget",
    )


def _add_common_flags(p: argparse.ArgumentParser, formats=("table", "json")) -> None:
    p.add_argument("--format", choices=formats, default="table")
    p.add_argument(
        "--check",
        action="store_true",
        help="re-parse and re-verify every emitted witness",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ebmod",
        description=(
            "Exact modular idempotent-product constants: I(n), the "
            "Davenport constant of (Z/nZ)^x, extremal witnesses, "
            "constructive extractors, and an equality scanner."
        ),
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("idempotents", help="idempotent residues mod n")
    p.add_argument("n", type=int)
    _add_common_flags(p)
    p.set_defaults(func=cmd_idempotents)

    p = sub.add_parser("davenport", help="Davenport constant of (Z/nZ)^x")
    p.add_argument("n", type=int)
    p.add_argument("--witness", action="store_true", help="print the free sequence")
    _add_common_flags(p)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_davenport)

    p = sub.add_parser("eb", help="idempotent-product constant I(n)")
    p.add_argument("n", type=int)
    p.add_argument("--witness", action="store_true", help="print the free sequence")
    _add_common_flags(p)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_eb)

    p = sub.add_parser(
        "construct", help="extremal free sequence certifying the lower bound"
    )
    p.add_argument("n", type=int)
    _add_common_flags(p)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser(
        "extract",
        help="constructive idempotent-product witness in a given sequence",
    )
    p.add_argument("n", type=int)
    p.add_argument(
        "--seq",
        required=True,
        help='comma-separated residue sequence, e.g. "2,2,3"',
    )
    p.add_argument(
        "--reduce",
        action="store_true",
        help="reduce out-of-range terms mod n instead of rejecting them",
    )
    _add_common_flags(p)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("verify", help="all provable consistency checks for n")
    p.add_argument("n", type=int)
    p.add_argument(
        "--seed",
        type=int,
        default=0,
        help="seed for sampled self-checks (never affects reported constants)",
    )
    _add_common_flags(p)
    _add_budget_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="equality table over a range of moduli")
    p.add_argument("--from", dest="n_lo", type=int, required=True)
    p.add_argument("--to", dest="n_hi", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument(
        "--stream",
        action="store_true",
        help="emit rows as they complete (JSON becomes NDJSON)",
    )
    _add_common_flags(p, formats=("table", "json", "csv"))
    _add_budget_flags(p)
    p.set_defaults(func=cmd_scan)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UndecidedError as exc:
        print(f"undecided at budget: {exc}", file=sys.stderr)
        return 3 if getattr(args, "strict", False) else 0
    except InconsistencyError as exc:
        print(f"internal inconsistency (bug): {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
