"""wmn-lab: build W(m,n) objects, run the verification suites, emit reports.

Exit codes: 0 success, 2 a mathematical check failed, 64 usage error,
65 data/config error (e.g. a weight with no L0 realization in the search box).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from . import __version__
from .glrep import (NotRealizable, as_vec, exceptional_type, is_dominant, omega, render_weight,
                    theta)

SCHEMA = "wmn-lab/report"
SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA = 0, 2, 64, 65


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- parsing

def parse_weight(spec: str, m: int, n: int):
    """'omega:k', 'theta:q', 'zero' or an integer vector '(a,b,...)' of length m+n."""
    s = spec.strip().lower()
    if s == "zero":
        return (0,) * (m + n)
    hit = re.fullmatch(r"(omega|theta):(\d+)", s)
    if hit:
        k = int(hit.group(2))
        return omega(k, m, n) if hit.group(1) == "omega" else theta(k, m, n)
    body = s.strip("()[] ")
    try:
        vec = tuple(int(t) for t in body.split(",")) if body else ()
    except ValueError:
        raise UsageError(f"cannot parse weight {spec!r}") from None
    if len(vec) != m + n:
        raise UsageError(f"weight {spec!r} has length {len(vec)}, expected m+n = {m + n}")
    return vec


def parse_index(text: str, m: int) -> int:
    """Complex index: an integer, or the literal 'm'."""
    if text.strip() == "m":
        return m
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"bad index {text!r}") from None


def resolve_jobs(flag: Optional[int]) -> int:
    if flag is not None:
        return max(1, flag)
    env = os.environ.get("WMN_LAB_JOBS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise DataError(f"WMN_LAB_JOBS={env!r} is not an integer") from None
    return 1


def pmap(fn: Callable, items: Sequence, jobs: int) -> List:
    """Order-preserving map; a process pool when jobs > 1."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as ex:
        return list(ex.map(fn, items))


def _dominant_weight(args):
    lam = parse_weight(args.lam, args.m, args.n)
    if not is_dominant(lam, args.m):
        raise UsageError(f"{render_weight(lam, args.m)} is not dominant")
    return lam


def _need_lambda(args):
    if args.lam is None:
        raise UsageError("--lambda is required")
    return _dominant_weight(args)


# ---------------------------------------------------------------- commands

def cmd_check_algebra(args):
    from .verifiers import algebra_suite
    reports = algebra_suite(args.m, args.n, args.N)
    ok = all(r.passed for r in reports)
    return ok, {"checks": [r.to_json() for r in reports]}


def cmd_complex(args):
    from .complexes import run_type1, run_type2
    if args.family is None:
        raise UsageError("--family I|II is required")
    if args.family == "I":
        if args.k is None:
            raise UsageError("--k is required for family I")
        k = parse_index(args.k, args.m)
        if k < 1:
            raise UsageError("--k must be >= 1")
        run = run_type1(k, args.m, args.n, args.N)
    else:
        if args.q is None:
            raise UsageError("--q is required for family II")
        q = parse_index(args.q, args.m)
        if q < 0:
            raise UsageError("--q must be >= 0")
        run = run_type2(q, args.m, args.n, args.N)
    return run.passed, {
        "family": run.family,
        "index": run.index,
        "checks": [c.to_json() for c in run.checks],
        "homology": run.homology.to_json(),
    }


def cmd_irreducibility(args):
    from .mixed import (MixedProductModule, closure, is_irreducible_truncated, mflat, socle_check,
                        tensor_hw)
    lam = _need_lambda(args)
    M = MixedProductModule(lam, args.m, args.n, args.N)
    rep = is_irreducible_truncated(M, seed=args.seed)
    socle = socle_check(M, seed=args.seed)
    flat = mflat(M, closure(M, [tensor_hw(M)]))
    tag = exceptional_type(lam, args.m, args.n)
    # the irreducibility theorem is stated for omega_k, theta_k with k >= 1;
    # V(0) = R and V(theta_0) are both taken to be simple there
    expected_irreducible = tag.variant == "NonExceptional" or tag.index == 0
    consistent = rep.irreducible == expected_irreducible
    verdict = "irreducible" if rep.irreducible else "reducible; proper submodule witness emitted"
    if tag.variant == "NonExceptional":
        expected = "non-exceptional"
    elif tag.index == 0:
        expected = f"{tag}, stated simple"
    else:
        expected = f"exceptional {tag}"
    verdict += f" ({'consistent' if consistent else 'INCONSISTENT'} with {expected})"
    return consistent, {
        "lambda": list(lam),
        "lambda_str": render_weight(lam, args.m),
        "exceptional_type": str(tag),
        "verdict": verdict,
        "irreducibility": rep.to_json(M),
        "socle_check": socle.to_json(),
        "mflat_of_hw_submodule_dim": len(flat),
        "L0_dim": M.L0.dim,
    }


def _char_task(task):
    from .characters import irr_character, irr_character_corrected, subquotient_character
    kind, lam, m, n, N = task
    if kind == "printed":
        return irr_character(lam, m, n, N)
    if kind == "corrected":
        return irr_character_corrected(lam, m, n, N)
    return subquotient_character(lam, m, n, N)


def _char_compare(a, b, limit=10):
    d = a.diff(b)
    return {"match": not d, "differences": len(d),
            "first": [{"weight": list(w), "formula": x, "block_rank": y} for w, x, y in d[:limit]]}


def cmd_characters(args):
    lam = _need_lambda(args)
    tasks = [(k, lam, args.m, args.n, args.N) for k in ("printed", "corrected", "block")]
    printed, corrected, (block, how) = pmap(_char_task, tasks, args.jobs)
    vs_printed = _char_compare(printed, block)
    vs_corrected = _char_compare(corrected, block)
    return vs_printed["match"], {
        "lambda": list(lam),
        "lambda_str": render_weight(lam, args.m),
        "block_rank_source": how,
        "formula": {"character": printed.to_json(), **vs_printed},
        "corrected_formula": {"character": corrected.to_json(), **vs_corrected},
        "block_rank": block.to_json(),
        "verdict": "match" if vs_printed["match"] else
                   ("mismatch (corrected formula matches)" if vs_corrected["match"] else "mismatch"),
    }


_CASE_FACTORS = {1: 2, 2: 2, 3: 2, 4: 3, 5: 1}


def transposed_row(lam, m: int, n: int, radius: int = 3):
    """Row of T(lam) rebuilt from Delta-columns over a box around lam."""
    from itertools import product
    from .characters import delta_flag_occurrences
    out = []
    for d in product(range(-radius, radius + 1), repeat=m + n):
        mu = tuple(a + b for a, b in zip(lam, d))
        if is_dominant(mu, m) and tuple(lam) in delta_flag_occurrences(mu, m, n):
            out.append(mu)
    return sorted(out)


def _tilting_task(task):
    from .characters import FormalCharacter, ch_L0, tilting_character, upsilon
    lam, m, n, N = task
    T = tilting_character(lam, m, n, N)
    U = upsilon(m, n, N)
    total = FormalCharacter.zero(m, n)
    for mu in transposed_row(lam, m, n):
        total = total + U * ch_L0(mu, m, n)
    return T, total, (T - U * ch_L0(lam, m, n)).is_nonnegative()


def cmd_tilting(args):
    from .characters import (composition_factors_table, delta_flag_occurrences, phi,
                             tilting_case, tilting_flag_printed, tilting_multiplicities)
    lam = _need_lambda(args)
    m, n = args.m, args.n
    case = tilting_case(lam, m, n)
    column = delta_flag_occurrences(lam, m, n)
    column_computed = delta_flag_occurrences(lam, m, n, source="computed")
    row = tilting_multiplicities(lam, m, n)
    row_computed = tilting_multiplicities(lam, m, n, source="computed")
    printed = tilting_flag_printed(lam, m, n)
    T, total, top_ok = pmap(_tilting_task, [(lam, m, n, args.N)], args.jobs)[0]
    checks = {
        "multiplicities_0_or_1": all(c in (0, 1) for _, c in row),
        "column_size_matches_case": len(column) == _CASE_FACTORS[case],
        "row_matches_transposed_columns": [v for v, _ in row] == transposed_row(lam, m, n),
        "character_equals_transposed_sum": T.agrees(total),
        "character_minus_top_standard_nonnegative": top_ok,
    }
    w = lambda v: {"weight": list(v), "str": render_weight(v, m)}
    return all(checks.values()), {
        "lambda": list(lam),
        "lambda_str": render_weight(lam, m),
        "phi_lambda": w(phi(lam, m, n)),
        "case": case,
        "delta_column": [w(v) for v in column],
        "delta_column_computed_table": [w(v) for v in column_computed],
        "row": [{**w(v), "mult": c} for v, c in row],
        "row_computed_table": [{**w(v), "mult": c} for v, c in row_computed],
        "printed_row_formula": [w(v) for v in printed],
        "printed_row_formula_agrees": sorted(printed) == [v for v, _ in row],
        "composition_factors_of_V_phi": [w(v) for v in composition_factors_table(phi(lam, m, n), m, n)],
        "checks": checks,
        "character_terms": len(T.coeffs),
        "character": T.to_json(),
    }


def cmd_semi_infinite(args):
    from .algebra import WittElement
    from .superalgebra import SuperMonomial
    from .verifiers import in_generated_span, semi_infinite_check
    rep = semi_infinite_check(args.m, args.n, args.N)
    out = rep.to_json()
    g = 1  # x1^2 y1 d_1 in [g1, g1] = g2, when y1 exists
    if args.m >= 1 and args.n >= 1 and args.N >= 2:
        key = (SuperMonomial((2,) + (0,) * (args.m - 1), (1,)), g)
        out["example_x1^2y1d1_in_[g1,g1]"] = in_generated_span(WittElement(args.m, args.n, {key: 1}), 2)
    return rep.passed, out


def cmd_skryabin(args):
    from .mixed import MixedProductModule
    from .verifiers import skryabin_suite, solver_report
    lam = _dominant_weight(args) if args.lam is not None else (2,) + (0,) * (args.m + args.n - 1)
    M = MixedProductModule(lam, args.m, args.n, args.N)
    rows = skryabin_suite(M, seed=args.seed)
    solver = solver_report(args.m, args.n, args.box)
    ok = all(r["status"] == "pass" for r in rows) and solver["passed"]
    return ok, {
        "lambda": list(lam),
        "lambda_str": render_weight(lam, args.m),
        "cases": rows,
        "failed_cases": sum(r["status"] != "pass" for r in rows),
        "solver": solver,
    }


COMMANDS = {
    "check-algebra": (cmd_check_algebra, 3),
    "complex": (cmd_complex, 4),
    "irreducibility": (cmd_irreducibility, 4),
    "characters": (cmd_characters, 4),
    "tilting": (cmd_tilting, 4),
    "semi-infinite": (cmd_semi_infinite, 3),
    "skryabin": (cmd_skryabin, 4),
}


# ---------------------------------------------------------------- output

def _jsonable(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    return str(o)


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, default=_jsonable) + "\n"


def render_text(report: dict) -> str:
    head = f"wmn-lab {report['tool-version']} {report['command']} m={report['m']} n={report['n']} " \
           f"N={report['N']} seed={report['seed']}: {report['status']}"
    lines = [head]
    res = report.get("result", {})
    if "error" in report:
        lines.append(f"  error: {report['error']}")
    if "verdict" in res:
        lines.append(f"  verdict: {res['verdict']}")
    for c in res.get("checks", []) if isinstance(res.get("checks"), list) else []:
        lines.append(f"  [{'ok' if c['passed'] else 'FAIL'}] {c['name']} ({c['checked']} checked)")
    if isinstance(res.get("checks"), dict):
        for name, ok in sorted(res["checks"].items()):
            lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
    if "homology" in res:
        h = res["homology"]
        lines.append(f"  homology at {h['position']}: total dim {h['total_homology']}")
    if "case" in res and "delta_column" in res:
        lines.append(f"  case {res['case']}; column: " + ", ".join(v["str"] for v in res["delta_column"]))
        lines.append("  row: " + ", ".join(f"Δ({v['str']})" for v in res["row"]))
    if "pairs_checked" in res:
        lines.append(f"  pairs: {res['pairs_checked']}, exceptions: {len(res['exceptions'])}")
    if "failed_cases" in res:
        lines.append(f"  relation cases: {len(res['cases'])}, failed: {res['failed_cases']}; "
                     f"solver: {'ok' if res['solver']['passed'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--m", type=int, default=2)
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--degree", type=int, default=None, help="truncation degree N")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--lambda", dest="lam", default=None,
                        help="omega:k, theta:q, zero, or an integer vector '(a,b,...)'")
    common.add_argument("--family", choices=["I", "II"], default=None)
    common.add_argument("--k", default=None)
    common.add_argument("--q", default=None)
    common.add_argument("--box", type=int, default=6, help="solver box radius (skryabin)")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (env WMN_LAB_JOBS)")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--out", default=None, help="write the report to PATH instead of stdout")
    p = _Parser(prog="wmn-lab", description="Exact verification suites for W(m,n).")
    p.add_argument("--version", action="version", version=f"wmn-lab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    fn, default_N = COMMANDS[args.command]
    args.N = default_N if args.degree is None else args.degree
    report = {"schema": SCHEMA, "schema_version": SCHEMA_VERSION, "tool-version": __version__,
              "command": args.command, "m": args.m, "n": args.n, "N": args.N, "seed": args.seed}
    code = EXIT_OK
    try:
        if args.m < 1 or args.n < 1:
            raise UsageError("--m and --n must be >= 1")
        if args.N < 0 or (args.N < 1 and args.command != "check-algebra"):
            raise UsageError("--degree must be >= 1 (>= 0 for check-algebra)")
        args.jobs = resolve_jobs(args.jobs)
        ok, result = fn(args)
        report["result"] = result
        report["status"] = "pass" if ok else "fail"
        code = EXIT_OK if ok else EXIT_FAIL
    except UsageError as e:
        report.update(status="usage-error", error=str(e))
        code = EXIT_USAGE
    except (NotRealizable, DataError) as e:
        report.update(status="data-error", error=str(e))
        code = EXIT_DATA
    text = dumps(report) if args.format == "json" else render_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_USAGE:
        print(f"wmn-lab: error: {report['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
