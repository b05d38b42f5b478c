"""Command-line front end.

Exit codes: 0 success or every claim confirmed, 1 a certified violation (or,
for ``counterexample``, none found), 2 undecided at the maximum precision,
3 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Optional

from ._version import __version__
from .certify import find_counterexamples, verify_certificate
from .errors import DomainError, InconclusiveError, UsageError
from .grids import default_power_grid, parse_grid, parse_int_range
from .inequality import REGISTRY, ClaimStatus, evaluate_case, results_to_csv, summarize, sweep
from .majorize import (
    MajorizationKind,
    PowerOverall,
    WeightTuple,
    build_block_tuples,
    convex_witness,
    majorizes,
    power_majorizes,
)
from .powersum import NATURALS, P, SequenceSpec, ratio_R
from .scalar import PrecisionPolicy, format_rational, parse_rational

EXIT_OK, EXIT_VIOLATION, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3
PRECISION_ENV = "MAJORCERT_PRECISION_BITS"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def _policy(args) -> PrecisionPolicy:
    start = args.precision_bits
    if start is None:
        env = os.environ.get(PRECISION_ENV)
        try:
            start = int(env) if env else 64
        except ValueError:
            raise UsageError(f"{PRECISION_ENV} must be an integer, got {env!r}") from None
    max_bits = args.max_bits if args.max_bits is not None else max(4096, start)
    return PrecisionPolicy(start, max_bits)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _vector(text: str) -> WeightTuple:
    """A JSON file of rational strings, or an inline comma-separated list."""
    if text.endswith(".json") or os.path.exists(text):
        return WeightTuple.from_json(_load_json(text))
    return WeightTuple(parse_rational(t) for t in text.split(",") if t.strip())


def _sequence(args) -> SequenceSpec:
    return SequenceSpec.from_json(_load_json(args.seq)) if args.seq else NATURALS


def _single_n(args) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    values = parse_int_range(args.n)
    if len(values) != 1:
        raise UsageError("--n takes a single integer here")
    return values[0]


def _single_r(text: Optional[str], flag: str = "--r"):
    if text is None:
        raise UsageError(f"{flag} is required")
    return parse_rational(text)


def _tuples(args, policy):
    if args.x or args.y:
        if not (args.x and args.y):
            raise UsageError("--x and --y must be given together")
        return _vector(args.x), _vector(args.y)
    return build_block_tuples(_sequence(args), _single_r(args.r), _single_n(args), policy)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _value_report(label, n, r, value, bits):
    return {"quantity": label, "n": n, "r": format_rational(r), "value": value.to_json(bits),
            "certified_digits": value.describe(bits)}


def cmd_pn(args, policy, out):
    n, r = _single_n(args), _single_r(args.r)
    value = P(n, r) if not args.seq else ratio_R(_sequence(args), n, r)
    doc = _value_report("P" if not args.seq else "R", n, r, value, policy.start_bits)
    _emit(args, out, doc, lambda d: f"{d['quantity']}_{n}({r}) = {d['certified_digits']}")
    return EXIT_OK


def cmd_ratio(args, policy, out):
    n, r = _single_n(args), _single_r(args.r)
    seq = _sequence(args)
    value = ratio_R(seq, n, r)
    doc = _value_report("R", n, r, value, policy.start_bits)
    doc["sequence"] = seq.to_json()
    _emit(args, out, doc, lambda d: f"R_{n}({r}; a) = {d['certified_digits']}")
    return EXIT_OK


def cmd_majorize(args, policy, out):
    x, y = _tuples(args, policy)
    verdict = majorizes(x, y, policy)
    bits = policy.start_bits
    doc = {"x": x.to_json(bits), "y": y.to_json(bits), "verdict": verdict.to_json(bits)}
    if verdict.kind is MajorizationKind.FAILS_AT_PREFIX:
        doc["hinge_witness"] = convex_witness(x, y, verdict, policy).to_json(bits)

    def human(d):
        v = d["verdict"]
        line = f"majorization: {v['kind']}"
        if "prefix_index" in v:
            line += f" at prefix {v['prefix_index']}: {v['lhs_prefix']} vs {v['rhs_prefix']}"
        if "hinge_witness" in d:
            h = d["hinge_witness"]
            line += f"\nhinge max(u - {h['threshold']}, 0): {h['lhs_sum']} > {h['rhs_sum']}"
        return line

    _emit(args, out, doc, human)
    return EXIT_OK if verdict.holds else EXIT_VIOLATION


def cmd_power_majorize(args, policy, out):
    x, y = _tuples(args, policy)
    grid = parse_grid(args.p_grid) if args.p_grid else default_power_grid()
    report = power_majorizes(x, y, grid, policy)
    doc = report.to_json(policy.start_bits)

    def human(d):
        line = f"power majorization over {len(grid)} exponents: {d['overall']}"
        if "violated_at" in d:
            line += f" (p = {d['violated_at']})"
        return line

    _emit(args, out, doc, human)
    return {
        PowerOverall.CONSISTENT: EXIT_OK,
        PowerOverall.VIOLATED: EXIT_VIOLATION,
        PowerOverall.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    }[report.overall]


def _check_params(args, entry) -> dict:
    params = {}
    for name in entry.params:
        text = getattr(args, name)
        if name == "n":
            params[name] = _single_n(args)
        else:
            params[name] = _single_r(text, f"--{name}")
    return params


def _status_exit(statuses) -> int:
    statuses = set(statuses)
    if ClaimStatus.CONTRADICTS in statuses:
        return EXIT_VIOLATION
    if ClaimStatus.INCONCLUSIVE in statuses:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _entry(args):
    if not args.id:
        raise UsageError("--id is required")
    try:
        return REGISTRY[args.id]
    except KeyError:
        raise UsageError(f"unknown inequality id {args.id!r}; known: {', '.join(REGISTRY)}") from None


def _human_result(r) -> str:
    params = ", ".join(f"{k}={v}" for k, v in r.params.items())
    lhs = r.lhs.describe() if r.lhs is not None else "-"
    rhs = r.rhs.describe() if r.rhs is not None else "-"
    verdict = r.verdict.kind.value if r.verdict is not None else "-"
    line = f"{r.id}({params}): lhs {lhs}, rhs {rhs}, {verdict}, {r.claim_status.value}"
    if r.note:
        line += f"\n  note: {r.note}"
    return line


def cmd_check(args, policy, out):
    entry = _entry(args)
    result = evaluate_case(entry.id, _check_params(args, entry), policy)
    bits = policy.start_bits
    if args.format == "csv":
        out.write(results_to_csv([result]))
    else:
        _emit(args, out, result.to_json(bits), lambda d: _human_result(result))
    return _status_exit([result.claim_status])


def cmd_sweep(args, policy, out):
    entry = _entry(args)
    grid = {}
    for name in entry.params:
        if name == "n":
            if args.n is None:
                raise UsageError("--n is required (an integer or lo:hi range)")
            grid[name] = parse_int_range(args.n)
            continue
        text = getattr(args, name)
        if text is None and args.grid and name == _grid_target(entry):
            text = args.grid
        if text is None:
            raise UsageError(f"--{name} is required (a rational or lo:hi:step grid)")
        grid[name] = parse_grid(text)
    results = sweep(entry.id, grid, policy)
    bits = policy.start_bits
    if args.format == "csv":
        out.write(results_to_csv(results))
    elif args.format == "json":
        out.write(_dump({"results": [r.to_json(bits) for r in results], "summary": summarize(results)}) + "\n")
    else:
        for r in results:
            if r.claim_status in (ClaimStatus.CONTRADICTS, ClaimStatus.INCONCLUSIVE):
                out.write(_human_result(r) + "\n")
        counts = summarize(results)
        out.write(f"{entry.id}: {len(results)} points; " + ", ".join(f"{k} {v}" for k, v in counts.items()) + "\n")
    return _status_exit(r.claim_status for r in results)


def _grid_target(entry) -> str:
    return "r" if "r" in entry.params else "alpha"


def cmd_counterexample(args, policy, out):
    ns = parse_int_range(args.n) if args.n else [2]
    r = parse_rational(args.r) if args.r else 3
    grid = parse_grid(args.p_grid) if args.p_grid else None
    certs = find_counterexamples(ns, [r], grid, policy)
    if not certs:
        out.write(_dump({"certificates": []}) + "\n" if args.format == "json" else "no counterexample found\n")
        return EXIT_VIOLATION
    docs = [c.to_json() for c in certs]
    payload = docs[0] if len(docs) == 1 else docs
    text = _dump(payload) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.format == "json":
        out.write(text)
    else:
        for c in certs:
            v = c.majorization_failure
            out.write(
                f"n={c.n} r={c.r}: prefix {v.prefix_index} "
                f"{v.lhs_prefix.describe()} > {v.rhs_prefix.describe()}; "
                f"power grid {c.power_grid_evidence.overall.value}; digest {c.digest[:16]}\n"
            )
        if args.out:
            out.write(f"wrote {args.out}\n")
    return EXIT_OK


def cmd_verify_cert(args, policy, out):
    doc = _load_json(args.file)
    docs = doc if isinstance(doc, list) else [doc]
    results = [verify_certificate(d) for d in docs]
    if args.format == "json":
        out.write(_dump([r.to_json() for r in results] if isinstance(doc, list) else results[0].to_json()) + "\n")
    else:
        for i, r in enumerate(results):
            out.write(f"certificate {i}: " + ("ok" if r else f"FAILED at {r.mismatch}: {r.detail}") + "\n")
    return EXIT_OK if all(results) else EXIT_VIOLATION


COMMANDS = {
    "pn": (cmd_pn, "certified P_n(r) for the naturals (or R_n with --seq)"),
    "ratio": (cmd_ratio, "certified R_n(r; a) for a sequence file (naturals by default)"),
    "majorize": (cmd_majorize, "prefix-sum majorization test of --x against --y"),
    "power-majorize": (cmd_power_majorize, "power-majorization grid check of --x against --y"),
    "check": (cmd_check, "evaluate one registry inequality"),
    "sweep": (cmd_sweep, "evaluate a registry inequality over a parameter grid"),
    "counterexample": (cmd_counterexample, "build counterexample certificates"),
    "verify-cert": (cmd_verify_cert, "replay a certificate file"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--precision-bits", type=int, help=f"starting precision (default 64, or ${PRECISION_ENV})")
    common.add_argument("--max-bits", type=int, help="maximum precision (default 4096)")
    common.add_argument("--format", choices=("json", "csv", "human"), default="human")

    parser = _Parser(prog="majorcert", description="Certified power-sum and majorization checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text, parents=[common])
        if name == "verify-cert":
            p.add_argument("file")
            continue
        p.add_argument("--n", help="integer (sweep/counterexample also accept lo:hi)")
        p.add_argument("--r", help="rational exponent")
        if name in ("pn", "ratio", "majorize", "power-majorize"):
            p.add_argument("--seq", help="sequence JSON file")
        if name in ("majorize", "power-majorize"):
            p.add_argument("--x", help="JSON file or comma-separated rationals")
            p.add_argument("--y", help="JSON file or comma-separated rationals")
        if name in ("power-majorize", "counterexample"):
            p.add_argument("--p-grid", help="exponent grid lo:hi:step")
        if name in ("check", "sweep"):
            p.add_argument("--id", help="registry id")
            p.add_argument("--r2")
            p.add_argument("--alpha")
            p.add_argument("--beta")
        if name == "sweep":
            p.add_argument("--grid", help="lo:hi:step grid for r (or alpha)")
        if name == "counterexample":
            p.add_argument("--out", help="write the certificate JSON here")
    return parser


def _emit(args, out, doc, human) -> None:
    if args.format == "json":
        out.write(_dump(doc) + "\n")
    elif args.format == "csv":
        raise UsageError("csv output is only available for check and sweep")
    else:
        out.write(human(doc) + "\n")


_NEGATIVE_VALUE = re.compile(r"^-[0-9.]")


def _attach_negative_values(argv: list) -> list:
    """Rewrite ``--flag -1/2`` as ``--flag=-1/2`` so argparse keeps negative values."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NEGATIVE_VALUE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    argv = _attach_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required")
        policy = _policy(args)
        return COMMANDS[args.command][0](args, policy, out)
    except (UsageError, DomainError) as exc:
        print(f"majorcert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ZeroDivisionError) as exc:
        print(f"majorcert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconclusiveError as exc:
        print(f"majorcert: inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except OSError as exc:
        print(f"majorcert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
