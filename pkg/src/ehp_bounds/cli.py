"""Command-line interface: ``ehp-bounds <subcommand> [flags]``.

Exit codes: 0 success, 1 a mathematical violation (failed verification or a
negative bound-vs-data margin), 2 usage, input or I/O error. Data goes to
stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import asymptotics, bounds, known, verify
from .core import EHPError, EvalContext, P2Policy, is_prime, sphere_value, stem_table, t_value

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
FORMATS = ("csv", "json", "md")
SUBCOMMANDS = ("value", "table", "sequence", "bounds", "verify", "estimate", "compare")


class UsageError(Exception):
    def __init__(self, message: str, usage: str = ""):
        super().__init__(message)
        self.usage = usage


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, self.format_usage())


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _prime_list(text: str) -> list[int]:
    return [_prime(t) for t in text.split(",") if t.strip()]


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"{v} must be >= 1")
    return v


def _suites(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    for name in names:
        if name != "all" and name not in verify.SUITES:
            raise argparse.ArgumentTypeError(
                f"unknown suite {name!r} (choose from all, {', '.join(verify.SUITES)})")
    return names


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--p2-special", choices=[p.value for p in P2Policy],
                        default=P2Policy.Q2N1.value,
                        help="where the +1 case of the p = 2 recursion sits")
    common.add_argument("--cache", type=Path, default=None,
                        help="JSON memo file to read before and write after (single-prime "
                             "commands only)")

    parser = _Parser(prog="ehp-bounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    s = sub.add_parser("value", parents=[common], help="t_p(n, q)")
    s.add_argument("--prime", type=_prime, required=True)
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--q", type=_positive, required=True)

    s = sub.add_parser("table", parents=[common], help="t along one stem")
    s.add_argument("--prime", type=_prime, required=True)
    s.add_argument("--stem", type=int, required=True)
    s.add_argument("--n-max", type=_positive, default=20)

    s = sub.add_parser("sequence", parents=[common], help="H_q = t_2(2, q+2)")
    s.add_argument("--q-max", type=_positive, required=True)

    s = sub.add_parser("bounds", parents=[common], help="every bound family at (p, n, q)")
    s.add_argument("--prime", type=_prime, required=True)
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument("--q", type=_positive, required=True)

    s = sub.add_parser("verify", parents=[common], help="run verification suites")
    s.add_argument("--suite", type=_suites, default=["all"])
    s.add_argument("--prime-list", type=_prime_list, default=list(verify.DEFAULT_PRIMES))
    s.add_argument("--stem-max", type=int, default=verify.DEFAULT_STEM_MAX)
    s.add_argument("--n-max", type=_positive, default=verify.DEFAULT_N_MAX)
    s.add_argument("--j-max", type=int, default=verify.DEFAULT_J_MAX)
    s.add_argument("--star-n-max", type=_positive, default=verify.DEFAULT_STAR_N_MAX)
    s.add_argument("--h-max", type=_positive, default=verify.DEFAULT_H_MAX)

    s = sub.add_parser("estimate", parents=[common], help="growth constants of H")
    s.add_argument("--q-max", type=_positive, default=200)
    s.add_argument("--window", type=_positive, default=20)
    s.add_argument("--method", choices=asymptotics.METHODS, default="geometric-window")

    s = sub.add_parser("compare", parents=[common], help="bounds against known data")
    s.add_argument("--data", type=Path, default=None,
                   help="CSV with header p,n,q,s,source (default: bundled seed)")
    return parser


@dataclass
class Command:
    subcommand: str
    options: dict = field(default_factory=dict)
    format: str = "csv"


def parse(argv) -> Command:
    ns = vars(build_parser().parse_args(list(argv)))
    sub = ns.pop("subcommand")
    fmt = ns.pop("format")
    return Command(sub, ns, fmt)


# -- rendering ---------------------------------------------------------------

def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else ("inf" if v > 0 else "-inf")
    return str(v)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float) and not math.isfinite(v):
        return _cell(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def render_rows(columns, rows, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in columns])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([_jsonable({c: r.get(c) for c in columns}) for r in rows],
                          indent=2) + "\n"
    lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
    for r in rows:
        lines.append("| " + " | ".join(_cell(r.get(c)) for c in columns) + " |")
    return "\n".join(lines) + "\n"


# -- dispatch ----------------------------------------------------------------

def _context(cmd: Command, p: int) -> EvalContext:
    ctx = EvalContext(p, P2Policy(cmd.options["p2_special"]))
    cache = cmd.options.get("cache")
    if cache is not None and cache.exists():
        ctx.load_memo(json.loads(cache.read_text()))
    return ctx


def _save(cmd: Command, ctx: EvalContext) -> None:
    cache = cmd.options.get("cache")
    if cache is not None:
        cache.write_text(json.dumps(ctx.export_memo()))


def _run_value(cmd, o):
    ctx = _context(cmd, o["prime"])
    t = sphere_value(ctx, o["n"], o["q"])
    _save(cmd, ctx)
    split = ctx.p != 2 and o["n"] % 2 == 0
    if cmd.format == "csv":
        return f"{t}\n", EXIT_OK
    row = {"p": ctx.p, "n": o["n"], "q": o["q"], "t": t, "split": split}
    if cmd.format == "json":
        return json.dumps(row, indent=2) + "\n", EXIT_OK
    return render_rows(list(row), [row], "md"), EXIT_OK


def _run_table(cmd, o):
    ctx = _context(cmd, o["prime"])
    table = stem_table(ctx, o["stem"], o["n_max"])
    _save(cmd, ctx)
    rows = [{"n": r.n, "q": r.q, "t": r.t, "split": r.split} for r in table.rows]
    return render_rows(["n", "q", "t", "split"], rows, cmd.format), EXIT_OK


def _run_sequence(cmd, o):
    ctx = _context(cmd, 2)
    rows = [{"q": j, "H": t_value(ctx, 2, j + 2)} for j in range(1, o["q_max"] + 1)]
    _save(cmd, ctx)
    return render_rows(["q", "H"], rows, cmd.format), EXIT_OK


def _run_bounds(cmd, o):
    p, n, q = o["prime"], o["n"], o["q"]
    ctx = _context(cmd, p)
    rows = [{"family": "t", "integer": sphere_value(ctx, n, q)}]
    _save(cmd, ctx)
    for name, form, integer in bounds.all_bounds(p, n, q):
        rows.append({"family": name, "base": form.base, "exponent": form.exponent,
                     "value": form.value(), "integer": integer})
    if p != 2 and n % 2 == 0:
        print(f"note: n={n} is even at p={p}; t uses the splitting and the "
              "odd-n families are omitted", file=sys.stderr)
    return render_rows(["family", "base", "exponent", "value", "integer"], rows,
                       cmd.format), EXIT_OK


def _run_verify(cmd, o):
    reports = verify.run_suites(o["suite"], primes=o["prime_list"], stem_max=o["stem_max"],
                                n_max=o["n_max"], j_max=o["j_max"],
                                star_n_max=o["star_n_max"], h_max=o["h_max"],
                                policy=P2Policy(o["p2_special"]))
    failed = any(not r.passed for r in reports)
    code = EXIT_VIOLATION if failed else EXIT_OK
    if cmd.format == "json":
        return json.dumps(_jsonable([r.to_dict() for r in reports]), indent=2) + "\n", code
    summary = [{"suite": r.suite_name, "checks_run": r.checks_run,
                "violations": len(r.violations), "passed": r.passed} for r in reports]
    out = render_rows(["suite", "checks_run", "violations", "passed"], summary, cmd.format)
    vrows = [dict(suite=r.suite_name, **v.to_dict()) for r in reports for v in r.violations]
    if vrows:
        for v in vrows:
            v["params"] = ";".join(f"{k}={x}" for k, x in v["params"].items())
        out += "\n" + render_rows(["suite", "p", "n", "q", "relation", "op", "lhs", "rhs",
                                   "params"], vrows, cmd.format)
        print(f"{len(vrows)} violation(s) found", file=sys.stderr)
    return out, code


def _run_estimate(cmd, o):
    est = asymptotics.estimate_growth(o["q_max"], o["window"], o["method"])
    d = est.to_dict()
    if cmd.format == "json":
        return json.dumps(d, indent=2) + "\n", EXIT_OK
    return render_rows(list(d), [d], cmd.format), EXIT_OK


def _run_compare(cmd, o):
    path = o["data"]
    records = known.load_known(path) if path is not None else known.load_seed()
    report = known.compare(records, P2Policy(o["p2_special"]))
    rows = [r.to_dict() for r in report.rows]
    cols = ["p", "n", "q", "s", "bound", "bound_value", "margin", "ok", "error", "source"]
    for r in report.errors:
        print(f"record p={r.record.p} n={r.record.n} q={r.record.q}: {r.error}",
              file=sys.stderr)
    if report.violations:
        print(f"{len(report.violations)} negative margin(s)", file=sys.stderr)
        return render_rows(cols, rows, cmd.format), EXIT_VIOLATION
    return render_rows(cols, rows, cmd.format), EXIT_OK


_RUNNERS = {"value": _run_value, "table": _run_table, "sequence": _run_sequence,
            "bounds": _run_bounds, "verify": _run_verify, "estimate": _run_estimate,
            "compare": _run_compare}


def run(cmd: Command) -> tuple[str, int]:
    """Execute a parsed command; returns (stdout text, exit code).

    Input and domain errors propagate as exceptions; ``main`` maps them to 2.
    """
    return _RUNNERS[cmd.subcommand](cmd, cmd.options)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd = parse(argv)
    except UsageError as e:
        sys.stderr.write(e.usage)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        out, code = run(cmd)
    except (EHPError, known.KnownDataError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
