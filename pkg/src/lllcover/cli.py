"""Command-line front end.

Exit status: 0 on success, 1 when verification or generation fails, 2 on
usage errors (including unsupported parameter combinations).
"""

from __future__ import annotations

import argparse
import csv
import decimal
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from . import asymptotics as asy
from . import combinatorics as comb
from .arrays import ArrayFormatError, read_array, serialize_array, verify_covering
from .generator import GenerationError, generate_covering, monte_carlo_missing_prob

__all__ = ["OutputRecord", "format_real", "format_value", "main", "TABLE_COLUMNS"]

SIG_DIGITS = 15
TABLE_COLUMNS = ("q", "A", "D", "B", "general")


def format_real(x) -> str:
    return format(x, f".{SIG_DIGITS}g")


def format_value(value: Any) -> Any:
    """Normalize a payload value to its JSON-stable form."""
    if isinstance(value, comb.ExactProbability):
        value = value.value
    if isinstance(value, Fraction):
        return {"numerator": str(value.numerator), "denominator": str(value.denominator)}
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, (float, decimal.Decimal)):
        return format_real(value)
    if isinstance(value, dict):
        return {str(k): format_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [format_value(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


@dataclass
class OutputRecord:
    command: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    results: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def build(cls, command: str, parameters: dict, results: dict) -> "OutputRecord":
        return cls(command, format_value(parameters), format_value(results))

    def to_json(self) -> str:
        return json.dumps(
            {"command": self.command, "parameters": self.parameters, "results": self.results},
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        data = json.loads(text)
        return cls(data["command"], data["parameters"], data["results"])

    def to_text(self) -> str:
        lines = [f"# {self.command} " + " ".join(f"{k}={_plain(v)}" for k, v in self.parameters.items())]
        for key, value in self.results.items():
            if isinstance(value, list) and value and isinstance(value[0], dict):
                lines.append(f"{key}:")
                for row in value:
                    lines.append("  " + "  ".join(f"{k}={_plain(v)}" for k, v in row.items()))
            else:
                lines.append(f"{key}: {_plain(value)}")
        return "\n".join(lines)


def _plain(value) -> str:
    if isinstance(value, dict) and set(value) == {"numerator", "denominator"}:
        return f"{value['numerator']}/{value['denominator']}"
    if isinstance(value, (list, tuple)):
        return " ".join(_plain(v) for v in value)
    return str(value)


class UsageError(Exception):
    pass


# --- commands ---------------------------------------------------------------


def cmd_bounds(q: int, t: int, n: Optional[int] = None) -> OutputRecord:
    rows: List[dict] = []
    notes: List[str] = []

    def add(c: asy.BoundCoefficient):
        rows.append({"method": c.method, "coefficient": c.value})

    try:
        add(asy.general_coefficient(q, t))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    supported = t == 3 or (t == 4 and q == 2)
    if t == 3:
        add(asy.coefficient_t3(q))
        if q == 2:
            add(asy.ROUX_COEFFICIENT)
    elif t == 4 and q == 2:
        add(asy.solve_outer_t4().coefficient)
    else:
        notes.append(f"no specialized bound for q={q}, t={t}; general bound only")
    results: Dict[str, Any] = {"bounds": rows}
    if n is not None:
        if supported:
            results["min_rows"] = comb.min_rows_for_coverage(n, q, t)
        else:
            notes.append("min_rows requires t=3, or t=4 with q=2")
    if notes:
        results["notes"] = notes
    return OutputRecord.build("bounds", {"q": q, "t": t, "n": n}, results)


def cmd_prob(q: int, t: int, m: int, fmt: str = "exact") -> OutputRecord:
    p = comb.missing_word_prob(q, t, m)
    pi = comb.union_bound_pi(p, q, t)
    if fmt == "exact":
        results = {"p": p, "pi": pi}
    else:
        results = {"p": p.to_decimal(SIG_DIGITS), "pi": pi.to_decimal(SIG_DIGITS)}
    return OutputRecord.build("prob", {"q": q, "t": t, "m": m, "format": fmt}, results)


def cmd_optimize(q: int, t: int) -> OutputRecord:
    comb.check_supported(q, t)
    if t == 3:
        a = asy.critical_a_t3(q)
        log_base = asy.summand_base_t3(q, a)
        rate = asy.growth_rate_t3(q)
        results = {
            "A": a,
            "log_base": log_base,
            "base": math.exp(log_base),
            "D": rate.d_rate,
            "inverse_D": 1.0 / rate.d_rate,
            "lg_inverse_D": rate.log2_inverse,
            "coefficient": asy.coefficient_t3(q).value,
            "general": asy.general_coefficient(q, t).value,
        }
    else:
        sol = asy.solve_outer_t4()
        results = {
            "B": sol.point.b,
            "A": sol.point.a,
            "r": sol.point.log_objective,
            "ratio": sol.ratio,
            "m_coefficient": sol.m_coefficient,
            "coefficient": sol.coefficient.value,
            "general": asy.general_coefficient(q, t).value,
        }
    return OutputRecord.build("optimize", {"q": q, "t": t}, results)


def table_rows(q_min: int, q_max: int) -> List[dict]:
    if q_min < 2 or q_max < q_min:
        raise UsageError("need 2 <= q-min <= q-max")
    rows = []
    for q in range(q_min, q_max + 1):
        rate = asy.growth_rate_t3(q)
        rows.append(
            {
                "q": q,
                "A": asy.critical_a_t3(q),
                "D": rate.d_rate,
                "B": asy.coefficient_t3(q).value,
                "general": asy.general_coefficient(q, 3).value,
            }
        )
    return rows


def table_csv(rows: List[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for row in rows:
        writer.writerow([row["q"]] + [format_real(row[c]) for c in TABLE_COLUMNS[1:]])
    return buf.getvalue()


# --- argument parsing ---------------------------------------------------------


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommand copies must not clobber values given before the subcommand
    def default(value):
        return argparse.SUPPRESS if suppress else value

    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=default(False), help="emit a JSON record")
    p.add_argument("--seed", type=_u64, default=default(0), help="RNG seed (unsigned 64-bit)")
    p.add_argument("--out", default=default(None), help="output path for generated arrays")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lllcover",
        description="Covering-array bounds, exact probabilities and randomized constructions.",
        parents=[_global_flags(False)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_global_flags(True)]

    p = sub.add_parser("bounds", parents=common, help="bound coefficients c in k0 <= c lg n")
    p.add_argument("-q", "--q", type=int, required=True)
    p.add_argument("-t", "--t", type=int, required=True)
    p.add_argument("-n", "--n", type=int)

    p = sub.add_parser("prob", parents=common, help="exact missing-word probability")
    p.add_argument("-q", "--q", type=int, required=True)
    p.add_argument("-t", "--t", type=int, required=True)
    p.add_argument("-m", "--m", type=int, required=True)
    p.add_argument("--format", choices=("exact", "decimal"), default="exact")

    p = sub.add_parser("optimize", parents=common, help="critical parameters of the exponent")
    p.add_argument("-q", "--q", type=int, required=True)
    p.add_argument("-t", "--t", type=int, required=True)

    p = sub.add_parser("generate", parents=common, help="build a covering array by resampling")
    p.add_argument("-q", "--q", type=int, required=True)
    p.add_argument("-t", "--t", type=int, required=True)
    p.add_argument("-n", "--n", type=int, required=True)
    p.add_argument("-k", "--k", type=int)
    p.add_argument("--max-rounds", type=int, default=100_000)

    p = sub.add_parser("verify", parents=common, help="check the t-covering property of a file")
    p.add_argument("path")
    p.add_argument("-t", "--t", type=int, required=True)

    p = sub.add_parser("mc", parents=common, help="Monte Carlo estimate of the missing-word probability")
    p.add_argument("-q", "--q", type=int, required=True)
    p.add_argument("-t", "--t", type=int, required=True)
    p.add_argument("-m", "--m", type=int, required=True)
    p.add_argument("--trials", type=int, default=1_000_000)

    p = sub.add_parser("table", parents=common, help="CSV of strength-3 coefficients over q")
    p.add_argument("--q-min", type=int, default=2)
    p.add_argument("--q-max", type=int, default=10)
    return parser


def _run(args, out) -> int:
    cmd = args.command
    if cmd == "bounds":
        rec = cmd_bounds(args.q, args.t, args.n)
    elif cmd == "prob":
        rec = cmd_prob(args.q, args.t, args.m, args.format)
    elif cmd == "optimize":
        rec = cmd_optimize(args.q, args.t)
    elif cmd == "mc":
        est = monte_carlo_missing_prob(args.q, args.t, args.m, args.trials, args.seed)
        exact = comb.missing_word_prob(args.q, args.t, args.m)
        rec = OutputRecord.build(
            "mc",
            {"q": args.q, "t": args.t, "m": args.m, "trials": args.trials, "seed": args.seed},
            {
                "hits": est.hits,
                "estimate": est.estimate,
                "std_error": est.std_error,
                "exact": exact,
                "z_score": (est.estimate - float(exact)) / est.std_error if est.std_error else 0.0,
            },
        )
    elif cmd == "table":
        rows = table_rows(args.q_min, args.q_max)
        if not args.json:
            out.write(table_csv(rows))
            return 0
        rec = OutputRecord.build("table", {"q_min": args.q_min, "q_max": args.q_max}, {"rows": rows})
    elif cmd == "generate":
        params = {"q": args.q, "t": args.t, "n": args.n, "k": args.k, "seed": args.seed, "out": args.out}
        try:
            res = generate_covering(args.q, args.t, args.n, args.k, args.seed, args.max_rounds)
        except GenerationError as exc:
            rec = OutputRecord.build(
                "generate", params,
                {"status": "failed", "rounds": exc.rounds, "deficiencies": exc.deficiencies,
                 "message": str(exc)},
            )
            _emit(rec, args.json, out)
            return 1
        text = serialize_array(res.array)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        elif not args.json:
            out.write(text)
        results = {"status": "ok", "rounds": res.rounds, "k": res.array.k}
        if args.json and not args.out:
            results["array"] = text
        rec = OutputRecord.build("generate", params, results)
        if args.out or args.json:
            _emit(rec, args.json, out)
        else:
            sys.stderr.write(f"rounds: {res.rounds}\n")
        return 0
    elif cmd == "verify":
        try:
            arr = read_array(args.path)
        except OSError as exc:
            raise UsageError(str(exc)) from None
        witness = verify_covering(arr, args.t)
        params = {"path": args.path, "t": args.t}
        if witness is None:
            rec = OutputRecord.build("verify", params, {"status": "ok"})
        else:
            rec = OutputRecord.build(
                "verify", params,
                {"status": "deficient", "columns": list(witness.columns), "word": list(witness.word)},
            )
        _emit(rec, args.json, out)
        return 0 if witness is None else 1
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown command {cmd}")
    _emit(rec, args.json, out)
    return 0


def _emit(rec: OutputRecord, as_json: bool, out) -> None:
    out.write((rec.to_json() if as_json else rec.to_text()) + "\n")


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args, out)
    except (UsageError, ArrayFormatError, ValueError) as exc:
        sys.stderr.write(f"lllcover: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
