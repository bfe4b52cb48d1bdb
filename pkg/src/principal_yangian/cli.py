"""Command-line front end: ``principal-yangian verify <suite> [options]``.

Exit status: 0 when every check passes, 1 on a verification failure,
2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import principal_gl as gl
from . import rep_engine as rep
from . import yangian_core as yc
from .exact_arith import format_rational, parse_rational
from .reports import Report, to_jsonable

SUITES = (
    "lie", "fourier", "permutation", "isomorphism", "qybe", "rtt",
    "principal-relations", "theorem51", "corollary52", "all",
)

VARIANTS = {
    "isomorphism": [v.value for v in yc.InverseVariant],
    "principal-relations": ["survey"] + [v.value for v in yc.ExponentVariant],
    "rtt": ["minus-p", "plus-p"],
    "theorem51": ["calibrated"] + [c.label() for c in rep.CONVENTIONS],
}


class UsageError(ValueError):
    pass


@dataclass
class SuiteConfig:
    suite: str
    n: int = 3
    depth: int = 3
    a: Fraction = Fraction(1)
    b: Fraction = Fraction(0)
    seed: int = 0
    variant: str | None = None
    table: str = yc.EvaluationVariant.DERIVED_FROM_P.value
    output: str = "text"
    dump: bool = False

    def validate(self) -> None:
        if self.suite not in SUITES:
            raise UsageError(f"unknown suite {self.suite!r}")
        if self.n < 2:
            raise UsageError("--n must be at least 2")
        if self.depth < 1:
            raise UsageError("--depth must be at least 1")
        if self.output not in ("text", "json"):
            raise UsageError("--output must be text or json")
        if self.variant is not None:
            allowed = VARIANTS.get(self.suite)
            if allowed is None:
                raise UsageError(f"suite {self.suite!r} takes no --variant")
            if self.variant not in allowed and not (
                self.suite == "theorem51" and self.variant.endswith(",literal-deltas")
                and self.variant[: -len(",literal-deltas")] in allowed
            ):
                raise UsageError(f"--variant for {self.suite} must be one of {allowed}")


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parse_convention(label: str) -> rep.EntangledConvention:
    for conv in rep.CONVENTIONS:
        if conv.label() == label:
            return conv
    raise UsageError(f"unknown entangled-basis convention {label!r}")


# -- suites ------------------------------------------------------------------

def _lie(cfg: SuiteConfig) -> Report:
    r = gl.verify_lie(cfg.n)
    if cfg.dump:
        r.notes["dump"] = {
            f"A_{i}{j}": gl.principal_A(cfg.n, i, j) for i in range(cfg.n) for j in range(cfg.n)
        }
    return r


def _fourier(cfg: SuiteConfig) -> Report:
    r = gl.verify_fourier(cfg.n)
    if cfg.dump:
        r.notes["dump"] = {f"phi_{i}": gl.fourier_vec(cfg.n, i) for i in range(cfg.n)}
    return r


def _permutation(cfg: SuiteConfig) -> Report:
    r = gl.verify_permutation(cfg.n)
    if cfg.dump:
        r.notes["dump"] = {"P": gl.permutation_P(cfg.n)}
    return r


def _isomorphism(cfg: SuiteConfig) -> Report:
    variant = yc.InverseVariant(cfg.variant or "corrected")
    return yc.verify_isomorphism(cfg.n, cfg.depth, cfg.seed, variant=variant)


def _qybe(cfg: SuiteConfig) -> Report:
    return yc.verify_qybe(cfg.n)


def _rtt(cfg: SuiteConfig) -> Report:
    if (cfg.variant or "minus-p") == "minus-p":
        r = yc.verify_rtt(cfg.n)
        r.params["variant"] = "minus-p"
        return r
    r = Report("rtt", {"n": cfg.n, "variant": "plus-p"}, indices_tested=1)
    res = yc.rtt_residual(gl.permutation_P(cfg.n), cfg.n)
    if not res.is_zero():
        r.fail(["residual"], res)
    return r


def _principal_relations(cfg: SuiteConfig) -> Report:
    table = yc.principal_evaluation_table(cfg.n, yc.EvaluationVariant(cfg.table))
    if cfg.variant and cfg.variant != "survey":
        r = yc.verify_principal_relations(table, yc.ExponentVariant(cfg.variant), keep_residuals=cfg.dump)
        r.params["table"] = cfg.table
        return r
    counts = yc.survey_exponent_variants(table)
    surviving = [v.value for v, k in counts.items() if k == 0]
    r = Report(
        "principal-relations",
        {"n": cfg.n, "depth": table.depth, "variant": "survey", "table": cfg.table},
        indices_tested=9 * cfg.n**4 * len(counts),
        notes={
            "failures_by_variant": {v.value: k for v, k in counts.items()},
            "surviving_variant": surviving[0] if len(surviving) == 1 else surviving,
        },
    )
    if len(surviving) != 1:
        r.fail(["survey"], {"surviving": surviving})
    return r


def _theorem51(cfg: SuiteConfig) -> Report:
    label = cfg.variant or "calibrated"
    if label == "calibrated":
        try:
            cal = rep.calibrate()
        except rep.CalibrationError as exc:
            r = Report("theorem51", {"a": cfg.a, "b": cfg.b}, notes={"calibration_error": str(exc)})
            r.fail(["calibration"])
            return r
        r = rep.verify_theorem51(cfg.a, cfg.b, cal.c, cal.convention, cal.reduce_deltas)
    else:
        literal = label.endswith(",literal-deltas")
        conv = _parse_convention(label.removesuffix(",literal-deltas"))
        r = rep.verify_theorem51(cfg.a, cfg.b, rep.CALIBRATED_C, conv, not literal)
    if cfg.dump:
        mod = rep.build_tensor_module(cfg.a, cfg.b, r.params["c"])
        r.notes["dump"] = {
            f"J(T_{i}^{j})": mod.j_action(t) for (i, j), t in sorted(rep.principal_sl3_generators().items())
        }
    return r


def _corollary52(cfg: SuiteConfig) -> Report:
    r = rep.verify_corollary52(cfg.a, cfg.b)
    if cfg.dump:
        mod = rep.build_tensor_module(cfg.a, cfg.b, rep.CALIBRATED_C)
        r.notes["dump"] = {"Omega": mod.casimir}
    return r


RUNNERS = {
    "lie": _lie,
    "fourier": _fourier,
    "permutation": _permutation,
    "isomorphism": _isomorphism,
    "qybe": _qybe,
    "rtt": _rtt,
    "principal-relations": _principal_relations,
    "theorem51": _theorem51,
    "corollary52": _corollary52,
}


def run_suite(cfg: SuiteConfig) -> tuple[list[Report], int]:
    cfg.validate()
    names = [s for s in SUITES if s != "all"] if cfg.suite == "all" else [cfg.suite]
    reports = [RUNNERS[name](cfg) for name in names]
    return reports, 0 if all(r.passed for r in reports) else 1


# -- output ------------------------------------------------------------------

def emit_report(reports: Sequence[Report], fmt: str = "text") -> str:
    if fmt == "json":
        payload = {
            "reports": [r.to_dict() for r in reports],
            "passed": all(r.passed for r in reports),
        }
        return json.dumps(payload, indent=2) + "\n"
    header = f"{'check':<22}{'parameters':<50}{'tested':>8}{'failed':>8}  status"
    lines = [header, "-" * len(header)]
    for r in reports:
        params = " ".join(f"{k}={_plain(v)}" for k, v in r.params.items())
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.check:<22}{params:<50}{r.indices_tested:>8}{len(r.failures):>8}  {status}")
        if r.verdict is not None:
            lines.append(f"{'':<22}verdict: {r.verdict}")
        for key in ("surviving_variant", "failures_by_variant", "algebra_dim"):
            if key in r.notes:
                lines.append(f"{'':<22}{key}: {_plain(r.notes[key])}")
    return "\n".join(lines) + "\n"


def _plain(v) -> str:
    if isinstance(v, Fraction):
        return format_rational(v) if v.denominator != 1 else str(v.numerator)
    if isinstance(v, dict):
        return ", ".join(f"{k}={_plain(x)}" for k, x in v.items())
    return json.dumps(to_jsonable(v)) if not isinstance(v, str) else v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="principal-yangian",
        description="Exact verification of the principal realization of Y(gl(n)).",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--n", type=int, default=3)
    v.add_argument("--depth", type=int, default=3)
    v.add_argument("--a", type=_rational_arg, default=Fraction(1), metavar="p/q")
    v.add_argument("--b", type=_rational_arg, default=Fraction(0), metavar="p/q")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--variant", default=None)
    v.add_argument(
        "--table", default=yc.EvaluationVariant.DERIVED_FROM_P.value,
        choices=[e.value for e in yc.EvaluationVariant],
        help="evaluation table for principal-relations",
    )
    v.add_argument("--output", choices=("text", "json"), default="text")
    v.add_argument("--dump", action="store_true", help="include matrix dumps in the report")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = SuiteConfig(
        suite=args.suite, n=args.n, depth=args.depth, a=args.a, b=args.b, seed=args.seed,
        variant=args.variant, table=args.table, output=args.output, dump=args.dump,
    )
    try:
        reports, status = run_suite(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit_report(reports, cfg.output))
    return status


if __name__ == "__main__":
    sys.exit(main())
