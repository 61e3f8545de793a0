"""Command-line surface: exact, scriptable computations with JSON/CSV output.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error.  Output is deterministic for a fixed configuration: dictionaries are
emitted in fixed key order and every rational is rendered as "num/den".
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import alcove, characters, liealg, qseries, shift

USAGE_ERROR = 2
VERIFY_ERROR = 1


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    algebra: liealg.SimpleLieType
    variant: shift.Variant
    m: int
    order: int
    fmt: str
    output: str | None
    jobs: int
    weyl_cap: int
    word_cap: int
    grid_cap: int


def _caps_from_env() -> dict:
    caps = {}
    raw = os.environ.get("SHIFTLAB_CAPS", "")
    for piece in raw.split(","):
        piece = piece.strip()
        if not piece:
            continue
        key, _, value = piece.partition("=")
        if key not in ("weyl", "words", "grid") or not value.isdigit():
            raise ConfigError(f"bad SHIFTLAB_CAPS entry {piece!r}")
        caps[key] = int(value)
    return caps


def _config(args) -> RunConfig:
    caps = _caps_from_env()
    try:
        algebra = liealg.SimpleLieType.parse(args.algebra)
    except liealg.InvalidTypeError as exc:
        raise ConfigError(str(exc)) from exc
    variant = shift.Variant(args.variant)
    return RunConfig(
        algebra=algebra,
        variant=variant,
        m=args.m,
        order=getattr(args, "order", 20),
        fmt=args.format,
        output=args.output,
        jobs=args.jobs,
        weyl_cap=caps.get("weyl", args.weyl_cap),
        word_cap=caps.get("words", args.word_cap),
        grid_cap=caps.get("grid", args.grid_cap),
    )


def _case(cfg: RunConfig) -> shift.ShiftCase:
    try:
        return shift.make_case(cfg.algebra, cfg.variant, cfg.m)
    except shift.InvalidCaseError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_lambda(case: shift.ShiftCase, text: str) -> shift.LambdaParam:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != case.rank + 1:
        raise ConfigError(
            f"--lambda wants 'minuscule-index,digit1,...,digit{case.rank}'")
    try:
        idx = int(parts[0])
        digits = [int(p) for p in parts[1:]]
        if not 0 <= idx < len(case.rs.minuscule):
            raise ValueError(f"minuscule index {idx} out of range")
        return shift.lambda_from(case, idx, digits)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_alpha(case: shift.ShiftCase, text: str):
    parts = [p.strip() for p in text.split(",")]
    if parts == ["0"]:
        return liealg.vzero(case.rank)
    if len(parts) != case.rank:
        raise ConfigError(f"--alpha wants {case.rank} comma-separated integers")
    try:
        return tuple(Fraction(int(p)) for p in parts)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _emit(cfg: RunConfig, payload, csv_text: str | None = None) -> None:
    if cfg.fmt == "csv":
        if csv_text is None:
            raise ConfigError("csv output is not available for this command")
        text = csv_text
    elif cfg.fmt == "plain":
        text = _plainify(payload)
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _plainify(payload, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(payload, dict):
        return "".join(
            f"{pad}{k}:\n{_plainify(v, indent + 1)}" if isinstance(v, (dict, list))
            else f"{pad}{k}: {v}\n"
            for k, v in payload.items())
    if isinstance(payload, list):
        return "".join(
            _plainify(v, indent) if isinstance(v, (dict, list))
            else f"{pad}- {v}\n"
            for v in payload)
    return f"{pad}{payload}\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_info(cfg: RunConfig, args) -> int:
    rs = liealg.build_root_system(cfg.algebra)
    payload = rs.to_json_dict()
    payload["enumerated"] = liealg.weyl_order(cfg.algebra) <= cfg.weyl_cap
    _emit(cfg, payload)
    return 0


def cmd_lambda(cfg: RunConfig, args) -> int:
    case = _case(cfg)
    report = shift.condition_report(case, all_words=False)
    _emit(cfg, report.to_json_dict(), report.to_csv())
    return 0 if report.ok else VERIFY_ERROR


def cmd_check(cfg: RunConfig, args) -> int:
    case = _case(cfg)
    if args.suite == "axioms":
        report = shift.verify_axioms(case)
    elif args.suite == "weak-strong":
        report = shift.condition_report(case, all_words=True,
                                        word_cap=cfg.word_cap)
    elif args.suite == "shift-facts":
        report = shift.verify_axioms(case)
    elif args.suite == "alcove-independence":
        report = _alcove_independence_report(case)
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigError(f"unknown suite {args.suite}")
    _emit(cfg, report.to_json_dict(), report.to_csv() if report.weak else None)
    return 0 if report.ok else VERIFY_ERROR


def _alcove_independence_report(case: shift.ShiftCase) -> shift.ShiftReport:
    report = shift.ShiftReport(case.case_id(), {"checks": 0})
    rs = case.rs
    heights = 3
    alphas = [a for h in range(heights + 1)
              for a in characters._shell(rs, h) if rs.is_dominant(a)]
    for b_idx in range(len(rs.minuscule)):
        for alpha in alphas:
            report.counts["checks"] += 1
            try:
                y = alcove.y_alpha(alpha, b_idx, case)
            except alcove.WallReductionError:
                continue
            except AssertionError as exc:
                report.failures.append(
                    {"check": "digit-independence", "bullet": b_idx,
                     "alpha": [str(x) for x in alpha], "detail": str(exc)})
                continue
            if case.variant.is_super:
                cf = alcove.closed_form_y_super(alpha, b_idx, case)
                if (y.finite_part.action, y.translation) != \
                        (cf.finite_part.action, cf.translation):
                    report.failures.append(
                        {"check": "closed-form", "bullet": b_idx,
                         "alpha": [str(x) for x in alpha],
                         "got": y.describe(), "want": cf.describe()})
    return report


def cmd_char(cfg: RunConfig, args) -> int:
    case = _case(cfg)
    lam = _parse_lambda(case, args.lam)
    alpha = _parse_alpha(case, args.alpha)
    kind = args.kind
    if kind == "ch":
        series = characters.multiplet_char(alpha, lam, case, cfg.order)
    elif kind == "sch":
        series = characters.multiplet_superchar(alpha, lam, case, cfg.order)
    else:
        if case.variant is not shift.Variant.SUPER_RAMOND:
            raise ConfigError("--kind ramond requires --variant ramond")
        series = characters.multiplet_ramond_char(alpha, lam, case, cfg.order)
    payload = {
        "case": case.case_id(),
        "alpha": [str(x) for x in alpha],
        "lambda": lam.label(),
        "kind": kind,
        "central_charge": f"{case.central_charge.numerator}/"
                          f"{case.central_charge.denominator}",
        "strong": shift.alcove_inequality(lam, case),
        "series": series.to_json_dict(),
    }
    _emit(cfg, payload)
    return 0


def cmd_ftchar(cfg: RunConfig, args) -> int:
    case = _case(cfg)
    lam = _parse_lambda(case, args.lam)
    series = characters.ft_char(lam, case, cfg.order)
    payload = {
        "case": case.case_id(),
        "lambda": lam.label(),
        "kind": "ft",
        "strong": shift.alcove_inequality(lam, case),
        "series": series.to_json_dict(),
    }
    _emit(cfg, payload)
    return 0


def cmd_alcove(cfg: RunConfig, args) -> int:
    case = _case(cfg)
    lam = _parse_lambda(case, args.lam)
    alpha = _parse_alpha(case, args.alpha)
    _emit(cfg, alcove.alcove_json(case, alpha, lam))
    return 0


def cmd_verify(cfg: RunConfig, args) -> int:
    case = _case(cfg)
    failures: list[dict] = []
    checks = 0
    if args.target == "wchar":
        lam0 = shift.enumerate_lambda(case)[0]
        zero = liealg.vzero(case.rank)
        got = characters.multiplet_char(zero, lam0, case, cfg.order)
        want = characters.walg_vacuum_oracle(case, cfg.order)
        checks += 1
        if not got.same_series(want):
            failures.append({"check": "wchar",
                             "got": got.to_json_dict(),
                             "want": want.to_json_dict()})
    elif args.target == "verma":
        if not case.variant.is_super:
            raise ConfigError("verma verification needs a super variant")
        rs = case.rs
        alphas = [a for h in range(3) for a in characters._shell(rs, h)
                  if rs.is_dominant(a)]
        for lam in shift.enumerate_lambda(case):
            for alpha in alphas:
                mu = liealg.vscale(case.p, liealg.vsub(lam.value, alpha))
                got = characters.verma_char_super(mu, case, cfg.order)
                want = characters.weight_space_char(
                    lam, liealg.vadd(alpha, lam.bullet_up), case, cfg.order)
                checks += 1
                if not got.same_series(want):
                    failures.append({"check": "verma", "lambda": lam.label(),
                                     "alpha": [str(x) for x in alpha]})
    elif args.target == "walls":
        rs = case.rs
        lam0 = shift.enumerate_lambda(case)[0]
        span = range(-2, 3)
        import itertools
        for coords in itertools.product(span, repeat=rs.rank):
            beta = liealg.vadd(tuple(Fraction(c) for c in coords), lam0.bullet_up)
            shifted = liealg.vadd(beta, rs.rho)
            on_wall = any(rs.copairing(shifted, i) == 0 for i in range(rs.rank)) \
                or any(rs.pairing(shifted, a) == 0 for a in rs.positive_roots)
            if not on_wall:
                continue
            checks += 1
            total = characters._alternating_sum(case, lam0, beta, cfg.order)
            if not total.is_zero:
                failures.append({"check": "wall-vanishing",
                                 "beta": [str(x) for x in beta]})
    payload = {"case": case.case_id(), "target": args.target,
               "checks": checks, "failures": failures}
    _emit(cfg, payload)
    return 0 if not failures else VERIFY_ERROR


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftlab",
        description="Exact shift systems and q-characters for multiplet "
                    "W-(super)algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, order_default=20):
        p.add_argument("--algebra", required=True, help="e.g. A2, B3, G2")
        p.add_argument("--variant", default="nonsuper",
                       choices=[v.value for v in shift.Variant])
        p.add_argument("--m", type=int, default=1)
        p.add_argument("--order", type=int, default=order_default,
                       help="truncation depth in q-units above the leading exponent")
        p.add_argument("--format", default="json", choices=["json", "csv", "plain"])
        p.add_argument("--output", default=None)
        p.add_argument("--jobs", type=int, default=1,
                       help="parallelism degree (reserved; evaluation is exact "
                            "and single-process)")
        p.add_argument("--weyl-cap", type=int, default=liealg.DEFAULT_WEYL_CAP)
        p.add_argument("--word-cap", type=int, default=liealg.DEFAULT_WORD_CAP)
        p.add_argument("--grid-cap", type=int, default=qseries.DEFAULT_GRID_CAP)

    p = sub.add_parser("info", help="root-system data as JSON")
    common(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("lambda", help="coset table with weak/strong/alcove flags")
    common(p)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("check", help="verification suites")
    p.add_argument("suite", choices=["axioms", "weak-strong", "shift-facts",
                                     "alcove-independence"])
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("char", help="multiplet character")
    common(p, order_default=30)
    p.add_argument("--alpha", default="0")
    p.add_argument("--lambda", dest="lam", required=True,
                   help="minuscule-index,digit1,...,digitr")
    p.add_argument("--kind", default="ch", choices=["ch", "sch", "ramond"])
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("ftchar", help="full construction character")
    common(p, order_default=10)
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(func=cmd_ftchar)

    p = sub.add_parser("alcove", help="chamber reduction data for (alpha, lambda)")
    common(p)
    p.add_argument("--alpha", default="0")
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(func=cmd_alcove)

    p = sub.add_parser("verify", help="formula-vs-oracle comparisons")
    p.add_argument("target", choices=["wchar", "verma", "walls"])
    common(p, order_default=30)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(cfg, args)
    except (ConfigError, shift.InvalidCaseError, liealg.InvalidTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (liealg.CapExceededError, qseries.GridBoundError,
            characters.UnsupportedCaseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
