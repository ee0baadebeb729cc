"""The hypersplit command line interface.

Subcommands:

* verify   -- run identity campaigns from a TOML config, write reports
* eval     -- evaluate one hypergeometric sum (ff / g / classical)
* benchmark -- compare the numba and numpy kernel backends

Exit codes of verify: 0 all gating campaigns pass, 1 any identity failed,
2 configuration or runtime error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .errors import HypersplitError
from .numth import factorize


def _parse_q(qstr: str) -> tuple[int, int]:
    q = int(qstr)
    fact = factorize(q)
    if len(fact) != 1:
        raise HypersplitError(f"q = {q} is not a prime power")
    return fact[0]


def _parse_char_token(tok: str, q: int) -> int:
    tok = tok.strip().lower()
    if tok in ("eps", "1"):
        return 0
    if tok == "phi":
        if q % 2 == 0:
            raise HypersplitError("phi needs odd q")
        return (q - 1) // 2
    if tok.startswith("chi"):
        n = int(tok[3:])
        if (q - 1) % n:
            raise HypersplitError(f"chi{n} needs q = 1 mod {n}")
        return (q - 1) // n
    if tok.startswith("t^"):
        return int(tok[2:]) % (q - 1)
    return int(tok) % (q - 1)


def _parse_lambda(tok: str, field):
    tok = tok.strip()
    if tok.startswith("g^"):
        return field.generator_power(int(tok[2:]))
    return field.from_rational(Fraction(tok))


def _cmd_eval(args) -> int:
    from .ffield import make_field

    if args.kind == "ff":
        from .ffhyper import FFHyperParams, ff_hyper

        p, r = _parse_q(args.q)
        field = make_field(p, r)
        top = tuple(_parse_char_token(t, field.q) for t in args.top.split(","))
        bottom = tuple(_parse_char_token(t, field.q) for t in args.bottom.split(","))
        lam = _parse_lambda(args.lam, field)
        value = ff_hyper(
            FFHyperParams(field, top, bottom, generalized=len(top) != len(bottom)), lam
        )
        print(value)
        return 0

    if args.kind == "g":
        from .gfunction import GParams, g_eval

        p, r = _parse_q(args.q)
        field = make_field(p, r)
        a = tuple(Fraction(t) for t in args.a.split(","))
        b = tuple(Fraction(t) for t in args.b.split(","))
        lam = _parse_lambda(args.lam, field)
        value = g_eval(GParams(a, b), lam, field, args.prec)
        if value.is_zero():
            print(f"0 (mod {p}^{value.prec})")
            return 0
        digits = ",".join(str(d) for d in value.digits())
        line = f"{p}^{value.val} * [{digits}]"
        if value.val >= 0:
            line += f"   (integer lift: {value.lift()})"
        print(line)
        return 0

    if args.kind == "classical":
        import mpmath as mp

        from .classical import mfm_series

        top = tuple(Fraction(t) for t in args.top.split(","))
        bottom = tuple(Fraction(t) for t in args.bottom.split(","))
        z = Fraction(args.z)
        value = mfm_series(top, bottom, z, args.prec)
        print(mp.nstr(value, args.prec))
        return 0

    raise HypersplitError(f"unknown eval kind {args.kind!r}")


def _cmd_verify(args) -> int:
    import tomli

    from .harness import run_verification

    config = {}
    if args.config:
        try:
            with open(args.config, "rb") as fobj:
                config = tomli.load(fobj)
        except (OSError, tomli.TOMLDecodeError) as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return 2
    if args.seed is not None:
        config["seed"] = args.seed
    if args.only:
        config["case"] = {cid: config.get("case", {}).get(cid, {}) for cid in args.only}

    report = run_verification(config)
    for result in report.results:
        status = "PASS" if result.passed else "FAIL"
        if not result.gating:
            status += " (report-only)"
        n_fail = sum(1 for rec in result.records if not rec.passed)
        detail = f"{len(result.records)} records"
        if n_fail:
            detail += f", {n_fail} failing"
        if result.error:
            detail += f", error: {result.error}"
        print(f"[{status}] {result.case_id}: {detail} ({result.elapsed:.2f}s)")
    summary = report.summary()
    print(
        f"{summary['passed']}/{summary['cases']} campaigns passed, "
        f"{summary['records']} records, backend={report.backend}"
    )
    if args.out:
        with open(args.out, "w") as fobj:
            fobj.write(report.to_json())
    if args.csv:
        with open(args.csv, "w") as fobj:
            fobj.write(report.to_csv())
    return 0 if report.all_passed else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hypersplit",
        description="Exact hypergeometric sums over finite fields, Q_p and C, "
        "with an identity verification harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run identity campaigns")
    p_verify.add_argument("--config", help="TOML config with seed and [case.<id>] tables")
    p_verify.add_argument("--seed", type=int, help="override / supply the RNG seed")
    p_verify.add_argument("--only", nargs="*", help="restrict to these case ids")
    p_verify.add_argument("--out", help="write the JSON report here")
    p_verify.add_argument("--csv", help="write the CSV table here")

    p_eval = sub.add_parser("eval", help="evaluate a single sum")
    ev = p_eval.add_subparsers(dest="kind", required=True)
    e_ff = ev.add_parser("ff", help="finite-field sum (exact cyclotomic value)")
    e_ff.add_argument("--top", required=True, help="comma list: eps,phi,chi4,T^k or integers")
    e_ff.add_argument("--bottom", required=True)
    e_ff.add_argument("--lambda", dest="lam", required=True, help="rational or g^k")
    e_ff.add_argument("--q", required=True, help="prime power")
    e_g = ev.add_parser("g", help="p-adic sum (digits mod p^prec)")
    e_g.add_argument("--a", required=True, help="comma list of rationals")
    e_g.add_argument("--b", required=True)
    e_g.add_argument("--lambda", dest="lam", required=True)
    e_g.add_argument("--q", required=True)
    e_g.add_argument("--prec", type=int, default=6)
    e_c = ev.add_parser("classical", help="classical series (decimal)")
    e_c.add_argument("--top", required=True)
    e_c.add_argument("--bottom", required=True)
    e_c.add_argument("--z", required=True)
    e_c.add_argument("--prec", type=int, default=30)

    sub.add_parser("benchmark", help="compare kernel backends")

    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "benchmark":
            from .benchmark import run

            run()
            return 0
    except HypersplitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
