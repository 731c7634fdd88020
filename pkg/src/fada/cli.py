"""Command-line front end ``fada``.

Subcommands::

    fada expand EXPR [--basis eta|x|st]
    fada verify {scalars,weyl,twisted,peterson,dual,all}
    fada coproduct K
    fada dual-gkm [--raw ELEMENT ...]
    fada length ELEMENT

Exit status is 0 on success, 1 when a verification fails and 2 for usage,
parse or evaluation errors.  ``--json`` output is deterministic for a fixed
seed (keys sorted, checks sorted by id).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .expr import ExpressionError, evaluate
from .suites import SUITES, Context, SuiteConfig, run_suite
from .twisted import TwistedElement
from .weyl import format_element, parse_element

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    """Bad input that should end with exit status 2."""


GLOBAL_DEFAULTS = {"type": "A1", "fgl": "beta", "beta": None, "trunc": 8, "ball": 4, "seed": 0, "json": False}


def _global_options(p, default):
    p.add_argument("--type", default=default, help="A1, A2, ... or cartan:<file> (default A1)")
    p.add_argument("--fgl", default=default, help="beta (hyperbolic law) or table:<file>")
    p.add_argument("--beta", default=default, help="specialize beta to a rational p/q")
    p.add_argument("--trunc", type=int, default=default, help="truncation degree N in table mode (default 8)")
    p.add_argument("--ball", type=int, default=default, help="ball radius L for enumerations (default 4)")
    p.add_argument("--seed", type=int, default=default, help="seed for randomized checks")
    p.add_argument("--json", action="store_true", default=default, help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fada", description="Formal affine Demazure and Peterson algebra calculator.")
    _global_options(p, argparse.SUPPRESS)
    p.set_defaults(**GLOBAL_DEFAULTS)
    # the same options after the subcommand; SUPPRESS keeps them from overwriting earlier values
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    e = add("expand", "evaluate an element expression")
    e.add_argument("expr")
    e.add_argument("--basis", choices=("eta", "x", "st"), default="eta")

    v = add("verify", "run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))

    c = add("coproduct", "coproduct table of frak_Y_{sigma_k} (affine A1)")
    c.add_argument("k", type=int)

    g = add("dual-gkm", "GKM conditions for the dual basis or raw functionals")
    g.add_argument("--raw", action="append", default=[], metavar="ELEMENT",
                   help="check the point functional f_u instead (repeatable)")

    ln = add("length", "length and canonical reduced word of an element")
    ln.add_argument("element", help='e.g. "t[2]*s1" or "s0s1"')
    return p


def _config(args) -> SuiteConfig:
    if args.beta is not None:
        try:
            Fraction(args.beta)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--beta expects a rational p/q, got {args.beta!r}") from None
        if args.fgl != "beta":
            raise UsageError("--beta only applies to the hyperbolic law")
    if not (args.fgl == "beta" or args.fgl.startswith("table:")):
        raise UsageError(f"unknown formal group law {args.fgl!r}")
    try:
        return SuiteConfig(type=args.type, fgl=args.fgl, beta=args.beta, trunc=args.trunc,
                           ball=args.ball, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _context(cfg: SuiteConfig) -> Context:
    try:
        return Context(cfg)
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from None


def _emit(args, payload, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text + "\n")


# expand ------------------------------------------------------------------------------
def render(ctx: Context, value, basis: str = "eta") -> tuple[str, dict]:
    """Text that re-parses to ``value`` plus a JSON form."""
    ring, alg = ctx.ring, ctx.alg
    if not isinstance(value, TwistedElement):
        s = ring.coerce(value) if isinstance(value, (int, Fraction)) else value
        return ring.format(s), {"scalar": ring.to_json(s)}
    if basis == "eta":
        return alg.format(value), alg.to_json(value)
    if basis == "x":
        coeffs = alg.expand_in_x_basis(value)
        if not coeffs:
            return "0", {"x_basis": []}
        keys = sorted(coeffs, key=lambda w: (len(w), w))
        text = " + ".join(f"({ring.format(coeffs[w])})*X([{','.join(map(str, w))}])" for w in keys)
        return text, {"x_basis": [{"word": list(w), "coeff": ring.to_json(coeffs[w])} for w in keys]}
    if not ctx.is_a1:
        raise UsageError("the s/t basis exists only for affine type A1")
    p = ctx.peterson.to_presentation(value)
    return repr(p), p.to_json()


def cmd_expand(args, ctx: Context) -> int:
    try:
        value = evaluate(args.expr, ctx.alg, ctx.peterson)
        text, data = render(ctx, value, args.basis)
    except (ExpressionError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _emit(args, {"expr": args.expr, "basis": args.basis, "result": data, "text": text}, text)
    return 0


# verify -------------------------------------------------------------------------------
def verify_report(ctx: Context, suite: str) -> dict:
    names = SUITES if suite == "all" else (suite,)
    checks = []
    for name in names:
        checks += run_suite(name, ctx)["checks"]
    checks.sort(key=lambda c: c["id"])
    return {"version": "1", "config": ctx.cfg.as_dict(), "checks": checks}


def cmd_verify(args, ctx: Context) -> int:
    report = verify_report(ctx, args.suite)
    failed = [c for c in report["checks"] if c["status"] == "fail"]
    lines = [f"{c['status'].upper():4} {c['id']}: {c['detail']}" for c in report["checks"]]
    counts = {s: sum(c["status"] == s for c in report["checks"]) for s in ("pass", "fail", "skip")}
    lines.append(f"{len(report['checks'])} checks: {counts['pass']} passed, {counts['fail']} failed, "
                 f"{counts['skip']} skipped")
    _emit(args, report, "\n".join(lines))
    return 1 if failed else 0


# coproduct ---------------------------------------------------------------------------
def coproduct_table(ctx: Context, k: int) -> dict:
    P = ctx.peterson
    return P.coproduct_in_frak_y(P.frak_y_sigma(k))


def _table_payload(ring, table: dict) -> tuple[list, list]:
    keys = sorted(table)
    rows = [{"i": i, "j": j, "coeff": ring.to_json(table[(i, j)]), "text": ring.format(table[(i, j)])}
            for i, j in keys]
    text = [f"  ({i},{j}): {ring.format(table[(i, j)])}" for i, j in keys]
    return rows, text


def cmd_coproduct(args, ctx: Context) -> int:
    if not ctx.is_a1:
        raise UsageError("coproduct tables are only available for affine type A1")
    if args.k < 0:
        raise UsageError("k must be non-negative")
    payload = {"k": args.k}
    lines = [f"coproduct of frak_Y_sigma_{args.k} in the frak_Y (x) frak_Y basis"]
    if ctx.hyperbolic and ctx.cfg.beta is not None:
        sym = Context(SuiteConfig(**{**ctx.cfg.as_dict(), "beta": None}))
        table = coproduct_table(sym, args.k)
        rows, text = _table_payload(sym.ring, table)
        payload["table"] = rows
        lines += ["symbolic beta:"] + text
        value = Fraction(ctx.cfg.beta)
        spec = {key: sym.ring.specialize_beta(c, value) for key, c in table.items()}
        spec = {key: c for key, c in spec.items() if not ctx.ring.is_zero(c)}
        rows, text = _table_payload(ctx.ring, spec)
        payload["specialized"] = {"beta": ctx.cfg.beta, "table": rows}
        lines += [f"beta = {ctx.cfg.beta}:"] + text
    else:
        rows, text = _table_payload(ctx.ring, coproduct_table(ctx, args.k))
        payload["table"] = rows
        lines += text
    _emit(args, payload, "\n".join(lines))
    return 0


# dual-gkm -----------------------------------------------------------------------------
def cmd_dual_gkm(args, ctx: Context) -> int:
    d, D = ctx.datum, ctx.dual
    reports = []
    if args.raw:
        for text in args.raw:
            try:
                u = parse_element(d, text)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            if u not in D.ball_set(ctx.cfg.ball):
                raise UsageError(f"{text!r} lies outside the ball of radius {ctx.cfg.ball}")
            reports.append(D.gkm_check(D.f(u), subject=f"f_{{{format_element(d, u)}}}"))
    else:
        basis = D.dual_basis_y()
        for w in sorted(basis, key=lambda u: (d.length(u), d.reduced_word(u))):
            word = "".join(map(str, d.reduced_word(w))) or "e"
            reports.append(D.gkm_check(basis[w], subject=f"Y*_{{{word}}}"))
    lines = [f"{r['status'].upper():4} {r['subject']}: {r['checked']} conditions, {len(r['failures'])} failures"
             for r in reports]
    for r in reports:
        for f in r["failures"][:3]:
            if "reason" in f:
                lines.append(f"     {r['subject']} at {f['elem']}: {f['reason']}")
            else:
                lines.append(f"     {r['subject']} at {f['elem']}: {f['condition']} condition, root {f['root']},"
                             f" exponent {f['exponent']}")
    _emit(args, {"reports": reports}, "\n".join(lines))
    return 0 if all(r["status"] == "pass" for r in reports) else 1


# length -------------------------------------------------------------------------------
def cmd_length(args, ctx: Context) -> int:
    d = ctx.datum
    try:
        u = parse_element(d, args.element)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    word = d.reduced_word(u)
    ell = {",".join(map(str, a)): d.ell_alpha(u, a) for a in d.positive_roots}
    payload = {"element": format_element(d, u), "length": d.length(u), "reduced_word": list(word),
               "ell_alpha": ell}
    text = (f"{format_element(d, u) or 'e'}: length {d.length(u)}, reduced word {''.join(map(str, word)) or '-'}"
            + "".join(f"; ell_[{a}] = {v}" for a, v in ell.items()))
    _emit(args, payload, text)
    return 0


COMMANDS = {
    "expand": cmd_expand,
    "verify": cmd_verify,
    "coproduct": cmd_coproduct,
    "dual-gkm": cmd_dual_gkm,
    "length": cmd_length,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx = _context(_config(args))
        return COMMANDS[args.command](args, ctx)
    except UsageError as exc:
        sys.stderr.write(f"fada: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
