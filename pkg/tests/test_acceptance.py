"""Acceptance criteria 1-10.

Each criterion runs a fixed list of named checks from the verification suites
in one or more contexts and prints a single PASS/FAIL line with its tolerance.
Checks are taken exactly as the criterion states them; where a stated formula
disagrees with the computation the criterion fails, and the companion
``-corrected`` check is printed underneath for information only.

Run directly (``python3 tests/test_acceptance.py``) for the summary alone.
"""
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from fada import make_context
from fada.fgl import FormalGroupLaw
from fada.scalars import HyperbolicRing, TableRing
from fada.suites import coherence_failures, run_check

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"

# (type, ball) for each context used below
A1, A2, A1_BALL6, A2_BALL6, A1_BALL5 = ("A1", 4), ("A2", 3), ("A1", 6), ("A2", 6), ("A1", 5)

CRITERIA = {
    1: ("example computations: iota frak_X_0, frak_X_10, frak_X_010, frak_Y_0, frak_Y_10, frak_Y_010",
        "exact, zero tolerance over Q(beta)",
        [(A1, ["ex-comp-X0", "ex-comp-X10", "ex-comp-X010", "ex-comp-Y0", "ex-comp-Y10", "ex-comp-Y010"])],
        ["ex-comp-X010-corrected"]),
    2: ("psi(X_0) = Z_theta, psi(z X_i) = 0, affine A2 psi formulas",
        "exact",
        [(A1, ["twisted-psi-X0", "twisted-psi-kills-Xi"]),
         (A2, ["twisted-psi-X0", "twisted-psi-kills-Xi", "twisted-psi-A2"])],
        []),
    3: ("quadratic relations and the A2 braid relation",
        "exact",
        [(A1, ["twisted-quadratic"]), (A2, ["twisted-quadratic", "twisted-braid"])],
        []),
    4: ("projection formulas, diamond action and associativity, invariant-central equivalence",
        "exact, 20 seeded instances each",
        [(ctx, ["twisted-pr-module", "twisted-pr-sigma", "twisted-psi-module", "twisted-diamond-psi",
                "twisted-diamond-action", "twisted-diamond-X0", "twisted-invariant-central"])
         for ctx in (A1, A2)],
        []),
    5: ("Y absorbs X_{I_v}, sigma Y = |W| Y, Borel unit, psi(sigma z) central, X_0 decomposition",
        "exact",
        [(ctx, ["twisted-Y-absorbs", "twisted-sigma-Y", "twisted-borel-unit", "twisted-psi-sigma-central",
                "twisted-X0-decomposition"]) for ctx in (A1, A2)],
        ["twisted-X0-decomposition-corrected"]),
    6: ("Peterson relations: frak_Y_0 squared, multiplicativity, cyclic action, kernel of X_0, "
        "presentation round trip, localization",
        "exact",
        [(A1, ["peterson-Y0-squared", "peterson-mult", "peterson-cyclic", "peterson-kernel-X0",
               "peterson-presentation-roundtrip", "peterson-localization"])],
        []),
    7: ("coproducts of frak_Y_0 and frak_Y_10, symbolic and at beta = 0 and beta = 1",
        "exact",
        [(A1, ["peterson-coproduct-Y0", "peterson-coproduct-Y10", "peterson-coproduct-cohomology",
               "peterson-coproduct-ktheory-Y0", "peterson-coproduct-ktheory-Y10"])],
        ["peterson-coproduct-ktheory-Y10-corrected"]),
    8: ("ell_alpha closed form on the ball of radius 6, ell_alpha(w_lambda), Bruhat drops, the two chains",
        "exact",
        [(ctx, ["weyl-ell-alpha-oracle", "weyl-lengthalpha", "weyl-tranwlambda", "weyl-chain-pairing-0",
                "weyl-chain-pairing-1"]) for ctx in (A1_BALL6, A2_BALL6)],
        []),
    9: ("dual module on the affine A1 ball of radius 5: actions, HH_0 witnesses, GKM, leading values, "
        "graded ranks",
        "exact",
        [(A1_BALL5, ["dual-action-axioms", "dual-actions-commute", "dual-hh0-witnesses", "dual-gkm",
                     "dual-gkm-negative", "dual-leading-value", "dual-graded-rank-0", "dual-graded-span-0",
                     "dual-graded-rank-1", "dual-graded-span-1", "dual-graded-rank-2",
                     "dual-graded-span-2"])],
        ["dual-leading-value-inversions", "dual-bullet-evaluation"]),
    10: ("table backend (F_beta table, N = 8) agrees with the hyperbolic law on 30 random identities",
         "exact through degree 8",
         [(A1, ["scalars-backend-coherence"])],
         []),
}

_contexts: dict = {}


def context(site):
    if site not in _contexts:
        _contexts[site] = make_context(site[0], ball=site[1])
    return _contexts[site]


def _table_file_coherence():
    """The shipped F_1 table against the hyperbolic law at beta = 1, as an extra check for criterion 10."""
    ctx = context(A1)
    hyper = HyperbolicRing(ctx.datum, Fraction(1))
    table = TableRing(ctx.datum, FormalGroupLaw.from_file(DATA / "beta1.fgl", 8))
    fails = coherence_failures(hyper, table, random.Random(10), 30)
    status = "fail" if fails else "pass"
    return {"id": "table-file-coherence", "status": status, "detail": f"{30 - len(fails)}/30 identities agree"}


def evaluate(n):
    """Run criterion ``n``; return (passed, result lines, informational lines)."""
    _, _, groups, extra = CRITERIA[n]
    results, seen_pass, info = [], set(), []
    for site, ids in groups:
        for cid in ids:
            r = run_check(cid, context(site))
            results.append((site, r))
            if r["status"] == "pass":
                seen_pass.add(cid)
    if n == 10:
        results.append((A1, _table_file_coherence()))
        seen_pass.add("table-file-coherence")
    for cid in extra:
        site = next(s for s, _ in groups)
        info.append((site, run_check(cid, context(site))))
    failed = [(s, r) for s, r in results if r["status"] == "fail"]
    # a check skipped in one type must pass in another
    uncovered = {r["id"] for _, r in results} - seen_pass - {r["id"] for _, r in failed}
    return not failed and not uncovered, results, info, uncovered


def _line(site, r):
    return f"    {r['status'].upper():4} [{site[0]}, ball {site[1]}] {r['id']}: {r['detail']}"


def report(n):
    title, tol, _, _ = CRITERIA[n]
    ok, results, info, uncovered = evaluate(n)
    lines = [f"{'PASS' if ok else 'FAIL'} criterion {n}: {title} (tolerance: {tol})"]
    lines += [_line(s, r) for s, r in results if r["status"] != "pass"]
    lines += [f"    never run to completion: {cid}" for cid in sorted(uncovered)]
    lines += ["    info " + _line(s, r).strip() for s, r in info]
    return ok, "\n".join(lines)


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, text = report(n)
    with capsys.disabled():
        print("\n" + text)
    assert ok, text


if __name__ == "__main__":
    passed = 0
    for n in sorted(CRITERIA):
        ok, text = report(n)
        passed += ok
        print(text, flush=True)
    print(f"{passed}/{len(CRITERIA)} criteria passed")
    sys.exit(0 if passed == len(CRITERIA) else 1)
