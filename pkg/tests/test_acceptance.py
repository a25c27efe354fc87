"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; every tolerance is pinned here, nothing is deferred to calibration.
"""

import json
import random
import subprocess
import sys
import time
from decimal import Decimal
from fractions import Fraction as F

from qpiseries.bisection import (
    check_bisection_pair,
    check_bracket_identity_c2,
    rearrangement_exact,
)
from qpiseries.carlitz import (
    forward_matrix,
    forward_minus,
    forward_plus,
    inverse_matrix,
    inverse_minus,
    inverse_plus,
    random_phi,
)
from qpiseries.identities import (
    catalog,
    check_terminating,
    check_theorem,
    find,
    verify_example,
)
from qpiseries.limits import eval_classical, q_limit
from qpiseries.numerics import abs_diff_upper

LETTERED = (
    [f"A{i}" for i in range(1, 11)]
    + [f"B{i}" for i in range(1, 6)]
    + [f"C{i}" for i in range(1, 6)]
    + [f"D{i}" for i in range(1, 6)]
)


def _report(name: str, ok: bool, extra: str = ""):
    print(f"criterion {name}: {'PASS' if ok else 'FAIL'}{'  ' + extra if extra else ''}")
    assert ok, name


def test_criterion_1_carlitz_roundtrip_and_matrices():
    t0 = time.perf_counter()
    rng = random.Random(101)
    ok = True
    for variant, fwd, inv in (("minus", forward_minus, inverse_minus),
                              ("plus", forward_plus, inverse_plus)):
        for _ in range(20):
            q = F(rng.randint(1, 9), rng.randint(10, 23))
            N = rng.randint(3, 12)
            phi = random_phi(rng, q, N, variant, max_int=9)
            g = [F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(N + 1)]
            f = [fwd(g, phi, q, n) for n in range(N + 1)]
            ok = ok and [inv(f, phi, q, n) for n in range(N + 1)] == g
            ok = ok and [fwd(g, phi, q, n) for n in range(N + 1)] == f
    N = 10
    for variant in ("minus", "plus"):
        phi = random_phi(rng, F(2, 3), N, variant, max_int=7)
        M = forward_matrix(phi, F(2, 3), N, variant)
        W = inverse_matrix(phi, F(2, 3), N, variant)
        prod = [[sum(W[i][k] * M[k][j] for k in range(N + 1)) for j in range(N + 1)]
                for i in range(N + 1)]
        ok = ok and all(prod[i][j] == (1 if i == j else 0)
                        for i in range(N + 1) for j in range(N + 1))
    elapsed = time.perf_counter() - t0
    _report("1 (Carlitz roundtrips + matrix inverses)", ok and elapsed < 5.0,
            f"{elapsed:.2f}s")


def test_criterion_2_balanced_and_wellpoised_sums():
    t0 = time.perf_counter()
    rng = random.Random(102)
    ok = True
    for rec_id in ("PS", "QD"):
        rec = find(rec_id)
        for _ in range(5):
            ps = rec.sample_t(rng, 16)
            from qpiseries.qkernel import LatticeCtx
            E = LatticeCtx(ps["q"], 1)
            lhs, rhs = rec.sides(E, ps, 16)
            ok = ok and lhs == rhs
            n_small = rng.randint(0, 15)
            ps2 = rec.sample_t(rng, n_small)
            E2 = LatticeCtx(ps2["q"], 1)
            lhs, rhs = rec.sides(E2, ps2, n_small)
            ok = ok and lhs == rhs
    elapsed = time.perf_counter() - t0
    _report("2 (balanced + very-well-poised sums, n<=16)", ok and elapsed < 5.0,
            f"{elapsed:.2f}s")


def test_criterion_3_reciprocal_relations():
    rng = random.Random(103)
    ok = True
    details = []
    for rec_id in ("PP-A", "PP-B", "PP-C"):
        rep = check_terminating(rec_id, p=F(3, 5), rng=rng, trials=5, n_max=16)
        ok = ok and rep.result == "exact-equal"
        if rep.detail:
            details.append(f"{rec_id}: {rep.detail}")
    _report("3 (terminating reciprocal relations, 5 points, n<=16)", ok,
            "; ".join(details))


def test_criterion_4_nonterminating_theorems():
    t0 = time.perf_counter()
    rng = random.Random(104)
    ok = True
    worst = Decimal(0)
    for rec_id in ("THM-A", "THM-B", "THM-C"):
        rec = find(rec_id)
        for p in (F(1, 2), F(4, 5)):
            for _ in range(3):
                ps = rec.sample(rng)
                rep = check_theorem(rec_id, ps["xa"], ps["xc"], ps["xe"], p, digits=40)
                ok = ok and rep.result == "pass" and rep.residual <= Decimal("1e-30")
                worst = max(worst, rep.residual or Decimal(0))
    elapsed = time.perf_counter() - t0
    _report("4 (series theorems vs product sides, <=1e-30)",
            ok and elapsed < 30.0, f"worst residual {worst}, {elapsed:.1f}s")


def test_criterion_5_all_lettered_identities():
    t0 = time.perf_counter()
    ok = True
    worst = Decimal(0)
    for rec_id in LETTERED + ["W1", "A1-ALT", "B1-ALT"]:
        rep = verify_example(rec_id, p=F(9, 10), digits=40)
        ok = ok and rep.result == "pass" and rep.residual <= Decimal("1e-25")
        worst = max(worst, rep.residual or Decimal(0))
    elapsed = time.perf_counter() - t0
    _report("5 (25 lettered + W1 + alternates at p=9/10, <=1e-25)",
            ok and elapsed < 120.0, f"worst residual {worst}, {elapsed:.1f}s")


def test_criterion_6_bisection():
    ok = True
    for root in (F(1, 2), F(3, 5)):
        for k in range(9):
            ok = ok and check_bracket_identity_c2(k, root).result == "exact-equal"
    for s, b in (("C2-SIMPLE", "C2"), ("D5-SIMPLE", "D5")):
        rep = check_bisection_pair(s, b, F(4, 5), 40)
        ok = ok and rep.result == "pass" and rep.residual <= Decimal("1e-25")
    for rec_id in ("C2-SIMPLE", "D5-SIMPLE", "QUAD"):
        ok = ok and rearrangement_exact(rec_id, F(1, 2), 12)
    _report("6 (bisection: bracket, pairs, rearrangement)", ok)


def test_criterion_7_classical_oracles():
    ok = True
    worst = Decimal(0)
    for rec_id in LETTERED + ["W1", "QUAD"]:
        rec = find(rec_id)
        v = eval_classical(rec.classical, 400, 25)
        t = rec.classical_target.eval(25)
        rel = abs_diff_upper(v.value, t.value) / abs(t.value)
        ok = ok and rel <= Decimal("1e-15")
        worst = max(worst, rel)
    _report("7 (classical companions vs pi/Gamma oracles, >=15 digits)",
            ok, f"worst relative gap {worst}")


def test_criterion_8_q_limits():
    t0 = time.perf_counter()
    ok = True
    lines = []
    for rec_id in ("A1", "A5", "C1", "C2-SIMPLE", "QUAD"):
        rep = q_limit(find(rec_id), j0=3, j1=10, order=6, digits=26)
        ok = ok and rep.agreement_digits >= 5
        lines.append(f"{rec_id}={rep.agreement_digits}d")
    elapsed = time.perf_counter() - t0
    _report("8 (q->1 extrapolation, >=5 digits)",
            ok and elapsed < 120.0, f"{' '.join(lines)}, {elapsed:.1f}s")


def test_criterion_9_cli_determinism_and_exit_codes():
    args = [sys.executable, "-m", "qpiseries.cli", "verify", "all", "--json",
            "--seed", "1"]
    first = subprocess.run(args, capture_output=True, timeout=600)
    second = subprocess.run(args, capture_output=True, timeout=600)
    ok = first.returncode == 0 and second.returncode == 0
    ok = ok and first.stdout == second.stdout
    rows = [json.loads(line) for line in first.stdout.splitlines()]
    ok = ok and len(rows) == len(catalog()) and all(r["schema"] == 1 for r in rows)
    usage = subprocess.run(
        [sys.executable, "-m", "qpiseries.cli", "verify", "NO-SUCH-ID"],
        capture_output=True, timeout=120,
    )
    ok = ok and usage.returncode == 2
    _report("9 (CLI byte-identical JSON + exit codes)", ok)
