import random
from decimal import Decimal
from fractions import Fraction as F

import pytest

from qpiseries.errors import DomainError
from qpiseries.identities import (
    catalog,
    catalog_text,
    certify_terminating,
    check_pfaff_saalschutz,
    check_terminating,
    check_theorem,
    eval_theorem_lhs,
    eval_theorem_rhs,
    find,
    sum_series,
    verify_all,
    verify_example,
)
from qpiseries.numerics import abs_diff_upper, approx_from_exact, consistent_within
from qpiseries.qkernel import INF, LatticeCtx, QPoint, qgamma, qpoch_multi


def test_catalog_contents():
    recs = catalog()
    assert len(recs) >= 38
    ids = {r.id for r in recs}
    for required in ("PS", "QD", "W1", "PP-A", "THM-A", "CC-A-", "CC-A+",
                     "A1", "A1-ALT", "B1-ALT", "C2-SIMPLE", "D5-SIMPLE", "QUAD"):
        assert required in ids
    assert find("A1").classical_target.label == "4/pi"
    assert find("C2-SIMPLE").classical_target.label == "2*sqrt2/pi"
    assert find("QUAD").classical_target.label == "32*sqrt2/pi"
    # lettered block is complete
    for letter, count in (("A", 10), ("B", 5), ("C", 5), ("D", 5)):
        for i in range(1, count + 1):
            assert f"{letter}{i}" in ids
    text = catalog_text()
    assert len(text.splitlines()) == len(recs)
    with pytest.raises(KeyError):
        find("NOPE")


def test_pfaff_saalschutz_examples():
    # n = 0: both sides are empty products
    r = check_pfaff_saalschutz(0, F(1, 5), F(2, 7), F(3, 11), F(1, 2))
    assert r.result == "exact-equal"
    r = check_pfaff_saalschutz(1, F(1, 2), F(1, 3), F(1, 5), F(1, 2))
    assert r.result == "exact-equal"
    rng = random.Random(12)
    rec = find("PS")
    for _ in range(5):
        ps = rec.sample_t(rng, 8)
        E = LatticeCtx(ps["q"], 1)
        lhs, rhs = rec.sides(E, ps, 8)
        assert lhs == rhs


def test_pp_a_spec_point():
    # n = 7 at (a,c,e) = (q^{1/3}, q^{2/3}, q^{5/12}) with root 3/5
    rec = find("PP-A")
    E = LatticeCtx(F(3, 5), 12)
    lhs, rhs = rec.sides(E, {"xa": F(1, 3), "xc": F(2, 3), "xe": F(5, 12)}, 7)
    assert lhs == rhs


def test_pp_a_trivial_depth():
    rec = find("PP-A")
    E = LatticeCtx(F(3, 5), 12)
    lhs, rhs = rec.sides(E, {"xa": F(1, 3), "xc": F(2, 3), "xe": F(5, 12)}, 0)
    assert lhs == rhs == 1


def test_pp_c_spec_point():
    # n = 9 at a = c = q, e = q^{1/2} on the half lattice with root 2/3
    rec = find("PP-C")
    E = LatticeCtx(F(2, 3), 2)
    lhs, rhs = rec.sides(E, {"xa": F(1), "xc": F(1), "xe": F(1, 2)}, 9)
    assert lhs == rhs


def test_terminating_records_random_points():
    for rec_id in ("PP-A", "PP-B", "PP-C"):
        rep = check_terminating(rec_id, p=F(3, 5), rng=random.Random(5),
                                trials=3, n_max=9)
        assert rep.result == "exact-equal", rep.detail


def test_degree_certified_small_depth():
    # equality at (degree bound + 1) distinct roots proves the rational
    # identity in the lattice root at this depth
    for rec_id, n in (("PS", 2), ("QD", 2), ("PP-A", 1), ("PP-B", 1), ("PP-C", 1)):
        rep = certify_terminating(rec_id, n)
        assert rep.result == "exact-equal", (rec_id, rep.detail)
        assert "degree bound" in rep.detail


def test_precision_scaling():
    # raising the requested digits tightens the certified budget in step
    b40 = verify_example("C1", p=F(9, 10), digits=40).budget
    b60 = verify_example("C1", p=F(9, 10), digits=60).budget
    assert b60 < b40 * Decimal("1e-15")


def test_theorem_cross_checks_spec_points():
    # regular specialization a = c = q, e = q^{1/2} at p = 4/5 on the
    # half lattice; series against infinite products to 1e-30
    ps = {"xa": F(1), "xc": F(1), "xe": F(1, 2)}
    for rec_id in ("THM-A", "THM-B", "THM-C"):
        rec = find(rec_id)
        E = LatticeCtx.numeric(QPoint(F(4, 5), 2), 50)
        lhs, term = rec.make(E, ps)
        rhs, _ = sum_series(term, Decimal("1e-42"))
        gap = abs_diff_upper(lhs.value, rhs.value)
        assert gap <= lhs.err + rhs.err
        assert gap <= Decimal("1e-30"), rec_id


def test_theorem_lhs_matches_qgamma_bookkeeping():
    # at a = c = q, e = q^{1/2} the product side collapses to
    # G_q(1/2)^2 (1-q^{1/2})/(1-q)
    p = F(4, 5)
    lhs = eval_theorem_lhs("THM-A", F(1), F(1), F(1, 2), p, digits=40)
    pt = QPoint(p, 12)
    E = LatticeCtx.numeric(pt, 50)
    g = qgamma(F(1, 2), pt, 40)
    expected = g * g * (1 - E.qp(1, 2)) / (1 - E.q)
    assert consistent_within(lhs, expected)


def test_theorem_rhs_independent_longer_truncation():
    # random point, against a plain partial sum three times longer
    rec = find("THM-B")
    ps = {"xa": F(5, 12), "xc": F(7, 12), "xe": F(1, 4)}
    E = LatticeCtx.numeric(QPoint(F(1, 2), 12), 45)
    _, term = rec.make(E, ps)
    total, used = sum_series(term, Decimal("1e-36"))
    longer = term(0)
    for k in range(1, 3 * used):
        longer = longer + term(k)
    assert abs_diff_upper(total.value, longer.value) <= total.err + longer.err
    v = eval_theorem_rhs("THM-B", ps["xa"], ps["xc"], ps["xe"], F(1, 2), digits=35)
    assert consistent_within(v, total)


def test_nonterminating_margin_at_three_points():
    # |LHS - RHS| <= err budget, with the budget at least ten orders below
    # the requested precision, at each stress point
    digits = 40
    for p in (F(1, 2), F(7, 10), F(9, 10)):
        for rep in verify_all(p=p, digits=digits, seed=2, n_max=6, trials=1):
            assert rep.passed, (p, rep.id, rep.detail)
            if rep.budget is not None:
                assert rep.budget <= Decimal(1).scaleb(-(digits - 10))


def test_term_decay_eventually_quadratic():
    # |t_k| <= C q^(k^2/2) with C frozen from the early terms
    for rec_id in ("A1", "B1", "C1", "D5", "QUAD", "W1"):
        rec = find(rec_id)
        E = LatticeCtx.numeric(QPoint(F(9, 10), rec.lattice), 45)
        q = float(E.q.value)
        mags = [float(abs(rec.term(k, E).value)) for k in range(16)]
        C = max(mags[k] / q ** (k * k / 2) for k in range(7)) * 1.0001
        for k in range(7, 16):
            assert mags[k] <= C * q ** (k * k / 2), (rec_id, k)


def test_pp_value_approaches_infinite_product():
    # deep terminating value vs the nonterminating product quotient
    rng = random.Random(31)
    for rec_id in ("PP-A", "PP-B", "PP-C"):
        rec = find(rec_id)
        ps = rec.sample_t(rng)
        E = LatticeCtx(F(1, 2), 12)
        lhs40, rhs40 = rec.sides(E, ps, 40)
        assert lhs40 == rhs40
        En = LatticeCtx.numeric(QPoint(F(1, 2), 12), 40)
        a, c, e = (En.qpf(ps["xa"]), En.qpf(ps["xc"]), En.qpf(ps["xe"]))
        prod = qpoch_multi([a, c], [a * e, En.q * c / e], En.q, INF)
        gap = abs_diff_upper(approx_from_exact(rhs40, 45).value, prod.value)
        assert gap <= Decimal("1e-6"), (rec_id, gap)


def test_verify_example_rejects_terminating():
    with pytest.raises(DomainError):
        verify_example("PP-A")


def test_pole_errors_name_factor_and_index():
    from qpiseries.errors import PoleError
    with pytest.raises(PoleError, match=r"\(qc/e;q\)_n vanishes at k=0"):
        check_terminating("PP-A", p=F(3, 5), n=2,
                          params={"xa": F(1, 12), "xc": F(5, 12), "xe": F(17, 12)})


def test_fast_point_needs_fewer_terms():
    # the fast sanity point converges in fewer terms than the stress point
    fast = verify_example("A1", p=F(1, 2), digits=40)
    slow = verify_example("A1", p=F(9, 10), digits=40)
    assert fast.passed and slow.passed
    assert fast.terms < slow.terms


def test_checks_are_seed_deterministic():
    a = check_theorem("THM-A", F(13, 12), F(7, 12), F(5, 12), F(1, 2), 30)
    b = check_theorem("THM-A", F(13, 12), F(7, 12), F(5, 12), F(1, 2), 30)
    assert a.residual == b.residual and a.budget == b.budget


def test_corollary_families_full_lambda_sweep():
    # all six corollary families, every lattice value of lam in (0,1)
    for cc in ("CC-A-", "CC-A+", "CC-B-", "CC-B+", "CC-C-", "CC-C+"):
        rec = find(cc)
        for m in range(1, 12):
            E = LatticeCtx.numeric(QPoint(F(1, 2), 12), 45)
            lhs, term = rec.make(E, {"lam": F(m, 12)})
            rhs, _ = sum_series(term, Decimal("1e-36"))
            gap = abs_diff_upper(lhs.value, rhs.value)
            assert gap <= lhs.err + rhs.err, (cc, m)
            assert gap <= Decimal("1e-30"), (cc, m)


def test_theorem_pole_draw_reports_error_not_raise():
    # c/e = q^{-1} sits on the pole set; the batch path must degrade to an
    # "error" report rather than aborting
    rep = check_theorem("THM-A", F(1, 2), F(1, 12), F(13, 12), F(1, 2), 30)
    assert rep.result == "error"
    assert "factor" in rep.detail or "pole" in rep.detail.lower()
