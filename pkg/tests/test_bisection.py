from decimal import Decimal
from fractions import Fraction as F

import pytest

from qpiseries.bisection import (
    PAIRS,
    TermSeries,
    bisect_combine,
    c2_bisected_display_term,
    certify_bracket_identity_c2,
    check_bisection_pair,
    check_bracket_identity_c2,
    rearrangement_exact,
)
from qpiseries.errors import DomainError
from qpiseries.identities import find, partial_sum
from qpiseries.qkernel import LatticeCtx


def test_zero_series_combines_to_zero():
    zero = TermSeries(term=lambda k: F(0))
    comb = zero.combined()
    assert all(comb.term(k) == 0 for k in range(10))


def test_partial_sum_rearrangement_generic():
    # sum_{k<2N} t(k) == sum_{k<N} (t(2k)+t(2k+1)) for any terms at all
    term = lambda k: F((-3) ** k, 2 ** (k * k + 1))  # noqa: E731
    for N in (1, 4, 12):
        assert partial_sum(term, 2 * N) == partial_sum(bisect_combine(term), N)


def test_bracket_identity_exact_k_to_8():
    for root in (F(1, 2), F(3, 5)):
        for k in range(9):
            rep = check_bracket_identity_c2(k, root)
            assert rep.result == "exact-equal", (root, k)


def test_bracket_identity_degree_certified():
    for k in (0, 1, 3):
        rep = certify_bracket_identity_c2(k)
        assert rep.result == "exact-equal"
        assert "degree bound" in rep.detail


def test_combined_matches_displayed_bisected_form():
    # Lambda(2k) + Lambda(2k+1) equals the displayed bisected sum term by
    # term, and the bracket identity carries it to the corollary form
    rec_s, rec_c2 = find("C2-SIMPLE"), find("C2")
    for root in (F(2, 3), F(1, 5), F(9, 10)):
        E = LatticeCtx(root, 4)
        comb = bisect_combine(lambda k: rec_s.term(k, E))
        for k in range(10):
            disp = c2_bisected_display_term(k, E)
            assert comb(k) == disp
            assert disp == rec_c2.term(k, E)


def test_d5_combined_matches_partner_with_shift_factor():
    # the half-lattice pair sums to G_q(1/2)^2 and G_q(3/2)^2, so the
    # term-by-term correspondence carries the exact factor (1+sqrt(q))^2
    rec_s, rec_d5 = find("D5-SIMPLE"), find("D5")
    root = F(2, 3)
    E4 = LatticeCtx(root, 4)
    E2 = LatticeCtx(root**2, 2)
    comb = bisect_combine(lambda k: rec_s.term(k, E4))
    shift = (1 + E4.qp(1, 2)) ** 2
    for k in range(8):
        assert comb(k) == shift * rec_d5.term(k, E2)


def test_rearrangement_exact_on_catalog_series():
    for rec_id in ("C2-SIMPLE", "D5-SIMPLE", "QUAD"):
        assert rearrangement_exact(rec_id, F(1, 2), 12)


def test_bisection_pairs_certified():
    for (s, b) in PAIRS:
        rep = check_bisection_pair(s, b, F(4, 5), 40)
        assert rep.result == "pass", (s, b, rep.detail)
        assert rep.residual <= Decimal("1e-25")


def test_unknown_pair_rejected():
    with pytest.raises(DomainError):
        check_bisection_pair("A1", "A2")
