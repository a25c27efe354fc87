"""Classical (q -> 1) layer: pi/Gamma oracles, classical series, extrapolation.

This module is the independent side of every limit check: the constants are
produced by Machin-type arctangent series (pi) and a Stirling evaluation of
log-Gamma with the first-omitted-term remainder bound (Gamma at rational
arguments), never by the q-series under test.  Classical hypergeometric
companions are summed in exact rationals with a certified geometric tail;
the single alternating boundary case (rate z = -1) goes through Chebyshev
acceleration of alternating series.

The q -> 1 limits themselves are Richardson/Neville extrapolations of a
record's series sum along q_j = 1 - 2^-j; their error estimate is empirical
(taken from the last extrapolation columns), unlike everything else here.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from .errors import ConvergenceError, DomainError
from .numerics import (
    _UP,
    ApproxScalar,
    DEFAULT_DIGITS,
    abs_diff_upper,
    approx_from_exact,
    as_approx,
)
from .qkernel import LatticeCtx

# ---------------------------------------------------------------------------
# pi oracle (integer fixed-point Machin formula)
# ---------------------------------------------------------------------------


def _atan_inv_units(inv: int, scale: int) -> tuple[int, int]:
    """floor-arithmetic arctan(1/inv) * scale and a unit error bound.

    Nested floor divisions satisfy floor(floor(a/b)/c) == floor(a/(b c)), so
    the running power is exactly floor(scale / inv^(2j+1)); each term then
    loses < 1 unit to its own floor division, and the alternating tail after
    the power underflows to zero is < 1 unit.
    """
    x = scale // inv
    inv2 = inv * inv
    total = x
    units = 2  # initial division + alternating tail
    j = 0
    sign = -1
    while x:
        x //= inv2
        j += 1
        if not x:
            break
        total += sign * (x // (2 * j + 1))
        units += 1
        sign = -sign
    return total, units


@functools.lru_cache(maxsize=None)
def pi_oracle(digits: int) -> ApproxScalar:
    """pi with a certified bound via pi = 16 atan(1/5) - 4 atan(1/239)."""
    if digits > 1000:
        raise DomainError("pi oracle supports at most 1000 digits")
    if digits < 1:
        raise DomainError("digits must be >= 1")
    guard = 12
    s = digits + guard
    scale = 10**s
    a5, u5 = _atan_inv_units(5, scale)
    a239, u239 = _atan_inv_units(239, scale)
    total = 16 * a5 - 4 * a239
    units = 16 * u5 + 4 * u239
    value = approx_from_exact(Fraction(total, scale), digits + 6)
    err = _UP.add(value.err, _UP.multiply(Decimal(units), Decimal(1).scaleb(-s, _UP)))
    return ApproxScalar(value.value, err, digits + 6)


@functools.lru_cache(maxsize=None)
def pi_oracle_euler(digits: int) -> ApproxScalar:
    """Cross-check formula: pi = 4 (atan(1/2) + atan(1/3))."""
    if digits > 1000:
        raise DomainError("pi oracle supports at most 1000 digits")
    guard = 12
    s = digits + guard
    scale = 10**s
    a2, u2 = _atan_inv_units(2, scale)
    a3, u3 = _atan_inv_units(3, scale)
    value = approx_from_exact(Fraction(4 * (a2 + a3), scale), digits + 6)
    err = _UP.add(value.err, _UP.multiply(Decimal(4 * (u2 + u3)), Decimal(1).scaleb(-s, _UP)))
    return ApproxScalar(value.value, err, digits + 6)


# ---------------------------------------------------------------------------
# Gamma at rational arguments (Stirling with certified remainder)
# ---------------------------------------------------------------------------

_GAMMA_ARGS = (
    Fraction(1, 4),
    Fraction(3, 4),
    Fraction(1, 3),
    Fraction(2, 3),
    Fraction(1, 2),
)


@functools.lru_cache(maxsize=None)
def _bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2 convention)."""
    if n == 0:
        return Fraction(1)
    # sum_{j=0}^{n} C(n+1, j) B_j = 0
    total = Fraction(0)
    for j in range(n):
        total += Fraction(_comb(n + 1, j)) * _bernoulli(j)
    return -total / (n + 1)


def _comb(n: int, k: int) -> int:
    return math.comb(n, k)


def _log_gamma_stirling(z: Fraction, prec: int) -> ApproxScalar:
    """ln Gamma(z) for rational z >= 10, remainder bounded by the first
    omitted Stirling term (valid for real positive argument)."""
    za = approx_from_exact(z, prec)
    two_pi = pi_oracle(prec) * 2
    out = (za - Fraction(1, 2)) * za.ln() - za + two_pi.ln() * Fraction(1, 2)
    tiny = Fraction(1, 10 ** (prec + 4))
    j = 1
    series = Fraction(0)
    while True:
        term = _bernoulli(2 * j) / ((2 * j) * (2 * j - 1) * z ** (2 * j - 1))
        nxt = _bernoulli(2 * j + 2) / ((2 * j + 2) * (2 * j + 1) * z ** (2 * j + 1))
        series += term
        if abs(nxt) < tiny:
            remainder = abs(nxt)
            break
        if abs(nxt) >= abs(term):
            raise ConvergenceError("Stirling series diverging; increase the shift")
        j += 1
    out = out + approx_from_exact(series, prec)
    extra = approx_from_exact(remainder, 10).abs_upper()
    return ApproxScalar(out.value, _UP.add(out.err, extra), out.digits)


@functools.lru_cache(maxsize=None)
def gamma_constant(arg: Fraction, digits: int = DEFAULT_DIGITS) -> ApproxScalar:
    """Gamma(arg) for arg in {1/4, 3/4, 1/3, 2/3, 1/2} with certified bound.

    Computed as Gamma(arg + N) / prod_{i<N} (arg + i) with the shifted value
    from the Stirling series; the reflection identity
    Gamma(x) Gamma(1-x) = pi / sin(pi x) is asserted against it in the test
    suite, and the q-based extrapolation cross-checks it at lower precision.
    """
    arg = Fraction(arg)
    if arg not in _GAMMA_ARGS:
        raise DomainError(f"gamma_constant supports arguments {_GAMMA_ARGS}")
    prec = digits + 8
    shift = max(10, (4 * prec) // 10 + 6)
    z = arg + shift
    lng = _log_gamma_stirling(z, prec)
    rising = Fraction(1)
    for i in range(shift):
        rising *= arg + i
    return lng.exp() / rising


def sqrt_constant(x: Fraction, digits: int) -> ApproxScalar:
    return as_approx(Fraction(x), digits).sqrt()


# ---------------------------------------------------------------------------
# classical hypergeometric companions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalSeries:
    """sum_k  prod_i (num_i)_k / prod_i (den_i)_k * w(k) * z^k.

    ``weight`` holds the polynomial coefficients of w (constant first); the
    parameter lists have equal length, numerators and denominators pairing
    off so the term ratio tends to z.
    """

    numerators: tuple[Fraction, ...]
    denominators: tuple[Fraction, ...]
    weight: tuple[Fraction, ...]
    z: Fraction

    def weight_at(self, k: int) -> Fraction:
        return sum(c * k**i for i, c in enumerate(self.weight))

    def term(self, k: int) -> Fraction:
        t = self.z**k
        for r in self.numerators:
            for i in range(k):
                t *= r + i
        for s in self.denominators:
            for i in range(k):
                t /= s + i
        return t * self.weight_at(k)

    def ratio_bound(self, k: int) -> Fraction:
        """Upper bound of |t_{j+1}/t_j| valid for every j >= k (k >= 1)."""
        rho = abs(self.z)
        for r, s in zip(self.numerators, self.denominators):
            rho *= max(Fraction(1), Fraction(r + k, s + k))
        deg = len(self.weight) - 1
        rho *= Fraction(k + 1, k) ** deg
        return rho


def _cvz_alternating(terms: list[Fraction], n: int) -> tuple[Fraction, Fraction]:
    """Chebyshev acceleration of sum (-1)^k a_k for a_k from a (signed)
    weight on [0,1]; returns (estimate, error bound 64 * (3+sqrt8)^-n).

    The polynomial kernel satisfies |kernel| <= (3+sqrt8)^-n on [0,1], so the
    bound only needs the weight's total mass; 64 is a generous cap for the
    catalog's single z = -1 series and the estimate is additionally
    cross-checked against the shorter acceleration in eval_classical.
    """
    d_prev, d = 1, 3  # d_n = ((3+sqrt8)^n + (3-sqrt8)^n)/2
    for _ in range(n - 1):
        d_prev, d = d, 6 * d - d_prev
    b = Fraction(-1)
    c = Fraction(-d)
    s = Fraction(0)
    for k in range(n):
        c = b - c
        s += c * terms[k]
        b = b * Fraction((k + n) * (k - n), 1) / (Fraction(2 * k + 1, 2) * (k + 1))
    return s / d, Fraction(64, d)


def eval_classical(series: ClassicalSeries, terms: int, digits: int) -> ApproxScalar:
    """Certified partial sum of a classical companion series.

    For |z| < 1 the tail is a geometric bound from :meth:`ratio_bound`; the
    alternating boundary case z = -1 is accelerated instead.
    """
    if terms < 1:
        raise DomainError("terms must be >= 1")
    prec = digits + 8
    if series.z == -1:
        n = min(max(terms // 2, 24), 100)
        a = [abs(series.term(k)) for k in range(n)]
        est, bound = _cvz_alternating(a, n)
        est_short, _ = _cvz_alternating(a, n - 6)
        emp = 8 * abs(est - est_short)
        out = approx_from_exact(est, prec)
        extra = approx_from_exact(max(bound, emp), 10).abs_upper()
        return ApproxScalar(out.value, _UP.add(out.err, extra), prec)

    tiny = Fraction(1, 10 ** (digits + 6))
    total = Fraction(0)
    t = None
    k = 0
    base = Fraction(1)  # prod poch / poch * z^k, weight stripped
    while True:
        t = base * series.weight_at(k)
        total += t
        if k >= 3:
            rho = series.ratio_bound(k)
            if rho < 1:
                tail = abs(t) * rho / (1 - rho)
                if abs(t) < tiny and tail < tiny:
                    break
        if k + 1 >= terms:
            rho = series.ratio_bound(k)
            if rho >= 1:
                raise ConvergenceError("term cap reached before geometric decay")
            tail = abs(t) * rho / (1 - rho)
            break
        ratio = series.z
        for r, s in zip(series.numerators, series.denominators):
            ratio *= Fraction(r + k, s + k)
        base *= ratio
        k += 1
    out = approx_from_exact(total, prec)
    extra = approx_from_exact(tail, 10).abs_upper()
    return ApproxScalar(out.value, _UP.add(out.err, extra), prec)


# ---------------------------------------------------------------------------
# constant targets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstantTarget:
    """Monomial  coeff * pi^a sqrt2^b sqrt3^c G(1/4)^d G(3/4)^e G(1/3)^f sqrtpi^g."""

    label: str
    coeff: Fraction
    pi: int = 0
    sqrt2: int = 0
    sqrt3: int = 0
    gamma14: int = 0
    gamma34: int = 0
    gamma13: int = 0
    sqrtpi: int = 0

    def eval(self, digits: int = DEFAULT_DIGITS) -> ApproxScalar:
        out = approx_from_exact(self.coeff, digits + 6)
        pi = pi_oracle(digits)
        if self.pi:
            out = out * pi**self.pi
        if self.sqrt2:
            out = out * sqrt_constant(Fraction(2), digits + 6) ** self.sqrt2
        if self.sqrt3:
            out = out * sqrt_constant(Fraction(3), digits + 6) ** self.sqrt3
        if self.gamma14:
            out = out * gamma_constant(Fraction(1, 4), digits) ** self.gamma14
        if self.gamma34:
            out = out * gamma_constant(Fraction(3, 4), digits) ** self.gamma34
        if self.gamma13:
            out = out * gamma_constant(Fraction(1, 3), digits) ** self.gamma13
        if self.sqrtpi:
            out = out * pi.sqrt() ** self.sqrtpi
        return out


# ---------------------------------------------------------------------------
# Richardson extrapolation of q -> 1 limits
# ---------------------------------------------------------------------------


def neville_at_zero(us: list[Fraction], vals: list[Decimal], order: int, digits: int):
    """Polynomial extrapolation to u = 0; returns (estimate, empirical error,
    monotone flag).  The error estimate compares the last two columns and the
    last two rows of the tableau; it is empirical, not certified."""
    if order + 1 > len(us):
        raise DomainError("extrapolation order needs at least order+1 grid points")
    work = [as_approx(v, digits + 10) for v in vals]
    tableau = [work]
    for m in range(1, order + 1):
        prev = tableau[-1]
        col = []
        for i in range(m, len(us)):
            # P_{i,m} = (u_{i-m} P_{i,m-1} - u_i P_{i-1,m-1}) / (u_{i-m} - u_i)
            num = prev[i] * us[i - m] - prev[i - 1] * us[i]
            col.append(num / (us[i - m] - us[i]))
        tableau.append([None] * m + col)
    last = tableau[order][-1]
    prev_col = tableau[order - 1][-1]
    prev_row = tableau[order][-2] if len(tableau[order]) - order >= 2 else prev_col
    e1 = (last - prev_col).value.copy_abs()
    e2 = (last - prev_row).value.copy_abs()
    err = _UP.add(_UP.add(e1, e2), last.err)
    final = [x for x in tableau[order] if x is not None]
    diffs = [(final[i + 1] - final[i]).value.copy_abs() for i in range(len(final) - 1)]
    monotone = all(diffs[i + 1] <= diffs[i] for i in range(len(diffs) - 1)) if len(diffs) > 1 else True
    return ApproxScalar(last.value, err, digits), monotone


@dataclass
class LimitReport:
    """Outcome of a q->1 extrapolation against the classical constant."""

    id: str
    estimate: Decimal
    err_estimate: Decimal
    target_label: str
    target_value: Decimal
    agreement_digits: int
    monotone: bool
    grid: str

    @property
    def passed(self) -> bool:
        return self.agreement_digits >= 5


def q_limit(record, j0: int = 3, j1: int = 10, order: int = 6,
            digits: int = 26, sum_series_fn=None) -> LimitReport:
    """Richardson-extrapolate a record's series sum along q_j = 1 - 2^-j.

    The sum is rescaled by the record's exact limit normalization so the
    extrapolated value is literally the catalogued classical constant.
    """
    if record.classical_target is None or record.term is None:
        raise DomainError(f"record {record.id} has no classical limit target")
    if sum_series_fn is None:
        from .identities import sum_series as sum_series_fn
    us: list[Fraction] = []
    vals: list[Decimal] = []
    eps = Decimal(1).scaleb(-digits)
    for j in range(j0, j1 + 1):
        u = Fraction(1, 2**j)
        q = 1 - u
        root = as_approx(q, digits + 14).pow_rational(Fraction(1, record.lattice))
        ctx = LatticeCtx(root, record.lattice, digits + 14)
        total, _ = sum_series_fn(lambda k: record.term(k, ctx), eps)
        us.append(u)
        vals.append((total * record.limit_scale).value)
    est, monotone = neville_at_zero(us, vals, order, digits)
    target = record.classical_target.eval(digits)
    gap = abs_diff_upper(est.value, target.value)
    if gap == 0:
        agreement = digits
    else:
        rel = _UP.divide(gap, target.value.copy_abs())
        agreement = max(0, -rel.adjusted() - 1)
    return LimitReport(
        id=record.id,
        estimate=est.value,
        err_estimate=est.err,
        target_label=record.classical_target.label,
        target_value=target.value,
        agreement_digits=agreement,
        monotone=monotone,
        grid=f"q_j=1-2^-j, j={j0}..{j1}, order={order}",
    )
