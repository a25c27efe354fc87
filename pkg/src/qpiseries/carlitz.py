"""Carlitz inverse series relations (both sign variants), exactly.

Given weight sequences {a_k, b_k}, the phi-polynomials are

    phi(x;0) = 1,   phi(x;n) = prod_{k=0}^{n-1} (a_k + x b_k),

and the two lower-triangular transform pairs are

  minus variant (phi nonzero at x = q^-m):
      f(n) = sum_k (-1)^k [n,k]_q phi(q^-k; n) g(k)
      g(n) = sum_k (-1)^k [n,k]_q q^C(n-k,2) (a_k + q^-k b_k)/phi(q^-n; k+1) f(k)

  plus variant (phi nonzero at x = q^m; the same pair under q -> 1/q):
      f(n) = sum_k (-1)^k [n,k]_q q^C(n-k,2) phi(q^k; n) g(k)
      g(n) = sum_k (-1)^k [n,k]_q (a_k + q^k b_k)/phi(q^n; k+1) f(k)

Everything here is exact rational arithmetic; the transforms invert each
other on sequences, which is what the roundtrip checks certify.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import PoleError
from .qkernel import qbinomial
from . import sampling


def _binom2(n: int) -> int:
    return n * (n - 1) // 2


def _at(seq, k: int):
    return seq(k) if callable(seq) else seq[k]


@dataclass(frozen=True)
class PhiPolynomial:
    """Weight family phi(x;n) = prod_{k<n} (a_k + x b_k)."""

    a: Callable[[int], Fraction]
    b: Callable[[int], Fraction]

    @classmethod
    def from_sequences(cls, a_seq: Sequence[Fraction], b_seq: Sequence[Fraction]) -> "PhiPolynomial":
        a = tuple(Fraction(v) for v in a_seq)
        b = tuple(Fraction(v) for v in b_seq)
        return cls(a=lambda k: a[k], b=lambda k: b[k])

    def eval(self, x, n: int):
        out = x * 0 + 1
        for k in range(n):
            out = out * (self.a(k) + x * self.b(k))
        return out


def phi_eval(phi: PhiPolynomial, x, n: int):
    """phi(x;n); phi(x;0) == 1."""
    return phi.eval(x, n)


def _phi_dual_den(phi: PhiPolynomial, point, k: int, variant: str):
    """phi evaluated at the variant's dual point, with pole detection."""
    val = phi.eval(point, k + 1)
    if val == 0:
        raise PoleError(f"phi({point};{k + 1}) vanishes in {variant} inverse transform")
    return val


def forward_minus(g, phi: PhiPolynomial, q: Fraction, n: int) -> Fraction:
    qinv = 1 / Fraction(q)
    total = Fraction(0)
    for k in range(n + 1):
        term = qbinomial(n, k, q) * phi.eval(qinv**k, n) * _at(g, k)
        total += -term if k % 2 else term
    return total


def inverse_minus(f, phi: PhiPolynomial, q: Fraction, n: int) -> Fraction:
    qinv = 1 / Fraction(q)
    total = Fraction(0)
    for k in range(n + 1):
        den = _phi_dual_den(phi, qinv**n, k, "minus")
        term = (
            qbinomial(n, k, q)
            * q ** _binom2(n - k)
            * (phi.a(k) + qinv**k * phi.b(k))
            / den
            * _at(f, k)
        )
        total += -term if k % 2 else term
    return total


def forward_plus(g, phi: PhiPolynomial, q: Fraction, n: int) -> Fraction:
    q = Fraction(q)
    total = Fraction(0)
    for k in range(n + 1):
        term = qbinomial(n, k, q) * q ** _binom2(n - k) * phi.eval(q**k, n) * _at(g, k)
        total += -term if k % 2 else term
    return total


def inverse_plus(f, phi: PhiPolynomial, q: Fraction, n: int) -> Fraction:
    q = Fraction(q)
    total = Fraction(0)
    for k in range(n + 1):
        den = _phi_dual_den(phi, q**n, k, "plus")
        term = qbinomial(n, k, q) * (phi.a(k) + q**k * phi.b(k)) / den * _at(f, k)
        total += -term if k % 2 else term
    return total


def forward_matrix(phi: PhiPolynomial, q: Fraction, N: int, variant: str) -> list[list[Fraction]]:
    """Lower-triangular matrix M with f = M g for the given variant."""
    q = Fraction(q)
    qinv = 1 / q
    rows = []
    for n in range(N + 1):
        row = []
        for k in range(N + 1):
            if k > n:
                row.append(Fraction(0))
                continue
            sign = -1 if k % 2 else 1
            if variant == "minus":
                v = qbinomial(n, k, q) * phi.eval(qinv**k, n)
            elif variant == "plus":
                v = qbinomial(n, k, q) * q ** _binom2(n - k) * phi.eval(q**k, n)
            else:
                raise ValueError(f"unknown variant {variant!r}")
            row.append(sign * v)
        rows.append(row)
    return rows


def inverse_matrix(phi: PhiPolynomial, q: Fraction, N: int, variant: str) -> list[list[Fraction]]:
    """Lower-triangular matrix W with g = W f for the given variant."""
    q = Fraction(q)
    qinv = 1 / q
    rows = []
    for n in range(N + 1):
        row = []
        for k in range(N + 1):
            if k > n:
                row.append(Fraction(0))
                continue
            sign = -1 if k % 2 else 1
            if variant == "minus":
                den = _phi_dual_den(phi, qinv**n, k, "minus")
                v = (
                    qbinomial(n, k, q)
                    * q ** _binom2(n - k)
                    * (phi.a(k) + qinv**k * phi.b(k))
                    / den
                )
            elif variant == "plus":
                den = _phi_dual_den(phi, q**n, k, "plus")
                v = qbinomial(n, k, q) * (phi.a(k) + q**k * phi.b(k)) / den
            else:
                raise ValueError(f"unknown variant {variant!r}")
            row.append(sign * v)
        rows.append(row)
    return rows


def random_phi(rng: random.Random, q: Fraction, N: int, variant: str,
               max_int: int = 40) -> PhiPolynomial:
    """Rejection-sample a phi family whose dual denominators stay nonzero.

    The minus variant needs phi(q^-m;n) != 0 and the plus variant
    phi(q^m;n) != 0, for all 0 <= m,n <= N.
    """
    q = Fraction(q)
    points = [(1 / q) ** m if variant == "minus" else q**m for m in range(N + 1)]
    while True:
        a_seq = [sampling.rational(rng, max_int, max_int) for _ in range(N + 1)]
        b_seq = [sampling.rational(rng, max_int, max_int, nonzero=False) for _ in range(N + 1)]
        if all(a_seq[k] + x * b_seq[k] != 0 for k in range(N + 1) for x in points):
            return PhiPolynomial.from_sequences(a_seq, b_seq)
