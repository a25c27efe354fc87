"""Seeded random rational draws used by roundtrip and identity tests.

A rational-function identity checked exactly at more points than its degree
is an identity, so "random" here means reproducible rejection sampling with
small numerators/denominators (<= 40 by default).
"""

from __future__ import annotations

import random
from fractions import Fraction


def rational(rng: random.Random, max_num: int = 40, max_den: int = 40,
             nonzero: bool = True, positive: bool = False) -> Fraction:
    while True:
        num = rng.randint(-max_num, max_num)
        if positive:
            num = rng.randint(1, max_num)
        f = Fraction(num, rng.randint(1, max_den))
        if nonzero and f == 0:
            continue
        return f


def rational_in_unit(rng: random.Random, max_den: int = 40) -> Fraction:
    """A rational strictly between 0 and 1."""
    den = rng.randint(2, max_den)
    return Fraction(rng.randint(1, den - 1), den)


def lattice_exponent(rng: random.Random, L: int, max_units: int | None = None) -> Fraction:
    """A positive exponent m/L with 1 <= m <= max_units (default 2L)."""
    hi = max_units if max_units is not None else 2 * L
    return Fraction(rng.randint(1, hi), L)
