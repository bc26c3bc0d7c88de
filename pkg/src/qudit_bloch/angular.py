"""Exact Clebsch-Gordan coefficients.

Angular momenta may be given as ints, half-integer floats, ``Fraction`` or
strings like ``"3/2"``; internally every quantum number is stored as twice
its value so the Racah sum runs on exact integers. Condon-Shortley phases.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, sqrt

MAX_TWICE_J = 31


def twice(x) -> int:
    """Return ``2 * x`` as an int, rejecting anything that is not a half-integer."""
    if isinstance(x, str):
        x = Fraction(x)
    t = 2 * Fraction(x)
    if t.denominator != 1:
        raise ValueError(f"{x!r} is not an integer or half-integer")
    return int(t)


def _check_label(tj1: int, tm1: int, tj2: int, tm2: int, tJ: int, tM: int) -> None:
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tJ, tM)):
        if tj < 0:
            raise ValueError("angular momentum must be non-negative")
        if tj > MAX_TWICE_J:
            raise ValueError(f"angular momentum above {MAX_TWICE_J}/2 is not supported")
        if abs(tm) > tj or (tj - tm) % 2:
            raise ValueError(f"projection {tm}/2 is not valid for j = {tj}/2")


@lru_cache(maxsize=None)
def _cg_squared_signed(tj1: int, tm1: int, tj2: int, tm2: int, tJ: int, tM: int) -> tuple[int, Fraction]:
    """Return ``(sign, C**2)`` exactly; all arguments are doubled quantum numbers."""
    if tm1 + tm2 != tM:
        return 0, Fraction(0)
    if tJ < abs(tj1 - tj2) or tJ > tj1 + tj2 or (tj1 + tj2 + tJ) % 2:
        return 0, Fraction(0)

    # integer combinations entering the factorials
    a = (tj1 + tj2 - tJ) // 2
    b = (tj1 - tm1) // 2
    c = (tj2 + tm2) // 2
    e = (tJ - tj2 + tm1) // 2
    f = (tJ - tj1 - tm2) // 2

    prefactor = Fraction(
        (tJ + 1)
        * factorial((tJ + tj1 - tj2) // 2)
        * factorial((tJ - tj1 + tj2) // 2)
        * factorial(a),
        factorial((tj1 + tj2 + tJ) // 2 + 1),
    )
    prefactor *= (
        factorial((tJ + tM) // 2)
        * factorial((tJ - tM) // 2)
        * factorial(b)
        * factorial((tj1 + tm1) // 2)
        * factorial((tj2 - tm2) // 2)
        * factorial(c)
    )

    total = Fraction(0)
    for k in range(max(0, -e, -f), min(a, b, c) + 1):
        denom = (
            factorial(k)
            * factorial(a - k)
            * factorial(b - k)
            * factorial(c - k)
            * factorial(e + k)
            * factorial(f + k)
        )
        total += Fraction((-1) ** k, denom)

    if total == 0:
        return 0, Fraction(0)
    sign = 1 if total > 0 else -1
    return sign, prefactor * total * total


def clebsch_gordan(j1, m1, j2, m2, J, M) -> float:
    """Clebsch-Gordan coefficient ``<j1 m1; j2 m2 | J M>``.

    Zero when ``m1 + m2 != M`` or ``J`` violates the triangle rule. The Racah
    sum is evaluated in exact rationals; only the final square root is taken
    in floating point.

    >>> round(clebsch_gordan("1/2", "1/2", "1/2", "-1/2", 0, 0), 12)
    0.707106781187
    """
    args = tuple(twice(x) for x in (j1, m1, j2, m2, J, M))
    _check_label(*args)
    sign, squared = _cg_squared_signed(*args)
    if sign == 0:
        return 0.0
    return sign * sqrt(squared)


def clebsch_gordan_exact_squared(j1, m1, j2, m2, J, M) -> Fraction:
    """Signed square ``sign(C) * C**2`` as an exact fraction."""
    args = tuple(twice(x) for x in (j1, m1, j2, m2, J, M))
    _check_label(*args)
    sign, squared = _cg_squared_signed(*args)
    return sign * squared


def projections(j) -> list[Fraction]:
    """``[-j, -j + 1, ..., j]``."""
    tj = twice(j)
    return [Fraction(tm, 2) for tm in range(-tj, tj + 1, 2)]


def _couplings(j1, j2) -> list[Fraction]:
    tj1, tj2 = twice(j1), twice(j2)
    return [Fraction(tj, 2) for tj in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2)]


def cg_sum_rule_check(a, b, beta, beta_prime, alpha, alpha_prime) -> tuple[float, float]:
    """Evaluate the completeness sum rule used for the polarization basis.

    Computes ``sum_{c, gamma} (2c+1)/(2b+1) C^{b beta}_{a alpha, c gamma}
    C^{b beta'}_{a alpha', c gamma}`` and returns it together with the
    expected value ``delta(alpha, alpha') * delta(beta, beta')``.
    """
    a, b = Fraction(twice(a), 2), Fraction(twice(b), 2)
    beta, beta_prime = Fraction(twice(beta), 2), Fraction(twice(beta_prime), 2)
    alpha, alpha_prime = Fraction(twice(alpha), 2), Fraction(twice(alpha_prime), 2)
    total = 0.0
    for c in _couplings(a, b):
        for gamma in projections(c):
            total += (
                float((2 * c + 1) / (2 * b + 1))
                * clebsch_gordan(a, alpha, c, gamma, b, beta)
                * clebsch_gordan(a, alpha_prime, c, gamma, b, beta_prime)
            )
    expected = 1.0 if (alpha == alpha_prime and beta == beta_prime) else 0.0
    return total, expected


def cg_coupled_sum_rule_check(a, b, b_prime, beta, beta_prime, c) -> tuple[float, float]:
    """Evaluate the companion rule ``sum_{alpha, gamma} C^{c gamma}_{a alpha, b beta}
    C^{c gamma}_{a alpha, b' beta'} = (2c+1)/(2b+1) delta(b, b') delta(beta, beta')``.
    """
    a, b, b_prime, c = (Fraction(twice(x), 2) for x in (a, b, b_prime, c))
    beta, beta_prime = Fraction(twice(beta), 2), Fraction(twice(beta_prime), 2)
    total = 0.0
    for alpha in projections(a):
        for gamma in projections(c):
            total += clebsch_gordan(a, alpha, b, beta, c, gamma) * clebsch_gordan(
                a, alpha, b_prime, beta_prime, c, gamma
            )
    if b == b_prime and beta == beta_prime and abs(a - b) <= c <= a + b:
        expected = float((2 * c + 1) / (2 * b + 1))
    else:
        expected = 0.0
    return total, expected
