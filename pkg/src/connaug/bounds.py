"""Exact rational evaluation of the approximation budgets.

All quantities are :class:`fractions.Fraction` so comparisons against integer
costs and counts never go through floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction


def harmonic(x) -> Fraction:
    """H(x) = sum of 1/i for i = 1..floor(x); H(x) = 0 for x < 1."""
    m = math.floor(Fraction(x))
    return sum((Fraction(1, i) for i in range(1, m + 1)), Fraction(0))


def ratio(t: int, k: int) -> Fraction:
    """|T| / (|T| - k)."""
    if t <= k:
        raise ValueError("need |T| > k")
    return Fraction(t, t - k)


def phase1_exit_bound(t: int, k: int) -> Fraction:
    return ratio(t, k)


def phase2_bound(t: int, k: int) -> Fraction:
    """(3r)^2 * H(3r) with r = |T|/(|T|-k)."""
    r3 = 3 * ratio(t, k)
    return r3 * r3 * harmonic(r3)


def transversal_bound(nu_small: int, t: int, k: int, delta: int) -> Fraction:
    """Greedy transversal size budget (nu + 2r) * H(delta)."""
    return (nu_small + 2 * ratio(t, k)) * harmonic(delta)


def variant_i_ratio(t: int, k: int, b: int, rho) -> Fraction:
    """b(rho + k) + (3r)^2 H(3r)."""
    return b * (Fraction(rho) + k) + phase2_bound(t, k)


def recurrence_holds(t: int, k: int, nu: int, nu_next: int) -> bool:
    """nu_next <= alpha*nu + beta, in the integer form 2t*nu_next <= (t+k)*nu + t."""
    return 2 * t * nu_next <= (t + k) * nu + t


def alpha(t: int, k: int) -> Fraction:
    return Fraction(t + k, 2 * t)


BETA = Fraction(1, 2)


def gamma(t: int, k: int) -> Fraction:
    return Fraction(t - k, t)


def fixed_point(t: int, k: int) -> Fraction:
    """beta / (1 - alpha), which equals |T|/(|T|-k)."""
    return BETA / (1 - alpha(t, k))


def recurrence_steps(nu: int, t: int, k: int) -> int:
    """Least j >= 0 with alpha^j (nu - beta/(1-alpha)) <= 2/(1-alpha)."""
    a = alpha(t, k)
    lhs = nu - fixed_point(t, k)
    rhs = 2 / (1 - a)
    j = 0
    while lhs > rhs:
        lhs *= a
        j += 1
    return j


def closed_form_steps(nu: int, t: int, k: int, approx: bool = True) -> int:
    """Closed-form floor estimate of the step count.

    ``approx=True`` uses the simplified argument nu(1-alpha)/2; otherwise
    (nu(1-alpha) - beta)/2. Clamped at 0 when the argument is below 1. This is
    the printed closed form; :func:`recurrence_steps` is the least j that
    actually satisfies the defining inequality and can be larger by one.
    """
    a = alpha(t, k)
    arg = nu * (1 - a) if approx else nu * (1 - a) - BETA
    arg = arg / 2
    if arg <= 1:
        return 0
    return math.floor(math.log(arg) / math.log(1 / a))


def nu_j_bound(t: int, k: int) -> Fraction:
    """(2 + beta)/(1 - alpha) = 5|T|/(|T|-k)."""
    return (2 + BETA) / (1 - alpha(t, k))


def star_leaf_budget(nu: int, t: int, k: int) -> Fraction:
    """2(nu - |T|/(|T|-k))."""
    return 2 * (nu - ratio(t, k))


def outcover_min(nu: int, t: int, k: int) -> int:
    """ceil(nu(1 - k/|T|)) - 1, the guaranteed out-covered core count (integer form)."""
    return math.ceil(Fraction(nu * (t - k), t)) - 1
