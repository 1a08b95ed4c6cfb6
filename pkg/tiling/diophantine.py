"""Continued fractions and the Diophantine bound behind the irrational-slope case."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath

from models import BoundReport
from tiling.errors import NotExpanded
from tiling.exactnum import QuadScalar, as_scalar

logger = logging.getLogger(__name__)


@dataclass
class ContinuedFraction:
    """Partial quotients ``a_0; a_1, ...`` with convergents ``p_k/q_k``.

    ``M[k] = q_k - 1`` is the search bound used by :func:`approx_bound_check`.
    """

    beta: QuadScalar
    partial_quotients: list[int] = field(default_factory=list)
    numerators: list[int] = field(default_factory=list)
    denominators: list[int] = field(default_factory=list)
    terminated: bool = False
    period: Optional[tuple[int, int]] = None

    @property
    def convergents(self) -> list[Fraction]:
        return [Fraction(p, q) for p, q in zip(self.numerators, self.denominators)]

    @property
    def M(self) -> list[int]:
        return [q - 1 for q in self.denominators]

    def convergent_strings(self) -> list[str]:
        return [f"{p}/{q}" for p, q in zip(self.numerators, self.denominators)]


def cf_expand(beta, count: int, period_search: int = 0) -> ContinuedFraction:
    """Expand ``beta`` into at most ``count`` partial quotients.

    Rationals terminate after the Euclidean algorithm finishes. For
    quadratic irrationals the complete quotients eventually repeat; the
    first repeat found within ``max(count, period_search)`` steps is
    reported as ``(start, length)``.
    """
    beta = as_scalar(beta)
    if count < 1:
        raise ValueError("count must be at least 1")
    cf = ContinuedFraction(beta=beta)
    seen: dict[QuadScalar, int] = {}
    p_prev, p = 1, 0
    q_prev, q = 0, 1
    x = beta
    horizon = max(count, period_search)
    for k in range(horizon):
        a = x.floor()
        if k < count:
            p_prev, p = p, a * p + p_prev
            q_prev, q = q, a * q + q_prev
            cf.partial_quotients.append(a)
            cf.numerators.append(p)
            cf.denominators.append(q)
        if not x.is_rational and cf.period is None:
            if x in seen:
                cf.period = (seen[x], k - seen[x])
            else:
                seen[x] = k
        rest = x - a
        if not rest:
            cf.terminated = True
            break
        if k >= count - 1 and (cf.period is not None or beta.is_rational):
            break
        x = rest.inverse()
    logger.debug(f"expanded {beta}: {cf.partial_quotients}")
    return cf


def _closest_gap(beta: QuadScalar, q: int) -> tuple[QuadScalar, int]:
    """Smallest ``|q*beta - p|`` over ``p`` coprime to ``q``."""
    qb = beta * q
    base = qb.floor()
    best: tuple[QuadScalar, int] | None = None
    # the two nearest integers normally suffice; widen until a coprime one appears
    offsets = [0, 1]
    reach = 1
    while True:
        for off in offsets:
            p = base + off
            if math.gcd(p, q) != 1:
                continue
            gap = abs(qb - p)
            if best is None or gap < best[0]:
                best = (gap, p)
        if best is not None:
            return best
        reach += 1
        offsets = [1 - reach, reach]


def _bound_ok(gap: QuadScalar, bound: int, c: Fraction, eps: Fraction) -> tuple[bool, QuadScalar]:
    """Decide ``gap * M**(1+eps) >= c`` exactly for a scaled gap ``|q*beta - p|``; ``eps = r/s``.

    Equivalent to ``(gap*M)**s * M**r >= c**s``; the difference is returned
    as the exact margin.
    """
    r, s = eps.numerator, eps.denominator
    margin = (gap * bound) ** s * bound ** r - QuadScalar.rational(c) ** s
    return margin.sign() >= 0, margin


def approx_bound_check(
    beta,
    n: int,
    c,
    eps,
    expansion: Optional[ContinuedFraction] = None,
) -> BoundReport:
    """Check ``|beta - p/q| >= c / (q * M_n**(1+eps))`` for coprime ``p/q``, ``1 <= q <= M_n``.

    Only the best numerator per denominator matters, so the check walks
    ``q = 1..M_n`` and decides ``|q*beta - p| * M_n**(1+eps) >= c`` exactly for it.
    The bound tightens with ``n`` faster than the gaps shrink, so a fixed
    ``c`` fails for small ``n`` and passes from some ``n`` on.
    """
    beta = as_scalar(beta)
    c = Fraction(as_scalar(c).as_fraction())
    eps = Fraction(as_scalar(eps).as_fraction())
    if c <= 0 or eps <= 0:
        raise ValueError("c and eps must be positive")
    if eps.denominator > 64:
        raise ValueError(f"eps={eps} needs a denominator of at most 64 for the exact power test")
    cf = expansion or cf_expand(beta, n + 1)
    if n < 0 or n >= len(cf.denominators):
        raise NotExpanded(f"convergent {n} was not expanded (have {len(cf.denominators)})")
    bound = cf.M[n]
    report = BoundReport(n=n, M=bound, c=str(c), eps=str(eps), passed=True)
    if bound < 1:
        return report

    exponent = 1 + mpmath.mpf(eps.numerator) / eps.denominator
    scale = mpmath.power(bound, exponent)
    worst_value = None
    for q in range(1, bound + 1):
        gap, p = _closest_gap(beta, q)
        ok, margin = _bound_ok(gap, bound, c, eps)
        value = gap.to_mpf() * scale
        if worst_value is None or value < worst_value:
            worst_value = value
            report.min_gap = str(gap)
            report.min_scaled_gap = mpmath.nstr(value, 15)
            if report.passed:
                report.witness = f"{p}/{q}"
                report.power_margin = str(margin)
        if not ok and report.passed:
            report.passed = False
            report.witness = f"{p}/{q}"
            report.power_margin = str(margin)
    report.margin_estimate = float(worst_value) - float(c)
    logger.info(f"bound check beta={beta} n={n} M={bound}: passed={report.passed} witness={report.witness}")
    return report


def exhaustive_bound_check(beta, n: int, c, eps) -> bool:
    """Reference check over every coprime ``p`` with ``|p| <= q*(|beta| + 1)``."""
    beta = as_scalar(beta)
    c = Fraction(as_scalar(c).as_fraction())
    eps = Fraction(as_scalar(eps).as_fraction())
    bound = cf_expand(beta, n + 1).M[n]
    reach = abs(beta).floor() + 1
    for q in range(1, bound + 1):
        for p in range(-q * reach - 1, q * reach + 2):
            if math.gcd(p, q) != 1:
                continue
            gap = abs(beta * q - p)
            if not gap or not _bound_ok(gap, bound, c, eps)[0]:
                return False
    return True
