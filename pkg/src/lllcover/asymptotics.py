"""Stirling-rate exponents, their maximizers, and the resulting bound coefficients.

Every exponent is kept in natural-log domain as a signed sum of ``x ln x``
terms; the per-m bases (about 40 for q=3, about 3000 for binary t=4) overflow
doubles long before the multiplicities of interest.

For t=3 the dominant summand is parametrized by ``j = a*m``. For binary t=4
the double sum uses ``j = b*m`` and ``i = a*b*m`` with ``b`` in (0, 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Optional

__all__ = [
    "CriticalPoint",
    "GrowthRate",
    "BoundCoefficient",
    "T4Solution",
    "RootBracketError",
    "ROUX_COEFFICIENT",
    "xlogx",
    "critical_a_t3",
    "summand_base_t3",
    "growth_rate_t3",
    "coefficient_t3",
    "general_coefficient",
    "inner_critical_a_t4",
    "inner_objective_t4",
    "outer_objective_t4",
    "outer_derivative_t4",
    "solve_outer_t4",
    "first_order_a",
    "bisect_root",
]

Method = Literal["general-eq2", "lll-t3", "lll-t4-binary", "roux-reference"]

LN2 = math.log(2.0)


class RootBracketError(RuntimeError):
    """No sign change of the target function was found."""


@dataclass(frozen=True)
class CriticalPoint:
    a: float
    log_objective: float
    b: Optional[float] = None

    def __post_init__(self):
        if not 0.0 < self.a < 1.0:
            raise ValueError(f"a={self.a} outside (0, 1)")
        if self.b is not None and not 0.0 < self.b < 2.0:
            raise ValueError(f"b={self.b} outside (0, 2)")
        if not math.isfinite(self.log_objective):
            raise ValueError("log_objective must be finite")


@dataclass(frozen=True)
class GrowthRate:
    """Base D of the geometric decay ``p ~ D**m``."""

    d_rate: float
    log2_inverse: float

    def __post_init__(self):
        if not 0.0 < self.d_rate < 1.0:
            raise ValueError(f"growth rate {self.d_rate} outside (0, 1)")

    @classmethod
    def from_log(cls, log_d: float) -> "GrowthRate":
        return cls(d_rate=math.exp(log_d), log2_inverse=-log_d / LN2)

    @property
    def log_d(self) -> float:
        return -self.log2_inverse * LN2


@dataclass(frozen=True)
class BoundCoefficient:
    """Coefficient c in ``k0 <= c * lg n``."""

    value: float
    method: Method

    def __post_init__(self):
        if not self.value > 0:
            raise ValueError("coefficient must be positive")


# Roux's binary strength-3 constant; reference only.
ROUX_COEFFICIENT = BoundCoefficient(7.65, "roux-reference")


def xlogx(x: float) -> float:
    """``x ln x`` with ``0 ln 0 = 0``."""
    if x < 0:
        raise ValueError(f"xlogx undefined for x={x}")
    if x == 0:
        return 0.0
    return x * math.log(x)


def _check_q(q: int) -> None:
    if q < 2:
        raise ValueError(f"alphabet size must be >= 2, got {q}")


def critical_a_t3(q: int) -> float:
    """Root in (0, 1) of ``a**2 - (q+1)*a + 1 = 0``."""
    _check_q(q)
    s = q + 1
    disc = math.sqrt(s * s - 4)
    # 1/larger root; algebraically equal to (s - disc)/2 without the cancellation
    return 2.0 / (s + disc)


def summand_base_t3(q: int, a: float) -> float:
    """ln of the per-m base of the t=3 numerator summand at ``j = a*m``."""
    if not 0.0 < a < 1.0:
        raise ValueError(f"a={a} outside (0, 1)")
    return (
        xlogx(q - 1)
        + xlogx(q - a)
        - xlogx(a)
        - 2.0 * xlogx(1.0 - a)
        - xlogx(q - 2 + a)
        - xlogx(q - 1 - a)
    )


def _log_denominator_rate_t3(q: int) -> float:
    # C(qm, m) ~ (q**q / (q-1)**(q-1))**m
    return xlogx(q) - xlogx(q - 1)


def growth_rate_t3(q: int, a: Optional[float] = None) -> GrowthRate:
    """Decay base D for t=3, at the optimal ``a`` unless one is given."""
    _check_q(q)
    if a is None:
        a = critical_a_t3(q)
    log_d = summand_base_t3(q, a) - 2.0 * _log_denominator_rate_t3(q)
    return GrowthRate.from_log(log_d)


def coefficient_t3(q: int, a: Optional[float] = None) -> BoundCoefficient:
    """``2q / lg(1/D)``; with d ~ n**2 the local lemma needs ``m > 2 lg n / lg(1/D)``."""
    rate = growth_rate_t3(q, a)
    return BoundCoefficient(2.0 * q / rate.log2_inverse, "lll-t3")


def general_coefficient(q: int, t: int) -> BoundCoefficient:
    """``(t-1) / lg(q**t / (q**t - 1))``, valid for every q and t."""
    _check_q(q)
    if t < 2:
        raise ValueError(f"strength must be >= 2, got {t}")
    words = q**t
    # lg(W/(W-1)) = -log1p(-1/W)/ln 2, stable for large W
    return BoundCoefficient((t - 1) * LN2 / -math.log1p(-1.0 / words), "general-eq2")


def first_order_a(q: int) -> float:
    return 1.0 / (q + 1)


# --- binary strength 4 ---------------------------------------------------


def _check_b(b: float) -> None:
    if not 0.0 < b < 2.0:
        raise ValueError(f"b={b} outside (0, 2)")


def inner_critical_a_t4(b: float) -> float:
    """Maximizer in a of the inner exponent, ``(3 - sqrt(9 - 2b)) / b``."""
    _check_b(b)
    # rationalized form avoids cancellation as b -> 0
    return 2.0 / (3.0 + math.sqrt(9.0 - 2.0 * b))


def inner_objective_t4(a: float, b: float) -> float:
    """ln of the per-m base of the full t=4 summand at ``j = b*m``, ``i = a*b*m``."""
    _check_b(b)
    if not 0.0 < a < 1.0:
        raise ValueError(f"a={a} outside (0, 1)")
    ab = a * b
    return (
        2.0 * LN2
        + xlogx(4.0 - b)
        + xlogx(4.0 - ab)
        - xlogx(b)
        - xlogx(ab)
        - xlogx(b - ab)
        - 2.0 * xlogx(2.0 - ab)
        - 2.0 * xlogx(2.0 - b)
        - xlogx(2.0 + ab - b)
    )


def _outer_terms(b: float):
    """(coefficient, argument, d argument / db) for each x ln x term of r(b)."""
    s = math.sqrt(9.0 - 2.0 * b)
    ds = -1.0 / s
    return (
        (1.0, 4.0 - b, -1.0),
        (1.0, 1.0 + s, ds),
        (-1.0, b, 1.0),
        (-1.0, 3.0 - s, -ds),
        (-1.0, b - 3.0 + s, 1.0 + ds),
        (-2.0, s - 1.0, ds),
        (-2.0, 2.0 - b, -1.0),
        (-1.0, 5.0 - b - s, -1.0 - ds),
    )


def outer_objective_t4(b: float) -> float:
    """r(b): the t=4 exponent after substituting the inner maximizer."""
    _check_b(b)
    total = 2.0 * LN2
    for coef, arg, _ in _outer_terms(b):
        total += coef * xlogx(arg)
    return total


def outer_derivative_t4(b: float) -> float:
    """Closed-form r'(b)."""
    _check_b(b)
    total = 0.0
    for coef, arg, darg in _outer_terms(b):
        if arg <= 0.0:
            raise ValueError(f"r'(b) undefined at b={b}")
        total += coef * darg * (math.log(arg) + 1.0)
    return total


def bisect_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    grid: int = 100,
    width: float = 1e-12,
    ftol: float = 1e-12,
    max_iter: int = 400,
) -> float:
    """Bracket a sign change of f on a uniform grid, then bisect.

    Stops when the bracket is narrower than ``width`` and ``|f| < ftol`` at the
    midpoint, or when the bracket can no longer be split in floating point.
    """
    xs = [lo + (hi - lo) * i / grid for i in range(grid + 1)]
    bracket = None
    f_prev = f(xs[0])
    for x0, x1 in zip(xs, xs[1:]):
        f_next = f(x1)
        if f_prev == 0.0:
            return x0
        if f_next == 0.0:
            return x1
        if (f_prev < 0.0) != (f_next < 0.0):
            bracket = (x0, x1, f_prev)
            break
        f_prev = f_next
    if bracket is None:
        raise RootBracketError(f"no sign change on [{lo}, {hi}]")
    a, b, fa = bracket
    for _ in range(max_iter):
        mid = 0.5 * (a + b)
        fm = f(mid)
        if (b - a) < width and abs(fm) < ftol:
            return mid
        if mid <= a or mid >= b:
            return mid
        if (fm < 0.0) == (fa < 0.0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


@dataclass(frozen=True)
class T4Solution:
    """Optimum of the binary t=4 exponent and the derived bounds."""

    point: CriticalPoint
    coefficient: BoundCoefficient
    m_coefficient: float
    ratio: float  # 16**3 / e**r(b*), the per-m decay of 1/pi


def solve_outer_t4() -> T4Solution:
    b = bisect_root(outer_derivative_t4, 0.01, 1.99)
    log_obj = outer_objective_t4(b)
    # denominator C(4m, 2m)**3 ~ 16**(3m)
    log_ratio = 3.0 * math.log(16.0) - log_obj
    # d ~ n**3 so the local lemma needs m > 3 lg n / lg(ratio)
    m_coef = 3.0 * LN2 / log_ratio
    point = CriticalPoint(a=inner_critical_a_t4(b), b=b, log_objective=log_obj)
    return T4Solution(
        point=point,
        coefficient=BoundCoefficient(4.0 * m_coef, "lll-t4-binary"),
        m_coefficient=m_coef,
        ratio=math.exp(log_ratio),
    )
