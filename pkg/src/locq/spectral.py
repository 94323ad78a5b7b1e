"""Numerical evaluation of the spectral-function infinite products.

A product prod_{n>=ell} (1 -/+ q^(a n + epsilon)) with q = e^(2 pi i tau)
is represented by its parameter tuple; the spectral argument s is derived
from the parameters via the affine map s_of_params and stored alongside.
Complex powers use q^x := e^(2 pi i tau x) exactly, never a principal
branch recomputed from the value of q, so q^x is an entire function of x.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from typing import Literal

from .errors import NonConvergentError, ToleranceUnreachableError

TWO_PI = 2.0 * math.pi

Branch = Literal["minus", "plus"]


def _factor_cap() -> int:
    return int(os.environ.get("LOCQ_MAX_FACTORS", 10**6))


@dataclass(frozen=True, slots=True)
class Tau:
    """Modular parameter in the upper half-plane."""

    value: complex

    def __post_init__(self):
        if not self.value.imag > 0:
            raise ValueError(f"tau must have positive imaginary part, got {self.value}")


def rho(tau: Tau) -> float:
    """Re(tau) / Im(tau)."""
    return tau.value.real / tau.value.imag


def sigma(tau: Tau) -> float:
    """1 / (2 Im(tau))."""
    return 1.0 / (2.0 * tau.value.imag)


def q_power(tau: Tau, exponent: complex) -> complex:
    """q**exponent with q = e^(2 pi i tau), computed as e^(2 pi i tau exponent)."""
    return cmath.exp(2j * math.pi * tau.value * exponent)


def nome(tau: Tau) -> complex:
    return q_power(tau, 1)


@dataclass(frozen=True, slots=True)
class SpectralParams:
    """Parameter tuple (a, epsilon, ell, sign, tau) of one infinite product."""

    a: float
    epsilon: complex
    ell: int
    sign: Branch
    tau: Tau

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("a must be a positive real number")
        if self.ell < 0:
            raise ValueError("ell must be a nonnegative integer")
        if self.sign not in ("minus", "plus"):
            raise ValueError("sign must be 'minus' or 'plus'")
        if abs(q_power(self.tau, self.a)) >= 1:
            raise NonConvergentError("|q|^a must be < 1 for the product to converge")

    def with_sign(self, sign: Branch) -> "SpectralParams":
        return SpectralParams(self.a, self.epsilon, self.ell, sign, self.tau)

    def with_ell(self, ell: int) -> "SpectralParams":
        return SpectralParams(self.a, self.epsilon, ell, self.sign, self.tau)


@dataclass(frozen=True, slots=True)
class SValue:
    """Spectral argument with the branch that produced it."""

    s: complex
    branch: Branch


def s_of_params(p: SpectralParams) -> SValue:
    """Affine parameter map s = (a*ell + eps)(1 - i rho(tau)) + 1 - a [+ i sigma(tau)].

    The plus branch adds i*sigma(tau) on top of the minus-branch value.
    """
    base = (p.a * p.ell + p.epsilon) * (1 - 1j * rho(p.tau)) + 1 - p.a
    if p.sign == "plus":
        return SValue(base + 1j * sigma(p.tau), "plus")
    return SValue(base, "minus")


@dataclass(frozen=True, slots=True)
class ProductValue:
    value: complex
    factors_used: int
    s: SValue


def evaluate_product(p: SpectralParams, rel_tol: float = 1e-12) -> ProductValue:
    """Evaluate prod_{n>=ell} (1 -/+ q^(a n + epsilon)) to relative tolerance.

    The truncation index M is the smallest integer with
        sum_{n>M} |q^(a n + epsilon)| < rel_tol / 2,
    a valid bound for the dropped log-factors since |log(1 -/+ w)| <= 2|w|
    for |w| <= 1/2 and the tail factors are eventually that small.  Raises
    ToleranceUnreachable when M would exceed LOCQ_MAX_FACTORS.
    """
    tau = p.tau
    # |q^x| for complex x under the q^x = e^(2 pi i tau x) convention
    ratio = abs(q_power(tau, p.a))
    if ratio >= 1:
        raise NonConvergentError("|q|^a >= 1")
    abs_eps_part = abs(q_power(tau, p.epsilon))
    cap = _factor_cap()
    sign = -1.0 if p.sign == "minus" else 1.0

    value = 1 + 0j
    n = p.ell
    used = 0
    while True:
        w = q_power(tau, p.a * n + p.epsilon)
        # tail after including factor n: sum_{m>n} |q^(a m + eps)| (geometric,
        # ratio = |q|^a per unit step in m)
        tail = abs_eps_part * ratio ** (n + 1) / (1.0 - ratio)
        value *= 1.0 + sign * w
        used += 1
        n += 1
        if tail < rel_tol / 2:
            break
        if used >= cap:
            raise ToleranceUnreachableError(
                f"needed more than {cap} factors for rel_tol={rel_tol}"
            )
    return ProductValue(value=value, factors_used=used, s=s_of_params(p))


@dataclass(frozen=True, slots=True)
class ShiftCheck:
    difference: complex
    expected: complex
    passed: bool


def branch_shift_check(p: SpectralParams) -> ShiftCheck:
    """Verify s(plus) - s(minus) == i*sigma(tau) exactly."""
    s_minus = s_of_params(p.with_sign("minus")).s
    s_plus = s_of_params(p.with_sign("plus")).s
    expected = 1j * sigma(p.tau)
    diff = s_plus - s_minus
    return ShiftCheck(difference=diff, expected=expected, passed=diff == expected)
