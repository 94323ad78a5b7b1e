"""Exact truncated power series over the rationals.

FormalSeries is a univariate series in q known modulo q**(order+1) with
exact rational coefficients; BivariateSeries has Laurent-polynomial
coefficients in a second variable y with integer entries.  All values are
immutable and all operations are pure, so instances can be shared freely
between threads.

Internally a FormalSeries stores integer numerators over a single common
denominator, which keeps the hot convolution loops in pure integer
arithmetic (see locq.kernel).  Floating-point coefficients are rejected:
every identity this package checks is exact, and coefficient-wise equality
is the test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

from . import kernel
from .errors import DegenerateFactorError, ZeroConstantTermError

Sign = Literal["minus", "plus"]


def _gcd_list(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
        if g == 1:
            return 1
    return g


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(
        f"exact rational coefficient required, got {type(value).__name__}"
    )


@dataclass(frozen=True, slots=True)
class FormalSeries:
    """Truncated power series in q with exact rational coefficients."""

    order: int
    nums: tuple[int, ...]
    den: int

    @staticmethod
    def _make(order: int, nums: list[int], den: int) -> "FormalSeries":
        if den < 0:
            nums = [-v for v in nums]
            den = -den
        g = math.gcd(_gcd_list(nums), den)
        if g > 1:
            nums = [v // g for v in nums]
            den //= g
        return FormalSeries(order, tuple(nums), den)

    @classmethod
    def from_coefficients(cls, coefficients, order: int | None = None) -> "FormalSeries":
        """Build from rationals (Fraction | int | 'p/q' strings).

        With `order` given, the coefficient list is padded with zeros or
        truncated to length order+1.
        """
        coeffs = [_as_fraction(c) for c in coefficients]
        if order is None:
            if not coeffs:
                raise ValueError("empty coefficient list needs an explicit order")
            order = len(coeffs) - 1
        coeffs = coeffs[: order + 1] + [Fraction(0)] * (order + 1 - len(coeffs))
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        nums = [c.numerator * (den // c.denominator) for c in coeffs]
        return cls._make(order, nums, den)

    @classmethod
    def one(cls, order: int) -> "FormalSeries":
        return cls._make(order, [1] + [0] * order, 1)

    @classmethod
    def zero(cls, order: int) -> "FormalSeries":
        return cls._make(order, [0] * (order + 1), 1)

    @classmethod
    def monomial(cls, coefficient, exponent: int, order: int) -> "FormalSeries":
        """coefficient * q**exponent, truncated at `order`."""
        c = _as_fraction(coefficient)
        nums = [0] * (order + 1)
        if 0 <= exponent <= order:
            nums[exponent] = c.numerator
        return cls._make(order, nums, c.denominator)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.den) for n in self.nums)

    def coefficient(self, k: int) -> Fraction:
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return Fraction(self.nums[k], self.den)

    def truncate(self, order: int) -> "FormalSeries":
        if order >= self.order:
            return self
        return FormalSeries._make(order, list(self.nums[: order + 1]), self.den)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.nums)

    # -- ring operations ----------------------------------------------------

    def _common(self, other: "FormalSeries") -> tuple["FormalSeries", "FormalSeries"]:
        order = min(self.order, other.order)
        return self.truncate(order), other.truncate(order)

    def __add__(self, other) -> "FormalSeries":
        if isinstance(other, (int, Fraction)):
            other = FormalSeries.monomial(other, 0, self.order)
        if not isinstance(other, FormalSeries):
            return NotImplemented
        a, b = self._common(other)
        den = math.lcm(a.den, b.den)
        ma, mb = den // a.den, den // b.den
        nums = [x * ma + y * mb for x, y in zip(a.nums, b.nums)]
        return FormalSeries._make(a.order, nums, den)

    def __radd__(self, other) -> "FormalSeries":
        return self.__add__(other)

    def __neg__(self) -> "FormalSeries":
        return FormalSeries(self.order, tuple(-v for v in self.nums), self.den)

    def __sub__(self, other) -> "FormalSeries":
        if isinstance(other, (int, Fraction)):
            other = FormalSeries.monomial(other, 0, self.order)
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other) -> "FormalSeries":
        return (-self).__add__(other)

    def __mul__(self, other) -> "FormalSeries":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return FormalSeries._make(
                self.order, [v * c.numerator for v in self.nums], self.den * c.denominator
            )
        if not isinstance(other, FormalSeries):
            return NotImplemented
        a, b = self._common(other)
        nums = kernel.mul_trunc(list(a.nums), list(b.nums))
        return FormalSeries._make(a.order, nums, a.den * b.den)

    def __rmul__(self, other) -> "FormalSeries":
        return self.__mul__(other)

    def invert(self) -> "FormalSeries":
        """Multiplicative inverse modulo q**(order+1)."""
        if self.nums[0] == 0:
            raise ZeroConstantTermError("cannot invert a series with zero constant term")
        inv_nums, inv_den = kernel.invert_ints(list(self.nums))
        # 1/(N/d) = d * (1/N)
        return FormalSeries._make(self.order, [v * self.den for v in inv_nums], inv_den)

    def int_pow(self, exponent: int) -> "FormalSeries":
        """Integer power; negative exponents require a unit constant term."""
        if exponent == 0:
            return FormalSeries.one(self.order)
        base = self if exponent > 0 else self.invert()
        e = abs(exponent)
        result = FormalSeries.one(self.order)
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __pow__(self, exponent: int) -> "FormalSeries":
        return self.int_pow(exponent)

    # -- presentation ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "var": "q",
            "order": self.order,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coefficients],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "FormalSeries":
        return cls.from_coefficients(data["coeffs"], order=data["order"])

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mag = "q" if k == 1 else f"q^{k}"
                coeff = "" if abs(c) == 1 else f"{abs(c)}*"
                terms.append(("- " if c < 0 else "+ ") + coeff + mag
                             if terms else (("-" if c < 0 else "") + coeff + mag))
        body = " ".join(terms) if terms else "0"
        return f"<{body} + O(q^{self.order + 1})>"


def expand_product(spec: "IntegerProductSpec", order: int) -> FormalSeries:
    """Expand prod_{n>=ell} (1 -/+ q**(a*n + epsilon)) exactly to `order`.

    Only factors whose leading exponent a*n + epsilon is <= order differ
    from 1 modulo the truncation, so the loop is finite.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    spec.validate()
    sign = -1 if spec.sign == "minus" else 1
    nums = [0] * (order + 1)
    nums[0] = 1
    n = spec.ell
    while True:
        e = spec.a * n + spec.epsilon
        if e > order:
            break
        if e == 0:
            if sign == -1:
                raise DegenerateFactorError(
                    f"factor (1 - q^0) at n={n} annihilates the product"
                )
            # (1 + q^0) = 2
            nums = [2 * v for v in nums]
        else:
            kernel.mul_binomial_inplace(nums, e, sign)
        n += 1
    return FormalSeries._make(order, nums, 1)


@dataclass(frozen=True, slots=True)
class IntegerProductSpec:
    """Integer-exponent restriction of the spectral infinite products."""

    a: int
    epsilon: int
    ell: int
    sign: Sign

    def validate(self) -> None:
        if self.a < 1:
            raise ValueError("a must be a positive integer")
        if self.epsilon < 0 or self.ell < 0:
            raise ValueError("epsilon and ell must be nonnegative")
        if self.sign not in ("minus", "plus"):
            raise ValueError("sign must be 'minus' or 'plus'")
        if self.sign == "minus" and self.a * self.ell + self.epsilon == 0:
            raise DegenerateFactorError(
                "leading factor (1 - q^0) vanishes; shift ell or epsilon"
            )


# ---------------------------------------------------------------------------
# Bivariate series: coefficients are Laurent polynomials in y over Z,
# stored as sparse exponent -> integer maps.
# ---------------------------------------------------------------------------


def _lp_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for e, c in q.items():
        c2 = out.get(e, 0) + c
        if c2:
            out[e] = c2
        elif e in out:
            del out[e]
    return out


def _lp_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            c = out.get(e, 0) + c1 * c2
            if c:
                out[e] = c
            elif e in out:
                del out[e]
    return out


def _lp_scale(p: dict, c: int) -> dict:
    return {e: c * v for e, v in p.items()} if c else {}


def _lp_eval_int(p: dict, y: int) -> Fraction:
    total = Fraction(0)
    for e, c in p.items():
        if e >= 0:
            total += c * Fraction(y) ** e
        else:
            if y == 0:
                raise ZeroDivisionError("negative y-exponent evaluated at y=0")
            total += c * Fraction(1, y) ** (-e)
    return total


@dataclass(frozen=True, slots=True)
class BivariateSeries:
    """Power series in q whose coefficients are integer Laurent polynomials in y."""

    order: int
    coeffs: tuple[dict, ...]
    y_truncated: bool = False

    @staticmethod
    def _make(order: int, coeffs: list[dict], y_truncated: bool = False) -> "BivariateSeries":
        cleaned = [{e: c for e, c in d.items() if c} for d in coeffs]
        return BivariateSeries(order, tuple(cleaned), y_truncated)

    @classmethod
    def one(cls, order: int) -> "BivariateSeries":
        return cls._make(order, [{0: 1}] + [{} for _ in range(order)])

    @classmethod
    def monomial(cls, coefficient: int, q_exp: int, y_exp: int, order: int) -> "BivariateSeries":
        """coefficient * q**q_exp * y**y_exp, truncated at `order`."""
        coeffs: list[dict] = [{} for _ in range(order + 1)]
        if 0 <= q_exp <= order and coefficient:
            coeffs[q_exp] = {y_exp: coefficient}
        return cls._make(order, coeffs)

    def q_coefficient(self, k: int) -> dict:
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return dict(self.coeffs[k])

    def truncate(self, order: int) -> "BivariateSeries":
        if order >= self.order:
            return self
        return BivariateSeries._make(order, [dict(d) for d in self.coeffs[: order + 1]],
                                     self.y_truncated)

    def _common(self, other):
        order = min(self.order, other.order)
        return self.truncate(order), other.truncate(order)

    def __add__(self, other) -> "BivariateSeries":
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        a, b = self._common(other)
        return BivariateSeries._make(
            a.order, [_lp_add(x, y) for x, y in zip(a.coeffs, b.coeffs)],
            a.y_truncated or b.y_truncated,
        )

    def __neg__(self) -> "BivariateSeries":
        return BivariateSeries._make(
            self.order, [_lp_scale(d, -1) for d in self.coeffs], self.y_truncated
        )

    def __sub__(self, other) -> "BivariateSeries":
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self.__add__(-other)

    def __mul__(self, other) -> "BivariateSeries":
        if isinstance(other, int):
            return BivariateSeries._make(
                self.order, [_lp_scale(d, other) for d in self.coeffs], self.y_truncated
            )
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        a, b = self._common(other)
        out: list[dict] = [{} for _ in range(a.order + 1)]
        for i, p in enumerate(a.coeffs):
            if not p:
                continue
            for j in range(a.order + 1 - i):
                qq = b.coeffs[j]
                if qq:
                    out[i + j] = _lp_add(out[i + j], _lp_mul(p, qq))
        return BivariateSeries._make(a.order, out, a.y_truncated or b.y_truncated)

    def __rmul__(self, other) -> "BivariateSeries":
        return self.__mul__(other)

    def invert(self) -> "BivariateSeries":
        """Inverse modulo q**(order+1); constant term must be a unit +-y**k."""
        c0 = self.coeffs[0]
        if not c0:
            raise ZeroConstantTermError("cannot invert a series with zero constant term")
        if len(c0) != 1 or abs(next(iter(c0.values()))) != 1:
            raise ZeroConstantTermError(
                "constant term must be a unit monomial +-y^k for an integer inverse"
            )
        (e0, u0), = c0.items()
        inv0 = {-e0: u0}  # u0 in {1,-1} so 1/u0 == u0
        out = [inv0] + [{} for _ in range(self.order)]
        for n in range(1, self.order + 1):
            acc: dict = {}
            for k in range(1, n + 1):
                tk = self.coeffs[k]
                if tk:
                    acc = _lp_add(acc, _lp_mul(tk, out[n - k]))
            out[n] = _lp_mul(_lp_scale(acc, -1), inv0)
        return BivariateSeries._make(self.order, out, self.y_truncated)

    def int_pow(self, exponent: int) -> "BivariateSeries":
        if exponent == 0:
            return BivariateSeries.one(self.order)
        base = self if exponent > 0 else self.invert()
        e = abs(exponent)
        result = BivariateSeries.one(self.order)
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __pow__(self, exponent: int) -> "BivariateSeries":
        return self.int_pow(exponent)

    def specialize_y(self, y: int) -> FormalSeries:
        """Substitute an integer for y, coefficient by coefficient."""
        return FormalSeries.from_coefficients(
            [_lp_eval_int(d, y) for d in self.coeffs], order=self.order
        )

    def filter_y(self, y_bound: int) -> "BivariateSeries":
        """Drop y-exponents with |e| > y_bound, marking the result truncated."""
        dropped = False
        out = []
        for d in self.coeffs:
            kept = {e: c for e, c in d.items() if abs(e) <= y_bound}
            dropped = dropped or (len(kept) != len(d))
            out.append(kept)
        return BivariateSeries._make(self.order, out, self.y_truncated or dropped)

    def max_abs_y_exponent(self) -> int:
        exps = [abs(e) for d in self.coeffs for e in d]
        return max(exps, default=0)

    def to_json_dict(self) -> dict:
        data = {
            "var": "q",
            "order": self.order,
            "coeffs": [{str(e): c for e, c in sorted(d.items())} for d in self.coeffs],
        }
        if self.y_truncated:
            data["y_truncated"] = True
        return data

    @classmethod
    def from_json_dict(cls, data: dict) -> "BivariateSeries":
        coeffs = [{int(e): int(c) for e, c in d.items()} for d in data["coeffs"]]
        return cls._make(data["order"], coeffs, bool(data.get("y_truncated", False)))
