"""Symmetric-product generating functions and their enumeration oracles.

Everything here consumes only Betti numbers.  Each product formula is
paired with an independent basis-enumeration oracle so the identities can
be checked coefficient by coefficient:

  * macdonald_series      <->  sym_poincare_oracle (graded symmetric powers)
  * orbifold_series       <->  orbifold_oracle (partition sums of the above)
  * equivariant series    <->  partition counting
  * twisted series        ->   assembled from four explicit products; its
                               half-integer pieces must cancel to integers.

Index-range note for the orbifold product: the q-power index runs over
n >= 1 and the degree index over j >= 0 (so the degree-0 Betti number
contributes and no q-free factor appears); this is the unique range
agreeing with the partition-sum oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import LocqError
from .series import BivariateSeries, FormalSeries, IntegerProductSpec, expand_product


@dataclass(frozen=True, slots=True)
class BettiData:
    """Finite list b^0, b^1, ..., b^d of nonnegative Betti numbers."""

    betti: tuple[int, ...]

    def __post_init__(self):
        if any(b < 0 for b in self.betti):
            raise ValueError("Betti numbers must be nonnegative")

    @classmethod
    def of(cls, *betti: int) -> "BettiData":
        return cls(tuple(betti))

    @classmethod
    def from_string(cls, text: str) -> "BettiData":
        return cls(tuple(int(p) for p in text.split(",")) if text.strip() else ())

    @property
    def chi(self) -> int:
        return sum((-1) ** j * b for j, b in enumerate(self.betti))

    def poincare_polynomial(self) -> dict[int, int]:
        return {j: b for j, b in enumerate(self.betti) if b}


@dataclass(frozen=True, slots=True)
class GradedSymBasis:
    """Generator degrees of a graded vector space, split by parity.

    Even-degree generators repeat freely in a symmetric power; odd-degree
    generators appear at most once (Koszul sign rule).
    """

    even_degrees: tuple[int, ...]
    odd_degrees: tuple[int, ...]

    @classmethod
    def from_betti(cls, b: BettiData) -> "GradedSymBasis":
        even, odd = [], []
        for j, count in enumerate(b.betti):
            (even if j % 2 == 0 else odd).extend([j] * count)
        return cls(tuple(even), tuple(odd))


def sym_poincare_oracle(b: BettiData, n: int) -> dict[int, int]:
    """Poincare polynomial of the n-th graded symmetric power, by enumeration.

    Lists every basis element directly: a multiset of even generators
    together with a subset of odd generators, of total size n.  Never
    touches the product formula.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    basis = GradedSymBasis.from_betti(b)
    out: dict[int, int] = {}
    for n_odd in range(min(n, len(basis.odd_degrees)) + 1):
        n_even = n - n_odd
        for odd_choice in itertools.combinations(basis.odd_degrees, n_odd):
            odd_deg = sum(odd_choice)
            for even_choice in itertools.combinations_with_replacement(
                basis.even_degrees, n_even
            ):
                deg = odd_deg + sum(even_choice)
                out[deg] = out.get(deg, 0) + 1
    return out


def macdonald_series(b: BettiData, q_order: int, y_bound: int | None = None) -> BivariateSeries:
    """Generating series of symmetric-product Poincare polynomials.

    Product form: prod_j (1 + q y^(2j+1))^(b_odd) / prod_j (1 - q y^(2j))^(b_even),
    expanded exactly to q_order.
    """
    out = BivariateSeries.one(q_order)
    for j, count in enumerate(b.betti):
        if count == 0:
            continue
        sign = 1 if j % 2 == 1 else -1
        factor = BivariateSeries.one(q_order) + BivariateSeries.monomial(
            sign, 1, j, q_order
        )
        out = out * factor.int_pow(count if j % 2 == 1 else -count)
    if y_bound is not None:
        out = out.filter_y(y_bound)
    return out


@dataclass(frozen=True, slots=True)
class EulerSpecializationResult:
    series: FormalSeries
    expected: FormalSeries
    matches: bool


def euler_specialization(b: BettiData, q_order: int) -> EulerSpecializationResult:
    """y = -1 reduction: the series must equal (1-q)^(-chi) exactly."""
    series = macdonald_series(b, q_order).specialize_y(-1)
    one_minus_q = FormalSeries.one(q_order) - FormalSeries.monomial(1, 1, q_order)
    expected = one_minus_q.int_pow(-b.chi)
    return EulerSpecializationResult(series=series, expected=expected,
                                     matches=series == expected)


def equivariant_euler_series(chi: int, q_order: int) -> FormalSeries:
    """prod_{j>=1} (1 - q^j)^(-chi), exactly to q_order."""
    euler = expand_product(IntegerProductSpec(1, 0, 1, "minus"), q_order)
    return euler.int_pow(-chi)


def twisted_sym_series(chi: int, q_order: int) -> FormalSeries:
    """Euler-characteristic series of the twisted symmetric-product theory.

    Assembled from four integer products over odd/even exponents,
        A = prod (1-q^(2n-1))^(-chi)        B = prod (1+q^(2n-1))^(chi)
        C+- = prod (1 +- q^(2n))^(chi)
    as A + B * (1 + (C+ - C-)/2).  The halves are exact rationals and must
    cancel: a non-integer coefficient in the result is a hard error.  Note
    the constant coefficient is 2, not 1, for every chi.
    """
    a = expand_product(IntegerProductSpec(2, 1, 0, "minus"), q_order).int_pow(-chi)
    bb = expand_product(IntegerProductSpec(2, 1, 0, "plus"), q_order).int_pow(chi)
    c_plus = expand_product(IntegerProductSpec(2, 2, 0, "plus"), q_order).int_pow(chi)
    c_minus = expand_product(IntegerProductSpec(2, 2, 0, "minus"), q_order).int_pow(chi)
    bracket = FormalSeries.one(q_order) + Fraction(1, 2) * (c_plus - c_minus)
    out = a + bb * bracket
    if any(c.denominator != 1 for c in out.coefficients):
        raise LocqError("twisted series produced non-integer coefficients")
    return out


def orbifold_series(b: BettiData, q_order: int, y_bound: int | None = None) -> BivariateSeries:
    """Orbifold Poincare series: prod_{n>=1} prod_j (1+q^n y^(2j+1))^b / (1-q^n y^(2j))^b."""
    out = BivariateSeries.one(q_order)
    for n in range(1, q_order + 1):
        for j, count in enumerate(b.betti):
            if count == 0:
                continue
            sign = 1 if j % 2 == 1 else -1
            factor = BivariateSeries.one(q_order) + BivariateSeries.monomial(
                sign, n, j, q_order
            )
            out = out * factor.int_pow(count if j % 2 == 1 else -count)
    if y_bound is not None:
        out = out.filter_y(y_bound)
    return out


def partition_multiplicities(n: int):
    """Yield partitions of n as {part: multiplicity} dicts."""

    def rec(remaining: int, max_part: int, acc: dict[int, int]):
        if remaining == 0:
            yield dict(acc)
            return
        for part in range(min(remaining, max_part), 0, -1):
            acc[part] = acc.get(part, 0) + 1
            yield from rec(remaining - part, part, acc)
            acc[part] -= 1
            if not acc[part]:
                del acc[part]

    yield from rec(n, n, {})


def orbifold_oracle(b: BettiData, n: int) -> dict[int, int]:
    """Coefficient of q^n of the orbifold series, from the partition sum.

    Sums, over partitions of n with multiplicities (n_j), the product of
    symmetric-power Poincare polynomials of order n_j.  Fully independent
    of the infinite product.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    out: dict[int, int] = {}
    for mults in partition_multiplicities(n):
        term: dict[int, int] = {0: 1}
        for mult in mults.values():
            factor = sym_poincare_oracle(b, mult)
            new: dict[int, int] = {}
            for e1, c1 in term.items():
                for e2, c2 in factor.items():
                    new[e1 + e2] = new.get(e1 + e2, 0) + c1 * c2
            term = {e: c for e, c in new.items() if c}
            if not term:
                break
        for e, c in term.items():
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}
