"""Both kernel backends must agree exactly on random inputs."""

import random
from fractions import Fraction

import pytest

from locq.kernel import available_backends

BACKENDS = available_backends()


def reference_invert(nums, length):
    """Fraction-based series reciprocal, independent of the kernels."""
    r = [Fraction(0)] * length
    r[0] = Fraction(1, nums[0])
    for n in range(1, length):
        acc = Fraction(0)
        for k in range(1, n + 1):
            acc += nums[k] * r[n - k]
        r[n] = -acc / nums[0]
    return r


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return BACKENDS[request.param]


def test_mul_trunc_matches_reference(backend):
    rng = random.Random(1)
    for _ in range(20):
        n = rng.randint(1, 40)
        a = [rng.randint(-50, 50) for _ in range(n)]
        b = [rng.randint(-50, 50) for _ in range(n)]
        out = backend.mul_trunc(a, b)
        expect = [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]
        assert out == expect


def test_backends_agree_on_everything():
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernel not built")
    rng = random.Random(2)
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for _ in range(25):
        n = rng.randint(2, 60)
        a = [rng.randint(-99, 99) for _ in range(n)]
        b = [rng.randint(-99, 99) for _ in range(n)]
        assert py.mul_trunc(a, b) == cy.mul_trunc(a, b)
        a[0] = rng.choice([1, -1, 2, -3])
        assert py.invert_ints(a) == cy.invert_ints(a)
        u, v = list(a), list(a)
        e = rng.randint(1, n - 1)
        s = rng.choice([1, -1])
        py.mul_binomial_inplace(u, e, s)
        cy.mul_binomial_inplace(v, e, s)
        assert u == v


def test_invert_ints_exactness(backend):
    rng = random.Random(3)
    for _ in range(15):
        n = rng.randint(1, 25)
        nums = [rng.choice([1, -1, 2, -2, 3])] + [rng.randint(-9, 9) for _ in range(n - 1)]
        out, den = backend.invert_ints(nums)
        got = [Fraction(v, den) for v in out]
        assert got == reference_invert(nums, n)


def test_binomial_update_is_polynomial_multiplication(backend):
    nums = [1, 0, 0, 0, 0, 0]
    backend.mul_binomial_inplace(nums, 1, -1)
    backend.mul_binomial_inplace(nums, 2, -1)
    backend.mul_binomial_inplace(nums, 3, -1)
    # (1-q)(1-q^2)(1-q^3) mod q^6
    assert nums == [1, -1, -1, 0, 1, 1]
