"""Pfaffian identities, canonical forms, and the sign convention."""

import numpy as np
import pytest

from locq.errors import (
    NotSkewSymmetricError,
    OddDimensionError,
    SingularMatrixError,
)
from locq.pfaffian import (
    SkewMatrix,
    block_diagonal,
    canonicalize,
    pfaffian,
    pfaffian_combinatorial,
    pfaffian_tridiagonal,
    sqrt_det,
)


def random_skew(rng, dim):
    raw = rng.normal(size=(dim, dim))
    return SkewMatrix(raw - raw.T)


def random_orthogonal(rng, dim):
    q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    return q


class TestValidation:
    def test_odd_dimension(self):
        with pytest.raises(OddDimensionError):
            SkewMatrix(np.zeros((3, 3)))

    def test_not_skew(self):
        with pytest.raises(NotSkewSymmetricError):
            SkewMatrix([[0.0, 1.0], [1.0, 0.0]])

    def test_small_deviation_is_adjusted(self):
        a = np.array([[0.0, 1.0], [-1.0 + 1e-14, 0.0]])
        m = SkewMatrix(a)
        assert m.adjusted
        assert m.mat[0, 1] == -m.mat[1, 0]


class TestPfaffian:
    def test_two_by_two(self):
        # Pf([[0, l], [-l, 0]]) = l by definition
        assert pfaffian(SkewMatrix([[0.0, 3.5], [-3.5, 0.0]])) == 3.5

    def test_block_multiplicativity(self):
        # direct sum of [[0, l], [-l, 0]] blocks multiplies the Pfaffians
        m = np.zeros((4, 4))
        m[0, 1], m[1, 0] = 2.0, -2.0
        m[2, 3], m[3, 2] = -5.0, 5.0
        assert pfaffian(SkewMatrix(m)) == pytest.approx(2.0 * -5.0, abs=1e-14)
        # canonical-form blocks [[0,-l],[l,0]] give prod(-l_j) instead
        assert pfaffian(block_diagonal([2.0, -5.0])) == pytest.approx(-10.0, abs=1e-14)
        assert pfaffian(block_diagonal([1.0, 3.0])) == pytest.approx(3.0, abs=1e-14)

    def test_square_is_determinant(self):
        rng = np.random.default_rng(1)
        for dim in (2, 4, 6, 8, 10, 12):
            for _ in range(15):
                a = random_skew(rng, dim)
                pf, det = pfaffian(a), a.det()
                assert abs(pf * pf - det) < 1e-9 * max(1.0, abs(det))

    def test_congruence_covariance(self):
        rng = np.random.default_rng(2)
        for _ in range(40):
            dim = int(rng.choice([2, 4, 6, 8]))
            a = random_skew(rng, dim)
            b = rng.normal(size=(dim, dim))
            lhs = pfaffian(SkewMatrix(b @ a.mat @ b.T))
            rhs = float(np.linalg.det(b)) * pfaffian(a)
            assert abs(lhs - rhs) < 1e-8 * max(1.0, abs(rhs))

    def test_paths_agree(self):
        rng = np.random.default_rng(3)
        for dim in (2, 4, 6, 8):
            for _ in range(10):
                a = random_skew(rng, dim)
                assert pfaffian_combinatorial(a) == pytest.approx(
                    pfaffian_tridiagonal(a), rel=1e-10, abs=1e-12
                )


class TestCanonicalize:
    def test_canonical_block_identity_basis(self):
        form = canonicalize(block_diagonal([3.0]))
        assert form.lambdas == (3.0,)
        assert np.allclose(np.abs(form.basis), np.eye(2))

    def test_rotation_invariance_of_rates(self):
        rng = np.random.default_rng(4)
        a = block_diagonal([2.5, 1.5])
        q = random_orthogonal(rng, 4)
        rotated = SkewMatrix(q @ a.mat @ q.T)
        lams = sorted(abs(x) for x in canonicalize(rotated).lambdas)
        assert np.allclose(lams, [1.5, 2.5], atol=1e-10)

    def test_scaling(self):
        a = block_diagonal([2.0, 1.0])
        doubled = SkewMatrix(2.0 * a.mat)
        lams = sorted(abs(x) for x in canonicalize(doubled).lambdas)
        assert np.allclose(lams, [2.0, 4.0], atol=1e-12)

    def test_reassembly(self):
        rng = np.random.default_rng(5)
        for dim in (2, 4, 6, 10):
            for _ in range(8):
                a = random_skew(rng, dim)
                form = canonicalize(a)
                assert np.max(np.abs(form.reassemble() - a.mat)) < 1e-9
                assert np.allclose(form.basis @ form.basis.T, np.eye(dim), atol=1e-10)
                assert np.linalg.det(form.basis) > 0

    def test_repeated_rates(self):
        a = block_diagonal([2.0, 2.0, 2.0])
        form = canonicalize(a)
        assert np.allclose(sorted(abs(x) for x in form.lambdas), [2.0] * 3)
        assert np.max(np.abs(form.reassemble() - a.mat)) < 1e-9

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrixError):
            canonicalize(SkewMatrix(np.zeros((4, 4))))


class TestSqrtDet:
    def test_single_block(self):
        assert sqrt_det(block_diagonal([2.0])) == pytest.approx(2.0, abs=1e-14)

    def test_signed_product(self):
        assert sqrt_det(block_diagonal([1.0, -3.0])) == pytest.approx(-3.0, abs=1e-12)

    def test_square_matches_det_and_sign_matches_pfaffian(self):
        rng = np.random.default_rng(6)
        for dim in (2, 4, 6, 8):
            for _ in range(10):
                a = random_skew(rng, dim)
                sd = sqrt_det(a)
                assert abs(sd * sd - a.det()) < 1e-9 * max(1.0, abs(a.det()))
                n = dim // 2
                assert sd == pytest.approx((-1) ** n * pfaffian(a), rel=1e-9)

    def test_direct_sum_multiplicativity(self):
        a = block_diagonal([2.0, 1.0])
        b = block_diagonal([3.0])
        both = block_diagonal([2.0, 1.0, 3.0])
        assert sqrt_det(both) == pytest.approx(sqrt_det(a) * sqrt_det(b), rel=1e-12)
