import math

import numpy as np
import pytest

from quatlin import I, J, Quaternion
from quatlin.ceig import hermitian_right_eigen
from quatlin.errors import EmptySubspace, IndexOutOfRange, NotCritical, NotHermitian, NotTangent, ZeroVector
from quatlin.generators import random_hermitian, random_symplectic
from quatlin.qmatrix import QMatrix, QVector, Subspace, hermitian_product
from quatlin.rayleigh import (
    critical_index,
    critical_report,
    gradient,
    hessian_apply,
    hessian_eigenvalues,
    minmax_verify,
    moments,
    random_subspace,
    rayleigh_quotient,
    shard_rng,
    sphere_coordinate_moments,
    sphere_samples,
    subspace_extremes,
    tangent_basis,
    weighted_mean_oracle,
)

S_PURE_I = QMatrix([[0, I], [-I, 0]])


def rand_vec(n, rng):
    return QVector(rng.standard_normal((n, 4)))


def tangent_direction(v, rng):
    x = v.as_real()
    d = rng.standard_normal(x.size)
    d -= (d @ x) / (x @ x) * x
    return QVector.from_real(d / np.linalg.norm(d))


class TestRayleighQuotient:
    def test_eigenvectors(self, rng):
        s = random_hermitian(4, rng)
        eig = hermitian_right_eigen(s)
        for v, t in zip(eig.basis.basis, eig.values):
            assert rayleigh_quotient(s, v) == pytest.approx(t, abs=1e-12)

    def test_equal_weights(self):
        v = QVector([1.0, 1.0]) * (1 / math.sqrt(2))
        assert rayleigh_quotient(QMatrix.diag([1.0, 3.0]), v) == pytest.approx(2.0)
        assert weighted_mean_oracle([1, 3], [1, 1]) == pytest.approx(2.0)

    def test_weighted_mean_agrees(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 5))
            s = random_hermitian(n, rng)
            v = rand_vec(n, rng)
            eig = hermitian_right_eigen(s)
            # coordinates x_j = <u_j, v> in the eigenbasis
            x = [hermitian_product(u, v) for u in eig.basis.basis]
            assert rayleigh_quotient(s, v) == pytest.approx(weighted_mean_oracle(eig.values, x), abs=1e-10)

    def test_scale_invariant(self, rng):
        s = random_hermitian(3, rng)
        v = rand_vec(3, rng)
        r = rayleigh_quotient(s, v)
        for q in (Quaternion(2.5, 0, 0, 0), Quaternion(0.1, -1, 3, 2)):
            assert rayleigh_quotient(s, v * q) == pytest.approx(r, abs=1e-12 * (1 + abs(r)))

    def test_range(self, rng):
        s = random_hermitian(3, rng)
        t = hermitian_right_eigen(s).values
        for _ in range(200):
            r = rayleigh_quotient(s, rand_vec(3, rng))
            assert t[0] - 1e-12 <= r <= t[-1] + 1e-12

    def test_errors(self, rng):
        with pytest.raises(ZeroVector):
            rayleigh_quotient(S_PURE_I, QVector([0.0, 0.0]))
        with pytest.raises(NotHermitian):
            rayleigh_quotient(QMatrix([[0, J], [I, 0]]), QVector([1.0, 0.0]))


class TestGradient:
    def test_vanishes_at_eigenvectors(self, rng):
        s = random_hermitian(4, rng)
        for v in hermitian_right_eigen(s).basis.basis:
            assert gradient(s, v).norm() < 1e-12 * (1 + s.frobenius())

    def test_worked_value(self):
        s = QMatrix.diag([1.0, 3.0])
        v = QVector([1.0, 1.0]) * (1 / math.sqrt(2))
        g = gradient(s, v)
        assert np.allclose(g.as_real(), np.array([-1, 0, 0, 0, 1, 0, 0, 0]) * math.sqrt(2))

    def test_finite_difference(self, rng):
        eps = 1e-5
        for _ in range(50):
            n = int(rng.integers(1, 5))
            s = random_hermitian(n, rng)
            v = rand_vec(n, rng).normalized()
            g = gradient(s, v)
            for _ in range(8):
                d = tangent_direction(v, rng)
                fd = (rayleigh_quotient(s, (v + d * eps).normalized())
                      - rayleigh_quotient(s, (v - d * eps).normalized())) / (2 * eps)
                an = float(g.as_real() @ d.as_real())
                assert abs(fd - an) <= 1e-6 * max(g.norm(), 1e-3)

    def test_gradient_is_tangent(self, rng):
        s = random_hermitian(3, rng)
        v = rand_vec(3, rng)
        assert abs(gradient(s, v).as_real() @ v.as_real()) < 1e-12 * (1 + s.frobenius()) * v.norm()


class TestHessian:
    def test_eigenvector_pair(self, rng):
        s = random_hermitian(3, rng)
        eig = hermitian_right_eigen(s)
        u1, u2 = eig.basis.basis[:2]
        t1, t2 = eig.values[:2]
        out = hessian_apply(s, u1, u2)
        assert (out - u2 * (2 * (t2 - t1))).norm() < 1e-10

    def test_directional_fd_of_gradient(self, rng):
        eps = 1e-5
        s = random_hermitian(4, rng)
        eig = hermitian_right_eigen(s)
        for v in eig.basis.basis:
            w = tangent_direction(v, rng)
            fd = (gradient(s, v + w * eps) - gradient(s, v - w * eps)) * (1 / (2 * eps))
            an = hessian_apply(s, v, w)
            assert (fd - an).norm() <= 1e-5 * max(an.norm(), 1.0)

    def test_spectrum_multiset(self, rng):
        for n in (2, 3, 4):
            s = random_hermitian(n, rng)
            eig = hermitian_right_eigen(s)
            for j, v in enumerate(eig.basis.basis):
                expected = sorted([2 * (t - eig.values[j]) for t in eig.values for _ in range(4)])
                expected.remove(min(expected, key=abs))  # the radial direction is not tangent
                assert np.allclose(hessian_eigenvalues(s, v), expected, atol=1e-7)

    def test_symmetric(self, rng):
        s = random_hermitian(3, rng)
        v = hermitian_right_eigen(s).basis.basis[1]
        a, b = tangent_direction(v, rng), tangent_direction(v, rng)
        lhs = hessian_apply(s, v, a).as_real() @ b.as_real()
        rhs = hessian_apply(s, v, b).as_real() @ a.as_real()
        assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_preconditions(self, rng):
        s = random_hermitian(3, rng)
        v = rand_vec(3, rng)
        with pytest.raises(NotCritical):
            hessian_apply(s, v, tangent_direction(v, rng))
        u = hermitian_right_eigen(s).basis.basis[0]
        with pytest.raises(NotTangent):
            hessian_apply(s, u, u)

    def test_tangent_basis(self, rng):
        v = rand_vec(3, rng)
        tb = np.array([b.as_real() for b in tangent_basis(v)])
        assert tb.shape == (11, 12)
        assert np.allclose(tb @ tb.T, np.eye(11))
        assert np.allclose(tb @ v.as_real(), 0)


class TestIndex:
    def test_minimum_has_index_zero(self, rng):
        s = random_hermitian(3, rng)
        assert critical_index(s, 1) == 0

    def test_multiplicity(self):
        s = QMatrix.diag([1.0, 1.0, 3.0])
        assert critical_index(s, 3) == 2
        assert critical_index(s, 2) == 0
        with pytest.raises(IndexOutOfRange):
            critical_index(s, 4)

    def test_report_counts(self, rng):
        for n in (2, 3, 4):
            p = random_symplectic(n, rng)
            t = sorted(rng.integers(-2, 3, size=n).astype(float))
            s = p @ QMatrix.diag(t) @ p.adjoint()
            eig = hermitian_right_eigen(s)
            for j, v in enumerate(eig.basis.basis, start=1):
                rep = critical_report(s, v)
                expected = critical_index(s, j, eig)
                assert rep.critical
                assert rep.index_quaternionic == expected == sum(x < t[j - 1] - 1e-9 for x in t)
                assert rep.index == 4 * expected

    def test_non_critical(self, rng):
        s = random_hermitian(3, rng)
        rep = critical_report(s, rand_vec(3, rng))
        assert not rep.critical and rep.index is None
        assert rep.to_dict()["critical"] is False


class TestMinMax:
    def test_whole_space(self, rng):
        s = random_hermitian(3, rng)
        t = hermitian_right_eigen(s).values
        lo, hi = subspace_extremes(s, Subspace(3, tuple(QVector.basis(3, i) for i in range(3))))
        assert (lo, hi) == pytest.approx((t[0], t[-1]), abs=1e-10)

    def test_eigen_span(self, rng):
        s = random_hermitian(4, rng)
        eig = hermitian_right_eigen(s)
        for k in range(1, 5):
            _, hi = subspace_extremes(s, Subspace(4, eig.basis.basis[:k]))
            assert hi == pytest.approx(eig.values[k - 1], abs=1e-10)

    def test_random_4x4(self, rng):
        s = random_hermitian(4, rng)
        for k in range(1, 5):
            rep = minmax_verify(s, k, trials=200, seed=k)
            assert rep.violations == 0
            assert rep.equality_attained
            assert rep.min_upper >= rep.t_k - 1e-8

    def test_sandwich_by_dimension(self, rng):
        s = random_hermitian(4, rng)
        t = hermitian_right_eigen(s).values
        for k in range(1, 5):
            e = random_subspace(4, k, rng)
            lo, hi = subspace_extremes(s, e)
            assert lo <= t[4 - k] + 1e-10 and hi >= t[k - 1] - 1e-10

    def test_deterministic(self, rng):
        s = random_hermitian(3, rng)
        assert minmax_verify(s, 2, 20, seed=5) == minmax_verify(s, 2, 20, seed=5)

    def test_errors(self):
        with pytest.raises(IndexOutOfRange):
            minmax_verify(S_PURE_I, 3)
        with pytest.raises(EmptySubspace):
            subspace_extremes(S_PURE_I, Subspace(2, ()))


class TestMoments:
    def test_sphere_samples_unit(self, rng):
        x = sphere_samples(3, 100, rng)
        assert x.shape == (100, 12)
        assert np.allclose(np.linalg.norm(x, axis=1), 1.0)

    def test_diag12(self):
        rep = moments(QMatrix.diag([1.0, 2.0]), 200_000, seed=7)
        assert rep.exact_mean == pytest.approx(1.5)
        assert rep.exact_second_central == pytest.approx(0.05)
        assert rep.mean_z <= 3 and rep.second_central_z <= 3

    def test_random_3x3(self, rng):
        rep = moments(random_hermitian(3, rng), 200_000, seed=3)
        assert rep.mean_z <= 3 and rep.second_central_z <= 3

    def test_scalar_matrix_has_no_spread(self):
        rep = moments(QMatrix.diag([2.0, 2.0]), 5000, seed=1)
        assert rep.mean_estimate == pytest.approx(2.0, abs=1e-12)
        assert rep.second_central_estimate == pytest.approx(0.0, abs=1e-20)
        assert rep.mean_z == 0.0

    def test_workers_do_not_change_result(self, rng):
        s = random_hermitian(2, rng)
        a = moments(s, 150_000, seed=11, workers=1)
        b = moments(s, 150_000, seed=11, workers=4)
        assert a == b

    def test_shard_streams_independent_of_count(self):
        a = shard_rng(42, 3).standard_normal(5)
        b = shard_rng(42, 3).standard_normal(5)
        c = shard_rng(42, 4).standard_normal(5)
        assert np.array_equal(a, b) and not np.array_equal(a, c)

    def test_error_shrinks_like_inverse_sqrt(self):
        s = QMatrix.diag([0.0, 1.0, 4.0])
        small = moments(s, 10_000, seed=2)
        large = moments(s, 1_000_000, seed=2)
        assert large.stderr_mean == pytest.approx(small.stderr_mean / 10, rel=0.05)
        assert abs(large.mean_estimate - large.exact_mean) < 5 * large.stderr_mean

    def test_sphere_coordinates(self):
        rep = sphere_coordinate_moments(8, 200_000, seed=9)
        assert rep.exact["u1^2"] == pytest.approx(1 / 8)
        assert all(z <= 3 for z in rep.zscores().values())

    def test_too_few_samples(self):
        with pytest.raises(ValueError):
            moments(S_PURE_I, 999)
