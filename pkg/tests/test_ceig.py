import math

import numpy as np
import pytest

from quatlin import I, J, Quaternion
from quatlin.ceig import (
    cluster_values,
    general_complex_eigenvalues,
    hermitian_complex_eigen,
    hermitian_right_eigen,
    hessenberg,
    right_eigen_classes,
)
from quatlin.errors import NotHermitian, NotSquare
from quatlin.generators import random_hermitian, random_qmatrix, random_symplectic, random_unit_quaternion
from quatlin.qmatrix import QMatrix, QVector, complex_adjoint, complex_to_qvector, qvector_to_complex

R2 = math.sqrt(2) / 2
RIGHT_EX = QMatrix([[0, J], [I, 0]])
S_PURE_I = QMatrix([[0, I], [-I, 0]])
S_FINITE = QMatrix([[0, Quaternion(1, 1, 0, 0)], [Quaternion(1, -1, 0, 0), 0]])
SYMPL = QMatrix([[J, -J], [J, J]]) * R2


def multiset_close(a, b, tol):
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    for z in a:
        k = min(range(len(b)), key=lambda i: abs(b[i] - z))
        if abs(b[k] - z) > tol:
            return False
        b.pop(k)
    return True


class TestComplexSolvers:
    def test_hermitian_vs_numpy(self, rng):
        for n in (1, 2, 3, 6, 10):
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            h = a + a.conj().T
            w, v = hermitian_complex_eigen(h)
            assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-12 * np.abs(h).max())
            assert np.allclose(v.conj().T @ v, np.eye(n), atol=1e-12)
            assert np.allclose(h @ v, v * w, atol=1e-11 * np.abs(h).max())

    def test_hermitian_degenerate(self):
        h = np.diag([2.0, 2.0, -1.0]).astype(complex)
        w, _ = hermitian_complex_eigen(h)
        assert np.allclose(w, [-1, 2, 2])

    def test_hessenberg_form(self, rng):
        a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        h = hessenberg(a)
        assert np.abs(np.tril(h, -2)).max() < 1e-12
        assert np.allclose(np.sort_complex(np.linalg.eigvals(h)), np.sort_complex(np.linalg.eigvals(a)))

    def test_general_vs_numpy(self, rng):
        for n in (1, 2, 4, 7, 12):
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            assert multiset_close(general_complex_eigenvalues(a), np.linalg.eigvals(a), 1e-9)

    def test_right_example(self):
        ev = general_complex_eigenvalues(complex_adjoint(RIGHT_EX))
        expected = [R2 * (sa + sb * 1j) for sa in (1, -1) for sb in (1, -1)]
        assert multiset_close(ev, expected, 1e-12)

    def test_finite_left_adjoint(self):
        ev = general_complex_eigenvalues(complex_adjoint(S_FINITE))
        assert multiset_close(ev, [-math.sqrt(2)] * 2 + [math.sqrt(2)] * 2, 1e-10)

    def test_double_root_companion(self):
        comp = QMatrix([[0, 1], [-1, 2]])
        ev = general_complex_eigenvalues(complex_adjoint(comp))
        assert multiset_close(ev, [1, 1, 1, 1], 1e-6)

    def test_cluster_values(self):
        assert cluster_values([1.0, 1.0 + 1e-10, 2.0]) == [[0, 1], [2]]


class TestRightEigenClasses:
    def test_right_example(self):
        classes = right_eigen_classes(RIGHT_EX)
        assert len(classes) == 2
        assert [c.real_part for c in classes] == pytest.approx([-R2, R2], abs=1e-12)
        assert all(c.norm == pytest.approx(1.0, abs=1e-12) for c in classes)
        assert all(c.imag_norm == pytest.approx(R2, abs=1e-12) for c in classes)

    def test_symplectic_example(self):
        classes = right_eigen_classes(SYMPL)
        assert [c.real_part for c in classes] == pytest.approx([-R2, R2], abs=1e-10)
        assert [c.norm for c in classes] == pytest.approx([1, 1], abs=1e-10)

    def test_not_square(self):
        with pytest.raises(NotSquare):
            right_eigen_classes(QMatrix(np.zeros((2, 3, 4))))

    def test_similarity_invariance(self, rng):
        m = random_qmatrix(3, rng)
        p = random_symplectic(3, rng)
        a = right_eigen_classes(m)
        b = right_eigen_classes(p @ m @ p.adjoint())
        for x, y in zip(a, b):
            assert x.real_part == pytest.approx(y.real_part, abs=1e-9)
            assert x.imag_norm == pytest.approx(y.imag_norm, abs=1e-9)

    def test_triangular_diagonal(self, rng):
        # eigenvalues of a triangular matrix are the classes of its diagonal
        diag = [random_unit_quaternion(rng) * (k + 1) for k in range(3)]
        m = QMatrix(np.triu(rng.standard_normal((3, 3, 4)).transpose(2, 0, 1), 1).transpose(1, 2, 0))
        data = m.data.copy()
        for k, q in enumerate(diag):
            data[k, k] = q.as_array()
        classes = right_eigen_classes(QMatrix(data))
        for q in diag:
            assert any(c.contains(q, 1e-8) for c in classes)

    def test_eigenvector_class(self, rng):
        # M u = u q  implies  M (u r) = (u r)(r^-1 q r)
        m = random_qmatrix(3, rng)
        c = complex_adjoint(m)
        w, vecs = np.linalg.eig(c)
        u = complex_to_qvector(vecs[:, 0])
        q = Quaternion(w[0].real, w[0].imag, 0, 0)
        assert (m @ u - u * q).norm() < 1e-10
        r = random_unit_quaternion(rng)
        ur = u * r
        assert (m @ ur - ur * (r.inverse() * q * r)).norm() < 1e-10


class TestEmbeddingConvention:
    """Guards the (a; b) <-> a + j b vector correspondence."""

    @staticmethod
    def _fixture(rng, n=3):
        # diagonal of complex numbers rotated by a random symplectic matrix
        d = QMatrix.diag([Quaternion(*rng.standard_normal(2), 0, 0) for _ in range(n)])
        p = random_symplectic(n, rng)
        return p @ d @ p.adjoint()

    def test_chosen_convention_passes(self, rng):
        for _ in range(10):
            m = self._fixture(rng)
            w, vecs = np.linalg.eig(complex_adjoint(m))
            for k in range(len(w)):
                u = complex_to_qvector(vecs[:, k])
                q = Quaternion(w[k].real, w[k].imag, 0, 0)
                assert (m @ u - u * q).norm() < 1e-9

    def test_other_convention_fails(self, rng):
        m = self._fixture(rng)
        w, vecs = np.linalg.eig(complex_adjoint(m))
        n = m.rows
        worst = 0.0
        for k in range(len(w)):
            a, b = vecs[:n, k], vecs[n:, k]
            # a + b j instead of a + j b
            u = QVector(np.stack([a.real, a.imag, b.real, b.imag], axis=-1))
            q = Quaternion(w[k].real, w[k].imag, 0, 0)
            worst = max(worst, (m @ u - u * q).norm())
        assert worst > 1e-3

    def test_round_trip(self, rng):
        v = QVector(rng.standard_normal((4, 4)))
        assert np.array_equal(complex_to_qvector(qvector_to_complex(v)).data, v.data)


class TestHermitianRightEigen:
    def test_pure_i(self):
        eig = hermitian_right_eigen(S_PURE_I)
        assert eig.values == pytest.approx((-1.0, 1.0), abs=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_random(self, n, rng):
        for _ in range(5):
            s = random_hermitian(n, rng)
            eig = hermitian_right_eigen(s)
            c_vals = np.linalg.eigvalsh(complex_adjoint(s))
            assert np.allclose(np.repeat(eig.values, 2), c_vals, atol=1e-10 * (1 + s.frobenius()))
            assert eig.basis.orthonormality_error() < 1e-10
            assert (eig.reconstruct() - s).frobenius() < 1e-10 * (1 + s.frobenius())
            for v, t in zip(eig.basis.basis, eig.values):
                assert (s @ v - v * t).norm() < 1e-9 * (1 + s.frobenius())

    def test_two_by_two_formula(self, rng):
        for _ in range(20):
            s0, s1 = rng.standard_normal(2)
            b = Quaternion.from_array(rng.standard_normal(4))
            s = QMatrix([[s0, b], [b.conjugate(), s1]])
            disc = math.sqrt((s0 - s1) ** 2 / 4 + b.norm2())
            expected = ((s0 + s1) / 2 - disc, (s0 + s1) / 2 + disc)
            assert hermitian_right_eigen(s).values == pytest.approx(expected, abs=1e-10)

    def test_repeated_eigenvalues(self, rng):
        p = random_symplectic(4, rng)
        s = p @ QMatrix.diag([1.0, 1.0, 3.0, 3.0]) @ p.adjoint()
        eig = hermitian_right_eigen(s)
        assert eig.values == pytest.approx((1, 1, 3, 3), abs=1e-10)
        assert eig.multiplicities == (2, 2)
        assert eig.distinct_values == pytest.approx((1, 3))
        assert (eig.reconstruct() - s).frobenius() < 1e-9

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_right_eigen(RIGHT_EX)
