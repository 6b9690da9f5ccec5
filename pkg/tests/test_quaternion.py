import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quatlin import I, J, K, ONE, Quaternion
from quatlin.errors import ParseError, ZeroQuaternion
from quatlin.quaternion import (
    commuting_pure_units,
    complex_representative,
    conjugate_by,
    format_quaternion,
    inverse,
    is_similar,
    left_matrix,
    mul,
    parse_quaternion,
    qmul,
    right_matrix,
)

finite = st.floats(min_value=-100, max_value=100, allow_nan=False, allow_infinity=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)


def sympy_mul(p: Quaternion, q: Quaternion) -> tuple:
    r = sympy.Quaternion(*p.as_tuple()) * sympy.Quaternion(*q.as_tuple())
    return tuple(float(c) for c in (r.a, r.b, r.c, r.d))


def close(p: Quaternion, q: Quaternion, tol=1e-12) -> bool:
    return (p - q).norm() <= tol * (1.0 + p.norm() + q.norm())


class TestProduct:
    def test_unit_table(self):
        assert I * J == K and J * K == I and K * I == J
        assert J * I == -K
        for u in (I, J, K):
            assert u * u == -ONE

    def test_worked_product(self):
        assert mul(1 + I, 1 + J) == Quaternion(1, 1, 1, 1)

    @settings(max_examples=200)
    @given(quats, quats)
    def test_matches_sympy(self, p, q):
        expected = Quaternion(*sympy_mul(p, q))
        assert close(p * q, expected)

    @given(quats, quats, quats)
    def test_associative(self, p, q, r):
        assert close((p * q) * r, p * (q * r), 1e-11)

    @given(quats, quats)
    def test_norm_multiplicative(self, p, q):
        assert math.isclose((p * q).norm(), p.norm() * q.norm(), rel_tol=1e-12, abs_tol=1e-12)

    @given(quats, quats)
    def test_conjugate_reverses(self, p, q):
        assert close((p * q).conjugate(), q.conjugate() * p.conjugate())

    def test_array_kernel_broadcasts(self, rng):
        a = rng.standard_normal((5, 3, 4))
        b = rng.standard_normal((5, 3, 4))
        out = qmul(a, b)
        for idx in np.ndindex(5, 3):
            ref = Quaternion.from_array(a[idx]) * Quaternion.from_array(b[idx])
            assert np.allclose(out[idx], ref.as_array())

    def test_multiplication_matrices(self, rng):
        p, q = rng.standard_normal(4), rng.standard_normal(4)
        assert np.allclose(left_matrix(p) @ q, qmul(p, q))
        assert np.allclose(right_matrix(q) @ p, qmul(p, q))


class TestInverse:
    def test_worked_inverse(self):
        q = Quaternion(1, 1, 1, 1)
        assert inverse(q) == Quaternion(0.25, -0.25, -0.25, -0.25)
        assert close(q * inverse(q), ONE)

    def test_zero_raises(self):
        with pytest.raises(ZeroQuaternion):
            inverse(Quaternion(0, 0, 0, 0))
        with pytest.raises(ZeroDivisionError):
            Quaternion(0, 0, 0, 0).inverse()

    def test_threshold(self):
        with pytest.raises(ZeroQuaternion):
            inverse(Quaternion(1e-9, 0, 0, 0), zero_threshold=1e-6)

    @given(quats)
    def test_two_sided(self, q):
        if q.norm() < 1e-3:
            return
        assert close(q * q.inverse(), ONE, 1e-10)
        assert close(q.inverse() * q, ONE, 1e-10)


class TestSimilarity:
    def test_conjugate_complex_similar(self):
        z = Quaternion(1, 2, 0, 0)
        assert is_similar(z, z.conjugate())

    def test_representative(self):
        z = complex_representative(Quaternion(1, 1, 1, 1))
        assert z.real == pytest.approx(1.0) and z.imag == pytest.approx(math.sqrt(3))
        assert is_similar(Quaternion(z.real, z.imag, 0, 0), Quaternion(1, 1, 1, 1))

    def test_conjugate_by(self):
        assert close(conjugate_by(I, J), -I)

    @given(quats, quats)
    def test_conjugation_preserves_class(self, q, r):
        if r.norm() < 1e-3:
            return
        p = conjugate_by(q, r)
        assert math.isclose(p.real, q.real, abs_tol=1e-9 * (1 + q.norm()))
        assert math.isclose(p.norm(), q.norm(), rel_tol=1e-9, abs_tol=1e-9)

    def test_not_similar(self):
        assert not is_similar(Quaternion(1, 1, 0, 0), Quaternion(1, 2, 0, 0))


class TestCommutingUnits:
    @pytest.mark.parametrize("theta", np.linspace(0.05, math.pi - 0.05, 7))
    @pytest.mark.parametrize("phi", np.linspace(0, 2 * math.pi, 6, endpoint=False))
    def test_grid(self, theta, phi):
        omega = Quaternion(0, math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta))
        d, e = commuting_pure_units(omega)
        assert e == -d
        assert d.norm() == pytest.approx(1.0)
        assert abs(d.real) < 1e-12
        assert close(d * omega, omega * d, 1e-10)

    def test_axis(self):
        d, _ = commuting_pure_units(K)
        assert close(d, K) or close(d, -K)


class TestParseFormat:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("1+i+j+k", (1, 1, 1, 1)),
            ("-2.5", (-2.5, 0, 0, 0)),
            ("j", (0, 0, 1, 0)),
            ("-i", (0, -1, 0, 0)),
            ("0.5-0.25k", (0.5, 0, 0, -0.25)),
            ("1e-3i + 2j", (0, 1e-3, 2, 0)),
            ("3k-1", (-1, 0, 0, 3)),
        ],
    )
    def test_parse(self, text, expected):
        assert parse_quaternion(text).as_tuple() == expected

    @pytest.mark.parametrize("bad", ["", "1+", "ii", "i+i", "2x", "1 2", "1++i", "i j"])
    def test_malformed(self, bad):
        with pytest.raises(ParseError):
            parse_quaternion(bad)

    @given(quats)
    def test_round_trip(self, q):
        assert parse_quaternion(format_quaternion(q)) == q

    def test_format(self):
        assert format_quaternion(Quaternion(1, -1, 0, 2)) == "1-i+2k"
        assert format_quaternion(Quaternion(0, 0, 0, 0)) == "0"
