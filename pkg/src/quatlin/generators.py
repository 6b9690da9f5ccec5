"""Random quaternions and matrices for tests, demos and Monte-Carlo checks."""

from __future__ import annotations

import numpy as np

from .qmatrix import QMatrix
from .quaternion import Quaternion, qmul

__all__ = [
    "random_quaternion",
    "random_unit_quaternion",
    "random_pure_unit",
    "random_qmatrix",
    "random_hermitian",
    "random_symplectic",
]


def random_quaternion(rng: np.random.Generator, scale: float = 1.0) -> Quaternion:
    return Quaternion.from_array(scale * rng.standard_normal(4))


def random_unit_quaternion(rng: np.random.Generator) -> Quaternion:
    a = rng.standard_normal(4)
    return Quaternion.from_array(a / np.linalg.norm(a))


def random_pure_unit(rng: np.random.Generator) -> Quaternion:
    a = rng.standard_normal(3)
    a /= np.linalg.norm(a)
    return Quaternion(0.0, *a)


def random_qmatrix(n: int, rng: np.random.Generator, cols: int | None = None) -> QMatrix:
    return QMatrix(rng.standard_normal((n, n if cols is None else cols, 4)))


def random_hermitian(n: int, rng: np.random.Generator) -> QMatrix:
    a = random_qmatrix(n, rng)
    return QMatrix(0.5 * (a.data + a.adjoint().data))


def random_symplectic(n: int, rng: np.random.Generator, factors: int | None = None) -> QMatrix:
    """Product of elementary unitary factors.

    Each factor is ``D1 G D2`` with ``D1``, ``D2`` diagonal matrices of random
    unit quaternions and ``G`` a real plane rotation in a random coordinate
    pair, so the product satisfies ``A* A = I`` by construction.
    """
    factors = 3 * n if factors is None else factors
    out = np.zeros((n, n, 4))
    out[np.arange(n), np.arange(n), 0] = 1.0

    def unit_diag():
        d = np.zeros((n, n, 4))
        u = rng.standard_normal((n, 4))
        d[np.arange(n), np.arange(n)] = u / np.linalg.norm(u, axis=1, keepdims=True)
        return d

    def mm(a, b):
        return qmul(a[:, :, None, :], b[None, :, :, :]).sum(axis=1)

    for _ in range(max(factors, 1)):
        g = np.zeros((n, n, 4))
        g[np.arange(n), np.arange(n), 0] = 1.0
        if n > 1:
            p, q = rng.choice(n, size=2, replace=False)
            phi = rng.uniform(0.0, 2.0 * np.pi)
            c, s = np.cos(phi), np.sin(phi)
            g[p, p, 0], g[q, q, 0] = c, c
            g[p, q, 0], g[q, p, 0] = -s, s
        out = mm(out, mm(mm(unit_diag(), g), unit_diag()))
    return QMatrix(out)
