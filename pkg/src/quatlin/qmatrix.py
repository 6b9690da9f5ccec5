"""Quaternionic vectors and matrices over the right vector space H^n.

Storage is a ``float64`` array with a trailing axis of length 4: ``(n, 4)``
for vectors, ``(rows, cols, 4)`` for matrices. Scalars multiply vectors on
the right (``v * q``), matrices act on the left (``M @ v``). Complex matrices
are plain ``complex128`` numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Real
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NotSquare
from .quaternion import Quaternion, qconj, qinv, qmul, qnorm2

__all__ = [
    "QVector",
    "QMatrix",
    "Subspace",
    "hermitian_product",
    "matmul",
    "adjoint",
    "apply",
    "is_hermitian",
    "is_symplectic",
    "hermitian_deviation",
    "symplectic_deviation",
    "complex_adjoint",
    "from_complex_adjoint",
    "qvector_to_complex",
    "complex_to_qvector",
    "null_space",
    "direct_sum",
    "gram_schmidt",
]


def _as_quat_array(entries, ndim: int) -> np.ndarray:
    if isinstance(entries, np.ndarray) and entries.dtype.kind == "f" and entries.ndim == ndim + 1:
        arr = np.array(entries, dtype=float)
    else:
        def conv(e):
            if isinstance(e, (list, tuple)) and ndim > 1:
                return [conv(x) for x in e]
            if ndim == 1 and isinstance(e, (list, tuple)) and len(e) == 4 and all(isinstance(t, Real) for t in e):
                return list(map(float, e))
            return Quaternion.coerce(e).as_tuple()

        if ndim == 1:
            arr = np.array([conv(e) for e in entries], dtype=float)
        else:
            arr = np.array([[Quaternion.coerce(e).as_tuple() for e in row] for row in entries], dtype=float)
    if arr.ndim != ndim + 1 or arr.shape[-1] != 4:
        raise DimensionMismatch(f"expected a {ndim}-d array of quaternions, got shape {arr.shape}")
    if any(s == 0 for s in arr.shape[:-1]):
        raise DimensionMismatch("dimensions must be positive")
    arr.setflags(write=False)
    return arr


class QVector:
    """Column vector in H^n. Immutable."""

    __slots__ = ("data",)

    def __init__(self, entries):
        if isinstance(entries, QVector):
            entries = entries.data
        self.data = _as_quat_array(entries, 1)

    @classmethod
    def basis(cls, n: int, i: int) -> QVector:
        a = np.zeros((n, 4))
        a[i, 0] = 1.0
        return cls(a)

    @classmethod
    def from_real(cls, x) -> QVector:
        """Inverse of :meth:`as_real`: a length-4n real vector."""
        x = np.asarray(x, dtype=float)
        return cls(x.reshape(-1, 4))

    def __len__(self) -> int:
        return self.data.shape[0]

    def __getitem__(self, i) -> Quaternion:
        return Quaternion.from_array(self.data[i])

    def __iter__(self):
        return (Quaternion.from_array(r) for r in self.data)

    def as_real(self) -> np.ndarray:
        return self.data.reshape(-1).copy()

    def norm2(self) -> float:
        return float(np.sum(self.data * self.data))

    def norm(self) -> float:
        return float(np.sqrt(self.norm2()))

    def normalized(self) -> QVector:
        return QVector(self.data / self.norm())

    def __add__(self, other: QVector) -> QVector:
        _check_same_len(self, other)
        return QVector(self.data + other.data)

    def __sub__(self, other: QVector) -> QVector:
        _check_same_len(self, other)
        return QVector(self.data - other.data)

    def __neg__(self) -> QVector:
        return QVector(-self.data)

    def __mul__(self, q) -> QVector:
        # right scalar multiplication
        if isinstance(q, Real):
            return QVector(self.data * float(q))
        q = Quaternion.coerce(q)
        return QVector(qmul(self.data, q.as_array()))

    def __rmul__(self, q) -> QVector:
        if isinstance(q, Real):
            return QVector(self.data * float(q))
        return NotImplemented

    def left_scale(self, q) -> QVector:
        """``q v`` entrywise; NOT a vector-space operation on H^n."""
        q = Quaternion.coerce(q)
        return QVector(qmul(q.as_array(), self.data))

    def __repr__(self) -> str:
        return f"QVector([{', '.join(str(q) for q in self)}])"


def _check_same_len(u: QVector, v: QVector) -> None:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} and {len(v)} differ")


class QMatrix:
    """Dense quaternionic matrix. Immutable."""

    __slots__ = ("data",)

    def __init__(self, entries):
        if isinstance(entries, QMatrix):
            entries = entries.data
        self.data = _as_quat_array(entries, 2)

    # -- constructors
    @classmethod
    def identity(cls, n: int) -> QMatrix:
        a = np.zeros((n, n, 4))
        a[np.arange(n), np.arange(n), 0] = 1.0
        return cls(a)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> QMatrix:
        return cls(np.zeros((rows, rows if cols is None else cols, 4)))

    @classmethod
    def diag(cls, values: Iterable) -> QMatrix:
        values = [Quaternion.coerce(v) for v in values]
        n = len(values)
        a = np.zeros((n, n, 4))
        for i, v in enumerate(values):
            a[i, i] = v.as_array()
        return cls(a)

    @classmethod
    def from_columns(cls, columns: Sequence[QVector]) -> QMatrix:
        return cls(np.stack([c.data for c in columns], axis=1))

    # -- shape
    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[:2]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx) -> Quaternion:
        i, j = idx
        return Quaternion.from_array(self.data[i, j])

    def column(self, j: int) -> QVector:
        return QVector(self.data[:, j])

    def columns(self) -> list[QVector]:
        return [self.column(j) for j in range(self.cols)]

    def entries(self) -> list[list[Quaternion]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    # -- norms
    def frobenius(self) -> float:
        return float(np.sqrt(np.sum(self.data * self.data)))

    def max_entry_norm(self) -> float:
        return float(np.sqrt(qnorm2(self.data).max()))

    def as_real(self) -> np.ndarray:
        """The real ``4r x 4c`` matrix of ``v -> M v`` on R^{4c}."""
        from .quaternion import left_matrix

        r, c = self.shape
        out = np.empty((4 * r, 4 * c))
        for i in range(r):
            for j in range(c):
                out[4 * i : 4 * i + 4, 4 * j : 4 * j + 4] = left_matrix(self.data[i, j])
        return out

    # -- arithmetic
    def adjoint(self) -> QMatrix:
        return adjoint(self)

    @property
    def H(self) -> QMatrix:
        return adjoint(self)

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            return matmul(self, other)
        if isinstance(other, QVector):
            return apply(self, other)
        return NotImplemented

    def __add__(self, other: QMatrix) -> QMatrix:
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        return QMatrix(self.data + other.data)

    def __sub__(self, other: QMatrix) -> QMatrix:
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        return QMatrix(self.data - other.data)

    def __neg__(self) -> QMatrix:
        return QMatrix(-self.data)

    def __mul__(self, q) -> QMatrix:
        """``M q``: every entry multiplied by ``q`` on the right."""
        if isinstance(q, Real):
            return QMatrix(self.data * float(q))
        return QMatrix(qmul(self.data, Quaternion.coerce(q).as_array()))

    def __rmul__(self, q) -> QMatrix:
        if isinstance(q, Real):
            return QMatrix(self.data * float(q))
        return NotImplemented

    def left_scale(self, q) -> QMatrix:
        """``q M``: every entry multiplied by ``q`` on the left."""
        return QMatrix(qmul(Quaternion.coerce(q).as_array(), self.data))

    def shift(self, lam) -> QMatrix:
        """``M - lam I``."""
        if not self.is_square:
            raise NotSquare(f"matrix is {self.rows}x{self.cols}")
        a = np.array(self.data)
        idx = np.arange(self.rows)
        a[idx, idx] -= Quaternion.coerce(lam).as_array()
        return QMatrix(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    __hash__ = None

    def __repr__(self) -> str:
        rows = ["[" + ", ".join(str(q) for q in row) + "]" for row in self.entries()]
        return f"QMatrix([{', '.join(rows)}])"


@dataclass(frozen=True)
class Subspace:
    """Right H-subspace of H^n given by an orthonormal basis."""

    ambient_dim: int
    basis: tuple[QVector, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> QMatrix:
        """``n x k`` matrix whose columns are the basis vectors."""
        if not self.basis:
            raise DimensionMismatch("zero-dimensional subspace has no basis matrix")
        return QMatrix.from_columns(self.basis)

    def project(self, v: QVector) -> QVector:
        out = np.zeros((self.ambient_dim, 4))
        for b in self.basis:
            out += qmul(b.data, hermitian_product(b, v).as_array())
        return QVector(out)

    def distance(self, v: QVector) -> float:
        """Sine of the angle between ``v`` and the subspace."""
        r = v - self.project(v)
        return r.norm() / v.norm()

    def orthonormality_error(self) -> float:
        k = self.dim
        err = 0.0
        for a in range(k):
            for b in range(k):
                g = hermitian_product(self.basis[a], self.basis[b]).as_array()
                if a == b:
                    g[0] -= 1.0
                err = max(err, float(np.sqrt(g @ g)))
        return err


# --------------------------------------------------------------------------
# products

def hermitian_product(u: QVector, v: QVector) -> Quaternion:
    """``<u, v> = u* v``: conjugate-linear in ``u``, right-linear in ``v``."""
    _check_same_len(u, v)
    return Quaternion.from_array(qmul(qconj(u.data), v.data).sum(axis=0))


def matmul(a: QMatrix, b: QMatrix) -> QMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    return QMatrix(qmul(a.data[:, :, None, :], b.data[None, :, :, :]).sum(axis=1))


def adjoint(m: QMatrix) -> QMatrix:
    """Conjugate transpose."""
    return QMatrix(qconj(m.data).transpose(1, 0, 2))


def apply(m: QMatrix, v: QVector) -> QVector:
    if m.cols != len(v):
        raise DimensionMismatch(f"cannot apply {m.rows}x{m.cols} matrix to vector of length {len(v)}")
    return QVector(qmul(m.data, v.data[None, :, :]).sum(axis=1))


def _require_square(m: QMatrix) -> None:
    if not m.is_square:
        raise NotSquare(f"matrix is {m.rows}x{m.cols}")


def hermitian_deviation(m: QMatrix) -> float:
    _require_square(m)
    return float(np.sqrt(qnorm2(m.data - adjoint(m).data).max()))


def symplectic_deviation(m: QMatrix) -> float:
    _require_square(m)
    eye = QMatrix.identity(m.rows).data
    mh = adjoint(m)
    d1 = qnorm2(matmul(mh, m).data - eye).max()
    d2 = qnorm2(matmul(m, mh).data - eye).max()
    return float(np.sqrt(max(d1, d2)))


def is_hermitian(m: QMatrix, tol: float = 1e-10) -> bool:
    return hermitian_deviation(m) <= tol


def is_symplectic(m: QMatrix, tol: float = 1e-10) -> bool:
    return symplectic_deviation(m) <= tol


# --------------------------------------------------------------------------
# complex adjoint
#
# q = w + xi + yj + zk = u + j v with u = w + xi and v = y - zi, since
# j(y - zi) = yj + zk.

def _split(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    u = a[..., 0] + 1j * a[..., 1]
    v = a[..., 2] - 1j * a[..., 3]
    return u, v


def _join(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.stack([u.real, u.imag, v.real, -v.imag], axis=-1)


def complex_adjoint(m: QMatrix) -> np.ndarray:
    """The ``2n x 2n`` complex matrix ``[[U, -conj(V)], [V, conj(U)]]`` for ``M = U + jV``."""
    _require_square(m)
    u, v = _split(m.data)
    return np.block([[u, -v.conj()], [v, u.conj()]])


def from_complex_adjoint(c: np.ndarray, tol: float = 1e-12) -> QMatrix:
    """Inverse of :func:`complex_adjoint`; checks the block structure."""
    c = np.asarray(c, dtype=complex)
    if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] % 2:
        raise DimensionMismatch(f"expected an even square complex matrix, got {c.shape}")
    n = c.shape[0] // 2
    u, v = c[:n, :n], c[n:, :n]
    scale = max(1.0, float(np.abs(c).max()))
    if np.abs(c[:n, n:] + v.conj()).max() > tol * scale or np.abs(c[n:, n:] - u.conj()).max() > tol * scale:
        raise ValueError("matrix is not in the image of the complex adjoint")
    return QMatrix(_join(u, v))


def qvector_to_complex(v: QVector) -> np.ndarray:
    """``a + j b`` maps to the stacked complex vector ``(a; b)``.

    Under this correspondence ``c(M) (a; b)`` represents ``M (a + jb)`` and
    right multiplication by a complex scalar acts componentwise.
    """
    a, b = _split(v.data)
    return np.concatenate([a, b])


def complex_to_qvector(z) -> QVector:
    z = np.asarray(z, dtype=complex)
    n = z.shape[0] // 2
    return QVector(_join(z[:n], z[n:]))


# --------------------------------------------------------------------------
# elimination

def _rref(a: np.ndarray, rtol: float) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form using left row operations only.

    Row ``i`` is replaced by ``row_i - f row_p`` with ``f`` multiplied on the
    left, which keeps the solution set of ``A v = 0`` for right-linear ``v``.
    """
    a = np.array(a, dtype=float)
    rows, cols = a.shape[:2]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        norms = qnorm2(a[r:, c])
        p = int(np.argmax(norms))
        if np.sqrt(norms[p]) <= rtol:
            a[r:, c] = 0.0
            continue
        if p:
            a[[r, r + p]] = a[[r + p, r]]
        a[r] = qmul(qinv(a[r, c]), a[r])
        a[r, c] = (1.0, 0.0, 0.0, 0.0)
        for i in range(rows):
            if i != r and np.any(a[i, c]):
                a[i] -= qmul(a[i, c], a[r])
                a[i, c] = 0.0
        pivots.append(c)
        r += 1
    return a, pivots


def null_space(m: QMatrix, tol: float = 1e-10) -> Subspace:
    """Orthonormal basis of ``{v : M v = 0}``.

    Gauss-Jordan elimination with partial pivoting on the largest-norm entry
    of the working column. A column whose remaining entries all have norm at
    most ``tol * max(1, largest entry norm)`` is treated as free.
    """
    _require_square(m)
    n = m.cols
    rtol = tol * max(1.0, m.max_entry_norm())
    r, pivots = _rref(m.data, rtol)
    free = [c for c in range(n) if c not in pivots]
    raw = []
    for f in free:
        v = np.zeros((n, 4))
        v[f, 0] = 1.0
        for row, pc in enumerate(pivots):
            v[pc] = -r[row, f]
        raw.append(QVector(v))
    return gram_schmidt(raw, tol=1e-10) if raw else Subspace(n, ())


def direct_sum(a: QMatrix, b: QMatrix) -> QMatrix:
    """Block-diagonal matrix ``[[A, 0], [0, B]]``."""
    _require_square(a)
    _require_square(b)
    n, k = a.rows, b.rows
    out = np.zeros((n + k, n + k, 4))
    out[:n, :n] = a.data
    out[n:, n:] = b.data
    return QMatrix(out)


def gram_schmidt(vectors: Sequence[QVector], tol: float = 1e-10) -> Subspace:
    """Orthonormal basis of the right span of ``vectors``.

    Modified Gram-Schmidt with one reorthogonalization pass. A vector is
    dropped when what remains after projection has norm at most ``tol``
    times its original norm.
    """
    vectors = list(vectors)
    if not vectors:
        raise DimensionMismatch("gram_schmidt needs at least one vector")
    n = len(vectors[0])
    basis: list[np.ndarray] = []
    for v in vectors:
        if len(v) != n:
            raise DimensionMismatch("vectors have different lengths")
        u = np.array(v.data)
        n0 = np.sqrt(np.sum(u * u))
        if n0 == 0.0:
            continue
        for _ in range(2):
            for b in basis:
                coeff = qmul(qconj(b), u).sum(axis=0)
                u -= qmul(b, coeff)
        nu = np.sqrt(np.sum(u * u))
        if nu <= tol * n0:
            continue
        basis.append(u / nu)
    return Subspace(n, tuple(QVector(b) for b in basis))
