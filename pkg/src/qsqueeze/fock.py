"""Truncated right quaternionic Fock space.

Vectors store right coefficients <Phi_k | f> as an (dim, 4) real array;
operators store quaternion entries A[j][k] = <Phi_j | A Phi_k> as
(dim, dim, 4).  Operator entries multiply coefficients on the left, which
makes the basis-fixed left scalar multiplication an entrywise left product.

Internally quaternion-matrix products run through the Cayley-Dickson split
q = (w + x i) + (y + z i) j, turning one quaternion matmul into four complex
BLAS matmuls.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .quaternion import Quaternion


class DimensionMismatchError(ValueError):
    pass


class ExponentialConvergenceError(RuntimeError):
    pass


# --- raw quaternion-array kernels -------------------------------------------

def qarr(q: Quaternion | float) -> np.ndarray:
    if isinstance(q, (int, float)):
        q = Quaternion(float(q))
    return q.to_array()


def qmul_arr(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise quaternion product of (..., 4) arrays (broadcasting)."""
    aw, ax, ay, az = (a[..., i] for i in range(4))
    bw, bx, by, bz = (b[..., i] for i in range(4))
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def qconj_arr(a: np.ndarray) -> np.ndarray:
    out = a.copy()
    out[..., 1:] *= -1.0
    return out


def _cd_split(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return a[..., 0] + 1j * a[..., 1], a[..., 2] + 1j * a[..., 3]


def _cd_join(c1: np.ndarray, c2: np.ndarray) -> np.ndarray:
    return np.stack([c1.real, c1.imag, c2.real, c2.imag], axis=-1)


def qmatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Quaternion matrix product: (n,m,4) @ (m,k,4) -> (n,k,4)."""
    a1, a2 = _cd_split(a)
    b1, b2 = _cd_split(b)
    c1 = a1 @ b1 - a2 @ b2.conj()
    c2 = a1 @ b2 + a2 @ b1.conj()
    return _cd_join(c1, c2)


def qmatvec(a: np.ndarray, f: np.ndarray) -> np.ndarray:
    """(n,m,4) applied to (m,4): entry-on-the-left products."""
    return qmatmul(a, f[:, None, :])[:, 0, :]


def qfrob(a: np.ndarray) -> float:
    """Frobenius norm sqrt(sum |entry|^2); submultiplicative for matrices."""
    return float(np.sqrt(np.sum(a * a)))


def qmax_abs(a: np.ndarray) -> float:
    """Largest entry magnitude |A[j][k]|."""
    if a.size == 0:
        return 0.0
    return float(np.sqrt(np.sum(a * a, axis=-1)).max())


# --- vectors ----------------------------------------------------------------

class FockVector:
    """Right-coefficient vector over the truncated basis Phi_0..Phi_{dim-1}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: np.ndarray):
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.ndim != 2 or coeffs.shape[1] != 4:
            raise ValueError("coeffs must have shape (dim, 4)")
        self.coeffs = coeffs

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    @staticmethod
    def zero(dim: int) -> "FockVector":
        return FockVector(np.zeros((dim, 4)))

    @staticmethod
    def basis(dim: int, k: int) -> "FockVector":
        c = np.zeros((dim, 4))
        c[k, 0] = 1.0
        return FockVector(c)

    def __add__(self, other: "FockVector") -> "FockVector":
        return FockVector(self.coeffs + other.coeffs)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return FockVector(self.coeffs - other.coeffs)

    def __getitem__(self, k: int) -> Quaternion:
        return Quaternion.from_array(self.coeffs[k])

    def right_scale(self, q: Quaternion | float) -> "FockVector":
        """f q: every coefficient multiplied by q on the right."""
        return FockVector(qmul_arr(self.coeffs, qarr(q)[None, :]))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.coeffs**2)))

    def tail_mass(self, start: int) -> float:
        """Squared coefficient mass at indices >= start."""
        return float(np.sum(self.coeffs[start:] ** 2))

    def to_json(self) -> str:
        return json.dumps(
            {"dim": self.dim, "data": [list(row) for row in self.coeffs],
             "layout": "row-major"},
            sort_keys=True,
        )

    @staticmethod
    def from_json(s: str) -> "FockVector":
        d = json.loads(s)
        arr = np.asarray(d["data"], dtype=float).reshape(d["dim"], 4)
        return FockVector(arr)


def inner(f: FockVector, g: FockVector) -> Quaternion:
    """Sum_k conj(f_k) g_k; right-linear in g, conjugate-symmetric."""
    if f.dim != g.dim:
        raise DimensionMismatchError(f"{f.dim} != {g.dim}")
    prods = qmul_arr(qconj_arr(f.coeffs), g.coeffs)
    return Quaternion.from_array(prods.sum(axis=0))


def left_mul(q: Quaternion, f: FockVector) -> FockVector:
    """Basis-fixed left action: coefficient k becomes q * f_k."""
    return FockVector(qmul_arr(qarr(q)[None, :], f.coeffs))


# --- operators ---------------------------------------------------------------

class QOperator:
    """dim x dim quaternion-entry matrix acting on FockVector coefficients."""

    __slots__ = ("entries",)

    def __init__(self, entries: np.ndarray):
        entries = np.asarray(entries, dtype=float)
        if entries.ndim != 3 or entries.shape[0] != entries.shape[1] or entries.shape[2] != 4:
            raise ValueError("entries must have shape (dim, dim, 4)")
        self.entries = entries

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @staticmethod
    def zero(dim: int) -> "QOperator":
        return QOperator(np.zeros((dim, dim, 4)))

    @staticmethod
    def identity(dim: int) -> "QOperator":
        e = np.zeros((dim, dim, 4))
        e[np.arange(dim), np.arange(dim), 0] = 1.0
        return QOperator(e)

    @staticmethod
    def from_real(m: np.ndarray) -> "QOperator":
        m = np.asarray(m, dtype=float)
        e = np.zeros(m.shape + (4,))
        e[..., 0] = m
        return QOperator(e)

    def _check(self, other: "QOperator"):
        if self.dim != other.dim:
            raise DimensionMismatchError(f"{self.dim} != {other.dim}")

    def __add__(self, other: "QOperator") -> "QOperator":
        self._check(other)
        return QOperator(self.entries + other.entries)

    def __sub__(self, other: "QOperator") -> "QOperator":
        self._check(other)
        return QOperator(self.entries - other.entries)

    def __neg__(self) -> "QOperator":
        return QOperator(-self.entries)

    def scale(self, s: float) -> "QOperator":
        return QOperator(self.entries * float(s))

    def compose(self, other: "QOperator") -> "QOperator":
        self._check(other)
        return QOperator(qmatmul(self.entries, other.entries))

    def __matmul__(self, other: "QOperator") -> "QOperator":
        return self.compose(other)

    def apply(self, f: FockVector) -> FockVector:
        if self.dim != f.dim:
            raise DimensionMismatchError(f"{self.dim} != {f.dim}")
        return FockVector(qmatvec(self.entries, f.coeffs))

    def adjoint(self) -> "QOperator":
        return QOperator(qconj_arr(self.entries.transpose(1, 0, 2)))

    def block(self, nb: int) -> np.ndarray:
        return self.entries[:nb, :nb]

    def block_dev(self, other: "QOperator", nb: int) -> float:
        """Largest entry magnitude of (self - other) on the leading block."""
        return qmax_abs(self.block(nb) - other.block(nb))

    def to_json(self) -> str:
        flat = self.entries.reshape(-1, 4)
        return json.dumps(
            {"dim": self.dim, "data": [list(row) for row in flat],
             "layout": "row-major"},
            sort_keys=True,
        )

    @staticmethod
    def from_json(s: str) -> "QOperator":
        d = json.loads(s)
        arr = np.asarray(d["data"], dtype=float).reshape(d["dim"], d["dim"], 4)
        return QOperator(arr)


def left_mul_op(q: Quaternion | float, a: QOperator) -> QOperator:
    """(q . A): every entry multiplied by q on the left."""
    return QOperator(qmul_arr(qarr(q)[None, None, :], a.entries))


def right_mul_op(a: QOperator, q: Quaternion | float) -> QOperator:
    """(A . q): every entry multiplied by q on the right."""
    return QOperator(qmul_arr(a.entries, qarr(q)[None, None, :]))


def commutator(a: QOperator, b: QOperator) -> QOperator:
    return a @ b - b @ a


@dataclass(frozen=True)
class ProtectedBlock:
    """Leading sub-block dim - margin on which truncated identities hold."""

    dim: int
    margin: int

    def __post_init__(self):
        if not (0 < self.margin < self.dim):
            raise ValueError("need 0 < margin < dim")

    @property
    def size(self) -> int:
        return self.dim - self.margin


# --- operator exponential ----------------------------------------------------

def op_exp(a: QOperator, tol: float = 1e-13, max_terms: int = 120) -> QOperator:
    """Scaling-and-squaring Taylor exponential of a quaternion matrix.

    The scaled series runs until the submultiplicative Frobenius bound of the
    remainder drops below tol (tightened by the number of squarings).
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    nrm = math.sqrt(2.0) * qfrob(a.entries)  # Frobenius norm of the embedding
    s = max(0, int(math.ceil(math.log2(nrm / 0.5))) if nrm > 0.5 else 0)
    scaled = a.scale(0.5**s)
    eff_tol = tol / (2.0**s if s else 1.0)

    result = QOperator.identity(a.dim)
    term = QOperator.identity(a.dim)
    bound = 1.0
    scaled_nrm = nrm * 0.5**s
    converged = scaled_nrm == 0.0
    for m in range(1, max_terms + 1):
        term = QOperator(qmatmul(term.entries, scaled.entries) / m)
        result = result + term
        bound *= scaled_nrm / m
        if bound * math.exp(scaled_nrm) < eff_tol:
            converged = True
            break
    if not converged:
        raise ExponentialConvergenceError(
            f"series not converged after {max_terms} terms (norm {scaled_nrm:g})")
    for _ in range(s):
        result = result @ result
    return result


# --- complex embedding oracle -------------------------------------------------

_BLOCKS = np.array(
    [
        [[1, 0], [0, 1]],            # 1
        [[0, 1j], [1j, 0]],          # i
        [[0, -1], [1, 0]],           # j
        [[1j, 0], [0, -1j]],         # k
    ],
    dtype=complex,
)


def embed_complex(a: QOperator) -> np.ndarray:
    """Blockwise 2x2 representation: a multiplicative (2 dim)^2 embedding."""
    m = np.zeros((2 * a.dim, 2 * a.dim), dtype=complex)
    for c in range(4):
        m += np.kron(a.entries[..., c], _BLOCKS[c])
    return m


def unembed_complex(m: np.ndarray, tol: float = 1e-9) -> QOperator:
    """Inverse of embed_complex, validating the block pattern."""
    n2 = m.shape[0]
    if m.shape != (n2, n2) or n2 % 2:
        raise ValueError("expected even-sized square matrix")
    d = n2 // 2
    b = m.reshape(d, 2, d, 2).transpose(0, 2, 1, 3)
    e = np.zeros((d, d, 4))
    e[..., 0] = 0.5 * (b[..., 0, 0] + b[..., 1, 1]).real
    e[..., 3] = 0.5 * (b[..., 0, 0] - b[..., 1, 1]).imag
    e[..., 2] = 0.5 * (b[..., 1, 0] - b[..., 0, 1]).real
    e[..., 1] = 0.5 * (b[..., 1, 0] + b[..., 0, 1]).imag
    op = QOperator(e)
    resid = np.abs(m - embed_complex(op)).max()
    scale = max(1.0, np.abs(m).max())
    if resid > tol * scale:
        raise ValueError(f"matrix violates embedded quaternion pattern by {resid:g}")
    return op


def op_exp_embedded(a: QOperator) -> QOperator:
    """Independent exponential route: expm of the complex embedding."""
    return unembed_complex(scipy.linalg.expm(embed_complex(a)))
