"""Quaternion scalar arithmetic: products, conjugation, polar form, slices.

Everything here is exact componentwise algebra on four reals.  The 2x2
complex matrix representation doubles as an independent oracle for the
exponential/phase functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class RepresentationError(ValueError):
    """A 2x2 complex matrix does not carry the quaternion entry pattern."""


class ZeroQuaternionError(ValueError):
    """Operation undefined at the zero quaternion."""


@dataclass(frozen=True)
class Quaternion:
    """q = w + x i + y j + z k with real components."""

    w: float
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __add__(self, other):
        o = _coerce(other)
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        o = _coerce(other)
        return Quaternion(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )

    def __rmul__(self, other):
        return _coerce(other) * self

    def __truediv__(self, s: float):
        return Quaternion(self.w / s, self.x / s, self.y / s, self.z / s)

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    def real(self) -> float:
        return self.w

    def imag(self) -> "Quaternion":
        return Quaternion(0.0, self.x, self.y, self.z)

    def is_real(self, tol: float = 0.0) -> bool:
        return abs(self.x) <= tol and abs(self.y) <= tol and abs(self.z) <= tol

    def isclose(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return (self - _coerce(other)).norm() <= tol

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    @staticmethod
    def from_array(a) -> "Quaternion":
        a = np.asarray(a, dtype=float)
        return Quaternion(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    def __repr__(self):
        return f"Quaternion({self.w:.12g}, {self.x:.12g}, {self.y:.12g}, {self.z:.12g})"


def _coerce(v) -> Quaternion:
    if isinstance(v, Quaternion):
        return v
    if isinstance(v, (int, float)):
        return Quaternion(float(v))
    raise TypeError(f"cannot interpret {type(v)} as a quaternion")


ONE = Quaternion(1.0)
ZERO = Quaternion(0.0)
QI = Quaternion(0.0, 1.0, 0.0, 0.0)
QJ = Quaternion(0.0, 0.0, 1.0, 0.0)
QK = Quaternion(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class SliceAxis:
    """A unit pure quaternion I; the slice C_I = R + I R is commutative."""

    ax: float
    ay: float
    az: float

    def __post_init__(self):
        n = math.sqrt(self.ax**2 + self.ay**2 + self.az**2)
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"axis must be a unit vector, got |I| = {n}")

    def as_quaternion(self) -> Quaternion:
        return Quaternion(0.0, self.ax, self.ay, self.az)

    @staticmethod
    def from_quaternion(q: Quaternion) -> "SliceAxis":
        if abs(q.w) > 1e-12:
            raise ValueError("axis quaternion must be pure imaginary")
        return SliceAxis(q.x, q.y, q.z)


AXIS_I = SliceAxis(1.0, 0.0, 0.0)
AXIS_J = SliceAxis(0.0, 1.0, 0.0)
AXIS_K = SliceAxis(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class PolarForm:
    """(r, theta, phi, psi) with q0 = r cos(theta), axis angles (phi, psi).

    Ranges: r >= 0, theta in [0, 2*pi) (we always land in [0, pi] so that
    sin(theta) >= 0), phi in [0, pi], psi in [0, 2*pi).  The zero quaternion
    maps to all angles zero by convention.
    """

    r: float
    theta: float
    phi: float
    psi: float


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    return p * q


def conj_norm(q: Quaternion) -> tuple[Quaternion, float]:
    return q.conj(), q.norm()


# --- 2x2 complex representation -------------------------------------------

def to_matrix(q: Quaternion) -> np.ndarray:
    """[[w+iz, -y+ix], [y+ix, w-iz]]; a real-algebra homomorphism."""
    return np.array(
        [
            [q.w + 1j * q.z, -q.y + 1j * q.x],
            [q.y + 1j * q.x, q.w - 1j * q.z],
        ]
    )


def from_matrix(m: np.ndarray, tol: float = 1e-10) -> Quaternion:
    """Inverse of to_matrix; rejects matrices off the quaternion pattern."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise RepresentationError(f"expected 2x2 matrix, got shape {m.shape}")
    w = 0.5 * (m[0, 0] + m[1, 1]).real
    z = 0.5 * (m[0, 0] - m[1, 1]).imag
    y = 0.5 * (m[1, 0] - m[0, 1]).real
    x = 0.5 * (m[1, 0] + m[0, 1]).imag
    q = Quaternion(w, x, y, z)
    resid = np.abs(m - to_matrix(q)).max()
    scale = max(1.0, np.abs(m).max())
    if resid > tol * scale:
        raise RepresentationError(f"matrix violates quaternion pattern by {resid:g}")
    return q


def sigma_n(phi: float, psi: float) -> np.ndarray:
    """Unit-axis Pauli combination; hermitian with square identity."""
    return np.array(
        [
            [math.cos(phi), math.sin(phi) * np.exp(1j * psi)],
            [math.sin(phi) * np.exp(-1j * psi), -math.cos(phi)],
        ]
    )


# --- polar form and slices --------------------------------------------------

def polar(q: Quaternion) -> PolarForm:
    r = q.norm()
    if r == 0.0:
        return PolarForm(0.0, 0.0, 0.0, 0.0)
    s = math.sqrt(q.x**2 + q.y**2 + q.z**2)  # r*sin(theta) >= 0
    theta = math.atan2(s, q.w)
    if s == 0.0:
        return PolarForm(r, theta, 0.0, 0.0)
    phi = math.acos(min(1.0, max(-1.0, q.z / s)))
    psi = math.atan2(q.y, q.x)
    if psi < 0.0:
        psi += 2.0 * math.pi
    if q.x == 0.0 and q.y == 0.0:
        psi = 0.0
    return PolarForm(r, theta, phi, psi)


def unpolar(pf: PolarForm) -> Quaternion:
    st = math.sin(pf.theta)
    return Quaternion(
        pf.r * math.cos(pf.theta),
        pf.r * st * math.sin(pf.phi) * math.cos(pf.psi),
        pf.r * st * math.sin(pf.phi) * math.sin(pf.psi),
        pf.r * st * math.cos(pf.phi),
    )


def axis_of(pf: PolarForm) -> SliceAxis:
    return SliceAxis(
        math.sin(pf.phi) * math.cos(pf.psi),
        math.sin(pf.phi) * math.sin(pf.psi),
        math.cos(pf.phi),
    )


def slice_decompose(q: Quaternion) -> tuple[float, float, SliceAxis | None]:
    """q = x + I*y with y >= 0; the axis is None for real input."""
    y = math.sqrt(q.x**2 + q.y**2 + q.z**2)
    if y == 0.0:
        return q.w, 0.0, None
    return q.w, y, SliceAxis(q.x / y, q.y / y, q.z / y)


def exp_q(q: Quaternion) -> Quaternion:
    """exp within the slice of q: exp(x + I y) = e^x (cos y + I sin y)."""
    x, y, axis = slice_decompose(q)
    ex = math.exp(x)
    if axis is None:
        return Quaternion(ex)
    c, s = math.cos(y), math.sin(y)
    return Quaternion(ex * c, ex * s * axis.ax, ex * s * axis.ay, ex * s * axis.az)


def unit_phase(q: Quaternion) -> Quaternion:
    """q / |q|, the quaternion realizing the unit phase of the polar form."""
    n = q.norm()
    if n == 0.0:
        raise ZeroQuaternionError("unit_phase undefined at q = 0")
    return q / n


def slice_sqrt(q: Quaternion, fallback_axis: SliceAxis = AXIS_I) -> Quaternion:
    """Principal square root within the slice of q.

    The half angle keeps the result at nonnegative real part; a negative real
    q sits at angle pi and resolves toward +I with I taken from
    ``fallback_axis``.
    """
    x, y, axis = slice_decompose(q)
    if axis is None:
        if x >= 0.0:
            return Quaternion(math.sqrt(x))
        axis = fallback_axis
    r = q.norm()
    ang = math.atan2(y, x)  # in [0, pi]
    h = 0.5 * ang
    rt = math.sqrt(r)
    c, s = rt * math.cos(h), rt * math.sin(h)
    return Quaternion(c, s * axis.ax, s * axis.ay, s * axis.az)


def star_exp(p: Quaternion, q: Quaternion, tol: float = 1e-15,
             max_terms: int = 500) -> Quaternion:
    """Sum of p^m q^m / m!; majorized by e^{|p||q|} so truncation is safe."""
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    total = ONE
    pm = ONE
    qm = ONE
    coef = 1.0  # 1/m!
    bound = 1.0
    pq = p.norm() * q.norm()
    for m in range(1, max_terms + 1):
        pm = pm * p
        qm = qm * q
        coef /= m
        bound *= pq / m
        total = total + (pm * qm) * coef
        if bound < tol:
            break
    return total


def random_quaternion(rng: np.random.Generator, scale: float = 1.0) -> Quaternion:
    return Quaternion.from_array(rng.normal(0.0, scale, size=4))
