"""Quadrature over H in polar coordinates (r, theta, phi, psi).

Integrands here are trigonometric/Gaussian-polynomial, so the composite
rule — Gauss-Laguerre in t = r^2, trapezoid in the periodic angles,
Gauss-Legendre in cos(phi) — is exact once the grid covers the degree;
grid-doubling is still checked because callers choose the sizes.

Two radial measures ship.  The printed one, (1/4pi) e^{-r^2} sin(phi),
lacks the polar Jacobian factor r and normalizes the zeroth moment to
pi^{3/2}; the corrected one, (1/4pi^2) r e^{-r^2} sin(phi), gives the
monomial moments n! that orthonormality of the basis demands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_genlaguerre, roots_laguerre, roots_legendre

from .fock import QOperator, qmul_arr, qconj_arr
from .gates import SqueezeParams, squeeze
from .ladder import LadderSet
from .quaternion import Quaternion, star_exp
from .states import TailMassError


class GridConvergenceError(RuntimeError):
    """Doubling the grid moved the result more than the stability budget."""


@dataclass(frozen=True)
class MeasureSpec:
    """variant 'paper' or 'corrected'; see the module docstring."""

    variant: str

    def __post_init__(self):
        if self.variant not in ("paper", "corrected"):
            raise ValueError(f"unknown measure variant {self.variant!r}")

    @property
    def normalization(self) -> float:
        return 1.0 / (4.0 * math.pi) if self.variant == "paper" \
            else 1.0 / (4.0 * math.pi ** 2)

    @property
    def radial_weight(self) -> str:
        return "exp(-r^2)" if self.variant == "paper" else "r exp(-r^2)"


PAPER = MeasureSpec("paper")
CORRECTED = MeasureSpec("corrected")


class QuadratureGrid:
    """Node/weight factory; nodes are deterministic for fixed sizes."""

    def __init__(self, n_r: int = 20, n_theta: int = 36, n_phi: int = 16,
                 n_psi: int = 36):
        if min(n_r, n_theta, n_phi, n_psi) < 2:
            raise ValueError("grid sizes must be at least 2")
        self.n_r = n_r
        self.n_theta = n_theta
        self.n_phi = n_phi
        self.n_psi = n_psi

    def doubled(self) -> "QuadratureGrid":
        return QuadratureGrid(2 * self.n_r, 2 * self.n_theta,
                              2 * self.n_phi, 2 * self.n_psi)

    def sizes(self) -> dict:
        return {"n_r": self.n_r, "n_theta": self.n_theta,
                "n_phi": self.n_phi, "n_psi": self.n_psi}

    def polar_nodes(self, measure: MeasureSpec):
        """Flattened (r, theta, axis, weight) arrays in a fixed order.

        Radial rule: t = r^2 turns r e^{-r^2} dr into (1/2) e^{-t} dt
        (plain Gauss-Laguerre) and e^{-r^2} dr into (1/2) t^{-1/2} e^{-t} dt
        (generalized, alpha = -1/2).
        """
        if measure.variant == "corrected":
            t, wr = roots_laguerre(self.n_r)
        else:
            t, wr = roots_genlaguerre(self.n_r, -0.5)
        r1 = np.sqrt(t)
        wr = 0.5 * wr

        th = 2.0 * math.pi * np.arange(self.n_theta) / self.n_theta
        wth = np.full(self.n_theta, 2.0 * math.pi / self.n_theta)
        ps = 2.0 * math.pi * np.arange(self.n_psi) / self.n_psi
        wps = np.full(self.n_psi, 2.0 * math.pi / self.n_psi)
        cphi, wphi = roots_legendre(self.n_phi)  # cos(phi), sin absorbed

        R, TH, CP, PS = np.meshgrid(r1, th, cphi, ps, indexing="ij")
        W = (wr[:, None, None, None] * wth[None, :, None, None]
             * wphi[None, None, :, None] * wps[None, None, None, :])
        R, TH, CP, PS = (x.ravel() for x in (R, TH, CP, PS))
        W = measure.normalization * W.ravel()
        sphi = np.sqrt(np.clip(1.0 - CP**2, 0.0, None))
        axis = np.stack([sphi * np.cos(PS), sphi * np.sin(PS), CP], axis=1)
        return R, TH, axis, W


def basis_values(r: np.ndarray, theta: np.ndarray, axis: np.ndarray,
                 dim: int) -> np.ndarray:
    """Phi_n(q) = q^n/sqrt(n!) at every node, shape (dim, N, 4).

    Powers via the in-slice de Moivre rule: q^n = r^n (cos n.theta
    + sin n.theta * axis).
    """
    npts = r.shape[0]
    vals = np.empty((dim, npts, 4))
    inv_sqrt_fact = 1.0
    for n in range(dim):
        if n > 0:
            inv_sqrt_fact /= math.sqrt(n)
        rn = r**n * inv_sqrt_fact
        vals[n, :, 0] = rn * np.cos(n * theta)
        vals[n, :, 1:] = (rn * np.sin(n * theta))[:, None] * axis
    return vals


def moment(n: int, measure: MeasureSpec, grid: QuadratureGrid,
           check_doubling: bool = False, tol: float = 1e-10) -> float:
    """The radial moment integral of |q|^{2n} against the measure."""
    r, _, _, w = grid.polar_nodes(measure)
    val = float(np.sum(w * r ** (2 * n)))
    if check_doubling:
        r2, _, _, w2 = grid.doubled().polar_nodes(measure)
        val2 = float(np.sum(w2 * r2 ** (2 * n)))
        if abs(val - val2) > tol / 10.0:
            raise GridConvergenceError(
                f"moment {n} moved by {abs(val - val2):.3e} under doubling")
    return val


def gram(dim: int, measure: MeasureSpec, grid: QuadratureGrid) -> np.ndarray:
    """G[m][n] = integral of conj(Phi_m) Phi_n, as a (dim, dim, 4) array."""
    r, th, axis, w = grid.polar_nodes(measure)
    vals = basis_values(r, th, axis, dim)
    g = np.empty((dim, dim, 4))
    for m in range(dim):
        cm = qconj_arr(vals[m])
        for n in range(dim):
            g[m, n] = np.sum(w[:, None] * qmul_arr(cm, vals[n]), axis=0)
    return g


def gram_identity_dev(dim: int, measure: MeasureSpec,
                      grid: QuadratureGrid) -> float:
    g = gram(dim, measure, grid)
    g[np.arange(dim), np.arange(dim), 0] -= 1.0
    return float(np.abs(g).max())


def resolution_of_identity(dim: int, measure: MeasureSpec,
                           grid: QuadratureGrid,
                           kind: str = "kernel") -> QOperator:
    """Integrate the coherent projectors |c_q><c_q| against the measure.

    kind 'kernel' uses the unnormalized vectors with coefficients
    q^n/sqrt(n!) — the reading under which the corrected measure (whose
    Gaussian is the squared normalization) returns the identity.  kind
    'normalized' inserts e^{-|q|^2/2} per side literally; combined with a
    Gaussian-carrying measure it double-counts the weight and the diagonal
    decays as 2^{-(n+1)}, which is reported by the caller, not hidden here.
    """
    if kind not in ("kernel", "normalized"):
        raise ValueError(f"unknown state kind {kind!r}")
    r, th, axis, w = grid.polar_nodes(measure)
    vals = basis_values(r, th, axis, dim)
    if kind == "normalized":
        w = w * np.exp(-r**2)
    out = np.empty((dim, dim, 4))
    for m in range(dim):
        for n in range(dim):
            prod = qmul_arr(vals[m], qconj_arr(vals[n]))
            out[m, n] = np.sum(w[:, None] * prod, axis=0)
    return QOperator(out)


def resolution_report(dim: int, measure: MeasureSpec, grid: QuadratureGrid,
                      block: int, kind: str = "kernel",
                      sp: SqueezeParams | None = None,
                      ladder: LadderSet | None = None) -> dict:
    """Deviation of the resolution operator from the identity on the block,
    optionally conjugated by a squeeze (which must leave it invariant)."""
    res = resolution_of_identity(dim, measure, grid, kind)
    ident = QOperator.identity(dim)
    rep = {
        "measure_variant": measure.variant,
        "kind": kind,
        "grid": grid.sizes(),
        "block": block,
        "dev_identity": res.block_dev(ident, block),
    }
    if sp is not None and ladder is not None:
        if ladder.dim != dim:
            raise ValueError("ladder dim must match resolution dim")
        s = squeeze(sp, ladder)
        rep["dev_squeezed"] = (s @ res @ s.adjoint()).block_dev(ident, block)
    return rep


def kernel(q: Quaternion, p: Quaternion, dim: int,
           tol: float = 1e-10) -> Quaternion:
    """Partial sum of the reproducing kernel sum Phi_n(q) conj(Phi_n(p))."""
    total = Quaternion(0.0)
    qn = Quaternion(1.0)
    pn = Quaternion(1.0)
    inv_fact = 1.0
    for n in range(dim):
        if n > 0:
            qn = qn * q
            pn = pn * p
            inv_fact /= n
        total = total + (qn * pn.conj()) * inv_fact
    bound = (q.norm() * p.norm()) ** dim / math.factorial(dim) \
        * math.exp(q.norm() * p.norm())
    if bound > tol:
        raise TailMassError(f"kernel tail bound {bound:.3e} exceeds {tol:g}")
    return total


def kernel_vs_star_exp(q: Quaternion, p: Quaternion, dim: int) -> float:
    return (kernel(q, p, dim) - star_exp(q, p.conj())).norm()
