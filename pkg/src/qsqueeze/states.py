"""Coherent, pure squeezed and squeezed states plus the expectation engine.

States live as truncated right-coefficient vectors.  Closed-form moments
are provided next to the numeric engine so tests can confront them; the
divergent printed series for the squeezed vacuum is computed on purpose
(its failure is a documented finding, not a bug).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fock import FockVector, QOperator, inner, op_exp
from .gates import SqueezeParams, displacement, squeeze
from .ladder import LadderSet
from .quaternion import ONE, Quaternion, slice_decompose, slice_sqrt


class TailMassError(ValueError):
    """Coefficient mass beyond the truncation (or block) exceeds tolerance."""


@dataclass(frozen=True)
class ExpectationReport:
    mean_a: Quaternion
    mean_adag: Quaternion
    mean_x: Quaternion
    mean_y: Quaternion
    mean_n: Quaternion
    mean_n2: float
    var_x: float
    var_y: float
    var_n: float
    mandel_q: float | None


def expect(state: FockVector, op: QOperator) -> Quaternion:
    """<state | op state>; real for self-adjoint op up to rounding."""
    return inner(state, op.apply(state))


# --- state constructors --------------------------------------------------------

def coherent(q: Quaternion, dim: int, tol: float = 1e-10) -> FockVector:
    """Normalized coherent state, c_n = e^{-|q|^2/2} q^n / sqrt(n!)."""
    v = FockVector.zero(dim)
    c = Quaternion(math.exp(-0.5 * q.norm2()))
    for n in range(dim):
        v.coeffs[n] = c.to_array()
        c = c * q / math.sqrt(n + 1.0)
    tail = abs(1.0 - v.norm() ** 2)
    if tail > tol:
        need = max(dim * 2, int(4 * q.norm2()) + 16)
        raise TailMassError(
            f"tail mass {tail:.3e} beyond dim {dim} exceeds {tol:g}; "
            f"try dim >= {need}")
    return v


def kernel_coherent(q: Quaternion, dim: int) -> FockVector:
    """Unnormalized kernel vector e_q with c_n = q^n / sqrt(n!)."""
    v = FockVector.zero(dim)
    c = ONE
    for n in range(dim):
        v.coeffs[n] = c.to_array()
        c = c * q / math.sqrt(n + 1.0)
    return v


def pure_squeezed(sp: SqueezeParams, ladder: LadderSet,
                  tol: float = 1e-13) -> FockVector:
    """Squeeze the vacuum: the numeric reference state."""
    return squeeze(sp, ladder, tol).apply(FockVector.basis(ladder.dim, 0))


def pure_squeezed_series(sp: SqueezeParams, dim: int) -> FockVector:
    """Even-level closed form c_{2n} = (u tanh r)^n sqrt((2n)!)/(2^n n!) / sqrt(cosh r)."""
    v = FockVector.zero(dim)
    if sp.r == 0.0:
        v.coeffs[0, 0] = 1.0
        return v
    z = sp.u * math.tanh(sp.r)
    c = Quaternion(1.0 / math.sqrt(math.cosh(sp.r)))
    n = 0
    while 2 * n < dim:
        v.coeffs[2 * n] = c.to_array()
        # c_{2(n+1)} / c_{2n} = z * sqrt((2n+1)(2n+2)) / (2(n+1))
        c = c * z * (math.sqrt((2 * n + 1.0) * (2 * n + 2.0)) / (2.0 * (n + 1.0)))
        n += 1
    return v


def squeezed_state(sp: SqueezeParams, q: Quaternion, ladder: LadderSet,
                   tol: float = 1e-13) -> FockVector:
    """S(p) D(q) vacuum."""
    vac = FockVector.basis(ladder.dim, 0)
    return squeeze(sp, ladder, tol).apply(displacement(q, ladder, tol).apply(vac))


def displaced_squeezed(q: Quaternion, sp: SqueezeParams, ladder: LadderSet,
                       tol: float = 1e-13) -> FockVector:
    """D(q) S(p) vacuum (the other operator ordering)."""
    vac = FockVector.basis(ladder.dim, 0)
    return displacement(q, ladder, tol).apply(squeeze(sp, ladder, tol).apply(vac))


# --- printed-series cross-checks -------------------------------------------------

def scs_series_check(sp: SqueezeParams, ladder: LadderSet,
                     tol: float = 1e-13) -> dict:
    """Evaluate the printed squeezed-vacuum series against the exponential.

    The printed normal-ordered series carries a factor e^{n|p|^2} per term,
    so its term ratio tends to |p| e^{|p|^2} and the series diverges once
    that exceeds one; at any truncation it badly misses the true state.
    The three-factor form with the commutator kept as an operator is also
    evaluated.  Large deviations are the expected outcome and are returned,
    not raised.
    """
    if sp.r == 0.0:
        raise ValueError("series check needs p != 0")
    dim = ladder.dim
    r2 = sp.r * sp.r
    oracle = pure_squeezed(sp, ladder, tol)

    printed = FockVector.zero(dim)
    c = Quaternion(math.exp(0.25 * r2))
    partial_norms = []
    n = 0
    while 2 * n < dim:
        printed.coeffs[2 * n] = c.to_array()
        partial_norms.append(printed.norm())
        c = (c * sp.p * (math.exp(r2)
                         * math.sqrt((2 * n + 1.0) * (2 * n + 2.0))
                         / (2.0 * (n + 1.0))))
        n += 1

    # three-factor anti-normal form, commutator kept as the operator it is
    c_op = _half_quadratic(sp.p, ladder, up=True)
    d_op = _half_quadratic(sp.p.conj(), ladder, up=False)
    comm = (c_op @ d_op) - (d_op @ c_op)
    vac = FockVector.basis(dim, 0)
    anti = op_exp(comm.scale(-0.5), tol).apply(
        op_exp(-d_op, tol).apply(op_exp(c_op, tol).apply(vac)))

    return {
        "term_ratio_limit": sp.r * math.exp(r2),
        "partial_norms": partial_norms,
        "dev_printed": (printed - oracle).norm(),
        "dev_antinormal_factored": (anti - oracle).norm(),
    }


def _half_quadratic(p: Quaternion, ladder: LadderSet, up: bool) -> QOperator:
    from .fock import left_mul_op
    return left_mul_op(p, ladder.k_plus if up else ladder.k_minus)


# --- expectations ----------------------------------------------------------------

def expectations(state: FockVector, ladder: LadderSet,
                 block: int | None = None, tol: float = 1e-8) -> ExpectationReport:
    if abs(state.norm() - 1.0) > tol:
        raise ValueError(f"state norm {state.norm():.6g} is not 1 within {tol:g}")
    if block is not None and state.tail_mass(block) > tol:
        raise TailMassError(
            f"tail mass beyond block {block} is {state.tail_mass(block):.3e}")
    a, ad, n_op = ladder.a, ladder.a_dag, ladder.n_op
    x, y = ladder.x_op, ladder.y_op
    mean_a = expect(state, a)
    mean_adag = expect(state, ad)
    mean_x = expect(state, x)
    mean_y = expect(state, y)
    mean_n = expect(state, n_op)
    mean_x2 = expect(state, x @ x).real()
    mean_y2 = expect(state, y @ y).real()
    mean_n2 = expect(state, n_op @ n_op).real()
    var_x = mean_x2 - mean_x.real() ** 2
    var_y = mean_y2 - mean_y.real() ** 2
    var_n = mean_n2 - mean_n.real() ** 2
    mandel = var_n / mean_n.real() - 1.0 if mean_n.real() > 1e-12 else None
    return ExpectationReport(mean_a, mean_adag, mean_x, mean_y, mean_n,
                             mean_n2, var_x, var_y, var_n, mandel)


def pure_squeezed_closed_forms(sp: SqueezeParams) -> dict:
    """The hyperbolic moment formulas for the squeezed vacuum.

    cos(theta) below is the real part of the unit phase u; the variance
    product therefore depends on (r, theta) only even though u has three
    angle parameters.
    """
    r = sp.r
    u = sp.u if sp.u is not None else ONE
    ch2, sh2 = math.cosh(2 * r), math.sinh(2 * r)
    cos_t = u.w
    sin_t2 = 1.0 - cos_t * cos_t
    sh = math.sinh(r)
    var_x = 0.25 * (ch2 + sh2 * cos_t)
    var_y = 0.25 * (ch2 - sh2 * cos_t)
    return {
        "mean_aadag": math.cosh(r) ** 2,
        "mean_adaga": sh * sh,
        "mean_a2": u * (math.cosh(r) * sh),
        "mean_adag2": u.conj() * (math.cosh(r) * sh),
        "var_x": var_x,
        "var_y": var_y,
        "var_product": (1.0 + sh2 * sh2 * sin_t2) / 16.0,
        "mean_n": sh * sh,
        "mean_n2": 3.0 * sh**4 + 2.0 * sh * sh,
        "var_n": 2.0 * sh * sh * (1.0 + sh * sh),
        "mandel_q": 1.0 + 2.0 * sh * sh,
    }


def uv_quadratures(sp: SqueezeParams, ladder: LadderSet) -> tuple[QOperator, QOperator]:
    """Rotated quadratures U, V built from the half-angle phase of u.

    U = (ubar^{1/2}. a + u^{1/2}. a+)/2 and V = -(I/2).(ubar^{1/2}. a -
    u^{1/2}. a+) with I the slice axis of u (the ladder axis when u is
    real).  On the squeezed vacuum these realize the extremal variance
    pair e^{+-2r}/4.
    """
    from .fock import left_mul_op
    u = sp.u if sp.u is not None else ONE
    _, yy, axis = slice_decompose(u)
    if axis is None:
        axis = ladder.axis
    uh = slice_sqrt(u, fallback_axis=axis)
    ub = uh.conj()
    u_op = (left_mul_op(ub, ladder.a) + left_mul_op(uh, ladder.a_dag)).scale(0.5)
    half_axis = Quaternion(0.0, axis.ax, axis.ay, axis.az) / 2.0
    v_op = (left_mul_op(-half_axis * ub, ladder.a)
            + left_mul_op(half_axis * uh, ladder.a_dag))
    return u_op, v_op


def uv_quadrature_check(sp: SqueezeParams, ladder: LadderSet,
                        block: int | None = None) -> dict:
    if sp.r == 0.0:
        raise ValueError("quadrature rotation needs p != 0")
    if block is None:
        block = ladder.dim - 16
    state = pure_squeezed(sp, ladder)
    u_op, v_op = uv_quadratures(sp, ladder)
    mu = expect(state, u_op).real()
    mv = expect(state, v_op).real()
    var_u = expect(state, u_op @ u_op).real() - mu * mu
    var_v = expect(state, v_op @ v_op).real() - mv * mv
    r = sp.r
    return {
        "block": block,
        "var_u": var_u,
        "var_v": var_v,
        "expected_var_u": 0.25 * math.exp(2 * r),
        "expected_var_v": 0.25 * math.exp(-2 * r),
        "product": var_u * var_v,
        "expected_product": 1.0 / 16.0,
        "ideally_squeezed": var_v < 0.25,
    }


def mandel_q(state: FockVector, ladder: LadderSet,
             block: int | None = None) -> float:
    rep = expectations(state, ladder, block)
    if rep.mandel_q is None:
        raise ValueError("Mandel Q undefined: <N> vanishes (vacuum input)")
    return rep.mandel_q
