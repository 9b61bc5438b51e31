"""Ladder, number, quadrature and su(1,1) operators on the truncated space."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import ProtectedBlock, QOperator, commutator, left_mul_op, right_mul_op, qmax_abs
from .quaternion import AXIS_I, Quaternion, SliceAxis


@dataclass(frozen=True)
class LadderSet:
    """The concrete operators built once per (dim, axis)."""

    dim: int
    axis: SliceAxis
    a: QOperator
    a_dag: QOperator
    n_op: QOperator
    x_op: QOperator
    y_op: QOperator
    k_plus: QOperator
    k_minus: QOperator
    k_zero: QOperator

    @property
    def identity(self) -> QOperator:
        return QOperator.identity(self.dim)


def build_ladder(dim: int, axis: SliceAxis = AXIS_I) -> LadderSet:
    """a[n-1][n] = sqrt(n); everything else derived. Entries of a, a_dag are
    real, so quaternion scalars commute with them to machine precision."""
    if dim < 4:
        raise ValueError("dim must be at least 4")
    am = np.zeros((dim, dim))
    ns = np.arange(1, dim)
    am[ns - 1, ns] = np.sqrt(ns)
    a = QOperator.from_real(am)
    a_dag = QOperator.from_real(am.T)
    n_op = a_dag @ a
    x_op = (a + a_dag).scale(0.5)
    half_axis = Quaternion(0.0, axis.ax, axis.ay, axis.az) / 2.0
    y_op = left_mul_op(-half_axis, a - a_dag)
    k_plus = (a_dag @ a_dag).scale(0.5)
    k_minus = (a @ a).scale(0.5)
    k_zero = (n_op + QOperator.identity(dim).scale(0.5)).scale(0.5)
    return LadderSet(dim, axis, a, a_dag, n_op, x_op, y_op, k_plus, k_minus, k_zero)


def check_scalar_commute(q: Quaternion, ladder: LadderSet) -> dict:
    """Max entrywise deviation of q.A - A.q for A in {a, a_dag}."""
    dev_a = qmax_abs(
        (left_mul_op(q, ladder.a) - right_mul_op(ladder.a, q)).entries)
    dev_adag = qmax_abs(
        (left_mul_op(q, ladder.a_dag) - right_mul_op(ladder.a_dag, q)).entries)
    return {"dev_a": dev_a, "dev_a_dag": dev_adag,
            "max_dev": max(dev_a, dev_adag)}


def check_su11(ladder: LadderSet, block: ProtectedBlock) -> dict:
    """[K0,K+] = K+, [K0,K-] = -K-, [K+,K-] = -2 K0 on the block."""
    if block.margin < 4:
        raise ValueError("su(1,1) checks need margin >= 4")
    nb = block.size
    kp, km, k0 = ladder.k_plus, ladder.k_minus, ladder.k_zero
    return {
        "k0_kplus": commutator(k0, kp).block_dev(kp, nb),
        "k0_kminus": commutator(k0, km).block_dev(-km, nb),
        "kplus_kminus": commutator(kp, km).block_dev(k0.scale(-2.0), nb),
    }


def check_xy(ladder: LadderSet, block: ProtectedBlock) -> dict:
    """X, Y self-adjoint; [X,Y] = (axis/2) . I on the block."""
    nb = block.size
    x, y = ladder.x_op, ladder.y_op
    half_axis = ladder.axis.as_quaternion() / 2.0
    target = left_mul_op(half_axis, ladder.identity)
    return {
        "x_selfadjoint": qmax_abs((x.adjoint() - x).entries),
        "y_selfadjoint": qmax_abs((y.adjoint() - y).entries),
        "xy_commutator": commutator(x, y).block_dev(target, nb),
    }


def check_bracket_table(ladder: LadderSet, block: ProtectedBlock) -> dict:
    """The eight degree-<=2 bracket identities, entrywise on the block.

    [a^2, (a+)^2] acts as +(4n+2) on level n, so its coefficient is
    +2(2N+I); the often-quoted -2(2N+I) is sign-flipped and reported under
    the _printed key (see the discrepancy ledger).
    """
    nb = block.size
    a, ad, n = ladder.a, ladder.a_dag, ladder.n_op
    ident = ladder.identity
    a2 = a @ a
    ad2 = ad @ ad
    return {
        "a_adag": commutator(a, ad).block_dev(ident, nb),
        "a_n": commutator(a, n).block_dev(a, nb),
        "adag_n": commutator(ad, n).block_dev(-ad, nb),
        "a2_adag2": commutator(a2, ad2).block_dev(
            (n.scale(2.0) + ident).scale(2.0), nb),
        "a2_adag2_printed": commutator(a2, ad2).block_dev(
            (n.scale(2.0) + ident).scale(-2.0), nb),
        "a2_adag": commutator(a2, ad).block_dev(a.scale(2.0), nb),
        "adag2_a": commutator(ad2, a).block_dev(ad.scale(-2.0), nb),
        "a2_n": commutator(a2, n).block_dev(a2.scale(2.0), nb),
        "adag2_n": commutator(ad2, n).block_dev(ad2.scale(-2.0), nb),
    }
