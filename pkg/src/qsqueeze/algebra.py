"""The 24-dimensional real Lie algebra spanned by tau . G for tau in
{1,i,j,k} and G in {I, N, a, a+, a^2, (a+)^2}, realized on the truncated
space.

Elements are (4, 6) real coefficient arrays.  Brackets are computed by
realizing the pieces as operators, commutating, and projecting back onto
the realized basis by least squares on a protected block (the last rows
of a^2 and (a+)^2 are truncation-polluted and must not vote).
"""

from __future__ import annotations

import numpy as np

from .fock import QOperator, commutator, left_mul_op
from .ladder import LadderSet
from .quaternion import ONE, QI, QJ, QK

GENERATORS = ("id", "n", "a", "a_dag", "a2", "adag2")
TAUS = (ONE, QI, QJ, QK)
TAU_NAMES = ("1", "i", "j", "k")


class NonClosureError(ValueError):
    """A bracket result does not decompose in the 24-element basis."""


class AlgebraElement:
    """Real coefficients, rows indexed by tau and columns by generator."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: np.ndarray):
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (4, 6):
            raise ValueError("coeffs must have shape (4, 6)")
        self.coeffs = coeffs

    @staticmethod
    def zero() -> "AlgebraElement":
        return AlgebraElement(np.zeros((4, 6)))

    @staticmethod
    def unit(tau_idx: int, gen_idx: int, value: float = 1.0) -> "AlgebraElement":
        e = AlgebraElement.zero()
        e.coeffs[tau_idx, gen_idx] = value
        return e

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.coeffs + other.coeffs)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.coeffs - other.coeffs)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(-self.coeffs)

    def scale(self, s: float) -> "AlgebraElement":
        return AlgebraElement(self.coeffs * s)

    def real_part(self) -> "AlgebraElement":
        out = np.zeros((4, 6))
        out[0] = self.coeffs[0]
        return AlgebraElement(out)

    def tau_part(self, tau_idx: int) -> "AlgebraElement":
        out = np.zeros((4, 6))
        out[tau_idx] = self.coeffs[tau_idx]
        return AlgebraElement(out)

    def max_abs(self) -> float:
        return float(np.abs(self.coeffs).max())

    def supported_on(self, tau_indices: set[int], tol: float = 0.0) -> bool:
        others = [t for t in range(4) if t not in tau_indices]
        return bool(np.abs(self.coeffs[others]).max(initial=0.0) <= tol)


def _generator_ops(ladder: LadderSet) -> tuple[QOperator, ...]:
    return (ladder.identity, ladder.n_op, ladder.a, ladder.a_dag,
            ladder.a @ ladder.a, ladder.a_dag @ ladder.a_dag)


def realize(e: AlgebraElement, ladder: LadderSet) -> QOperator:
    gens = _generator_ops(ladder)
    out = QOperator.zero(ladder.dim)
    for t in range(4):
        for g in range(6):
            c = e.coeffs[t, g]
            if c != 0.0:
                out = out + left_mul_op(TAUS[t] * c, gens[g])
    return out


def decompose(op: QOperator, ladder: LadderSet, block: int | None = None,
              tol: float = 1e-9) -> tuple[AlgebraElement, float]:
    """Least-squares projection onto the realized basis, block entries only.

    Returns (element, residual); residual is the max block deviation between
    op and the realized reconstruction.  Callers decide whether a residual
    above tol means failure.
    """
    if block is None:
        block = ladder.dim - 8
    basis = []
    for t in range(4):
        for g in range(6):
            basis.append(realize(AlgebraElement.unit(t, g), ladder)
                         .block(block).ravel())
    mat = np.stack(basis, axis=1)
    rhs = op.block(block).ravel()
    sol, *_ = np.linalg.lstsq(mat, rhs, rcond=None)
    elem = AlgebraElement(sol.reshape(4, 6))
    resid = op.block_dev(realize(elem, ladder), block)
    return elem, resid


def bracket_tau(a: AlgebraElement, b: AlgebraElement, tau_idx: int,
                ladder: LadderSet, block: int | None = None,
                tol: float = 1e-9) -> AlgebraElement:
    """Commutator bracket on the {1, tau} sub-algebra; closure enforced."""
    if tau_idx not in (1, 2, 3):
        raise ValueError("tau must index i, j or k")
    allowed = {0, tau_idx}
    if not (a.supported_on(allowed) and b.supported_on(allowed)):
        raise ValueError("operands must be supported on the {1, tau} blocks")
    op = commutator(realize(a, ladder), realize(b, ladder))
    elem, resid = decompose(op, ladder, block, tol)
    if resid > tol:
        raise NonClosureError(f"bracket residual {resid:.3e} exceeds {tol:g}")
    if not elem.supported_on(allowed, tol=tol):
        raise NonClosureError("bracket left the {1, tau} sub-algebra")
    return elem


def bracket_h24(a: AlgebraElement, b: AlgebraElement, ladder: LadderSet,
                block: int | None = None, tol: float = 1e-9) -> dict:
    """The printed 24-dimensional bracket, both stated forms.

    Form one: [A1,B1] + sum_tau [A1,Btau] + sum_tau [Atau, B1+Btau].
    Form two distributes [A1,B1] as three thirds over the tau sum.  Both
    drop the cross terms [Atau, Btau'] for tau != tau', so the result can
    differ from the plain operator commutator; that difference is reported.
    """
    a1, b1 = realize(a.real_part(), ladder), realize(b.real_part(), ladder)
    op = commutator(a1, b1)
    for t in (1, 2, 3):
        at = realize(a.tau_part(t), ladder)
        bt = realize(b.tau_part(t), ladder)
        op = op + commutator(a1, bt) + commutator(at, b1 + bt)

    op_alt = QOperator.zero(ladder.dim)
    third = commutator(a1, b1).scale(1.0 / 3.0)
    for t in (1, 2, 3):
        at = realize(a.tau_part(t), ladder)
        bt = realize(b.tau_part(t), ladder)
        op_alt = op_alt + third + commutator(a1, bt) + commutator(at, b1 + bt)

    elem, resid = decompose(op, ladder, block, tol)
    if resid > tol:
        raise NonClosureError(f"bracket residual {resid:.3e} exceeds {tol:g}")
    full = commutator(realize(a, ladder), realize(b, ladder))
    nb = block if block is not None else ladder.dim - 8
    return {
        "element": elem,
        "residual": resid,
        "formula_agreement": op.block_dev(op_alt, nb),
        "dev_from_full_commutator": op.block_dev(full, nb),
    }


def jacobi_residual(a: AlgebraElement, b: AlgebraElement, c: AlgebraElement,
                    ladder: LadderSet, block: int | None = None) -> float:
    """Max coefficient of [A,[B,C]] + [C,[A,B]] + [B,[C,A]]."""
    def br(x, y):
        return bracket_h24(x, y, ladder, block)["element"]
    total = (br(a, br(b, c)) + br(c, br(a, b)) + br(b, br(c, a)))
    return total.max_abs()


def structure_constants(ladder: LadderSet, block: int | None = None) -> dict:
    """Pairwise generator brackets as coefficient tables (for documentation)."""
    table = {}
    for gi, gname in enumerate(GENERATORS):
        for hj, hname in enumerate(GENERATORS):
            if hj <= gi:
                continue
            elem, resid = decompose(
                commutator(*(realize(AlgebraElement.unit(0, g), ladder)
                             for g in (gi, hj))),
                ladder, block)
            table[f"[{gname},{hname}]"] = {
                "coeffs": [[float(v) for v in row] for row in elem.coeffs],
                "residual": resid,
            }
    return table
