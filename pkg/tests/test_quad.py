"""Polar quadrature: moments, Gram identity, resolution, reproducing kernel."""

import math

import numpy as np
import pytest

from qsqueeze.gates import SqueezeParams
from qsqueeze.ladder import build_ladder
from qsqueeze.quad import (
    CORRECTED,
    PAPER,
    MeasureSpec,
    QuadratureGrid,
    basis_values,
    gram,
    gram_identity_dev,
    kernel,
    kernel_vs_star_exp,
    moment,
    resolution_of_identity,
    resolution_report,
)
from qsqueeze.quaternion import Quaternion
from qsqueeze.states import TailMassError

GRID = QuadratureGrid()


def test_measure_spec_guard():
    with pytest.raises(ValueError):
        MeasureSpec("bogus")


def test_grid_size_guard():
    with pytest.raises(ValueError):
        QuadratureGrid(n_r=1)


def test_corrected_moments_are_factorials():
    for n in range(6):
        assert abs(moment(n, CORRECTED, GRID) - math.factorial(n)) <= 1e-9, n


def test_paper_measure_zeroth_moment_is_pi_to_three_halves():
    """The printed measure lacks the radial Jacobian: its total mass is
    pi^{3/2}, not 1."""
    assert abs(moment(0, PAPER, GRID) - math.pi ** 1.5) <= 1e-9


def test_moment_grid_doubling_stable():
    moment(4, CORRECTED, GRID, check_doubling=True, tol=1e-10)


def test_weights_positive_and_nodes_deterministic():
    r1, th1, ax1, w1 = GRID.polar_nodes(CORRECTED)
    r2, th2, ax2, w2 = QuadratureGrid().polar_nodes(CORRECTED)
    assert np.array_equal(r1, r2) and np.array_equal(w1, w2)
    assert (w1 > 0.0).all()
    # axis vectors are unit length
    assert np.abs(np.sum(ax1 * ax1, axis=1) - 1.0).max() <= 1e-12


def test_basis_values_de_moivre():
    r = np.array([0.7])
    th = np.array([1.1])
    ax = np.array([[0.0, 1.0, 0.0]])
    vals = basis_values(r, th, ax, 5)
    q = Quaternion(r[0] * math.cos(th[0]), 0.0, r[0] * math.sin(th[0]), 0.0)
    qn = Quaternion(1.0)
    for n in range(5):
        expected = qn / math.sqrt(math.factorial(n))
        assert (Quaternion.from_array(vals[n, 0]) - expected).norm() <= 1e-12
        qn = qn * q


def test_gram_identity_corrected():
    assert gram_identity_dev(8, CORRECTED, GRID) <= 1e-8


def test_gram_off_diagonals_vanish():
    g = gram(6, CORRECTED, GRID)
    g[np.arange(6), np.arange(6), 0] -= 1.0
    assert np.abs(g).max() <= 1e-9


def test_resolution_kernel_reading_is_identity():
    res = resolution_report(16, CORRECTED, GRID, block=12, kind="kernel")
    assert res["dev_identity"] <= 1e-6


def test_resolution_normalized_reading_double_counts():
    """Normalized states insert a second Gaussian; diagonal decays 2^-(n+1)."""
    res = resolution_of_identity(12, CORRECTED, GRID, kind="normalized")
    diag = res.entries[np.arange(12), np.arange(12), 0]
    expected = 0.5 ** (np.arange(12) + 1.0)
    assert np.abs(diag - expected).max() <= 1e-8


def test_resolution_invariant_under_squeeze():
    sp = SqueezeParams.from_quaternion(Quaternion(0.0, 0.3, 0.0, 0.0))
    res = resolution_report(16, CORRECTED, GRID, block=12, kind="kernel",
                            sp=sp, ladder=build_ladder(16))
    assert res["dev_squeezed"] <= 1e-6


def test_resolution_rejects_unknown_kind():
    with pytest.raises(ValueError):
        resolution_of_identity(8, CORRECTED, GRID, kind="projective")


def test_kernel_matches_star_exponential():
    q = Quaternion(0.5, 0.4, -0.3, 0.2)
    p = Quaternion(-0.2, 0.6, 0.1, 0.5)
    assert kernel_vs_star_exp(q, p, 40) <= 1e-12


def test_kernel_diagonal_is_exp():
    q = Quaternion(0.3, 0.0, 0.8, 0.0)
    val = kernel(q, q, 40)
    assert (val - Quaternion(math.exp(q.norm2()))).norm() <= 1e-12


def test_kernel_tail_guard():
    with pytest.raises(TailMassError):
        kernel(Quaternion(3.0), Quaternion(3.0), 6)


def test_kernel_reproducing_property():
    """integral of Phi_m(p) conj(Phi_m(q)) Phi_n(q) dzeta(q) = Phi_n(p)."""
    from qsqueeze.fock import qconj_arr, qmul_arr
    p = Quaternion(0.4, 0.0, 0.5, 0.0)
    grid = QuadratureGrid(12, 16, 8, 16)
    r, th, ax, w = grid.polar_nodes(CORRECTED)
    dim = 8
    vals = basis_values(r, th, ax, dim)
    n = 3
    # K(p, q) summed over the truncated basis, applied to Phi_n
    total = Quaternion(0.0)
    pk = Quaternion(1.0)
    for m in range(dim):
        overlap = np.sum(
            w[:, None] * qmul_arr(qconj_arr(vals[m]), vals[n]), axis=0)
        total = total + pk / math.sqrt(math.factorial(m)) \
            * Quaternion.from_array(overlap)
        pk = pk * p
    expected = Quaternion(1.0)
    for _ in range(n):
        expected = expected * p
    expected = expected / math.sqrt(math.factorial(n))
    assert (total - expected).norm() <= 1e-9
