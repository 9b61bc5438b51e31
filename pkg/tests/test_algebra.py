"""The 24-dimensional bracket algebra: round trips, closure, Jacobi."""

import numpy as np
import pytest

from qsqueeze.algebra import (
    GENERATORS,
    AlgebraElement,
    bracket_h24,
    bracket_tau,
    decompose,
    jacobi_residual,
    realize,
    structure_constants,
)
from qsqueeze.fock import commutator, left_mul_op
from qsqueeze.quaternion import QI


def _unit(tau, gen):
    return AlgebraElement.unit(tau, GENERATORS.index(gen))


def test_element_shape_guard():
    with pytest.raises(ValueError):
        AlgebraElement(np.zeros((4, 5)))


def test_realize_unit_generators(ladder64):
    gens = {"id": ladder64.identity, "n": ladder64.n_op, "a": ladder64.a,
            "a_dag": ladder64.a_dag, "a2": ladder64.a @ ladder64.a,
            "adag2": ladder64.a_dag @ ladder64.a_dag}
    for name, op in gens.items():
        assert realize(_unit(0, name), ladder64).block_dev(op, 64) == 0.0
    # tau scaling applies on the left
    got = realize(_unit(1, "a"), ladder64)
    assert got.block_dev(left_mul_op(QI, ladder64.a), 64) == 0.0


def test_decompose_round_trip(ladder64, rng):
    coeffs = rng.normal(size=(4, 6))
    elem = AlgebraElement(coeffs)
    back, resid = decompose(realize(elem, ladder64), ladder64)
    assert np.abs(back.coeffs - coeffs).max() <= 1e-12
    assert resid <= 1e-10


def test_bracket_tau_su11_shape(ladder64):
    """[i.K-like pieces] stay within the {1, i} sub-algebra."""
    a = _unit(1, "adag2").scale(0.5)
    b = _unit(1, "a2").scale(0.5)
    out = bracket_tau(a, b, 1, ladder64)
    assert out.supported_on({0, 1}, tol=1e-10)


def test_bracket_tau_rejects_off_block(ladder64):
    a = _unit(2, "a")  # j-component, not in {1, i}
    with pytest.raises(ValueError):
        bracket_tau(a, _unit(0, "a_dag"), 1, ladder64)


def test_bracket_closure_on_degree_two(ladder64, rng):
    """Random elements bracket back into the 24-dimensional span."""
    e1 = AlgebraElement(rng.normal(size=(4, 6)))
    e2 = AlgebraElement(rng.normal(size=(4, 6)))
    res = bracket_h24(e1, e2, ladder64)
    assert res["residual"] <= 1e-8


def test_bracket_two_printed_forms_agree(ladder64, rng):
    """Distributing [A1,B1] as three thirds changes nothing."""
    e1 = AlgebraElement(rng.normal(size=(4, 6)))
    e2 = AlgebraElement(rng.normal(size=(4, 6)))
    res = bracket_h24(e1, e2, ladder64)
    assert res["formula_agreement"] <= 1e-10


def test_bracket_drops_cross_terms(ladder64):
    """For operands on different tau blocks the stated bracket omits the
    [A_tau, B_tau'] cross term, so it differs from the full commutator."""
    e1 = _unit(1, "a")     # i . a
    e2 = _unit(2, "a_dag")  # j . a+
    res = bracket_h24(e1, e2, ladder64)
    assert res["element"].max_abs() <= 1e-10  # stated bracket vanishes
    assert res["dev_from_full_commutator"] > 0.5  # the commutator does not


def test_structure_constants_match_commutators(ladder64):
    table = structure_constants(ladder64)
    # [a, a_dag] = id
    e = table["[a,a_dag]"]
    assert abs(e["coeffs"][0][GENERATORS.index("id")] - 1.0) <= 1e-10
    assert e["residual"] <= 1e-10
    # [n, a] = -a
    e = table["[n,a]"]
    assert abs(e["coeffs"][0][GENERATORS.index("a")] + 1.0) <= 1e-10
    # [a2, adag2] = 4n + 2 id (positive sign)
    e = table["[a2,adag2]"]
    assert abs(e["coeffs"][0][GENERATORS.index("n")] - 4.0) <= 1e-9
    assert abs(e["coeffs"][0][GENERATORS.index("id")] - 2.0) <= 1e-9


def test_degree_three_products_not_in_span(ladder64):
    """a^3 does not decompose in the degree-<=2 basis."""
    a3 = ladder64.a @ ladder64.a @ ladder64.a
    _, resid = decompose(a3, ladder64)
    assert resid > 1.0


def test_jacobi_identity(ladder64, rng):
    """Jacobi holds for elements on a single {1, tau} block, where the
    stated bracket coincides with the true commutator."""
    def on_block(t):
        c = np.zeros((4, 6))
        c[0] = rng.normal(size=6) * 0.5
        c[t] = rng.normal(size=6) * 0.5
        return AlgebraElement(c)
    a, b, c = on_block(1), on_block(1), on_block(1)
    assert jacobi_residual(a, b, c, ladder64) <= 1e-7
