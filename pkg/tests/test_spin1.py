import numpy as np
import pytest

from qudit_bloch.bases import ggm_basis
from qudit_bloch.spin1 import a_iso_qutrit, gellmann_from_spin, spin_operators, witness_expectation_terms
from qudit_bloch.states import bell_state, isotropic, random_density_matrix, random_pure_product_state
from qudit_bloch.witness import eval_witness, optimal_witness_iso


def anti(a, b):
    return a @ b + b @ a


def test_spin_algebra():
    s = spin_operators()
    assert s.hbar == 1
    np.testing.assert_allclose(s.sx @ s.sy - s.sy @ s.sx, 1j * s.sz, atol=1e-15)
    np.testing.assert_allclose(s.sy @ s.sz - s.sz @ s.sy, 1j * s.sx, atol=1e-15)
    casimir = s.sx @ s.sx + s.sy @ s.sy + s.sz @ s.sz
    np.testing.assert_allclose(casimir, 2 * np.eye(3), atol=1e-15)


def test_derived_observables_match_products():
    s = spin_operators()
    np.testing.assert_allclose(s.sx2, s.sx @ s.sx, atol=1e-15)
    np.testing.assert_allclose(s.sy2, s.sy @ s.sy, atol=1e-15)
    np.testing.assert_allclose(s.axy, anti(s.sx, s.sy), atol=1e-15)
    np.testing.assert_allclose(s.ayz, anti(s.sy, s.sz), atol=1e-15)
    np.testing.assert_allclose(s.azx, anti(s.sz, s.sx), atol=1e-15)


@pytest.mark.parametrize("label", ggm_basis(3).traceless_labels)
def test_gellmann_from_spin(label):
    np.testing.assert_allclose(gellmann_from_spin(label), ggm_basis(3)[label], atol=1e-12)


def test_gellmann_from_spin_bad_label():
    with pytest.raises(ValueError):
        gellmann_from_spin(("s", 1, 4))


def test_a_iso_matches_optimal_witness():
    np.testing.assert_allclose(a_iso_qutrit().operator, optimal_witness_iso(3).operator, atol=1e-12)


@pytest.mark.parametrize("seed", range(25))
def test_terms_reproduce_expectation(seed):
    rho = random_density_matrix(9, seed)
    report = witness_expectation_terms(rho)
    assert report.lambda_expectation == pytest.approx(report.lambda_direct, abs=1e-9)
    assert report.witness_expectation == pytest.approx(eval_witness(a_iso_qutrit(), rho), abs=1e-9)


def test_bell_values():
    report = witness_expectation_terms(bell_state(3))
    assert report.lambda_expectation == pytest.approx(16 / 3, abs=1e-12)
    assert report.witness_expectation == pytest.approx(-1 / np.sqrt(2), abs=1e-12)


def test_separable_values():
    assert witness_expectation_terms(isotropic(3, 0.25)).witness_expectation == pytest.approx(0, abs=1e-12)
    for seed in range(10):
        assert witness_expectation_terms(random_pure_product_state(3, seed)).witness_expectation >= -1e-12


def test_rows_and_shape_check():
    rows = witness_expectation_terms(np.eye(9) / 9).rows()
    assert len(rows) == 17
    assert rows[-1][0] == "<A_iso>"
    with pytest.raises(ValueError, match="9x9"):
        witness_expectation_terms(np.eye(4) / 4)
