import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qudit_bloch.bases import IDENTITY, Family, get_basis, ggm_basis, pob_basis, wob_basis
from qudit_bloch.bloch import (
    BlochVector,
    InvalidStateError,
    check_density_matrix,
    combine,
    decompose,
    decompose_bipartite,
    expand_standard_ggb,
    expand_standard_pob,
    expand_standard_wob,
    purity,
    radius,
    radius_bound,
    reconstruct,
)
from qudit_bloch.states import bell_state, isotropic, random_density_matrix, random_pure_state

FAMILIES = list(Family)


def unit(d, j, k):
    m = np.zeros((d, d), dtype=complex)
    m[j, k] = 1
    return m


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("d", [2, 3, 5])
def test_maximally_mixed_is_origin(family, d):
    b = decompose(np.eye(d) / d, family)
    np.testing.assert_allclose(b.components, 0, atol=1e-15)
    assert b.radius < 1e-15


def test_qubit_ground_state_ggm():
    # |1><1| = 1/2 + b3 sigma_3 gives b3 = 1/2
    b = decompose(np.diag([1.0, 0.0]), "ggm")
    np.testing.assert_allclose(b.components, [0, 0, 0.5])


def test_component_lengths_and_labels():
    b = decompose(np.eye(3) / 3, "wob")
    assert len(b.components) == 8
    assert b.labels[0] == (0, 1)
    assert decompose(np.eye(3) / 3, "pob").labels[:3] == ((1, -1), (1, 0), (1, 1))


def test_bloch_vector_length_check():
    with pytest.raises(ValueError):
        BlochVector("ggm", 3, np.zeros(7))


def test_reconstruct_zero_vector():
    rec = reconstruct(BlochVector("pob", 4, np.zeros(15)))
    np.testing.assert_allclose(rec.matrix, np.eye(4) / 4)
    assert rec.is_state


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("d", range(2, 7))
def test_round_trip(family, d):
    n = 100 if d <= 5 else 20
    for seed in range(n):
        rho = random_density_matrix(d, seed)
        rec = reconstruct(decompose(rho, family))
        assert rec.is_state
        np.testing.assert_allclose(rec.matrix, rho, atol=1e-9)


@pytest.mark.parametrize("d", range(2, 7))
def test_cross_family_consistency(d):
    rho = random_density_matrix(d, 99)
    mats = [reconstruct(decompose(rho, f)).matrix for f in FAMILIES]
    for m in mats[1:]:
        np.testing.assert_allclose(m, mats[0], atol=1e-12)


def test_outside_ball_is_flagged():
    comps = np.zeros(8)
    comps[-1] = 0.9  # along lambda^2, beyond sqrt(1/3)
    b = BlochVector("ggm", 3, comps)
    assert b.radius > radius_bound("ggm", 3)
    rec = reconstruct(b)
    assert not rec.is_state
    assert rec.min_eigenvalue < 0


def test_reconstruct_rejects_non_hermitian_vector():
    comps = np.zeros(8, dtype=complex)
    comps[0] = 0.1j
    with pytest.raises(InvalidStateError) as exc:
        reconstruct(BlochVector("ggm", 3, comps))
    assert exc.value.failures == ["hermitian"]


@pytest.mark.parametrize(
    "family,d,bound",
    [("ggm", 3, np.sqrt(1 / 3)), ("wob", 3, np.sqrt(2) / 3), ("pob", 2, 1 / np.sqrt(2)), ("ggm", 2, 0.5), ("pob", 3, np.sqrt(2 / 3))],
)
def test_radius_bounds(family, d, bound):
    assert radius_bound(family, d) == pytest.approx(bound)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("d", range(2, 6))
def test_pure_states_on_surface(family, d):
    bound = radius_bound(family, d)
    for seed in range(200):
        b = decompose(random_pure_state(d, seed), family)
        assert radius(b) == pytest.approx(bound, abs=1e-9)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("d", range(2, 6))
def test_mixed_states_inside(family, d):
    for seed in range(20):
        b = decompose(random_density_matrix(d, seed), family)
        assert radius(b) < radius_bound(family, d)


@pytest.mark.parametrize("d", range(2, 7))
def test_ggm_components_real(d):
    for seed in range(20):
        b = decompose(random_density_matrix(d, seed), "ggm")
        assert np.max(np.abs(b.components.imag)) < 1e-9


@pytest.mark.parametrize("d", range(2, 7))
def test_wob_conjugation_rule(d):
    for seed in range(20):
        b = decompose(random_density_matrix(d, seed), "wob")
        for (n, m), c in b.items():
            partner = ((-n) % d, (-m) % d)
            w = np.exp(-2j * np.pi * n * m / d)
            assert np.conj(c) == pytest.approx(w * b[partner], abs=1e-9)


@pytest.mark.parametrize("d", range(2, 7))
def test_pob_conjugation_rule(d):
    # observed relation for the adopted convention: conj(b_LM) = (-1)^M b_{L,-M}
    for seed in range(20):
        b = decompose(random_density_matrix(d, seed), "pob")
        for (L, M), c in b.items():
            assert np.conj(c) == pytest.approx((-1) ** M * b[(L, -M)], abs=1e-9)


@pytest.mark.parametrize("family", FAMILIES)
def test_purity_matches_bloch_length(family):
    for d in range(2, 6):
        rho = random_density_matrix(d, d)
        b = decompose(rho, family)
        assert purity(rho) == pytest.approx(1 / d + get_basis(family, d).norm * radius(b) ** 2, abs=1e-12)


def test_purity_examples():
    assert purity(np.eye(3) / 3) == pytest.approx(1 / 3)
    assert purity(bell_state(3)) == pytest.approx(1)
    assert purity(isotropic(3, 0.5)) == pytest.approx(1 / 3)


def test_check_density_matrix_reports_all_failures():
    with pytest.raises(InvalidStateError) as exc:
        check_density_matrix(np.diag([2.0, -0.5]))
    assert exc.value.failures == ["trace", "positive"]
    with pytest.raises(InvalidStateError) as exc:
        check_density_matrix(np.array([[0.5, 0.1], [0.0, 0.5]]))
    assert "hermitian" in exc.value.failures
    with pytest.raises(InvalidStateError):
        check_density_matrix(np.ones((2, 3)) / 2)
    with pytest.raises(InvalidStateError):
        decompose(np.diag([1.2, -0.2]), "ggm")


# -- standard matrix expansions ------------------------------------------------


def test_ggb_offdiagonal_expansion():
    c = expand_standard_ggb(3, 1, 2)
    assert c == {("s", 1, 2): 0.5, ("a", 1, 2): 0.5j}
    assert expand_standard_ggb(3, 2, 1) == {("s", 1, 2): 0.5, ("a", 1, 2): -0.5j}


@pytest.mark.parametrize("d", range(2, 9))
def test_ggb_last_diagonal_expansion(d):
    c = expand_standard_ggb(d, d, d)
    assert set(c) == {("d", d - 1), IDENTITY}
    assert c[("d", d - 1)] == pytest.approx(-np.sqrt(d * (d - 1) / 2) / d)
    assert c[IDENTITY] == pytest.approx(1 / d)


def test_ggb_qutrit_corner():
    c = expand_standard_ggb(3, 3, 3)
    assert c[("d", 2)] == pytest.approx(-np.sqrt(3) / 3)


@pytest.mark.parametrize("d", range(2, 7))
def test_ggb_expansion_reconstructs(d):
    for j in range(1, d + 1):
        for k in range(1, d + 1):
            m = combine("ggm", d, expand_standard_ggb(d, j, k))
            np.testing.assert_allclose(m, unit(d, j - 1, k - 1), atol=1e-12)


@pytest.mark.parametrize("d", range(2, 7))
def test_pob_expansion_reconstructs(d):
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            coeffs = expand_standard_pob(d, i, j)
            assert len(coeffs) == d * d
            np.testing.assert_allclose(combine("pob", d, coeffs), unit(d, i - 1, j - 1), atol=1e-12)


def test_pob_qubit_projector():
    c = expand_standard_pob(2, 1, 1)
    assert c[(0, 0)] == pytest.approx(1 / np.sqrt(2))
    assert c[(1, 0)] == pytest.approx(1 / np.sqrt(2))
    assert c[(1, 1)] == 0 and c[(1, -1)] == 0


def test_pob_selection_rule():
    # |1><3| in d=3 has m_1 - m_3 = 2, so only M = 2 survives
    c = expand_standard_pob(3, 1, 3)
    assert all(v == 0 for (L, M), v in c.items() if M != 2)
    assert c[(2, 2)] == pytest.approx(1.0)


def test_wob_expansion_examples():
    c = expand_standard_wob(2, 0, 0)
    assert set(c) == {(0, 0), (1, 0)}
    assert c[(0, 0)] == pytest.approx(0.5) and c[(1, 0)] == pytest.approx(0.5)
    c = expand_standard_wob(3, 0, 1)
    assert set(c) == {(0, 1), (1, 1), (2, 1)}
    assert all(v == pytest.approx(1 / 3) for v in c.values())


@pytest.mark.parametrize("d", range(2, 7))
def test_wob_expansion_reconstructs(d):
    for j in range(d):
        for k in range(d):
            np.testing.assert_allclose(combine("wob", d, expand_standard_wob(d, j, k)), unit(d, j, k), atol=1e-12)


@pytest.mark.parametrize("fn,bad", [(expand_standard_ggb, (3, 0, 1)), (expand_standard_pob, (3, 1, 4)), (expand_standard_wob, (3, 3, 0))])
def test_expansion_index_errors(fn, bad):
    with pytest.raises(ValueError):
        fn(*bad)


# -- bipartite ------------------------------------------------------------------


@pytest.mark.parametrize("family", FAMILIES)
def test_bipartite_maximally_mixed(family):
    dec = decompose_bipartite(np.eye(9) / 9, family)
    assert np.all(np.abs(dec.n_coeffs) < 1e-15)
    assert np.all(np.abs(dec.m_coeffs) < 1e-15)
    assert np.all(np.abs(dec.c_matrix) < 1e-15)
    assert dec.identity_coeff == pytest.approx(1 / 9)


def test_bipartite_bell_qubits_ggm():
    dec = decompose_bipartite(bell_state(2), "ggm")
    np.testing.assert_allclose(dec.n_coeffs, 0, atol=1e-15)
    np.testing.assert_allclose(dec.m_coeffs, 0, atol=1e-15)
    np.testing.assert_allclose(dec.c_matrix, np.diag([0.25, -0.25, 0.25]), atol=1e-15)


def test_bipartite_bell_qubits_wob():
    # U_01 x U_01 + U_10 x U_10 + U_11 x U_11, each with weight 1/4
    dec = decompose_bipartite(bell_state(2), "wob")
    np.testing.assert_allclose(dec.c_matrix, np.eye(3) / 4, atol=1e-15)


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("alpha_kind", ["low", "zero", "mid", "one"])
def test_bipartite_isotropic_structure(d, alpha_kind):
    alpha = {"low": -1 / (d * d - 1), "zero": 0.0, "mid": 0.6, "one": 1.0}[alpha_kind]
    rho = isotropic(d, alpha)
    for family in FAMILIES:
        dec = decompose_bipartite(rho, family)
        np.testing.assert_allclose(dec.n_coeffs, 0, atol=1e-12)
        np.testing.assert_allclose(dec.m_coeffs, 0, atol=1e-12)
        labels = dec.labels
        expected = np.zeros_like(dec.c_matrix)
        for a, lab in enumerate(labels):
            if family is Family.GGM:
                expected[a, a] = (-1 if lab[0] == "a" else 1) * alpha / (2 * d)
            elif family is Family.POB:
                expected[a, a] = alpha / d
            else:
                expected[a, labels.index(((-lab[0]) % d, lab[1]))] = alpha / d**2
        np.testing.assert_allclose(dec.c_matrix, expected, atol=1e-12)
        np.testing.assert_allclose(dec.reconstruct(), rho, atol=1e-12)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("d", [2, 3])
def test_bipartite_reconstruction_random(family, d):
    rho = random_density_matrix(d * d, 5)
    np.testing.assert_allclose(decompose_bipartite(rho, family).reconstruct(), rho, atol=1e-12)


def test_bipartite_requires_square_dimension():
    with pytest.raises(ValueError, match="d\\^2"):
        decompose_bipartite(np.eye(6) / 6, "ggm")


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.sampled_from(FAMILIES), st.integers(0, 2**32 - 1))
def test_round_trip_property(d, family, seed):
    rho = random_density_matrix(d, seed)
    np.testing.assert_allclose(reconstruct(decompose(rho, family)).matrix, rho, atol=1e-9)
