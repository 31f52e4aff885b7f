import numpy as np
import pytest

from lorentz_heom import models
from lorentz_heom.observables import concurrence
from lorentz_heom.operators import commutator


SWAP = np.eye(4)[[0, 2, 1, 3]]


def test_basis_order():
    assert models.TWO_QUBIT_BASIS == ("11", "10", "01", "00")
    assert (models.I11, models.I10, models.I01, models.I00) == (0, 1, 2, 3)


def test_resonant_two_qubit_model():
    m = models.two_qubit_common_bath(1, 1, 1, 1)
    np.testing.assert_array_equal(m.h_sys, np.diag([1, 0, 0, -1]))
    assert m.coupling[models.I00, models.I01] == 1
    assert m.coupling[models.I00, models.I10] == 1
    assert m.coupling[models.I00, models.I11] == 0
    assert m.dim == 4


def test_closed_and_detuned():
    assert np.all(models.two_qubit_common_bath(1, 1, 0, 0).coupling == 0)
    m = models.two_qubit_common_bath(1, 0.5)
    np.testing.assert_allclose(m.h_sys, np.diag([0.75, 0.25, -0.25, -0.75]))


def test_swap_symmetry():
    m = models.two_qubit_common_bath(1, 1, 0.7, 0.7)
    np.testing.assert_array_equal(SWAP @ m.coupling @ SWAP, m.coupling)
    np.testing.assert_array_equal(SWAP @ m.h_sys @ SWAP, m.h_sys)


def test_single_qubit():
    m = models.single_qubit(1.0)
    np.testing.assert_array_equal(m.h_sys, np.diag([0.5, -0.5]))
    np.testing.assert_array_equal(m.coupling @ m.coupling, np.eye(2))
    assert np.abs(commutator(m.h_sys, m.coupling)).max() > 0


def test_model_rejects_non_hermitian():
    with pytest.raises(ValueError):
        models.ModelSpec(np.array([[0, 1], [0, 0]]), np.eye(2))


def test_fig2_state_overlap_with_dark_state():
    s = models.single_excitation_state(1 / np.sqrt(5), 2 / np.sqrt(5))
    phi_minus = np.zeros(4)
    phi_minus[models.I01], phi_minus[models.I10] = 1 / np.sqrt(2), -1 / np.sqrt(2)
    assert np.real(phi_minus @ s.rho0 @ phi_minus) == pytest.approx(0.1, abs=1e-15)


def test_single_excitation_examples():
    s = models.single_excitation_state(1 / np.sqrt(2), -1 / np.sqrt(2))
    assert concurrence(s.rho0) == pytest.approx(1, abs=1e-12)
    p = models.single_excitation_state(1, 0)
    assert p.rho0[models.I10, models.I10] == 1
    assert concurrence(p.rho0) == pytest.approx(0, abs=1e-12)
    with pytest.raises(ValueError):
        models.single_excitation_state(1, 1)


def test_ground_pair():
    g = models.ground_state_pair()
    assert np.trace(g.rho0) == 1
    assert g.rho0[models.I00, models.I00] == 1
    assert concurrence(g.rho0) == 0


@pytest.mark.parametrize("name", ["ground-pair", "fig2", "phi-minus", "phi-plus"])
def test_named_states_valid(name):
    rho = models.named_state(name).rho0
    models.validate_density_matrix(rho)


def test_named_state_unknown():
    with pytest.raises(ValueError):
        models.named_state("bogus")


def test_validate_density_matrix_rejects():
    with pytest.raises(ValueError):
        models.validate_density_matrix(np.diag([0.5, 0.4]))
    with pytest.raises(ValueError):
        models.validate_density_matrix(np.diag([1.5, -0.5]))
    with pytest.raises(ValueError):
        models.validate_density_matrix(np.array([[0.5, 0.1], [0.2, 0.5]]))
