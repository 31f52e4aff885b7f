"""System Hamiltonians, coupling operators and initial states.

Two-qubit operators use the product basis ``|11>, |10>, |01>, |00>`` (qubit 1
is the left tensor factor, the excited state ``|1>`` comes first for each
qubit). Single-qubit operators use ``|1>, |0>``.
"""

from dataclasses import dataclass

import numpy as np

from .operators import (IDENTITY_2, SIGMA_X, SIGMA_Z, as_matrix,
                        hermitian_eigenvalues, is_hermitian, kron)

TWO_QUBIT_BASIS = ("11", "10", "01", "00")

# index of each product state in TWO_QUBIT_BASIS
I11, I10, I01, I00 = range(4)


@dataclass(frozen=True)
class ModelSpec:
    h_sys: np.ndarray
    coupling: np.ndarray
    label: str = ""

    def __post_init__(self):
        h = as_matrix(self.h_sys)
        v = as_matrix(self.coupling)
        if h.shape != v.shape:
            raise ValueError("H_S and V must have the same dimension")
        if not (is_hermitian(h, 1e-12) and is_hermitian(v, 1e-12)):
            raise ValueError("H_S and V must be Hermitian")
        object.__setattr__(self, "h_sys", h)
        object.__setattr__(self, "coupling", v)

    @property
    def dim(self):
        return self.h_sys.shape[0]


@dataclass(frozen=True)
class InitialState:
    rho0: np.ndarray
    description: str = ""

    def __post_init__(self):
        rho = as_matrix(self.rho0)
        validate_density_matrix(rho)
        object.__setattr__(self, "rho0", rho)


def validate_density_matrix(rho, trace_tol=1e-12, herm_tol=1e-12, psd_tol=1e-10):
    """Raise ValueError unless ``rho`` is Hermitian, unit trace and PSD."""
    rho = as_matrix(rho)
    if not is_hermitian(rho, herm_tol):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > trace_tol:
        raise ValueError(f"density matrix trace is {np.trace(rho).real:.3g}, not 1")
    if hermitian_eigenvalues(rho)[-1] < -psd_tol:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def two_qubit_common_bath(w1=1.0, w2=1.0, a1=1.0, a2=1.0):
    """H_S = w1/2 sz(1) + w2/2 sz(2) and V = a1 sx(1) + a2 sx(2)."""
    h = 0.5 * w1 * kron(SIGMA_Z, IDENTITY_2) + 0.5 * w2 * kron(IDENTITY_2, SIGMA_Z)
    v = a1 * kron(SIGMA_X, IDENTITY_2) + a2 * kron(IDENTITY_2, SIGMA_X)
    return ModelSpec(h, v, label=f"two-qubit w=({w1:g},{w2:g}) a=({a1:g},{a2:g})")


def single_qubit(w=1.0):
    return ModelSpec(0.5 * w * SIGMA_Z, SIGMA_X.copy(), label=f"qubit w={w:g}")


def _pure(psi, description):
    psi = np.asarray(psi, dtype=complex)
    return InitialState(np.outer(psi, psi.conj()), description)


def single_excitation_state(c1, c2):
    """c1 |1>_1|0>_2 + c2 |0>_1|1>_2 as a density matrix."""
    norm = abs(c1) ** 2 + abs(c2) ** 2
    if abs(norm - 1) > 1e-10:
        raise ValueError(f"|c1|^2 + |c2|^2 = {norm:.12g}, expected 1")
    psi = np.zeros(4, dtype=complex)
    psi[I10] = c1
    psi[I01] = c2
    return _pure(psi, f"single excitation c1={complex(c1):.6g} c2={complex(c2):.6g}")


def ground_state_pair():
    psi = np.zeros(4, dtype=complex)
    psi[I00] = 1
    return _pure(psi, "|0>|0>")


def qubit_state(excited=True):
    """|1> (excited) or |0> for a single qubit."""
    psi = np.array([1, 0] if excited else [0, 1], dtype=complex)
    return _pure(psi, "|1>" if excited else "|0>")


# phi-minus is -|phi_->; the global sign drops out of the density matrix
_S2 = 1 / np.sqrt(2)
NAMED_AMPLITUDES = {
    "fig2": (1 / np.sqrt(5), 2 / np.sqrt(5)),
    "phi-minus": (_S2, -_S2),
    "phi-plus": (_S2, _S2),
}


def named_state(name):
    """Initial states addressable by name: ground-pair, fig2, phi-minus, phi-plus."""
    if name == "ground-pair":
        return ground_state_pair()
    try:
        c1, c2 = NAMED_AMPLITUDES[name]
    except KeyError:
        raise ValueError(f"unknown initial state {name!r}") from None
    return single_excitation_state(c1, c2)


def named_amplitudes(name):
    """(c1, c2) for single-excitation named states; None for ground-pair."""
    if name == "ground-pair":
        return None
    if name not in NAMED_AMPLITUDES:
        raise ValueError(f"unknown initial state {name!r}")
    return NAMED_AMPLITUDES[name]
