"""Lorentz-broadened cavity bath at zero temperature.

The correlation function of a Lorentzian coupling spectrum with the cavity in
vacuum is a single complex exponential,

    C(t) = lam * exp(-(gamma + i*omega0) t),

and its real and imaginary parts split into two exponentials with exponents
nu_1 = gamma - i*omega0 and nu_2 = gamma + i*omega0. These two exponents are
what give the hierarchy its two-dimensional index.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LorentzBath:
    """Coupling strength ``lam``, broadening ``gamma`` and centre ``omega0``.

    All quantities are in units where omega0 = 1 and hbar = 1 unless the
    caller chooses otherwise.
    """

    lam: float
    gamma: float
    omega0: float = 1.0

    def __post_init__(self):
        for name in ("lam", "gamma", "omega0"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.lam <= 0:
            raise ValueError("lam must be positive")
        if self.gamma < 0:
            raise ValueError("gamma must be non-negative")
        if self.omega0 <= 0:
            raise ValueError("omega0 must be positive")


@dataclass(frozen=True)
class ExponentialDecomposition:
    """C^R(t) = sum_k real_coeffs[k] e^{-nu[k] t}, likewise for C^I(t)."""

    nu: tuple
    real_coeffs: tuple
    imag_coeffs: tuple

    def real_part(self, t):
        t = np.asarray(t, dtype=float)
        return sum(c * np.exp(-n * t) for c, n in zip(self.real_coeffs, self.nu))

    def imag_part(self, t):
        t = np.asarray(t, dtype=float)
        return sum(c * np.exp(-n * t) for c, n in zip(self.imag_coeffs, self.nu))

    def reconstruct(self, t):
        """C^R(t) + i C^I(t)."""
        return self.real_part(t) + 1j * self.imag_part(t)


def spectral_density(bath, omega):
    """Lorentzian J(omega) = lam*gamma / (pi*((omega - omega0)^2 + gamma^2))."""
    if bath.gamma == 0:
        raise ValueError("spectral density is a delta distribution at gamma = 0")
    omega = np.asarray(omega, dtype=float)
    return bath.lam * bath.gamma / (np.pi * ((omega - bath.omega0) ** 2 + bath.gamma ** 2))


def correlation(bath, t):
    """Zero-temperature bath correlation C(t) for t >= 0."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("correlation is defined here for t >= 0 only")
    return bath.lam * np.exp(-(bath.gamma + 1j * bath.omega0) * t)


def decompose(bath):
    """Two-term exponential split of Re C and Im C.

    nu_k = gamma + (-1)^k i omega0, real coefficients lam/2 and imaginary
    coefficients (-1)^k lam/(2i), for k = 1, 2.
    """
    g, w, lam = bath.gamma, bath.omega0, bath.lam
    nu = (complex(g, -w), complex(g, w))
    real_coeffs = (complex(lam / 2), complex(lam / 2))
    imag_coeffs = (-lam / 2j, lam / 2j)
    return ExponentialDecomposition(nu=nu, real_coeffs=real_coeffs,
                                    imag_coeffs=imag_coeffs)
