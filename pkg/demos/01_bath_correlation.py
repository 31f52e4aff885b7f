"""The Lorentzian bath as a sum of two exponentials.

At zero temperature the cavity-shaped spectral density gives a correlation
function with a single complex decay rate. Its real and imaginary parts each
split into two exponentials with rates gamma -+ i*omega0, and those two rates
are what label the two hierarchy indices.
"""

import numpy as np
from scipy.integrate import quad

from lorentz_heom.bath import LorentzBath, correlation, decompose, spectral_density

bath = LorentzBath(lam=0.01, gamma=0.05)
d = decompose(bath)

print("rates nu_k:            ", d.nu)
print("real-part coefficients:", d.real_coeffs)
print("imag-part coefficients:", d.imag_coeffs)

# The decomposition is algebraically exact.
t = np.linspace(0, 200, 1000)
err = np.max(np.abs(d.reconstruct(t) - correlation(bath, t)))
print(f"max reconstruction error on [0, 200]: {err:.1e}")

# The total weight of the spectral density is the coupling strength.
total, _ = quad(lambda w: spectral_density(bath, w), -np.inf, np.inf)
print(f"integral of J(omega): {total:.12f}  (lambda = {bath.lam})")

# Narrowing the cavity line stretches the bath memory.
for gamma in (0.5, 0.05, 0.005):
    memory = 1 / gamma
    print(f"gamma = {gamma:<6g} memory time 1/gamma = {memory:g}")
