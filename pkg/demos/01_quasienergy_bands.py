"""
Quasienergy bands of the quenched chain
=======================================

Evaluate the two Floquet bands +-E(k) on a k grid, compare them with the
eigenvalues of the explicit Bloch operator, and look at where they turn complex.
"""

import numpy as np

from nhfloquet import ModelParams, bloch_floquet, quasienergy

PI = np.pi

# couplings are half-period products, so J1 = 2.2pi means several full turns
params = ModelParams(j1=2.2 * PI, j2=2 * PI / 3, gamma=1.3 * PI)
k = np.linspace(-PI, PI, 9, endpoint=False)
q = quasienergy(params, k)

print("     k      Re E+      Im E+      cos E")
for row in zip(k, q.e_plus.real, q.e_plus.imag, q.cos_e):
    print("%+8.4f  %9.5f  %9.5f  %9.4f" % row)

# exp(-iE) and exp(+iE) are the eigenvalues of U(k) itself
u = bloch_floquet(params, k)
lam = np.linalg.eigvals(u)
ref = np.stack([np.exp(-1j * q.e_plus), np.exp(1j * q.e_plus)], axis=-1)
err = max(
    min(np.abs(np.sort_complex(a) - np.sort_complex(b)).max(), np.abs(np.sort_complex(a) - np.sort_complex(b[::-1])).max())
    for a, b in zip(lam, ref)
)
print("\nlargest eigenvalue mismatch: %.2e" % err)

# |cos E| > 1 marks a complex pair: one mode grows, its partner decays
print("nodes with complex E:", int(np.sum(np.abs(q.cos_e) > 1)), "of", len(k))
