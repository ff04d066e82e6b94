"""
Real-quasienergy ratio along J1 and gamma
=========================================

R is the fraction of the Brillouin zone with real quasienergy. R = 1 means the
whole spectrum is real, R = 0 means every mode is amplified or damped.
"""

import numpy as np

from nhfloquet import Axis, KGrid, ModelParams, classify_pt, sweep_pt_diagram

PI = np.pi

# A cut along J1 at fixed (J2, gamma): the spectrum keeps turning real and complex again
cells = sweep_pt_diagram(Axis("j1", 0.01 * PI, 2.99 * PI, 150), None, ModelParams(0, 0.1 * PI, 0.5 * PI), KGrid(2048))
r = np.array([c.r_ratio for c in cells])
j1 = np.array([c.values[0] for c in cells]) / PI

edges = np.nonzero(np.diff(r == 1.0))[0]
print("J1/pi where R = 1 switches on or off:", np.round(0.5 * (j1[edges] + j1[edges + 1]), 3))

# Along gamma at (2.2pi, 2pi/3) real quasienergies vanish and then return
for g in (0.4, 0.9, 1.3):
    d = classify_pt(ModelParams(2.2 * PI, 2 * PI / 3, g * PI))
    print("gamma = %.1fpi: R = %.4f  gap = %.4f  %s" % (g, d.r_ratio, d.dissipation_gap, d.phase.value))
