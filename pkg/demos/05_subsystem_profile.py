"""
Entropy versus subsystem size
=============================

At fixed L = 80 average S(l) over the steady window and fit
S = g0 sin(pi l/L) + g1 ln sin(pi l/L) + g2. A volume-law state is carried by
g0, a critical one by the logarithm.
"""

import numpy as np

from nhfloquet import ModelParams, ee_vs_subsystem, fit_subsystem_profile

PI = np.pi
L = 80

params = ModelParams(2.2 * PI, 2 * PI / 3, 0.4 * PI)
profile = ee_vs_subsystem(params, L)
fit = fit_subsystem_profile(profile, L)

ls = np.array([l for l, _ in profile])
s = np.array([v for _, v in profile])
model = fit.g0 * np.sin(PI * ls / L) + fit.g1 * np.log(np.sin(PI * ls / L)) + fit.g2
for l in (1, 10, 20, 40, 60, 79):
    print("l = %2d  S = %.4f  fit = %.4f" % (l, s[l - 1], model[l - 1]))
print("g0 = %.4f  g1 = %.4f  g2 = %.4f  rss = %.3g" % (fit.g0, fit.g1, fit.g2, fit.rss))
