"""
Area law or volume law
======================

Fit the steady half-chain entropy against L. A finite slope g is a volume
law; g = 0 is an area law. Runs take a few tens of seconds per point.
"""

import os

import numpy as np

from nhfloquet import ModelParams, classify_entanglement, ee_vs_system_size, fit_volume_law

PI = np.pi
workers = int(os.environ.get("NHFLOQUET_WORKERS", "1"))

for g in (0.4, 0.9):
    params = ModelParams(2.2 * PI, 2 * PI / 3, g * PI)
    points = ee_vs_system_size(params, sizes=(40, 80, 120, 160), workers=workers)
    fit = fit_volume_law([(p.l_cells, p.s_mean) for p in points])
    print("gamma = %.1fpi" % g)
    for p in points:
        print("   L = %3d  S = %.4f +- %.4f" % p)
    print("   g = %.4g +- %.2g  ->  %s" % (fit.g, fit.g_stderr, classify_entanglement(fit).value))
