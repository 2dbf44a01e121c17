"""How fast does a noisy qudit lose gate fidelity?

A single d-level system under pure dephasing (collapse operator J_z) loses
average gate fidelity linearly in gamma*t, with slope d(d-1)/12.  This
script computes the exact channel for a range of dimensions, fits the
slopes, and compares them with the closed form.
"""

import numpy as np

from quditbench import (
    NoiseModel,
    Operator,
    agi_exact,
    c_qudit_dephasing,
    fit_slope,
    identity,
    liouvillian,
    propagate,
    spin_z,
)

grid = np.linspace(0.0, 1e-4, 11)
print(f"gamma*t grid: [0, {grid.max():g}] with {grid.size} points\n")
print(f"{'d':>3} {'fitted slope':>14} {'d(d-1)/12':>12} {'rel. error':>12} {'1-R^2':>10}")

for d in range(2, 13, 2):
    h = Operator(np.zeros((d, d)))
    generator = liouvillian(h, NoiseModel.single(1.0, spin_z(d)))
    agis = [agi_exact(propagate(generator, gt), identity(d)) for gt in grid]
    fit = fit_slope(grid, agis)
    c_th = c_qudit_dephasing(d)
    print(
        f"{d:>3} {fit.slope_c:>14.8f} {c_th:>12.6f} "
        f"{abs(1 - fit.slope_c / c_th):>12.2e} {fit.one_minus_r2:>10.2e}"
    )

print(
    "\nThe infidelity rate grows quadratically with the qudit dimension:"
    " every extra level adds noise channels faster than it adds Hilbert space."
)
