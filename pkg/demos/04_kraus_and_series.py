"""Truncated Kraus channels and the perturbative expansion, order by order.

Two complementary approximations of the weak-noise Lindblad channel:

  * the first-order Kraus pair E_0 = 1 - (gamma t/2) L^dag L, E_1 = sqrt(gamma t) L,
    accurate to O((gamma t)^2);
  * the density-matrix series rho* + sum_{l,k} rho_lk gamma^l t^k, whose
    truncation error falls off one power per retained order.

Both are checked against exact propagation.
"""

import numpy as np

from quditbench import (
    DensityMatrix,
    NoiseModel,
    Operator,
    apply_channel,
    kraus_first_order,
    liouvillian,
    perturbative_expansion,
    propagate,
    spin_z,
)

d = 4
noise = NoiseModel.single(1.0, spin_z(d))
generator = liouvillian(Operator(np.zeros((d, d))), noise)
rho = DensityMatrix.pure(np.ones(d))

print("residual of the first-order Kraus channel (should fall as (gamma t)^2):")
for gt in (1e-5, 1e-4, 1e-3):
    exact = apply_channel(propagate(generator, gt), rho)
    approx = kraus_first_order(spin_z(d), gt).apply(rho)
    diff = np.abs(exact.entries - approx.entries).max()
    print(f"  gamma*t = {gt:7.0e}: max residual {diff:.3e}   residual/(gamma t)^2 = {diff / gt**2:.3f}")

ks = kraus_first_order(spin_z(d), 1e-3)
defect = np.abs(ks.completeness_defect()).max()
print(f"\ncompleteness defect at gamma*t = 1e-3: {defect:.3e} (exactly (gamma t)^2 (L^dag L)^2 / 4)")

print("\nperturbative series truncation error vs order, at gamma*t = 0.02:")
gt = 0.02
exact = apply_channel(propagate(generator, gt), rho)
for order in (1, 2, 3):
    approx = perturbative_expansion(rho, Operator(np.zeros((d, d))), noise, 1.0, gt, order)
    print(f"  order {order}: max residual {np.abs(exact.entries - approx.entries).max():.3e}")
