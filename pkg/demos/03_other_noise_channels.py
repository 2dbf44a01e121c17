"""Beyond pure dephasing: bit-flip, amplitude-damping and depolarizing noise.

The first-order AGI slope for an arbitrary collapse operator L is
(Tr(L^dag L) - |Tr L|^2/d) / (d+1).  Relative to the dephasing slope this
gives exact ratios 1 (J_x), 2 (J_+ = J_x + i J_y) and 3 (J_x + J_y + J_z),
because trace-orthogonal traceless parts contribute additively.
"""

from quditbench.experiments import ExperimentSpec, run_experiment

spec = ExperimentSpec("channels-compare", dims=(2, 4, 6, 8), gamma_t_grid=(0.0, 1e-4, 11))
fits = run_experiment(spec).summary["fits"]

print(f"{'d':>3} {'c(Jz)':>10} {'c(Jx)/c(Jz)':>12} {'c(J+)/c(Jz)':>12} {'c(sum)/c(Jz)':>13}")
for d in spec.dims:
    base = fits[f"Jz:{d}"]["slope"]
    print(
        f"{d:>3} {base:>10.5f} "
        f"{fits[f'Jx:{d}']['slope'] / base:>12.6f} "
        f"{fits[f'Jplus:{d}']['slope'] / base:>12.6f} "
        f"{fits[f'JxJyJz:{d}']['slope'] / base:>13.6f}"
    )

print("\nJ_x is a rotated J_z, so its channel is unitarily equivalent (ratio 1);")
print("J_+ carries twice the trace norm, the three-axis sum three times.")
