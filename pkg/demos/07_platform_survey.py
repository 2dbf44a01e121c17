"""Which published qudit platforms beat which qubit platforms?

The bundled survey lists decoherence times and gate times of real devices.
A qudit platform wins when its figure-of-merit ratio against the qubit
reference exceeds the critical curve (d^2-1)/(3 log2 d); the same curve
gives the largest dimension that would still be advantageous.
"""

from quditbench import max_advantageous_dimension
from quditbench.platforms import load_records, platform_report

records = load_records()
reference = next(r for r in records if r.label == "superconducting qubits")
print(f"reference platform: {reference.label}, tau = {reference.tau:.2e}\n")

for row in platform_report(records, reference):
    ratio = row["tau_ratio"]
    ratio_txt = "unknown" if ratio is None else f"{ratio:9.3g}"
    print(
        f"{row['label']:>40} (d={row['d']:2d}): tau ratio {ratio_txt}  "
        f"critical {row['critical_ratio']:8.3f}  -> {row['verdict']}"
    )

print("\nlargest advantageous dimension vs achievable tau ratio:")
for ratio in (1, 10, 100, 1000):
    print(f"  ratio {ratio:5d}: d up to {max_advantageous_dimension(ratio):6.1f}")
