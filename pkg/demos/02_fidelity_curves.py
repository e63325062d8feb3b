"""
Best process fidelity per step count, coin set by coin set
===========================================================

For each number of steps T, brute-force the best bit string and report
how close its coin channel gets to the fully depolarizing target. Four
two-coin sets plus the plain Hadamard walk are compared side by side:

  {H, 1}   reaches fidelity 1 from T = 3 on
  {H, Z}   tracks {H, 1} exactly (a sigma_z coin only reshuffles phases)
  {H, X}   first reaches 1 at T = 5, misses again at T = 6
  {H, F}   the Fourier coin never quite gets there
  {H}      a single coin saturates well below 1
"""

from walkmeg import (
    CoinSequence,
    FOURIER,
    HADAMARD,
    IDENTITY,
    PAULI_X,
    PAULI_Z,
    brute_force,
    sequence_fidelity,
)

SETS = [
    ("{H, 1}", HADAMARD, IDENTITY),
    ("{H, Z}", HADAMARD, PAULI_Z),
    ("{H, X}", HADAMARD, PAULI_X),
    ("{H, F}", HADAMARD, FOURIER),
]

header = f"{'T':>3}" + "".join(f" {name:>12}" for name, _, _ in SETS) + f" {'{H} only':>12}"
print(header)
for T in range(2, 13):
    cells = []
    for _, coin0, coin1 in SETS:
        best = brute_force(T, coin0, coin1).best_fidelity
        cells.append(f"{best:12.8f}")
    solo = sequence_fidelity(CoinSequence(HADAMARD, HADAMARD, "0" * T))
    print(f"{T:>3} " + " ".join(cells) + f" {solo:12.8f}")

print()
print("optimal strings found for {H, 1}:")
for T in range(3, 9):
    result = brute_force(T, HADAMARD, IDENTITY)
    shown = ", ".join(result.optimal_bits[:4])
    extra = "" if result.count_optimal <= 4 else f", ... ({result.count_optimal} total)"
    print(f"  T={T}: {shown}{extra}")