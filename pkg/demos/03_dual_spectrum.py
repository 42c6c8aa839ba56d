"""The two interlaced bound-state families of the attractive potential.

Regular (Rydberg) states sit at E1/n^2; between every pair an anomalous
Bessel-K state sits at E1/(n+1/2)^2.  The anomalous states are even,
finite but non-smooth at the origin, and -- unusually for eigenstates of
a symmetric operator -- not orthogonal to each other.
"""

import mpmath as mp

from coulomb1d import (
    anomalous_norm,
    anomalous_wavefunction,
    overlap,
    poly_pair,
    regular_wavefunction,
    spectrum,
)

print("# interlaced spectrum (energies in units of E1)")
merged = sorted(spectrum("regular", 4) + spectrum("anomalous", 4),
                key=lambda s: -s.energy)
for s in merged:
    print(f"{s.kind:>9} n={s.n}  eta_n={mp.nstr(s.eta_n, 4):>5}  "
          f"E/E1={mp.nstr(s.energy, 8)}")

print()
print("# integer polynomial pairs feeding the anomalous states")
for n in range(4):
    pq = poly_pair(n)
    print(f"n={n}: p={pq.p_coeffs}  q={pq.q_coeffs}")

print()
print("# normalization integers beta_n (3, 41, 1063, ...)")
with mp.workdps(30):
    for n in range(3):
        norm, beta = anomalous_norm(n)
        print(f"n={n}: half-line norm {mp.nstr(norm, 10)}, "
              f"beta = {mp.nstr(beta, 12)}")

print()
print("# wavefunction profiles near the origin (xi kinks, zeta vanishes)")
for u in ("0.01", "0.5", "2.0"):
    u = mp.mpf(u)
    print(f"u={mp.nstr(u, 3)}: zeta_1={mp.nstr(regular_wavefunction(1, u), 6)}"
          f"  xi_0={mp.nstr(anomalous_wavefunction(0, u), 6)}")

print()
print("# non-orthogonality: half-line overlaps at lambda = -2")
with mp.workdps(30):
    states = spectrum("anomalous", 3)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        v = overlap(states[i], states[j], "half_line", lam=-2)
        print(f"<xi_{i}|xi_{j}> = {mp.nstr(v, 10)}")
