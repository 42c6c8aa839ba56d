"""Quantifying the anomalous family's non-orthogonality.

Two complementary diagnostics: the boundary hermiticity defects Delta_np
(the surface terms that break the usual orthogonality argument), and the
Gram matrix of the normalized states, whose eigen-decomposition builds
an orthonormal family out of them.
"""

import mpmath as mp
import numpy as np

from coulomb1d import delta_np, gram_analysis

print("# hermiticity defects Delta_np (antisymmetric, all multiples of 1/pi)")
with mp.workdps(30):
    for n, p in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)):
        v = delta_np(n, p)
        print(f"Delta_{n}{p} = {mp.nstr(v, 10)}  "
              f"(x pi = {mp.nstr(v * mp.pi, 10)})")

print()
print("# Gram matrix of the first 4 normalized anomalous states")
res = gram_analysis(4)
with np.printoptions(precision=6, suppress=True):
    print(res.M)
    print("eigenvalues:", res.eigenvalues)
    print("P (columns orthonormalize M):")
    print(res.P)
print("P^T M P - I max deviation:",
      f"{np.abs(res.P.T @ res.M @ res.P - np.eye(4)).max():.2e}")

print()
print("# the corner |P_{1,N}| shrinks as the family grows")
for N in range(2, 7):
    corner = abs(gram_analysis(N).P[0, N - 1])
    print(f"N={N}: |P_(1,N)| = {corner:.6f}")
