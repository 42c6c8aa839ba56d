"""Shapes of the regular and singular Coulomb waves.

Walks the two independent solutions across the origin for a mildly
repulsive coupling and shows the three evaluation regimes agreeing on
their overlap regions.  Emits a CSV-like table to stdout; pipe it into
your plotting tool of choice.
"""

import mpmath as mp

from coulomb1d import ProblemParams, coulomb_eval

p = ProblemParams.from_eta("0.2")

print("# regular f and singular g for eta = 0.2")
print("u,f,g,regime")
u = mp.mpf("-15")
while u <= 15:
    if u != 0:
        w = coulomb_eval(p, u)
        print(f"{mp.nstr(u, 6)},{mp.nstr(w.f, 10)},{mp.nstr(w.g, 10)},"
              f"{w.regime}")
    u += mp.mpf("0.25")

# the singular solution is finite at the origin but its derivative
# carries a log(2|u|) term: watch g stay put while dg runs away
print()
print("# origin approach: g finite, dg ~ 2*eta*log(2u)/C")
for e in ("1e-2", "1e-4", "1e-6", "1e-8"):
    w = coulomb_eval(p, mp.mpf(e))
    print(f"u={e}: g={mp.nstr(w.g, 8)}, dg={mp.nstr(w.dg, 8)}")

# and the Wronskian is +1 everywhere, across regimes
print()
print("# Wronskian df*g - f*dg (should be 1 everywhere)")
for u in ("-40", "-1", "1e-25", "3", "40"):
    w = coulomb_eval(p, mp.mpf(u))
    print(f"u={u}: {mp.nstr(w.wronskian(), 12)}  ({w.regime})")
