"""Where the WKB escape probability stops making sense.

For a repulsive Coulomb tail cut off at an inner radius R, the WKB
tunneling integral saturates at the Gamow factor exp(-2*pi*eta) as
R -> 0, while the exact transmission through the same barrier keeps
falling (quantum reflection at the singular edge).  WKB is therefore
unusable in that limit -- the two curves separate instead of converging.
"""

import mpmath as mp

from coulomb1d import exact_escape_probability, wkb_gamow

MASS, COUPLING, ENERGY = 1, 2, 1
ETA = mp.mpf(COUPLING) * mp.sqrt(MASS) / (2 * mp.sqrt(ENERGY))

lam_g, _, _ = wkb_gamow(MASS, COUPLING, ENERGY, "0.1")
print(f"# Lambda_G by quadrature: {mp.nstr(lam_g, 15)}")
print(f"# closed form pi*eta:     {mp.nstr(mp.pi * ETA, 15)}")
print(f"# Gamow floor e^(-2*pi*eta) = {mp.nstr(mp.exp(-2 * mp.pi * ETA), 6)}")
print()
print("R,WKB P,exact |t|^2")
for radius in ("1e-1", "1e-2", "1e-4", "1e-6", "1e-8", "1e-10"):
    _, _, wkb_p = wkb_gamow(MASS, COUPLING, ENERGY, radius)
    exact = exact_escape_probability(MASS, COUPLING, ENERGY, radius)
    print(f"{radius},{mp.nstr(wkb_p, 6)},{mp.nstr(exact, 6)}")
