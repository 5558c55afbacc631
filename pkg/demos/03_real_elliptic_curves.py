"""Real forms of C/(Z + tau Z) and the normalized j-invariant.

Run:  python demos/03_real_elliptic_curves.py
"""
from fractions import Fraction

import mpmath

from modsurf.genus1 import classify, equivalent, j_normalized, real_component_count

# j is normalized so that j(i) = 1; j(rho) = 0 at the hexagonal lattice.
for label, tau in [("i", 1j), ("2i", 2j), ("rho", mpmath.mpc(0.5, mpmath.sqrt(3) / 2)), ("0.3+i", 0.3 + 1j)]:
    print(f"j({label}) = {mpmath.nstr(j_normalized(tau), 15)}")

# Square lattice two ways: rectangular (two real ovals) and rhombic (one).
print(real_component_count(0, 1))
print(real_component_count(Fraction(1, 2), 0.5))
print("same curve:", equivalent(1j, 0.5 + 0.5j))

# Along Re tau = 0 the value j is >= 1, along Re tau = 1/2 it is <= 1.
for y in (0.6, 0.8, 1.0, 1.5, 2.5):
    a = real_component_count(0, y)
    b = real_component_count(Fraction(1, 2), y)
    print(f"y={y}:  rectangular j={float(a.j.real):10.4f}   rhombic j={float(b.j.real):12.4f}")

print(classify(mpmath.mpc(3.2, 0.9)))
