"""Tour of the algebra layer: a finite field, its character, and column labels.

A design column is a polynomial in the coordinates of F_s^n.  Nonzero linear
forms with last nonzero coefficient 1 make up the canonical family H, whose
evaluation is a saturated strength-2 orthogonal array; each member h of H
spawns a companion array Q_h built from quadratic labels h^2 + a*h + g.
"""

from ssd import (default_field, enumerate_points, h_set, label_str, q1,
                 realize, strength)
from ssd.poly_labels import qh

f = default_field(3)
print(f"working over {f}: 1 + 2 = {f.add(1, 2)}, 2 * 2 = {f.mul(2, 2)}, "
      f"1/2 = {f.inv(2)}")
print(f"trace of each element: {[f.trace(x) for x in f.elements()]}")
print("canonical character: "
      + ", ".join(f"{f.char(x):.3f}" for x in f.elements()))
print()

n = 2
H = h_set(f, n)
print(f"H(X1..X{n}) over GF(3) has {len(H)} members:")
print(" ", ", ".join(label_str(f, h) for h in H))

print("\neach member h generates a companion saturated array Q_h:")
for h in H:
    print(f"  {label_str(f, h):8s} -> " +
          ", ".join(label_str(f, lab) for lab in qh(f, h, n)))

D = realize(f, n, q1(f, n))
print(f"\nQ_1 evaluated at the {len(enumerate_points(f, n))} points of "
      f"F_3^2 is a {D.N}x{D.m} array of strength {strength(D)}")
print(D.matrix)
