"""The principal series of GL_2(F_p) in its defining characteristic.

Ps(i1, i2) = Ind_B^G(chi_{i1} x chi_{i2}) has dimension p + 1.  Mod p it
has exactly two composition factors, det^{i1} Sym^{i2-i1} and a twist of
Sym^{p-1-(i2-i1)}, and for i1 != i2 the extension does not split.  Here
we find the sub as the image of the unique intertwiner, identify the
quotient with the MeatAxe iso test, and certify non-splitness.
"""

from gl2mod import linalg as la
from gl2mod.ff import make_field
from gl2mod.meataxe import composition_factors, iso_test, non_split_check
from gl2mod.repmod import (det_twist, hom_space, induced_from_borel, quotient_rep,
                           standard_rep, sym_power)

p, i1, i2 = 5, 0, 2
F = make_field(p, 1)
V = standard_rep(p, F)
P = induced_from_borel(p, i1, i2, F)
sub = det_twist(sym_power(V, i2 - i1), i1)
quo = det_twist(sym_power(V, p - 1 - (i2 - i1)), i2)

print(f"Ps({i1},{i2}) has dimension {P.dim}")
print("composition factor dimensions:", composition_factors(P).dims())

H = hom_space(sub, P)
print(f"Hom(det^{i1} Sym^{i2 - i1}, Ps) has dimension {H.dim}")
rows, piv = la.rref(F, la.transpose(H.basis[0]))
Q = quotient_rep(P, rows, piv)
print("quotient is det^%d Sym^%d:" % (i2, p - 1 - (i2 - i1)), iso_test(Q, quo))
print("sequence is non-split:", non_split_check(P, rows, piv))
