"""When does the Steinberg representation of GL_2(F_q) break up mod ell?

Over C the Steinberg representation St is the q-dimensional complement of
the constants in the permutation module on P^1.  Reducing mod ell, the
constants stop being a direct summand exactly when q + 1 = 0 mod ell,
since the sum-of-values map then kills them.  This script builds St over
a finite field of characteristic ell and runs the MeatAxe on it.
"""

from gl2mod import linalg as la
from gl2mod.chars import decompose, enumerate_irreducibles, steinberg_character
from gl2mod.gl2 import group_order
from gl2mod.meataxe import composition_factors
from gl2mod.repmod import coinvariants, module_field, perm_p1, quotient_rep
from gl2mod._nt import prime_divisors


def steinberg_module(q, ell):
    F = module_field(q, ell)
    P = perm_p1(q, F)
    S, piv = la.rref(F, P.constants)
    return quotient_rep(P.module, S, piv)


for q in (3, 5, 7):
    for ell in prime_divisors(group_order(2, q)):
        if ell == q:
            continue
        dims = composition_factors(steinberg_module(q, ell)).dims()
        verdict = "splits" if len(dims) > 1 else "stays irreducible"
        print(f"q={q} ell={ell}: ell | q+1 is {(q + 1) % ell == 0}; St {verdict}, dims {dims}")

# the big factor has no U-coinvariants: it is cuspidal mod ell
q, ell = 5, 3
irr = enumerate_irreducibles(q, ell)
row = decompose(steinberg_character(q, 0), ell)
for k, m in enumerate(row):
    if m:
        X = irr[k].module
        print(f"{irr[k].label}: U-coinvariants of dimension {coinvariants(X).dim}")
