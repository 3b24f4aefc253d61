"""Exact modular representation theory of GL_2(F_q).

Finite fields and cyclotomic numbers, conjugacy classes, matrix
representations, a MeatAxe, ordinary and Brauer characters, decomposition
matrices, Weyl characters and supernatural pro-orders.
"""

from .cyclo import CycNum, cyc_arith, cyc_conj, galois, solve_exact
from .ff import FieldDesc, FFElem, discrete_log, embed, frobenius, lift_root_of_unity, make_field
from .gl2 import (ClassData, brute_force_classes, conj_classes, group_order, is_regular_class,
                  prime_to_ell_exponent, semisimple_class_count)
from .repmod import (MatRep, coinvariants, det_twist, dual_rep, frob_twist, hom_space,
                     induced_from_borel, invariants, perm_p1, standard_rep, sym_power,
                     tensor_rep, whittaker_mirabolic)
from .meataxe import (FactorMultiset, composition_factors, find_submodule, is_irreducible,
                      iso_test, non_split_check, random_algebra_element)
from .chars import (ClassFunction, DecompositionMatrix, brauer_character, decompose,
                    decomposition_matrix, dl_reduction_invariance, elliptic_dl,
                    enumerate_irreducibles, induced_character, inner_product, ordinary_table)
from .weyl import cartan_weyl_char, dual_weyl_gl2, restricted_irreducible_check, weyl_dimension
from .proorder import INF, Supernatural, bad_primes, pro_order_gln, sn_lcm, sn_mul
from .serialize import emit_json, parse_json
from .verify import VerificationReport, verify_lemma

__version__ = "0.1.0"

__all__ = [
    "CycNum",
    "cyc_arith",
    "cyc_conj",
    "galois",
    "solve_exact",
    "FieldDesc",
    "FFElem",
    "discrete_log",
    "embed",
    "frobenius",
    "lift_root_of_unity",
    "make_field",
    "ClassData",
    "brute_force_classes",
    "conj_classes",
    "group_order",
    "is_regular_class",
    "prime_to_ell_exponent",
    "semisimple_class_count",
    "MatRep",
    "coinvariants",
    "det_twist",
    "dual_rep",
    "frob_twist",
    "hom_space",
    "induced_from_borel",
    "invariants",
    "perm_p1",
    "standard_rep",
    "sym_power",
    "tensor_rep",
    "whittaker_mirabolic",
    "FactorMultiset",
    "composition_factors",
    "find_submodule",
    "is_irreducible",
    "iso_test",
    "non_split_check",
    "random_algebra_element",
    "ClassFunction",
    "DecompositionMatrix",
    "brauer_character",
    "decompose",
    "decomposition_matrix",
    "dl_reduction_invariance",
    "elliptic_dl",
    "enumerate_irreducibles",
    "induced_character",
    "inner_product",
    "ordinary_table",
    "cartan_weyl_char",
    "dual_weyl_gl2",
    "restricted_irreducible_check",
    "weyl_dimension",
    "INF",
    "Supernatural",
    "bad_primes",
    "pro_order_gln",
    "sn_lcm",
    "sn_mul",
    "emit_json",
    "parse_json",
    "VerificationReport",
    "verify_lemma",
]
