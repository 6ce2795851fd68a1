"""Exact verification of L-infinity algebras and multisymplectic observables."""
from .arith import bernoulli, format_rational, phi_coeff, vinogradov_coeff
from .graded import GradedSpace, Element, Permutation, koszul_sign, unshuffles, varsigma
from .nr import MultiMap, FnMap, TableMap, nr_sym, nr_skew, nr_commutator, dec_map, dec_map_inv
from .linfty import (
    LInftyStructure, LInftyMorphism, LieAlgebra, check_linfty, check_morphism,
    compose_morphisms, invert_morphism, getzler_truncate, pushforward_structure, so_algebra,
)
from .polyforms import Poly, PolyForm, PolyField, volume_form, symplectic_form
from .multisymplectic import (
    MssSpace, Section, SectionSpace, rogers_structure, vinogradov_structure, phi_morphism, gauge_tau,
)
from .comoment import (
    ActionData, ComomentCandidate, so_n_action, verify_comoment, comoment_from_potential,
    gauge_shift_comoment, induced_comoment, pentagon_report,
)

__all__ = [
    "bernoulli", "format_rational", "phi_coeff", "vinogradov_coeff",
    "GradedSpace", "Element", "Permutation", "koszul_sign", "unshuffles", "varsigma",
    "MultiMap", "FnMap", "TableMap", "nr_sym", "nr_skew", "nr_commutator", "dec_map", "dec_map_inv",
    "LInftyStructure", "LInftyMorphism", "LieAlgebra", "check_linfty", "check_morphism",
    "compose_morphisms", "invert_morphism", "getzler_truncate", "pushforward_structure", "so_algebra",
    "Poly", "PolyForm", "PolyField", "volume_form", "symplectic_form",
    "MssSpace", "Section", "SectionSpace", "rogers_structure", "vinogradov_structure", "phi_morphism",
    "gauge_tau", "ActionData", "ComomentCandidate", "so_n_action", "verify_comoment",
    "comoment_from_potential", "gauge_shift_comoment", "induced_comoment", "pentagon_report",
]

__version__ = "0.1.0"
