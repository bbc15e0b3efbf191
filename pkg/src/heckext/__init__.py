"""Exact Ext-group computations for modules over graded affine Hecke algebras.

Modules are given by rational matrices for the simple reflections and for a
basis of ``V``.  Ext groups are the homology of the Koszul-type complex
``Hom_W(X ⊗ ∧^• V, Y)``; on top of that sit the duality pairing, the
Euler-Poincaré and elliptic pairings, the Ind-Res resolution and the Aubert
character identity.

Submodules:

* :mod:`heckext.rootsys` root data and Weyl groups
* :mod:`heckext.algebra` modules, relations, dualities, characters
* :mod:`heckext.constructions` standard modules, weights, temperedness
* :mod:`heckext.homology` complexes, Ext, pairings, Ind-Res
* :mod:`heckext.scenario`, :mod:`heckext.cli` scenario files and the runner
"""

from .algebra import (ClassFunction, HModule, InconclusiveError, InvalidModuleError, act_w, dD,
                      direct_sum, dual_bullet, dual_star, hom_space, iota, is_irreducible,
                      is_isomorphic, theta, tilde_matrix, validate_module, w_character)
from .constructions import (CentralCharacter, central_character, is_discrete_series, is_tempered,
                            one_dim_module, parabolic_induction, principal_series,
                            restrict_to_parabolic, steinberg_module, trivial_module, weights)
from .homology import (HomComplex, aubert_virtual_character, build_complex, duality_pairing,
                       dual_differential_crosscheck, elliptic_pairing, euler_poincare, ext_dims,
                       ext_symmetry_checks, indres_complex)
from .linalg import QMatrix
from .rootsys import (RootDatum, WeylGroup, build_root_datum, elliptic_classes,
                      enumerate_weyl_group, minimal_coset_reps)

__version__ = "0.1.0"

__all__ = [
    "QMatrix", "RootDatum", "WeylGroup", "build_root_datum", "enumerate_weyl_group",
    "elliptic_classes", "minimal_coset_reps", "HModule", "ClassFunction", "validate_module",
    "act_w", "tilde_matrix", "dual_star", "dual_bullet", "iota", "theta", "dD", "direct_sum",
    "w_character", "hom_space", "is_isomorphic", "is_irreducible", "InvalidModuleError",
    "InconclusiveError", "one_dim_module", "trivial_module", "steinberg_module",
    "principal_series", "parabolic_induction", "restrict_to_parabolic", "weights",
    "CentralCharacter", "central_character", "is_tempered", "is_discrete_series", "HomComplex",
    "build_complex", "ext_dims", "dual_differential_crosscheck", "duality_pairing",
    "euler_poincare", "elliptic_pairing", "aubert_virtual_character", "indres_complex",
    "ext_symmetry_checks",
]
