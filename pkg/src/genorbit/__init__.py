"""Exact generating-vector orbits of finitely presented modules over Euclidean rings."""

from .estimators import GeneratingVectorCanonicalizer, SmithNormalForm
from .fpmodule import FpModule, ModuleElement, ModuleError
from .genvec import (
    BudgetExceeded,
    DetClass,
    GenVector,
    GLWitness,
    NotGeneratingError,
    OrbitClassification,
    are_equivalent,
    canonicalize,
    classify,
    classify_componentwise,
    complete_unimodular,
    det_invariant,
    det_rel,
)
from .matrix import (
    AddMultiple,
    DiagPair,
    ElementaryWord,
    ExactMatrix,
    apply_word,
    determinant,
    evaluate_word,
    factor_into_word,
    identity,
    mat_mul,
    transpose,
)
from .oracle import (
    FiniteModel,
    OrbitReport,
    enumerate_generating_vectors,
    orbit_partition,
    verify_det_bijection,
    verify_lifting,
)
from .rings import (
    Integers,
    PolyFp,
    PrincipalIdeal,
    Product,
    Residue,
    RingElement,
    RingError,
    RingHandle,
    divides,
    enumerate_elements,
    exact_div,
    gcd_bezout,
    invert_unit,
    is_unit,
    join_components,
    ring_from_json,
    split_components,
)
from .smith import SmithDecomposition, minor_gcd_invariants, smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "AddMultiple",
    "apply_word",
    "are_equivalent",
    "BudgetExceeded",
    "canonicalize",
    "classify",
    "classify_componentwise",
    "complete_unimodular",
    "det_invariant",
    "det_rel",
    "DetClass",
    "determinant",
    "DiagPair",
    "divides",
    "ElementaryWord",
    "enumerate_elements",
    "enumerate_generating_vectors",
    "evaluate_word",
    "exact_div",
    "ExactMatrix",
    "factor_into_word",
    "FiniteModel",
    "FpModule",
    "gcd_bezout",
    "GeneratingVectorCanonicalizer",
    "GenVector",
    "GLWitness",
    "identity",
    "Integers",
    "invert_unit",
    "is_unit",
    "join_components",
    "mat_mul",
    "minor_gcd_invariants",
    "ModuleElement",
    "ModuleError",
    "NotGeneratingError",
    "orbit_partition",
    "OrbitClassification",
    "OrbitReport",
    "PolyFp",
    "PrincipalIdeal",
    "Product",
    "Residue",
    "ring_from_json",
    "RingElement",
    "RingError",
    "RingHandle",
    "smith_normal_form",
    "SmithDecomposition",
    "SmithNormalForm",
    "split_components",
    "transpose",
    "verify_det_bijection",
    "verify_lifting",
]
