"""Algebraic machinery for Morse theory on exhausted noncompact manifolds.

Homotopy coherent diagrams of GF(2) chain complexes over the nerve of the
stage poset, the explicit colimit complex, the mapping telescope, and direct
limits of stage homologies, with verification that the three computations of
the limiting homology agree.
"""

from .colimit import (ColimitComplex, ComparisonReport, DirectSystem,
                      TelescopeComplex, TelescopeLemmaReport, UnknownSimplex,
                      build_colimit, build_telescope, compare_homologies,
                      cone_relation_residual, cone_structure_map, direct_limit,
                      filtration_complex, homology_system,
                      telescope_from_stages, verify_telescope_lemma)
from .complexes import (ChainMap, GradedComplex, HomologyBasis,
                        HomologySummary, HomOperator, InvalidComplex,
                        NotAChainMap, ShapeMismatch, check_d_squared,
                        hom_complex_differential, homology,
                        induced_on_homology, is_chain_map,
                        solve_homotopy_equation)
from .diagrams import (CoherentDiagram, InterleaveReport, Obstruction,
                       PartialDiagram, ProductDiagram, StageMismatch,
                       ValidationReport, complete, interleave_compare,
                       make_strict, product_extension)
from .f2 import F2Matrix, vec_from_bits, vec_to_bits
from .nerve import (PosetSimplex, ProductSimplex, enumerate_product_simplices,
                    enumerate_simplices)
from .scenarios import (ExhaustionScenario, ParseError, ValidationError,
                        VanishingReport, load_scenario, morse_chain_model,
                        morse_homology_limit, scenario_diagram,
                        strict_diagram, vanishing_check)

__version__ = "0.1.0"

__all__ = [
    "F2Matrix", "vec_from_bits", "vec_to_bits",
    "GradedComplex", "ChainMap", "HomologyBasis", "HomologySummary",
    "HomOperator", "homology", "check_d_squared", "is_chain_map",
    "induced_on_homology", "hom_complex_differential",
    "solve_homotopy_equation",
    "ShapeMismatch", "InvalidComplex", "NotAChainMap",
    "PosetSimplex", "ProductSimplex", "enumerate_simplices",
    "enumerate_product_simplices",
    "CoherentDiagram", "PartialDiagram", "ProductDiagram",
    "ValidationReport", "InterleaveReport", "Obstruction", "StageMismatch",
    "complete", "make_strict", "product_extension", "interleave_compare",
    "ColimitComplex", "TelescopeComplex", "DirectSystem",
    "ComparisonReport", "TelescopeLemmaReport", "UnknownSimplex",
    "build_colimit", "build_telescope", "compare_homologies",
    "cone_structure_map", "cone_relation_residual", "direct_limit",
    "filtration_complex", "homology_system", "telescope_from_stages",
    "verify_telescope_lemma",
    "ExhaustionScenario", "ParseError", "ValidationError", "VanishingReport",
    "load_scenario", "scenario_diagram", "strict_diagram",
    "morse_homology_limit", "morse_chain_model", "vanishing_check",
]
