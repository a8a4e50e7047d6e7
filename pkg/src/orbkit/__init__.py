"""Exact Frobenius, bimodule, fusion-category and state-sum computations."""
from . import bimodules, errors, ew, frobenius, fusioncat, rtdefects, scalars, statesum
from .bimodules import Bimodule, adjoint, relative_tensor, split_orbifold_datum, trace_and_qdim, zorro_check
from .ew import ew_forward, ew_inverse, ew_roundtrip_check
from .frobenius import Algebra, FrobeniusStructure, check_frobenius, euler_gamma, window_element, window_sqrt
from .fusioncat import FusionData, check_fusion, fibonacci, left_adjoint_from_trace, pointed_fusion
from .rtdefects import (
                        BraidedFusionData,
                        check_bimodule_over_pair,
                        check_commutative_frobenius,
                        check_frobenius_over_pair,
)
from .scalars import Field, NumberFieldElement, parse_scalar, sqrt_in_field
from .statesum import (
                        OrderedTriangulation,
                        StratifiedComplex,
                        fhk_evaluate,
                        orbifold_evaluate,
                        pachner_invariance,
                        state_space_dim,
                        tv_evaluate,
)

__version__ = "0.1.0"

__all__ = ["bimodules", "errors", "ew", "frobenius", "fusioncat", "rtdefects", "scalars", "statesum",
           "Bimodule", "adjoint", "relative_tensor", "split_orbifold_datum", "trace_and_qdim", "zorro_check",
           "ew_forward", "ew_inverse", "ew_roundtrip_check", "Algebra", "FrobeniusStructure", "check_frobenius",
           "euler_gamma", "window_element", "window_sqrt", "FusionData", "check_fusion", "fibonacci",
           "left_adjoint_from_trace", "pointed_fusion", "BraidedFusionData", "check_bimodule_over_pair",
           "check_commutative_frobenius", "check_frobenius_over_pair", "Field", "NumberFieldElement",
           "parse_scalar", "sqrt_in_field", "OrderedTriangulation", "StratifiedComplex", "fhk_evaluate",
           "orbifold_evaluate", "pachner_invariance", "state_space_dim", "tv_evaluate", "__version__"]
