"""Triangulations, lattice state sums, Pachner moves, defects and state spaces."""
from . import fixtures
from .complex import OrderedTriangulation
from .fhk import StateSumResult, fhk_evaluate
from .orbifold import HOST_POLICIES, StratifiedComplex, orbifold_evaluate
from .pachner import MOVES, apply_move, candidates, pachner_invariance, random_moves
from .statespace import CylinderOperator, cylinder_operator, state_space_dim
from .tv import tv_evaluate

__all__ = ["OrderedTriangulation", "fixtures", "StateSumResult", "fhk_evaluate", "tv_evaluate",
           "StratifiedComplex", "orbifold_evaluate", "HOST_POLICIES", "MOVES", "apply_move", "candidates",
           "pachner_invariance", "random_moves", "CylinderOperator", "cylinder_operator", "state_space_dim"]
