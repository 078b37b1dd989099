"""Exact computations with groupoid-graded rings and modules over prime fields."""

from .errors import (
    ConsistencyError,
    GrGradError,
    InputError,
    ParseError,
    ResourceBudgetError,
    ValidationError,
)
from .exactla import Subspace
from .groupoid import Groupoid, group_groupoid, pair_groupoid, product_groupoid
from .module import GradedModule, direct_sum, hom_gamma, homgr, quotient, regular_module, shift, spin
from .ring import (
    GradedRing,
    build_block_matrix_ring,
    build_category_ring,
    build_pair_matrix_ring,
    build_ut,
    field_algebra,
    truncated_polynomial,
)

__version__ = "0.1.0"
