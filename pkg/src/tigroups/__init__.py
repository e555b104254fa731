"""Finite groups as multiplication tables, their subgroup lattices, and
brute-force checks of TI / subnormal / p'-order classifications."""

from .errors import (
    GroupParseError,
    GroupTooLarge,
    InvalidAction,
    LatticeTooLarge,
    NotASubgroup,
    ParentMismatch,
)
from .group import (
    GroupTable,
    Permutation,
    conjugate_element,
    element_order,
    group_from_generators,
    prime_divisors,
)
from .kernels import BACKEND
from .subgroups import (
    Subgroup,
    SubgroupLattice,
    all_subgroups,
    centralizer,
    conjugate_subgroup,
    generated_subgroup,
    intersect,
    is_normal,
    is_self_centralizing,
    is_subnormal,
    is_TI,
    join,
    normal_closure,
    normalizer,
    sylow_subgroups,
)
from .structure import FrobeniusDecomposition, Q8OddCyclicDecomposition, frobenius_decomposition
from .theorems import (
    SubgroupFilter,
    TheoremReport,
    lhs_condition,
    rhs_theorem1,
    rhs_theorem2,
    rhs_theorem3,
    verify_biconditional,
    verify_corollary1,
    verify_equivalence,
)
from .corpus import GroupRecipe, build, default_corpus, load_groups
from .smallgroups import enumerate_all_of_order

__version__ = "0.1.0"
