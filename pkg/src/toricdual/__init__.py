"""Exact toric configuration toolkit: Gale duality, bouquets, generalized
Lawrence matrices, self-duality and Graver / Markov bases."""

from .bouquet import Bouquet, BouquetDecomposition, bouquet_decompose, free_columns, lift_D
from .errors import EnumerationInfeasible, HypothesisError, NotPointedError
from .exactla import (
    GaleRows,
    IntMat,
    allones_in_rowspan,
    gale_transform,
    kernel_lattice_basis,
    parse_matrix,
    rank,
)
from .glm import (
    GlmSpec,
    PyramidalFamilySpec,
    build_glm,
    build_selfdual_family,
    build_selfdual_nonpyramidal,
    decompose_to_glm,
    gcd_combination,
)
from .graver import (
    circuits,
    graver,
    graver_completion,
    graver_via_bouquet,
    is_conformal_sum,
    is_semiconformal_sum,
    is_strongly_semiconformal_sum,
    multiset_graver,
    multiset_graver_count,
)
from .kernels import BACKEND
from .markov import (
    BasisReport,
    Fiber,
    count_minimal_markov,
    count_minimal_markov_multiset_formula,
    enumerate_fiber,
    indispensables,
    minimal_markov,
    minimal_markov_multiset,
    universal_markov,
    weighted_spanning_tree_count,
)
from .multiset import MultisetConfig
from .selfdual import (
    RobustnessVerdict,
    SelfDualVerdict,
    classify_robustness,
    is_selfdual,
    pyramidality_of_multiset,
    ugb_count_single_repeat,
)

__version__ = "0.1.0"
