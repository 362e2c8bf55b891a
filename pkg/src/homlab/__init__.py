"""homlab: graph homomorphism solvers via exact Sherali-Adams relaxations.

The package reduces (minimum-cost) graph homomorphism questions to valued
CSPs, relaxes them by the SA(2,3) linear program solved exactly over the
rationals, and provides the persistent-majority-coloring machinery that
makes the reduction complete, plus a randomized decision algorithm for
homomorphisms into odd cycles.
"""

from .graphs import (
    Coloring,
    DiGraph,
    Graph,
    GraphError,
    Layering,
    TrackLayout,
    TreeDecomposition,
    bfs_layering,
    connected_components,
    exact_treewidth_decomposition,
    is_shadow_complete,
    make_rich_supergraph,
)
from .polymorphisms import (
    CoordinatePermutation,
    OperationTable,
    Triple,
    clique_permutation,
    cohen_triple,
    distance2_coloring,
    extend_after_deletion,
    is_polymorphism,
    odd_cycle_majority,
    search_triple,
    shadow_combine,
    triple_from_track_layout,
    verify_persistent_triple,
)
from .rational import INF, ExtRational, parse_value
from .sherali_adams import LpResult, RationalLp, build_sa, lp_solve_exact, solve_sa
from .solvers import (
    SolveReport,
    TrialPlan,
    algorithm_b_trial,
    alpha_interval,
    brute_force_hom,
    make_trial_plan,
    odd_cycle_solve,
    unif_solve,
    valhom_solve,
)
from .vcsp import (
    ArcCostMap,
    BudgetExceeded,
    CostFunction,
    CrispLanguage,
    OddCycleFamily,
    ValHomInstance,
    VcspInstance,
    brute_force_opt,
    crisp_language_of_coloring,
    odd_cycle_language,
    valhom_to_vcsp,
)

__version__ = "0.1.0"
