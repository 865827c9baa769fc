"""Depth, regularity and combinatorial optimization checks for monomial ideals."""
from .clutters import (
    Clutter,
    IncidenceMatrix,
    classify,
    colon_power_identity,
    cover_dual,
    deletion,
    duality_formulas_check,
    edge_ideal,
    find_transversal_cover,
    find_transversal_edge,
    mfmc_bounded,
    monotone_sequences,
    scp_vertices,
)
from .config import Caps
from .errors import (
    ContextMismatchError,
    MonodepthError,
    ParseError,
    PreconditionError,
    ResourceError,
)
from .graphs import (
    Graph,
    clique_clutter,
    cm_square_predicates,
    colon_structure_check,
    is_strongly_perfect,
    strongly_perfect_certificate,
    strongly_perfect_symbolic_check,
    structure,
    very_well_covered_check,
    weighted_cm_reduction_check,
)
from .homology import (
    BettiTable,
    SimplicialComplex,
    betti_table,
    depth_zero_witness,
    homological_summary,
    lcm_lattice,
    reduced_homology_dims,
    skeleton_depth,
    stanley_reisner,
    stanley_reisner_ideal,
    terai_check,
)
from .ideals import (
    Monomial,
    MonomialIdeal,
    PrimeSet,
    VarContext,
    alexander_dual,
    colon,
    contains,
    height,
    ideal_sum,
    intersect,
    is_squarefree,
    is_unmixed_ideal,
    minimal_primes,
    minimalize,
    power,
    product,
    radical,
    symbolic_power,
)
from .linalg import GF2, QQ, FieldSpec
from .parser import Session, parse
from .polarization import (
    WeightedDigraph,
    collapse_top_power,
    lower_top_degree,
    polarize_full,
    stretch_variable,
    weight_reduce,
    weighted_digraph_ideal,
)
from .results import ResultDoc
from .suite import paper_suite

__version__ = "0.1.0"
