"""Exact harmonic-measure computations for random walks on the modular
group Z2 * Z3, with a mediant encoding of the boundary, the
Minkowski-Denjoy measure family, and a seeded Monte Carlo oracle."""

from .boundary import (
    Cylinder,
    act_on_cylinder,
    cylinder_diameter,
    cylinders_at_depth,
    cylinders_up_to_depth,
    gromov_product,
    root_partition,
)
from .denjoy import (
    DenjoyParams,
    MarkovBase,
    NotNormalizedError,
    PiWeights,
    check_stationarity,
    component_mass,
    cylinder_mass,
    hausdorff_constants,
    markov_base_to_params,
    params_to_markov_base,
    params_to_pi,
    pi_to_params,
    question_mark,
    rn_derivative,
    solve_rn_problem,
    swap_involution,
)
from .group import (
    IDENTITY,
    GroupMeasure,
    GroupWord,
    conjugate,
    convolve,
    format_word,
    inverse,
    parse_word,
    reduce_concat,
    strip_identity_renormalize,
    swap_b_letters,
    translate_right,
    word_length,
    word_to_matrix,
)
from .mediant import (
    ExtRational,
    LRCode,
    MediantInterval,
    RationalCodes,
    ROOT_INTERVAL,
    boundary_to_lr,
    cf_to_lr,
    cf_value,
    lr_to_cf,
    lr_to_interval,
    rational_to_cf,
    rational_to_lr,
    tau_enclosure,
)
from .montecarlo import (
    PATH_STRIDE,
    RNG_CONTRACT,
    SimConfig,
    SimReport,
    UnresolvedPathsError,
    ZTable,
    compare_with_analytic,
    estimate_cylinder_frequencies,
    estimate_passage,
    sample_path,
    simulate,
)
from .solver import (
    EX0_LEVEL,
    EX0_PAIR,
    DegenerateStepError,
    MultipleRoots,
    NNParams,
    NoRootInCube,
    PassageTriple,
    SolverContradictionError,
    StepOnS,
    denjoy_membership_residual,
    example_ex0,
    example_ex1,
    example_ex2,
    harmonic_params,
    hyperbola_point,
    membership_alpha_roots,
    minkowski_residual,
    nn_solve,
    nn_step,
    phi,
    residual,
    solve_master,
)

__version__ = "0.1.0"
