"""Exact decomposition of finite normal-form games.

Splits any finite game into nonstrategic, gamma-potential, and
(mu, gamma)-harmonic components under exact rational arithmetic, applies the
strategic transformations that commute with the decomposition, and verifies
the associated equilibrium statements.
"""

from .errors import (
    GameDecompError,
    ParseError,
    PreconditionError,
    SolveError,
    ValidationError,
)
from .spaces import StrategySpace
from .games import (
    CoMeasureVector,
    Game,
    MeasureVector,
    MixedProfile,
    ScalarField,
    game_norm_sq,
    inner_product_c0,
    inner_product_game,
    validate_parameters,
)
from .operators import (
    Flow,
    build_flow,
    deviation_divergence,
    flow_divergence,
    lambda_project,
    laplacian_apply,
    pi_project,
    solve_poisson,
    solve_poisson_dense,
)
from .decomposition import (
    Decomposition,
    closest_potential,
    decompose,
    epsilon_bound,
    extract_potential,
    is_gamma_potential,
    is_harmonic,
    is_mu_normalized,
    is_nonstrategic,
)
from .transforms import (
    DuplicationSpec,
    PermutationSpec,
    RedundancySpec,
    co_measure_inverse,
    co_measure_quotient,
    extend_duplicate,
    permute,
    permute_params,
    reduce_duplicate,
    reduce_redundant,
    scale,
    translate_nonstrategic,
)
from .equilibrium import (
    best_response_epsilon,
    expected_payoff,
    harmonic_equilibrium,
    map_equilibrium_under_scaling,
    pure_equilibrium_from_potential,
)
from .gamedoc import GameDocument, parse_game, serialize_game

__version__ = "0.1.0"

__all__ = [
    "CoMeasureVector",
    "Decomposition",
    "DuplicationSpec",
    "Flow",
    "Game",
    "GameDecompError",
    "GameDocument",
    "MeasureVector",
    "MixedProfile",
    "ParseError",
    "PermutationSpec",
    "PreconditionError",
    "RedundancySpec",
    "ScalarField",
    "SolveError",
    "StrategySpace",
    "ValidationError",
    "best_response_epsilon",
    "build_flow",
    "closest_potential",
    "co_measure_inverse",
    "co_measure_quotient",
    "decompose",
    "deviation_divergence",
    "epsilon_bound",
    "expected_payoff",
    "extend_duplicate",
    "extract_potential",
    "flow_divergence",
    "game_norm_sq",
    "harmonic_equilibrium",
    "inner_product_c0",
    "inner_product_game",
    "is_gamma_potential",
    "is_harmonic",
    "is_mu_normalized",
    "is_nonstrategic",
    "lambda_project",
    "laplacian_apply",
    "map_equilibrium_under_scaling",
    "parse_game",
    "permute",
    "permute_params",
    "pi_project",
    "pure_equilibrium_from_potential",
    "reduce_duplicate",
    "reduce_redundant",
    "scale",
    "serialize_game",
    "solve_poisson",
    "solve_poisson_dense",
    "translate_nonstrategic",
    "validate_parameters",
]
