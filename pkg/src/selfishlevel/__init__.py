"""Exact-arithmetic analysis of the selfishness level of strategic games.

The selfishness level of a game is the smallest share of the social
welfare that, added to every player's payoff, makes some social optimum
a pure Nash equilibrium.  The package provides the game model, the
analysis (equilibria, optima, appeal factors, the level, prices of
stability and anarchy), the altruistic payoff transforms, generators
for the classical game families, their closed-form levels, improvement
dynamics, and a CLI with a JSON game-document format.
"""

from .analysis import (
    DeviationRecord,
    InfiniteReason,
    LevelKind,
    LevelResult,
    UpperContourSet,
    appeal_factor,
    is_alpha_selfish,
    is_nash,
    price_of_anarchy,
    price_of_stability,
    pure_nash,
    selfishness_function,
    selfishness_level,
    social_optima,
    social_optimum_value,
    stabilizing_alpha,
    stable_social_optima,
    symmetric_selfishness_level,
    upper_contour,
)
from .closedform import (
    BertrandParams,
    ClosedFormKind,
    ClosedFormResult,
    CournotParams,
    PublicGoodsCont,
    TragedyParams,
    bertrand_af,
    bertrand_witness,
    closed_form_level,
    cournot_af,
    cournot_witness,
    discrepancy,
    max_discrepancy,
    tragedy_af,
    tragedy_witness,
    unbounded_witness,
)
from .core import Game, Orientation, Profile, format_rational, parse_rational
from .dynamics import (
    ImprovementGraph,
    has_fip,
    improvement_graph,
    is_weakly_acyclic,
    ordinal_potential_certificate,
)
from .families import (
    DEFAULT_CELL_CAP,
    BadNash3x3,
    BattleOfSexes,
    Congestion,
    CostSharing,
    FamilySpec,
    FLevelGame,
    GeneralizedPD,
    MatchingPennies,
    NoNash2x2,
    PrisonersDilemmaN,
    PublicGoodsGrid,
    SymmetricForm,
    TightFamily,
    TravelersDilemma,
    WeaklyAcyclic3x3,
    cost_sharing_gap_instance,
    generate,
    symmetric_form,
    tight_instance,
)
from .gamedoc import (
    GameDocument,
    parse_game,
    parse_game_document,
    render_game_document,
    render_report,
)
from .transforms import (
    AltruismModel,
    AltruismParam,
    altruistic,
    altruistic_model,
    compose_check,
    convert_param,
    inverse_altruistic,
    scale,
    shift,
)

__all__ = [name for name in dir() if not name.startswith("_")]
