from .fpgrowth import fp_growth
from .plan import FLIP_MODES, Plan, classical_plan, flip, flip_direction, random_plan
from .thresholds import (
    OliveiraRule,
    ThresholdRules,
    alves_rules,
    logistic_fits,
    oliveira_rule,
    oliveira_rules,
    shatnawi_rules,
    varl,
    weighted_threshold,
)
from .timelime import (
    ChangeHistory,
    FeatureShift,
    build_history,
    find_support,
    hedge_g,
    history_for_releases,
    precedented_features,
    timelime_plan,
)
from .xtree import XTree, nearest_better_leaf

PLANNERS = ("random", "lime", "timelime", "alves", "shatnawi", "oliveira", "xtree")
