"""Exact computation and certification of local divisor class groups of
surface singularities."""

from .field import GF, QQ, Fp
from .poly import MPoly, PolyRing, jacobian_generators, jet_truncate, substitute
from .jets import DEFAULT_JET_ORDER, JetMap
from .intmat import IntMatrix, smith_normal_form
from .fgab import FgAbGroup, GroupElement, element_order, group_from_presentation, subgroup_generated
from .ideals import (
    GREVLEX,
    LEX,
    IdealPresentation,
    MonomialOrder,
    eliminate,
    groebner_basis,
    ideal_equal,
    ideal_intersection,
    membership,
)
from .curves import (
    CurvePointDivisor,
    PlaneCurve,
    ProjPoint,
    cone_class_group_fp,
    cubic_add,
    fit_curves_through_points,
    independence_experiment,
    is_smooth_plane_curve,
    line_section_divisor,
    verify_cone_relation,
)
from .singularities import (
    AdeType,
    BlowupChart,
    ExceptionalLattice,
    SurfaceGerm,
    ade_class_group,
    blow_up,
    exceptional_intersection,
    pinwheel_normal_form,
    strict_transform_curve,
    tangent_cone,
)
from .pipelines import doublelines_pipeline, pinwheel_pipeline, rlines_pipeline
from .cohomology import HypersurfaceSpec, formal_excess, twist_cohomology, vanishing_threshold
from .base_locus import FgsubgpInstance, build_base_ideal, prime_stability, solve_ruiz
from .certificates import recheck_certificate
from .cli import ScenarioConfig, run_scenario

__version__ = "0.1.0"
