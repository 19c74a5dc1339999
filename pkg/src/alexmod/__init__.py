"""Sharp modulus of continuity for convex domains and the Alexandrov-type estimates built on it."""

__version__ = "0.1.0"

from .base import ConvexBody, SectionData
from .bodies import Ellipsoid, GraphDomain2D, PowerDomain, body_from_spec, unit_ball
from .errors import AlexmodError, InputError
from .geometry import (
    distance_to_boundary,
    gauge,
    normal_set,
    section,
    section_measure,
    section_polar_volume,
    support,
)
from .ma import ConeFunction, Holder, SampledFunction, bar_point, cone_eval, equality_case_check, seminorm
from .modulus import (
    ModulusCurve,
    OmegaOptions,
    f_omega,
    fit_scaling_exponent,
    flat_spot_certificate,
    mahler_check,
    omega,
    omega_curve,
    sandwich_violations,
    t2_bounds,
    workhorse_bounds,
)
from .polytope import HPolytope, VPolytope, cross_polytope, cube, hull_volume, polar_polytope, project_polar

__all__ = [
    "AlexmodError", "ConeFunction", "ConvexBody", "Ellipsoid", "GraphDomain2D", "HPolytope", "Holder",
    "InputError", "ModulusCurve", "OmegaOptions", "PowerDomain", "SampledFunction", "SectionData", "VPolytope",
    "bar_point", "body_from_spec", "cone_eval", "cross_polytope", "cube", "distance_to_boundary",
    "equality_case_check", "f_omega", "fit_scaling_exponent", "flat_spot_certificate", "gauge", "hull_volume",
    "mahler_check", "normal_set", "omega", "omega_curve", "polar_polytope", "project_polar",
    "sandwich_violations", "section", "section_measure", "section_polar_volume", "seminorm", "support",
    "t2_bounds", "unit_ball", "workhorse_bounds",
]
