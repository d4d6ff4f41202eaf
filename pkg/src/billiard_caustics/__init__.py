"""Caustics by reflection in circular and elliptic billiards."""

from .geometry import ConfocalParam, ConicTable, Point, Ray, lambda_of_ray, reflect, reflect_n
from .envelope import Caustic, LineFamily, caustic, image_family, pencil
from .cusps import Cusp, find_cusps, predicted_cusps, verify_external, verify_theorem1
from .axis import MobiusMap, fixed_point_analysis, iterate_axis_cusps, mobius_f, mobius_g
from .refraction import RefractionSetup, refraction_caustic, refraction_cusps

__all__ = [
    "Caustic", "ConfocalParam", "ConicTable", "Cusp", "LineFamily", "MobiusMap", "Point", "Ray",
    "RefractionSetup", "caustic", "find_cusps", "fixed_point_analysis", "image_family", "iterate_axis_cusps",
    "lambda_of_ray", "mobius_f", "mobius_g", "pencil", "predicted_cusps", "reflect", "reflect_n",
    "refraction_caustic", "refraction_cusps", "verify_external", "verify_theorem1",
]
