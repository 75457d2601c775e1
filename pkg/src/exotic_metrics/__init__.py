"""Exact constructions of hedgehog, cobweb, Z-construction, inverse-limit
and locally extremal metric spaces, with seeded property audits."""
from .audits import AuditReport
from .base import BaseKind, BaseSpace, LiteralError, PointError, base_distance, cantor_distance, gauge, truncate
from .cobweb import CobwebSpace, Inner, Vortex, cw_canonicalize, cw_distance, cw_distance_oracle, cw_witness_path
from .extremal import ExtremalSpace, Extremum, e_ball_image, e_classify, e_distance, e_value
from .hedgehog import HedgehogPoint, HedgehogSpace, hh_canonicalize, hh_distance
from .invlimit import LimitPoint, Tower, bond, limit_distance, prefix_enclosure, project, star_lift
from .oracles import SpaceOracle, oracle_for
from .zcon import STAR, Toward, ZPoint, ZSpace, f_project, fiber_min_distance, z_distance, z_embed, z_make

__version__ = "0.1.0"

__all__ = [
    "AuditReport", "BaseKind", "BaseSpace", "CobwebSpace", "ExtremalSpace", "Extremum", "HedgehogPoint",
    "HedgehogSpace", "Inner", "LimitPoint", "LiteralError", "PointError", "STAR", "SpaceOracle", "Toward",
    "Tower", "Vortex", "ZPoint", "ZSpace", "base_distance", "bond", "cantor_distance", "cw_canonicalize",
    "cw_distance", "cw_distance_oracle", "cw_witness_path", "e_ball_image", "e_classify", "e_distance",
    "e_value", "f_project", "fiber_min_distance", "gauge", "hh_canonicalize", "hh_distance",
    "limit_distance", "oracle_for", "prefix_enclosure", "project", "star_lift", "truncate", "z_distance", "z_embed",
    "z_make",
]
