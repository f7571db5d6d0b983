"""Exact tools for nerves of planar region families and their upper bounds."""
from __future__ import annotations

from .arrangement import (build_arrangement, census, furedi_palasti_lines, projective_triangle_count,
                          select_infinity_line, verify_simple)
from .construction import (CellComplex, RegionFamily, build_four_set_example, build_theorem4_family,
                           stellar_subdivide)
from .geometry import Line, Point, intersect_lines, orientation, projective_map_line_to_infinity
from .nerve import (check_hypotheses, check_main_bounds, compute_nerve, f_ind, kalai_eckhoff_bound,
                    surface_lemma_params, theorem_constant)

__version__ = "0.1.0"

__all__ = [
    "CellComplex", "Line", "Point", "RegionFamily", "build_arrangement", "build_four_set_example",
    "build_theorem4_family", "census", "check_hypotheses", "check_main_bounds", "compute_nerve",
    "f_ind", "furedi_palasti_lines", "intersect_lines", "kalai_eckhoff_bound", "orientation",
    "projective_map_line_to_infinity", "projective_triangle_count", "select_infinity_line",
    "stellar_subdivide", "surface_lemma_params", "theorem_constant", "verify_simple",
]
