"""Command-line front end."""

from .main import main, run
from .parse import CurveSpec, parse_curve_spec, parse_expression, parse_points

__all__ = ["CurveSpec", "main", "parse_curve_spec", "parse_expression", "parse_points", "run"]
