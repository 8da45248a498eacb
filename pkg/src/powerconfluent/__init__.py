"""Power-graph decomposition and power-confluent drawing of networks."""

from .decomposition import Hierarchy, InvariantError, ScoreWeights, decompose, merge, stats
from .graph import Graph, GraphParseError, GraphValidationError, load_fixture, parse_edge_list, parse_gml, read_graph
from .layout import LayoutConfig, layout, stress
from .pipeline import DrawConfig, draw_graph, draw_hierarchy, straight_line_drawing
from .render import Drawing, DrawingStats, count_crossings, render_svg
from .routing import RoutingGraph, SplinePath, enumerate_spline_paths, is_planar, recover_graph, route
from .spline import BSpline, make_knots, sample_polyline

__version__ = "0.1.0"
