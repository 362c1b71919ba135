"""Weighted Delaunay mosaics from slices of higher-dimensional Poisson processes.

Slicing a Voronoi tessellation of R^n with a k-plane induces a weighted
Voronoi tessellation of R^k; mapping each dual mosaic simplex to the radius
of its smallest empty circumsphere centered in the plane gives a generalized
discrete Morse function. This package builds the k = 1 and k = 2 mosaics,
decomposes their radius functions into intervals, evaluates the closed-form
constants behind the expected interval and simplex counts, and verifies the
predictions by seeded Monte Carlo simulation.
"""

from .constants import (
    DimensionConfig,
    IntervalType,
    asymptotic_limits_1d,
    expected_interval_count,
    expected_simplex_count,
    interval_constant,
    simplex_constant,
    top_simplex_constant,
)
from .geomcore import (
    AnchoredSphere,
    Interval,
    WeightedPoint,
    bp_jacobian,
    project_to_slice,
    smallest_anchored_circumsphere,
    sphere_is_empty,
    visibility_type,
)
from .mosaic1d import Mosaic1D, build_1d, radius_and_intervals_1d, rotate_to_halfplane
from .mosaic2d import (
    Mosaic2D,
    PowerDiagram,
    RegularTriangulation,
    power_dual,
    radius_and_intervals_2d,
    regular_triangulation,
)
from .sampler import SamplingConfig, choose_buffer, sample_poisson_box

__version__ = "0.1.0"

__all__ = [
    "DimensionConfig",
    "IntervalType",
    "AnchoredSphere",
    "Interval",
    "WeightedPoint",
    "Mosaic1D",
    "Mosaic2D",
    "PowerDiagram",
    "RegularTriangulation",
    "SamplingConfig",
    "asymptotic_limits_1d",
    "bp_jacobian",
    "build_1d",
    "choose_buffer",
    "expected_interval_count",
    "expected_simplex_count",
    "interval_constant",
    "power_dual",
    "project_to_slice",
    "radius_and_intervals_1d",
    "radius_and_intervals_2d",
    "regular_triangulation",
    "rotate_to_halfplane",
    "sample_poisson_box",
    "simplex_constant",
    "smallest_anchored_circumsphere",
    "sphere_is_empty",
    "top_simplex_constant",
    "visibility_type",
]
