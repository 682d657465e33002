"""Canonical forms, automorphism groups and isomorphism tests for order types."""

from .brute import brute_automorphisms, brute_canonical, brute_isomorphic
from .canon2d import (
    CanonicalForm,
    SpiralLabeling,
    build_kgb,
    build_ussr,
    canonical_form_2d,
    compress_ddr,
    decode_canonical_2d,
    decode_orientation,
    isomorphic_2d,
    reconstruct_ussr,
    spiral_labeling,
    ussr_to_ddr,
)
from .canonnd import canonical_form_nd, convex_layers_nd, decode_nd, isomorphic_nd
from .io import DedupStore, generate_points, parse_chirotope_file, parse_point_file
from .layers2d import ConvexLayers, convex_hull_ccw, convex_layers
from .predicates import (
    ChirotopeTable,
    DegenerateError,
    OrderTypeError,
    Orientation,
    OrientationOracle,
    PointOracle,
    PointSet,
    TableOracle,
    as_oracle,
    chirotope_from_points,
    make_view,
    oracle_query,
    orient,
    validate_chirotope,
)

__version__ = "0.1.0"
