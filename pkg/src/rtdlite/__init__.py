"""Topological discrepancy between weighted graphs via minimum spanning trees."""

from .errors import (
    DimensionMismatchError,
    DisconnectedInputError,
    InvalidMatrixError,
    RtdliteError,
)
from .forest import DisjointSets, Edge, Forest, mst_prim
from .graph_core import (
    DegenerateScaleWarning,
    NormalizationRecord,
    WeightMatrix,
    auxiliary_min,
    normalize,
    validate,
)
from .rtdl import (
    Barcode,
    BarcodeInterval,
    RtdlOptions,
    RtdlValue,
    pairwise_distances,
    rtdl_barcode,
    rtdl_from_clouds,
    rtdl_sum,
    symmetrized_rtdl,
)

__version__ = "0.1.0"
