"""Exact chirotopes of random point sets and their preservation under grid rounding."""

from .chirotope import Chirotope, chirotope_diff, compute_chirotope, enumerate_subsets, orientation_of_ordered
from .exact import ScaledPi, Sign, ball_volume_ratio, binomial, det_sign, half_gamma, orientation
from .geometry import (
    CellLabel,
    DegenerateError,
    Hyperplane,
    abs_offset_greater,
    affine_normalize,
    classify_cell,
    dist_at_least,
    facet_hyperplane,
    lemma1_transversal_report,
    lemma2_certificate,
    offset,
)
from .feasibility import strict_feasible
from .grid import EncodedConfig, GridSpec, decode, encode, grid_from_params, round_config, round_point
from .sampling import Domain, PointConfig, SamplerConfig, load_config, sample_config, save_config

__version__ = "0.1.0"
