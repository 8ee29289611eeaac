"""Capacity bounds for relay networks.

Inner bounds (decode-and-forward descendants, noisy network coding,
amplify-forward), the cutset outer bound, and exact discrete-memoryless
evaluators, with a certified n/2-bit worst-case gap between the relaxed
pair of bounds.
"""

from .diamond import (
    DdfParams,
    DiamondConfig,
    SweepRow,
    SweepTable,
    af_diamond,
    cutset_diamond,
    cutset_diamond_opt,
    ddf_diamond,
    ddf_diamond_opt,
    df_diamond,
    diamond_sweep,
    nnc_diamond,
    nnc_diamond_opt,
)
from .dm import (
    Channel,
    ConferencingRegion,
    CutTerms,
    DmInstance,
    blackwell_region,
    conferencing_dbc_region,
    constraint_repair,
    constraint_values_j,
    cutset_dm,
    ddf_broadcast_region_dm,
    ddf_multicast_dm,
    ddf_unicast_dm,
    det_dm_instance,
    deterministic_inner,
    graphical_mincut,
    graphical_to_deterministic,
    load_channel,
    load_pmf,
    marton_identity_check,
    maxflow_oracle,
    save_pmf,
    simplex_grid,
)
from .errors import InfeasibleError, SchemaError, TensorCapError, UnboundedError
from .gaussian import (
    CutsetEstimate,
    GapCertificate,
    GapRow,
    cut_rate_term,
    cutset_cut_rate,
    cutset_estimate,
    cutset_estimate_region,
    cutset_relaxed_cut,
    ddf_cut_rate,
    ddf_cut_rate_general,
    ddf_region,
    ddf_unicast_cut_rate,
    ddf_unicast_rate,
    gap_certificate,
    node_penalty,
    penalty_rate,
    relaxed_inner_cut,
)
from .info import (
    JointPmf,
    RateBits,
    binary_entropy,
    entropy,
    gauss_c,
    log_det_rate,
    mutual_info,
    ternary_entropy,
)
from .networks import (
    Cut,
    DeterministicNetwork,
    GaussianNetwork,
    GraphicalNetwork,
    enumerate_cuts,
    load_network,
    received_snr,
    save_network,
)
from .optimize import (
    Box,
    BoxDim,
    bisect_feasible,
    golden_max,
    grid_then_refine,
    simplex_lp_max,
)
from .regions import (
    RateRegion,
    RegionConstraint,
    region_max_symmetric,
    region_max_weighted,
    region_membership,
)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "BoxDim",
    "Channel",
    "ConferencingRegion",
    "Cut",
    "CutTerms",
    "CutsetEstimate",
    "DdfParams",
    "DeterministicNetwork",
    "DiamondConfig",
    "DmInstance",
    "GapCertificate",
    "GapRow",
    "GaussianNetwork",
    "GraphicalNetwork",
    "InfeasibleError",
    "JointPmf",
    "RateBits",
    "RateRegion",
    "RegionConstraint",
    "SchemaError",
    "SweepRow",
    "SweepTable",
    "TensorCapError",
    "UnboundedError",
    "af_diamond",
    "binary_entropy",
    "bisect_feasible",
    "blackwell_region",
    "conferencing_dbc_region",
    "constraint_repair",
    "constraint_values_j",
    "cut_rate_term",
    "cutset_cut_rate",
    "cutset_diamond",
    "cutset_diamond_opt",
    "cutset_dm",
    "cutset_estimate",
    "cutset_estimate_region",
    "cutset_relaxed_cut",
    "ddf_broadcast_region_dm",
    "ddf_cut_rate",
    "ddf_cut_rate_general",
    "ddf_diamond",
    "ddf_diamond_opt",
    "ddf_multicast_dm",
    "ddf_region",
    "ddf_unicast_cut_rate",
    "ddf_unicast_dm",
    "ddf_unicast_rate",
    "det_dm_instance",
    "deterministic_inner",
    "df_diamond",
    "diamond_sweep",
    "enumerate_cuts",
    "entropy",
    "gap_certificate",
    "gauss_c",
    "golden_max",
    "graphical_mincut",
    "graphical_to_deterministic",
    "grid_then_refine",
    "load_channel",
    "load_network",
    "load_pmf",
    "log_det_rate",
    "marton_identity_check",
    "maxflow_oracle",
    "mutual_info",
    "nnc_diamond",
    "nnc_diamond_opt",
    "node_penalty",
    "penalty_rate",
    "received_snr",
    "region_max_symmetric",
    "region_max_weighted",
    "region_membership",
    "save_network",
    "save_pmf",
    "simplex_grid",
    "simplex_lp_max",
    "ternary_entropy",
]
