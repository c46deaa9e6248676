"""Wielandt-type lengths of matrix generating systems, Lie algebras,
quantum channels and tensor network states."""

from .channels import (
    KrausChannel,
    analyze_channel,
    choi,
    full_kraus_rank_index,
    primitivity_bounds,
    strong_irreducibility,
    transfer_matrix,
    zero_error_dichotomy,
)
from .ensembles import RngSpec, ginibre, ginibre_system, haar_isometry_kraus, random_peps_tensor, random_su
from .liespan import LieGeneratingSystem, SuElement, lie_length, witt_dimension, witt_lower_bound
from .numkernel import DEFAULT_TOL, SpanTracker, Tolerance
from .tensornets import MpsTensor, PepsTensor, mps_injectivity_index, peps_injective, string_bond_tensor
from .wordspan import (
    GeneratingSystem,
    NotGeneratingError,
    counting_lower_bound,
    generic_wie_bound,
    length,
    wie_length,
    worst_case_pair,
)

__version__ = "0.1.0"
