"""Secure polar coding over binary-input MISO wiretap fading channels.

Artificial-noise precoding, binary-input AWGN secrecy-capacity analysis and
power optimization, wiretap polar code construction/encoding/decoding, and
seeded Monte-Carlo BER experiments for the CSI and CDI cases.
"""

__version__ = "0.1.0"

from ._backend import kernel_backend
from .capacity import (
    ChannelGains,
    PowerOptimum,
    bi_awgn_capacity_quadrature,
    f_series,
    optimize_power_allocation,
    q_function,
    secrecy_capacity,
)
from .polar import (
    PolarConstruction,
    channel_llr,
    construct_ga,
    construct_mc,
    polar_transform,
    sc_decode,
    select_info_set,
)
from .precoding import (
    ChannelRealization,
    PowerAllocation,
    PrecodingBasis,
    orthonormal_decomposition,
    snr_bob,
    snr_eve,
    snr_eve_worst_case,
)
from .wiretap import WiretapPartition, build_partition, secure_decode, secure_encode

__all__ = [
    "__version__",
    "kernel_backend",
    "ChannelGains",
    "PowerOptimum",
    "bi_awgn_capacity_quadrature",
    "f_series",
    "optimize_power_allocation",
    "q_function",
    "secrecy_capacity",
    "PolarConstruction",
    "channel_llr",
    "construct_ga",
    "construct_mc",
    "polar_transform",
    "sc_decode",
    "select_info_set",
    "ChannelRealization",
    "PowerAllocation",
    "PrecodingBasis",
    "orthonormal_decomposition",
    "snr_bob",
    "snr_eve",
    "snr_eve_worst_case",
    "WiretapPartition",
    "build_partition",
    "secure_decode",
    "secure_encode",
]
