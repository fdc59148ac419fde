"""Monte Carlo for the joint law of (terminal value, supremum, time of the
supremum) of a tempered stable process.

The engine samples a stick-breaking approximation of the triple under the
un-tempered stable measure and re-weights with an exponential martingale, so
no rejection sampling of tempered increments is needed.  See ``estimate`` for
MC/MLMC runs, ``sample`` for raw draws, and ``sb_vs_tsb`` / ``sbg_vs_tsb``
for algorithm-selection verdicts.
"""

from ._core import (
    Model,
    ModelParams,
    estimate,
    mc_vs_mlmc_threshold_eta,
    parse_config,
    phi,
    preset_params,
    sample,
    sb_vs_tsb,
    sbg_vs_tsb,
    stick_exp_sum,
    stick_integral,
    ulcer_index,
)

__all__ = [
    "Model",
    "ModelParams",
    "estimate",
    "mc_vs_mlmc_threshold_eta",
    "parse_config",
    "phi",
    "preset_params",
    "sample",
    "sb_vs_tsb",
    "sbg_vs_tsb",
    "stick_exp_sum",
    "stick_integral",
    "ulcer_index",
]
