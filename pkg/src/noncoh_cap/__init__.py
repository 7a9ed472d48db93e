"""Capacity bounds and high-SNR expansions for noncoherent correlated block fading."""

from .specfun import euler_gamma, log_gamma, gamma_upper0, g_lemma
from .channel import (CorrelationMatrix, ChannelConfig, make_rank_one_corr,
                      make_iid_corr, make_circulant_corr, corr_from_matrix,
                      corr_from_json, sample_fading, apply_channel,
                      conditional_covariance, cond_output_logdensity)
from .asymptotics import (prelog, rank_one_asymptote, full_rank_iid_asymptote,
                          full_rank_corr_asymptote)
from .bounds import (BoundValue, BoundConfig, OutputDensityParams, output_logdensity,
                     rank_one_lower_bound, rank_one_upper_bound, duality_gap,
                     memoryless_upper_bound, mc_duality_upper_bound, sphere_input)
from .streams import McEstimate

__version__ = "0.1.0"
