"""Energy-constrained operator norms and certified channel distances.

Norms of operators restricted to energy-bounded states, the equivalent
relative-boundedness norm family and the transform pair linking them,
spectral-projector and truncation estimates, and energy-constrained Bures
and cb-norm distances between completely positive maps with primal and dual
certificates.
"""

from .channels import (CbNormEstimate, CPMap, SeesawResult, StinespringRep,
                       amplitude_damping, attained_rep_distance, bures,
                       cb_norm_of_map, choi, common_rep, dephasing,
                       depolarizing, ec_bures, ec_cb_norm, fidelity,
                       identity_channel, inner_contraction_value,
                       isometric_rep_bound, kraus_from_choi,
                       kraus_to_stinespring, ksw_verify, random_cptp,
                       sequence_demo)
from .config import DEFAULT_TOLS, Tolerances
from .enorms import (ENormResult, ExpectationResult, channel_energy_factor,
                     constrained_max_expectation, enorm, enorm_sampled,
                     pi_membership, profile, recover_witness, seminorm,
                     sqrtg_bound, transform_check)
from .gspace import (GeneratingOperator, mean_energy, normalize_ground,
                     sample_feasible_states, spectral_projector,
                     vector_energy)
from .matcore import (hermitian_eig, kron, partial_trace, polar, purify,
                      sqrtm_psd, svd, trace_norm)
from .oscillator import (OscillatorSystem, a_t_family, build,
                         closed_form_suite, seminorm_report,
                         sqrtn_bound_suite)
from .suites import (continuity_bound_check, inequality_suite_basic,
                     inequality_suite_tensor, kadison_bound_check,
                     projector_decay, truncation_error_bound)
from .transforms import (SampledFunction, concave_hull, transform_F,
                         transform_G, transform_GF)

__all__ = [
    "CPMap", "CbNormEstimate", "DEFAULT_TOLS", "ENormResult",
    "ExpectationResult", "GeneratingOperator", "OscillatorSystem",
    "SampledFunction", "SeesawResult", "StinespringRep", "Tolerances",
    "a_t_family", "amplitude_damping", "attained_rep_distance", "build",
    "bures", "cb_norm_of_map", "channel_energy_factor", "choi",
    "closed_form_suite", "common_rep", "concave_hull",
    "constrained_max_expectation", "continuity_bound_check", "dephasing",
    "depolarizing", "ec_bures", "ec_cb_norm", "enorm", "enorm_sampled",
    "fidelity", "hermitian_eig", "identity_channel",
    "inequality_suite_basic", "inequality_suite_tensor",
    "inner_contraction_value", "isometric_rep_bound", "kadison_bound_check",
    "kraus_from_choi", "kraus_to_stinespring", "kron", "ksw_verify",
    "mean_energy", "normalize_ground", "partial_trace", "pi_membership",
    "polar", "profile", "projector_decay", "purify", "random_cptp",
    "recover_witness", "sample_feasible_states", "seminorm",
    "seminorm_report", "sequence_demo", "spectral_projector", "sqrtg_bound",
    "sqrtm_psd", "sqrtn_bound_suite", "svd", "trace_norm", "transform_F",
    "transform_G", "transform_GF", "transform_check", "trace_norm",
    "truncation_error_bound", "vector_energy",
]
