"""Hockey-stick divergence toolkit: contraction, SDPI bounds and privacy accounting."""

from .bounds import (
    UNBOUNDED,
    equality_regime,
    f_gamma_hetero,
    f_gamma_homog,
    g_n,
    hitting_params,
    hs_convexity_bound,
    linear_sdpi,
    mixing_time_delta,
    mixing_time_full_rank,
    mixing_time_linear,
    mixing_time_nonlinear,
    nonlinear_sdpi,
    reverse_pinsker_general,
    reverse_pinsker_sym,
    tightness_check,
    zeroing_criterion,
)
from .channels import (
    ClassicalChannel,
    QuantumChannel,
    achievability_channel,
    apply_channel,
    apply_iterated,
    bsc,
    choi,
    compose,
    depolarizing,
    fixed_point,
    identity_channel,
    iterate,
    replacer_channel,
    unitary_channel,
    validate_density,
)
from .contraction import (
    ContainmentCertificate,
    ContractionEstimate,
    containment_check,
    eta_classical_exact,
    eta_quantum_lower,
    eta_upper_doeblin,
)
from .divergences import (
    CHI2,
    KL,
    TOTAL_VARIATION,
    FGenerator,
    d_max,
    f_divergence,
    hs_classical,
    hs_divergence,
    hs_sym,
    smooth_d_max,
    trace_distance,
)
from .errors import HSDPError, ValidationError
from .linalg import eig_hermitian, eigvalsh, positive_part
from .privacy import (
    CompositionResult,
    compose_eps_delta,
    compose_heterogeneous,
    compose_homogeneous,
    dasgupta_bound,
    f_div_privacy_bound,
    purify_delta,
    qldp_check,
    re_ldp_bound,
)

__version__ = "0.1.0"
