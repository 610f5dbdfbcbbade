"""Information-spectrum relative entropies, one-shot bounds and second-order
expansions on finite-dimensional quantum states."""

from infospec._core import (
    CertificateError,
    CodeRecord,
    DivergenceResult,
    ExpansionCoefficients,
    InputError,
    ProtocolFailure,
    RelEntStats,
    __version__,
    blind_code,
    concentrate,
    cq_capacity,
    dilute,
    ds_tomamichel_hayashi,
    entanglement_expansion,
    hypothesis_testing_divergence,
    info_spectrum_divergence,
    irreversibility_gap,
    max_divergence,
    normal_cdf,
    normal_quantile,
    nussbaum_szkola,
    random_state,
    relative_entropy_stats,
    source_coding_expansion,
    trace_gap,
    verify,
    visible_code,
    weyl_set,
)

__all__ = [
    "CertificateError",
    "CodeRecord",
    "DivergenceResult",
    "ExpansionCoefficients",
    "InputError",
    "ProtocolFailure",
    "RelEntStats",
    "__version__",
    "blind_code",
    "concentrate",
    "cq_capacity",
    "dilute",
    "ds_tomamichel_hayashi",
    "entanglement_expansion",
    "hypothesis_testing_divergence",
    "info_spectrum_divergence",
    "irreversibility_gap",
    "max_divergence",
    "normal_cdf",
    "normal_quantile",
    "nussbaum_szkola",
    "random_state",
    "relative_entropy_stats",
    "source_coding_expansion",
    "trace_gap",
    "verify",
    "visible_code",
    "weyl_set",
]
