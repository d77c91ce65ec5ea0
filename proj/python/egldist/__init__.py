"""Extended generalized Lindley distribution: evaluation, simulation, fitting.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports its public surface.
"""

from ._core import (
    DomainError,
    InvalidDataError,
    NonConvergenceError,
    Params,
    __version__,
    builtin_dataset,
    cdf,
    compare,
    conditional_moment,
    extreme_norming,
    fit,
    hazard,
    hazard_shape,
    ks_statistic,
    log_pdf,
    mean_residual_life,
    median,
    mode,
    order_stat_moment,
    order_stat_pdf,
    pdf,
    quantile,
    raw_moment,
    renyi_entropy,
    sample,
    shannon_entropy,
    survival,
)

__all__ = [
    "DomainError",
    "InvalidDataError",
    "NonConvergenceError",
    "Params",
    "__version__",
    "builtin_dataset",
    "cdf",
    "compare",
    "conditional_moment",
    "extreme_norming",
    "fit",
    "hazard",
    "hazard_shape",
    "ks_statistic",
    "log_pdf",
    "mean_residual_life",
    "median",
    "mode",
    "order_stat_moment",
    "order_stat_pdf",
    "pdf",
    "quantile",
    "raw_moment",
    "renyi_entropy",
    "sample",
    "shannon_entropy",
    "survival",
]
