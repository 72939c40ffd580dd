"""Duration-driven long-memory processes (Taqqu-Levy renewal-reward, Parke error-duration)."""

from ._ddlrd import (
    GenerationError,
    ModelParams,
    StudyFailure,
    acv,
    anderson_darling,
    convert_params,
    dft,
    gph,
    paper_grid,
    periodogram,
    run_study,
    sample_acf,
    simulate,
    spectral_density,
    variance_ci,
)

__all__ = [
    "GenerationError",
    "ModelParams",
    "StudyFailure",
    "acv",
    "anderson_darling",
    "convert_params",
    "dft",
    "gph",
    "paper_grid",
    "periodogram",
    "run_study",
    "sample_acf",
    "simulate",
    "spectral_density",
    "variance_ci",
]
