"""Pseudospectral solver for the 2D dissipative quasi-geostrophic equation.

The heavy lifting lives in the C++ extension ``qgx._core``; this package
re-exports its public surface.
"""

from ._core import (
    BlowupError,
    DecayVerdict,
    Grid,
    InequalityReport,
    InequalityRow,
    InitKind,
    InitSpec,
    NormRecord,
    NormSeries,
    SimParams,
    SpectralField,
    VelocityField,
    apply_fractional_power,
    build_initial,
    cfl_dt,
    chi_norm,
    dealias,
    decay_summary,
    exact_decay_reference,
    forward_transform,
    gradient,
    inverse_transform,
    l2_norm,
    make_initial,
    nonlinear_term,
    rescale_to_norm,
    scaling_invariance_check,
    simulate,
    theorem1_functional,
    velocity_from_theta,
)

__all__ = [
    "BlowupError",
    "DecayVerdict",
    "Grid",
    "InequalityReport",
    "InequalityRow",
    "InitKind",
    "InitSpec",
    "NormRecord",
    "NormSeries",
    "SimParams",
    "SpectralField",
    "VelocityField",
    "apply_fractional_power",
    "build_initial",
    "cfl_dt",
    "chi_norm",
    "dealias",
    "decay_summary",
    "exact_decay_reference",
    "forward_transform",
    "gradient",
    "inverse_transform",
    "l2_norm",
    "make_initial",
    "nonlinear_term",
    "rescale_to_norm",
    "scaling_invariance_check",
    "simulate",
    "theorem1_functional",
    "velocity_from_theta",
]

__version__ = "0.1.0"
