"""Spectrum, bound states and thermodynamics of the Kratzer plus screened generalized Morse potential."""

from ._core import (
    Check,
    ConvergenceError,
    DomainError,
    MoleculeSpec,
    OverflowError,
    ParseError,
    QuadratureError,
    ThermoCoeffs,
    ThermoPoint,
    ValidationError,
    __version__,
    effective_potential,
    energy,
    nu_root,
    potential,
    run,
    thermo,
    thermo_coefficients,
    wavefunction,
)

__all__ = [
    "Check",
    "ConvergenceError",
    "DomainError",
    "MoleculeSpec",
    "OverflowError",
    "ParseError",
    "QuadratureError",
    "ThermoCoeffs",
    "ThermoPoint",
    "ValidationError",
    "__version__",
    "effective_potential",
    "energy",
    "nu_root",
    "potential",
    "run",
    "thermo",
    "thermo_coefficients",
    "wavefunction",
]
