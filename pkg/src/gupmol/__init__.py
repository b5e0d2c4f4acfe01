"""Vibration-rotation spectra of diatomic molecules under a minimal length.

Closed-form spectra and band-spectrum constants for the 1/r^2 - 1/r and
pseudoharmonic molecular potentials in quantum mechanics deformed by a
smallest resolvable length hbar*sqrt(5 beta), an independent finite-
difference eigensolver that verifies every formula, and an estimator for the
upper bound on beta from experimental data.
"""
from .core import (
    AMU_TO_INTERNAL,
    EV_TO_CM1,
    HBAR,
    HBARC_EV_ANGSTROM,
    NO_DEFORMATION,
    UNITS,
    ConvergenceError,
    DataFormatError,
    Deformation,
    DomainError,
    EnergyLevel,
    FitError,
    GridError,
    GupmolError,
    Molecule,
    PerturbationWarning,
    QuantumNumbers,
    UnitSystem,
    beta_from_minimal_length,
    gamma,
    lambda_kratzer,
    lambda_pho,
    minimal_length,
    synthetic_molecule,
)
from .kratzer import (
    KratzerPotential,
    kratzer_correction_slope,
    kratzer_energy_deformed,
    kratzer_energy_expansion,
    kratzer_energy_undeformed,
    kratzer_spectroscopic_constants,
)
from .oracle import (
    RadialEigenstate,
    RadialGrid,
    RadialProblem,
    RefinementResult,
    auto_grid,
    dump_eigenstate,
    extrapolate,
    kinetic_expectation,
    p4_expectation,
    p4_expectation_fd,
    perturbative_correction,
    potential_expectation,
    refine_to_tolerance,
    richardson,
    solve_radial,
)
from .pho import (
    PhoPotential,
    pho_correction_slope,
    pho_energy_deformed,
    pho_energy_expansion,
    pho_energy_undeformed,
    pho_spectroscopic_constants,
)
from .spectroscopy import (
    BetaBound,
    DunhamFit,
    ExperimentalLevel,
    LevelTable,
    SpectroscopicConstants,
    closed_form_table,
    fit_beta_bound,
    fit_dunham,
    load_levels,
    load_molecules,
    master_energy,
    packaged_data_path,
)
from .verify import SweepCell, SweepReport, closed_vs_oracle_sweep

__version__ = "0.1.0"
