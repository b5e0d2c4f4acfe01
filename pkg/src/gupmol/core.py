"""Shared model types and the internal unit system.

Internal units fix hbar = 1 with energies in eV and lengths in Angstrom.
The derived mass unit is then eV^-1 A^-2 (1 amu is about 239.225 internal)
and the deformation parameter beta, an inverse squared momentum, carries A^2.
Every public function in the package operates on internal-unit quantities;
conversions live in :class:`UnitSystem` and nowhere else.

The algebra implemented here is the one-parameter deformation in which the
position and momentum commutator picks up a quadratic momentum term.  Its
coordinate representation replaces the momentum operator by
``p * (1 + beta * p^2)``, which turns the kinetic term into
``p^2/2mu + (beta/mu) p^4`` to first order in beta and gives the smallest
resolvable length ``hbar * sqrt(5 beta)`` in three dimensions.  A variant
representation with a 1/3 factor on the quadratic term exists but is not
implemented; the Hamiltonian above is the one every formula in this package
is derived from.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import constants as _codata

HBAR = 1.0

# CODATA factors via scipy.constants: hbar*c in eV*Angstrom, eV <-> cm^-1,
# and amu -> internal mass = (amu c^2 in eV) / (hbar c in eV*A)^2.
HBARC_EV_ANGSTROM = (
    _codata.physical_constants["reduced Planck constant times c in MeV fm"][0] * 10.0
)
EV_TO_CM1 = _codata.physical_constants["electron volt-inverse meter relationship"][0] / 100.0
AMU_TO_INTERNAL = (
    _codata.physical_constants["atomic mass constant energy equivalent in MeV"][0]
    * 1.0e6
    / HBARC_EV_ANGSTROM**2
)

ENERGY_UNITS = ("internal", "eV", "cm-1")


class GupmolError(Exception):
    """Base class for all package errors."""


class DomainError(GupmolError, ValueError):
    """Input outside the mathematical domain of a formula (poles, signs, ranges)."""


class GridError(GupmolError, RuntimeError):
    """Radial grid cannot support the requested computation."""


class ConvergenceError(GupmolError, RuntimeError):
    """Grid refinement failed to reach the requested tolerance."""


class DataFormatError(GupmolError, ValueError):
    """Malformed molecule or experimental-level data file."""


class FitError(GupmolError, ValueError):
    """Least-squares problem is unsolvable as posed."""


class PerturbationWarning(UserWarning):
    """First-order correction is not small against the level it corrects."""


@dataclass(frozen=True)
class UnitSystem:
    """Conversions between spectroscopic units and the internal system.

    Lengths are Angstrom both externally and internally, so only energies
    (eV, cm-1) and masses (amu) carry conversion factors.
    """

    ev_to_cm1: float = EV_TO_CM1
    amu_to_internal: float = AMU_TO_INTERNAL

    def energy_to_internal(self, value: float, unit: str) -> float:
        if unit in ("internal", "eV"):
            return value
        if unit == "cm-1":
            return value / self.ev_to_cm1
        raise DomainError(f"unknown energy unit {unit!r}; expected one of {ENERGY_UNITS}")

    def energy_from_internal(self, value: float, unit: str) -> float:
        if unit in ("internal", "eV"):
            return value
        if unit == "cm-1":
            return value * self.ev_to_cm1
        raise DomainError(f"unknown energy unit {unit!r}; expected one of {ENERGY_UNITS}")

    def mass_to_internal(self, mu_amu: float) -> float:
        return mu_amu * self.amu_to_internal

    def mass_from_internal(self, mu: float) -> float:
        return mu / self.amu_to_internal


UNITS = UnitSystem()


def _require_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class Molecule:
    """Diatomic molecule parameters, internal units.

    de: well depth (eV); re: equilibrium separation (A); mu: reduced mass
    (eV^-1 A^-2).  Use :meth:`from_spectroscopic` to build from tabulated
    eV / Angstrom / amu values.
    """

    name: str
    de: float
    re: float
    mu: float

    def __post_init__(self) -> None:
        _require_positive("de", self.de)
        _require_positive("re", self.re)
        _require_positive("mu", self.mu)

    @classmethod
    def from_spectroscopic(
        cls,
        name: str,
        de_ev: float,
        re_angstrom: float,
        mu_amu: float,
        units: UnitSystem = UNITS,
    ) -> "Molecule":
        return cls(name=name, de=de_ev, re=re_angstrom, mu=units.mass_to_internal(mu_amu))


def synthetic_molecule(gamma_value: float, de: float = 1.0, re: float = 1.0,
                       name: str | None = None) -> Molecule:
    """Molecule whose well-depth parameter equals ``gamma_value`` exactly.

    Fixes de and re and solves for the reduced mass; handy for sweeps where
    gamma is the controlled variable.
    """
    _require_positive("gamma_value", gamma_value)
    mu = (gamma_value * HBAR / re) ** 2 / (2.0 * de)
    return Molecule(name=name or f"synthetic-gamma-{gamma_value:g}", de=de, re=re, mu=mu)


@dataclass(frozen=True)
class Deformation:
    """Deformation parameter beta (A^2 internal); beta = 0 is the ordinary theory."""

    beta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.beta) and self.beta >= 0.0):
            raise DomainError(f"beta must be finite and >= 0, got {self.beta!r}")

    @property
    def minimal_length(self) -> float:
        return HBAR * math.sqrt(5.0 * self.beta)

    @classmethod
    def from_minimal_length(cls, x: float) -> "Deformation":
        if not (math.isfinite(x) and x >= 0.0):
            raise DomainError(f"minimal length must be finite and >= 0, got {x!r}")
        return cls(beta=x * x / (5.0 * HBAR * HBAR))


NO_DEFORMATION = Deformation(0.0)


def minimal_length(d: Deformation) -> float:
    """Smallest resolvable length hbar*sqrt(5 beta), in Angstrom."""
    return d.minimal_length


def beta_from_minimal_length(x: float) -> Deformation:
    """Inverse of :func:`minimal_length`; rejects negative lengths."""
    return Deformation.from_minimal_length(x)


@dataclass(frozen=True)
class QuantumNumbers:
    """Vibrational (n) and rotational (ell) quantum numbers, both >= 0."""

    n: int
    ell: int

    def __post_init__(self) -> None:
        for label, value in (("n", self.n), ("ell", self.ell)):
            if isinstance(value, bool) or int(value) != value or value < 0:
                raise DomainError(f"{label} must be a nonnegative integer, got {value!r}")
            object.__setattr__(self, label, int(value))


def gamma(m: Molecule) -> float:
    """Dimensionless well-depth parameter re*sqrt(2 mu de)/hbar.

    The same expression serves both potentials; it is large (>> 1) for real
    molecules and is the expansion variable of the band-spectrum series.
    """
    value = m.re * math.sqrt(2.0 * m.mu * m.de) / HBAR
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"gamma is not finite and positive for {m.name!r}")
    return value


def lambda_kratzer(gamma_value: float, ell: int) -> float:
    """Effective radial index 1/2 + sqrt((ell+1/2)^2 + gamma^2); always > 1."""
    return 0.5 + math.sqrt((ell + 0.5) ** 2 + gamma_value**2)


def lambda_pho(gamma_value: float, ell: int) -> float:
    """Effective radial index sqrt(gamma^2 + (ell+1/2)^2); no 1/2 shift here."""
    return math.sqrt(gamma_value**2 + (ell + 0.5) ** 2)


@dataclass(frozen=True)
class EnergyLevel:
    """One level split into its undeformed part and the deformation shift."""

    qn: QuantumNumbers
    e0: float
    de: float

    @property
    def total(self) -> float:
        return self.e0 + self.de
