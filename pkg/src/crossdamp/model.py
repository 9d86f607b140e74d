"""Physical constants, parameter records, and the effective two-ion model.

All quantities are SI unless stated otherwise.  The downstream dynamics
consume only :class:`ModelParams`; :class:`PhysicalParams` exists so that
trap geometry can be mapped onto the effective coupling and renormalized
frequency once, up front.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# CODATA 2018
HBAR = 1.054571817e-34          # J s
BOLTZMANN = 1.380649e-23        # J / K
VACUUM_PERMITTIVITY = 8.8541878128e-12  # F / m

#: Coulomb constant 1 / (4 pi eps0), N m^2 / C^2
COULOMB_K = 1.0 / (4.0 * math.pi * VACUUM_PERMITTIVITY)


@dataclass(frozen=True)
class PhysicalParams:
    """Trap geometry and ion properties.

    temperature_ratio is the dimensionless hbar*omega0 / (kB*T) of the
    reservoir; it is optional because the effective model itself does not
    need a temperature.
    """

    mass: float                   # kg
    charge: float                 # C
    separation: float             # m
    trap_frequency: float         # rad / s
    temperature_ratio: float | None = None

    def __post_init__(self):
        if self.mass <= 0.0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if self.charge == 0.0:
            raise ValueError("charge must be nonzero")
        if self.separation <= 0.0:
            raise ValueError(f"separation must be positive, got {self.separation}")
        if self.trap_frequency <= 0.0:
            raise ValueError(
                f"trap_frequency must be positive, got {self.trap_frequency}"
            )
        if self.temperature_ratio is not None and self.temperature_ratio <= 0.0:
            raise ValueError(
                f"temperature_ratio must be positive, got {self.temperature_ratio}"
            )


@dataclass(frozen=True)
class ModelParams:
    """Effective parameters of the cross-damped two-mode model.

    coupling may be any real number (the Coulomb-derived value is negative);
    the cross-damping rate is bounded by the local rate, gamma12 <= gamma,
    with equality at the decoherence-free point.
    """

    omega0: float                 # renormalized frequency, rad / s
    coupling: float               # exchange coupling, rad / s
    gamma: float                  # local damping rate, 1 / s
    gamma12: float                # cross-damping rate, 1 / s
    nbar: float                   # reservoir mean occupation, dimensionless

    def __post_init__(self):
        if self.gamma < 0.0:
            raise ValueError(f"gamma must be non-negative, got {self.gamma}")
        if not 0.0 <= self.gamma12 <= self.gamma:
            raise ValueError(
                f"gamma12 must lie in [0, gamma]={[0.0, self.gamma]}, "
                f"got {self.gamma12}"
            )
        if self.nbar < 0.0:
            raise ValueError(f"nbar must be non-negative, got {self.nbar}")


def effective_model(p: PhysicalParams, *, gamma: float = 0.0,
                    gamma12: float = 0.0) -> ModelParams:
    """Map trap geometry onto the effective coupling and frequency.

    The second-order expansion of the Coulomb repulsion about the
    equilibrium separation d gives a frequency shift k q^2 / (m w d^3)
    and an exchange coupling of the same magnitude and opposite sign:

        coupling = -k q^2 / (m w d^3),   omega0 = w + k q^2 / (m w d^3).

    The reservoir occupation is filled in from ``temperature_ratio`` when
    present, otherwise left at zero.  Damping rates are not derivable from
    geometry and default to zero.
    """
    shift = COULOMB_K * p.charge ** 2 / (p.mass * p.trap_frequency * p.separation ** 3)
    nbar = 0.0
    if p.temperature_ratio is not None:
        nbar = bose_occupation(p.temperature_ratio)
    return ModelParams(
        omega0=p.trap_frequency + shift,
        coupling=-shift,
        gamma=gamma,
        gamma12=gamma12,
        nbar=nbar,
    )


def bose_occupation(ratio: float) -> float:
    """Mean thermal occupation 1 / (exp(ratio) - 1) at ratio = hbar*w0/(kB*T)."""
    if ratio <= 0.0:
        raise ValueError(f"ratio must be positive, got {ratio}")
    return 1.0 / math.expm1(ratio)
