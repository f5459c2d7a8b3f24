"""Parameter types shared by every other module.

All frequencies and rates are dimensionless and measured in one common
reference unit. Parameters are stored as detunings; :class:`FrequencySpec`
is a convenience layer for absolute frequencies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

PARAM_NAMES = (
    "delta1",
    "delta2",
    "delta3",
    "gamma1",
    "gamma2",
    "gamma3",
    "big_gamma",
    "lam",
    "omega",
    "theta",
)

NON_NEGATIVE = ("gamma1", "gamma2", "gamma3", "big_gamma", "omega")


class InvalidParameterError(ValueError):
    """A parameter value violates its domain."""


class SingularPointError(ArithmeticError):
    """The scattering problem has no unique solution at this point."""


class DegenerateDriveError(SingularPointError):
    """A nonzero drive acts on a level with zero complex detuning."""


@dataclass(frozen=True)
class SystemParams:
    """One scattering configuration.

    Attributes
    ----------
    delta1, delta2, delta3 : float
        Detunings of the probe from the cavity, the |1>-|2> transition and
        the |3> level.
    gamma1, gamma2, gamma3 : float
        Dissipation of the cavity and of QD states |2> and |3>.
    big_gamma : float
        Decay rate into the waveguide.
    lam : float
        Cavity-QD coupling strength.
    omega : float
        Rabi frequency of the classical drive on |2>-|3>.
    theta : float
        Propagation phase between the two scatterers, in radians.
    """

    delta1: float = 0.0
    delta2: float = 0.0
    delta3: float = 0.0
    gamma1: float = 0.0
    gamma2: float = 0.0
    gamma3: float = 0.0
    big_gamma: float = 0.0
    lam: float = 0.0
    omega: float = 0.0
    theta: float = 0.0

    def replace(self, **changes: float) -> "SystemParams":
        return replace(self, **changes)

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def validate(params: SystemParams) -> SystemParams:
    """Return ``params`` unchanged, or raise naming the offending field."""
    for name in PARAM_NAMES:
        value = getattr(params, name)
        if not math.isfinite(value):
            raise InvalidParameterError(f"{name} must be finite")
        if name in NON_NEGATIVE and value < 0:
            raise InvalidParameterError(f"{name} must be ≥ 0")
    return params


@dataclass(frozen=True)
class FrequencySpec:
    omega_probe: float
    omega_cavity: float
    omega_qd: float
    delta23: float = 0.0


def derive_detunings(spec: FrequencySpec) -> tuple[float, float, float]:
    """Detunings (delta1, delta2, delta3) for absolute frequencies.

    The |3> level sits at ``omega_qd - delta23``, so ``delta3 = delta2 + delta23``.
    """
    for f in fields(spec):
        if not math.isfinite(getattr(spec, f.name)):
            raise InvalidParameterError(f"{f.name} must be finite")
    delta1 = spec.omega_probe - spec.omega_cavity
    delta2 = spec.omega_probe - spec.omega_qd
    delta3 = delta2 + spec.delta23
    return delta1, delta2, delta3
