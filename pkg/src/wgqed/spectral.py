"""Scattering-matrix spectrum, exceptional-point search and phase diagnostics."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .amplitudes import (
    AmplitudeSet,
    evaluate,
    normalize_model,
    three_level_kernel,
    two_level_kernel,
)
from .params import (
    PARAM_NAMES,
    FrequencySpec,
    InvalidParameterError,
    SingularPointError,
    SystemParams,
    validate,
)

SLICE_PARAMS = ("delta1", "delta2", "theta", "lam", "omega")
MIN_SLICE_POINTS = 200


class InvalidSliceError(ValueError):
    pass


class UndefinedContrastError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class SMatrixSpectrum:
    s_plus: complex
    s_minus: complex
    gap: float


def s_eigenvalues(amps: AmplitudeSet) -> SMatrixSpectrum:
    """Eigenvalues ``t +/- sqrt(r_f r_b)`` of ``[[t, r_b], [r_f, t]]``."""
    root = cmath.sqrt(amps.r_f * amps.r_b)
    return SMatrixSpectrum(amps.t + root, amps.t - root, 2 * abs(root))


def contrast_ratio(R_f: float, R_b: float) -> float:
    if R_f < 0 or R_b < 0:
        raise ValueError("reflectances must be non-negative")
    total = R_f + R_b
    if total == 0:
        raise UndefinedContrastError("contrast undefined when R_f = R_b = 0")
    return abs(R_f - R_b) / total


@dataclass(frozen=True)
class Link:
    """``target = source + offset``, applied after axis values are set."""

    target: str
    source: str
    offset: float = 0.0


def apply_links(values: dict, links) -> dict:
    for link in links:
        values[link.target] = values[link.source] + link.offset
    return values


@dataclass(frozen=True)
class SweepSlice:
    """One varying coordinate over ``[start, stop]``, everything else fixed."""

    base: SystemParams
    param: str
    start: float
    stop: float
    count: int = 2001
    model: str = "two_level"
    links: tuple[Link, ...] = ()

    def check(self) -> None:
        if self.param not in SLICE_PARAMS:
            raise InvalidSliceError(f"cannot slice along {self.param!r}; choose from {SLICE_PARAMS}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise InvalidSliceError("slice bounds must be finite")
        if not self.start < self.stop:
            raise InvalidSliceError("slice interval is empty (start must be < stop)")
        if self.count < MIN_SLICE_POINTS:
            raise InvalidSliceError(f"slice needs at least {MIN_SLICE_POINTS} points, got {self.count}")
        if any(link.target == self.param for link in self.links):
            raise InvalidSliceError(f"{self.param!r} is both swept and linked")
        normalize_model(self.model)
        validate(self.base)

    def at(self, x: float) -> SystemParams:
        values = self.base.as_dict()
        values[self.param] = x
        return SystemParams(**apply_links(values, self.links))

    def scan(self):
        """Grid, forward and backward reflection amplitudes along the slice."""
        xs = np.linspace(self.start, self.stop, self.count)
        values = {k: np.full(self.count, v, dtype=float) for k, v in self.base.as_dict().items()}
        values[self.param] = xs
        v = apply_links(values, self.links)
        with np.errstate(divide="ignore", invalid="ignore"):
            if normalize_model(self.model) == "three_level":
                _, r_f, r_b, _ = three_level_kernel(*(v[k] for k in PARAM_NAMES))
            else:
                _, r_f, r_b, _ = two_level_kernel(
                    v["delta1"], v["delta2"], v["gamma1"], v["gamma2"],
                    v["big_gamma"], v["lam"], v["theta"],
                )
        return xs, r_f, r_b


@dataclass(frozen=True)
class EPTolerances:
    tol_zero: float = 1e-6
    tol_nonzero: float = 1e-3
    # coarse-grid |r|^2 minima above this are not refined
    bracket: float = 1e-2


@dataclass(frozen=True)
class EPRecord:
    slice_param: str
    location: float
    vanishing_side: str
    r_zero_mod: float
    r_other_mod: float
    gap: float
    t: complex = field(default=0j, compare=False)


def classify(r_f: complex, r_b: complex, tol: EPTolerances = EPTolerances()) -> str | None:
    """Which reflection vanishes at a unidirectional EP, or None.

    Symmetric: swapping the arguments flips the returned side.
    """
    for side, zero, other in (("forward", r_f, r_b), ("backward", r_b, r_f)):
        z, o = abs(zero), abs(other)
        if z < tol.tol_zero and o > tol.tol_nonzero:
            gap = 2 * abs(cmath.sqrt(zero * other))
            if gap < 2 * math.sqrt(tol.tol_zero * (o + tol.tol_zero)):
                return side
    return None


def _local_minima(y: np.ndarray) -> list[int]:
    y = np.where(np.isfinite(y), y, np.inf)
    idx = []
    n = len(y)
    for i in range(n):
        left = y[i - 1] if i > 0 else np.inf
        right = y[i + 1] if i < n - 1 else np.inf
        if y[i] <= left and y[i] < right:
            idx.append(i)
    return idx


def find_eps(sl: SweepSlice, tol: EPTolerances = EPTolerances()) -> list[EPRecord]:
    """Locate unidirectional exceptional points along a 1D slice.

    Coarse-scans ``|r_f|^2`` and ``|r_b|^2``, refines every local minimum
    below ``tol.bracket`` with a bounded scalar minimizer, and keeps the
    refined points that pass :func:`classify`. Returns records sorted by
    location; an empty list when nothing qualifies.
    """
    sl.check()
    xs, r_f, r_b = sl.scan()
    step = xs[1] - xs[0]
    model = normalize_model(sl.model)
    found: list[EPRecord] = []
    for side, r in (("forward", r_f), ("backward", r_b)):
        power = np.abs(r) ** 2
        for i in _local_minima(power):
            if not power[i] < tol.bracket:
                continue
            lo, hi = xs[max(i - 1, 0)], xs[min(i + 1, len(xs) - 1)]

            def objective(x, side=side):
                try:
                    amps = evaluate(sl.at(x), model)
                except SingularPointError:
                    return math.inf
                return abs(amps.r_f if side == "forward" else amps.r_b) ** 2

            res = minimize_scalar(objective, bounds=(lo, hi), method="bounded",
                                  options={"xatol": 1e-14 * max(1.0, abs(xs[i]))})
            x = float(res.x)
            try:
                amps = evaluate(sl.at(x), model)
            except SingularPointError:
                continue
            if classify(amps.r_f, amps.r_b, tol) != side:
                continue
            zero, other = (amps.r_f, amps.r_b) if side == "forward" else (amps.r_b, amps.r_f)
            rec = EPRecord(sl.param, x, side, abs(zero), abs(other),
                           s_eigenvalues(amps).gap, amps.t)
            if not any(r.vanishing_side == side and abs(r.location - x) < 2 * step for r in found):
                found.append(rec)
    return sorted(found, key=lambda r: (r.location, r.vanishing_side))


@dataclass(frozen=True)
class PhaseDiagnostics:
    theta1: float
    theta2: float
    theta_f: float
    theta_b: float
    eta: float


def phase_diagnostics(spec: FrequencySpec, params: SystemParams, eta: float | None = None) -> PhaseDiagnostics:
    """Fabry-Perot phase bookkeeping for the cavity/emitter pair.

    ``eta`` is a broadening parameter with no independent definition in this
    model; it defaults to the waveguide decay rate and is echoed in the result.
    """
    if eta is None:
        eta = params.big_gamma
    den1 = eta + params.gamma1 / 2
    den2 = eta + params.gamma2 / 2
    if den1 == 0 or den2 == 0:
        raise InvalidParameterError("eta + gamma/2 must be nonzero for both scatterers")
    theta1 = (spec.omega_probe - spec.omega_cavity) / den1
    theta2 = (spec.omega_probe - spec.omega_qd) / den2
    return PhaseDiagnostics(
        theta1,
        theta2,
        theta1 - theta2 + 2 * params.theta,
        theta2 - theta1 + 2 * params.theta,
        eta,
    )
