"""Closed-form transmission and reflection amplitudes.

The kernels (``three_level_kernel``, ``two_level_kernel``) accept either
Python scalars or broadcastable numpy arrays, so the same expressions serve
single-point evaluation and dense grid scans. ``eval_*`` wrap them for one
:class:`SystemParams` with validation and a singularity guard.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .params import SingularPointError, SystemParams, validate

DEFAULT_FLOOR = 1e-300


def _expi(theta):
    if isinstance(theta, np.ndarray):
        return np.exp(1j * theta)
    return cmath.exp(1j * theta)


@dataclass(frozen=True)
class AmplitudeSet:
    t: complex
    r_f: complex
    r_b: complex
    T: float
    R_f: float
    R_b: float
    A_f: float
    A_b: float

    @classmethod
    def from_amplitudes(cls, t: complex, r_f: complex, r_b: complex) -> "AmplitudeSet":
        return cls(complex(t), complex(r_f), complex(r_b), *observables(t, r_f, r_b))


def observables(t: complex, r_f: complex, r_b: complex) -> tuple[float, float, float, float, float]:
    """Transmission, reflections and absorptions ``(T, R_f, R_b, A_f, A_b)``."""
    T = abs(t) ** 2
    R_f = abs(r_f) ** 2
    R_b = abs(r_b) ** 2
    return T, R_f, R_b, 1.0 - T - R_f, 1.0 - T - R_b


@dataclass(frozen=True)
class Auxiliaries:
    """Intermediate quantities of the driven three-level closed form."""

    A: complex
    B1: complex
    B2: complex
    B3: complex
    C: complex
    P: complex
    # Gamma-independent part of P; equals the Gamma-free part of the t numerator
    P0: complex


def _auxiliaries(d1, d2, d3, g1, g2, g3, G, lam, Om, theta):
    e = _expi(theta)
    Om2 = Om * Om
    B1 = 1j * g1 + d1
    B2 = 1j * g2 + d2
    B3 = 1j * g3 + d3
    A = g1 * (Om2 - 4j * g3 * d2 + 4 * g2 * (g3 - 1j * d3) - 4 * d2 * d3)
    C = 4 * G * G * (-1 + e * e) * (g3 - 1j * d3)
    lam2 = lam * lam
    P0 = (
        1j * Om2 * d1
        + g3 * (-4 * lam2 + 4j * g2 * d1 + 4 * d1 * d2)
        + 4j * lam2 * d3
        + 4 * g2 * d1 * d3
        - 4j * d1 * d2 * d3
        - A
    )
    P = (
        C
        - G * (
            Om2
            + 4 * g3 * (g1 + g2 - 1j * (2 * e * lam + d1 + d2))
            - 4 * d3 * (2 * e * lam + 1j * g1 + 1j * g2 + d1 + d2)
        )
        + P0
    )
    return e, A, B1, B2, B3, C, P, P0


def auxiliaries(params: SystemParams) -> Auxiliaries:
    p = validate(params)
    _, A, B1, B2, B3, C, P, P0 = _auxiliaries(
        p.delta1, p.delta2, p.delta3, p.gamma1, p.gamma2, p.gamma3,
        p.big_gamma, p.lam, p.omega, p.theta,
    )
    return Auxiliaries(A, B1, B2, B3, C, P, P0)


def three_level_kernel(d1, d2, d3, g1, g2, g3, G, lam, Om, theta):
    """Return ``(t, r_f, r_b, P)`` for the driven Lambda-type emitter.

    The reflection numerators carry ``-4*d3*(...)``; with the opposite sign
    they fail to reduce to the undriven two-level result at ``Om = 0`` and
    disagree with a direct solve of the stationary equations.
    """
    e, A, B1, B2, B3, C, P, P0 = _auxiliaries(d1, d2, d3, g1, g2, g3, G, lam, Om, theta)
    e2 = e * e
    Om2 = Om * Om
    lam_e = 2 * e * lam
    # e^{-i theta} * 4 G lam (e^{2i theta} - 1) B3 == 4 G lam (e - conj(e)) B3
    t_num = 4 * G * lam * (e - e.conjugate()) * B3 + P0
    rf_num = C - G * (
        Om2
        + 4 * g3 * (e2 * g1 + g2 - 1j * (lam_e + e2 * d1 + d2))
        - 4 * d3 * (lam_e + e2 * B1 + B2)
    )
    rb_num = C - G * (
        e2 * Om2
        + 4 * g3 * (g1 + e2 * g2 - 1j * (lam_e + d1 + e2 * d2))
        - 4 * d3 * (lam_e + B1 + e2 * B2)
    )
    return t_num / P, -rf_num / P, -rb_num / P, P


def two_level_kernel(d1, d2, g1, g2, G, lam, theta):
    """Return ``(t, r_f, r_b, P)`` for the undriven (two-level) emitter."""
    e = _expi(theta)
    e2 = e * e
    B1 = d1 + 1j * g1
    B2 = d2 + 1j * g2
    Q = B1 * B2 - lam * lam
    G2 = (-1 + e2) * G * G
    lam_e = 2 * e * lam
    P = G2 + 1j * G * (lam_e + B1 + B2) + Q
    t_num = 1j * (e - e.conjugate()) * lam * G + Q
    rf_num = G2 + 1j * G * (lam_e + e2 * B1 + B2)
    rb_num = G2 + 1j * G * (lam_e + B1 + e2 * B2)
    return t_num / P, -rf_num / P, -rb_num / P, P


def _check_denominator(P: complex, floor: float) -> None:
    if not abs(P) >= floor:
        raise SingularPointError(f"denominator P vanishes (|P| = {abs(P):.3g})")


def eval_three_level(params: SystemParams, floor: float = DEFAULT_FLOOR) -> AmplitudeSet:
    p = validate(params)
    try:
        t, r_f, r_b, P = three_level_kernel(
            p.delta1, p.delta2, p.delta3, p.gamma1, p.gamma2, p.gamma3,
            p.big_gamma, p.lam, p.omega, p.theta,
        )
    except ZeroDivisionError:
        raise SingularPointError("denominator P vanishes (|P| = 0)") from None
    _check_denominator(P, floor)
    return AmplitudeSet.from_amplitudes(t, r_f, r_b)


def eval_two_level(params: SystemParams, floor: float = DEFAULT_FLOOR) -> AmplitudeSet:
    """Undriven amplitudes; ``omega``, ``delta3`` and ``gamma3`` are ignored."""
    p = validate(params)
    try:
        t, r_f, r_b, P = two_level_kernel(
            p.delta1, p.delta2, p.gamma1, p.gamma2, p.big_gamma, p.lam, p.theta
        )
    except ZeroDivisionError:
        raise SingularPointError("denominator P vanishes (|P| = 0)") from None
    _check_denominator(P, floor)
    return AmplitudeSet.from_amplitudes(t, r_f, r_b)


MODELS = {"three_level": eval_three_level, "two_level": eval_two_level}


def normalize_model(name: str) -> str:
    key = name.replace("-", "_")
    if key not in MODELS:
        raise ValueError(f"unknown model {name!r}; expected one of {sorted(MODELS)}")
    return key


def evaluate(params: SystemParams, model: str = "three_level", floor: float = DEFAULT_FLOOR) -> AmplitudeSet:
    return MODELS[normalize_model(model)](params, floor)
