"""Direct solution of the stationary scattering equations.

The waveguide couples to two point scatterers at ``x = 0`` and ``x = d``.
For forward incidence the cavity sits at ``x = 0``; backward incidence is
handled by mirroring the geometry so the emitter sits at ``x = 0`` and the
wave again arrives from the left. Nothing here uses the closed-form
amplitudes, so the two routes check each other.

Units: ``v_g = 1`` and ``V = sqrt(Gamma / 2)``, so every ``V**2 / v_g``
reduces to ``Gamma / 2``.

Every relation is assembled as an affine form over the unknown excitation
amplitudes ``(xi1, xi2, xi3)`` (a length-4 array ``[const, c1, c2, c3]``),
then the resulting 2x2 or 3x3 system is solved by Gaussian elimination with
partial pivoting.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .params import DegenerateDriveError, SingularPointError, SystemParams, validate

DET_FLOOR = 1e-300

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class OracleSolution:
    xi1: complex
    xi2: complex
    xi3: complex
    a: complex
    b: complex
    t: complex
    r: complex
    direction: str


def _sites(direction: str) -> tuple[int, int]:
    """Indices (1 = cavity, 2 = emitter) of the scatterers at x=0 and x=d."""
    if direction == FORWARD:
        return 1, 2
    if direction == BACKWARD:
        return 2, 1
    raise ValueError(f"direction must be {FORWARD!r} or {BACKWARD!r}, got {direction!r}")


def _waves(xi, near: int, far: int, V: float, e: complex, one=1.0):
    """Wave amplitudes (a, b, t, r) from the jump conditions at both sites.

    ``xi`` is indexable by 1, 2, 3 and holds numbers or affine forms; ``one``
    is the matching unit.
    """
    a = one - 1j * V * xi[near]
    b = -1j * V * xi[far] * e
    t = a - 1j * V * xi[far] / e
    r = b - 1j * V * xi[near]
    return a, b, t, r


def _relations(p: SystemParams, direction: str, xi, a, b, t, r, one=1.0) -> list:
    """Left-minus-right of the three dynamical equations.

    The field seen by the scatterer at x=0 is ``1 + a + r + b``; at x=d it is
    ``(a + t) e^{i theta} + b e^{-i theta}``.
    """
    near, far = _sites(direction)
    V = math.sqrt(p.big_gamma / 2)
    e = cmath.exp(1j * p.theta)
    field = {near: one + a + r + b, far: (a + t) * e + b / e}
    B1 = p.delta1 + 1j * p.gamma1
    B2 = p.delta2 + 1j * p.gamma2
    B3 = p.delta3 + 1j * p.gamma3
    half_om = p.omega / 2
    return [
        B1 * xi[1] - p.lam * xi[2] - V * field[1],
        B2 * xi[2] - p.lam * xi[1] - half_om * xi[3] - V * field[2],
        half_om * xi[2] - B3 * xi[3],
    ]


def _gauss_solve(M: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve ``M x = rhs`` for tiny dense ``M`` with partial pivoting."""
    n = len(rhs)
    M = M.astype(complex)
    rhs = rhs.astype(complex)
    det = 1.0
    for k in range(n):
        piv = k + int(np.argmax(np.abs(M[k:, k])))
        if piv != k:
            M[[k, piv]] = M[[piv, k]]
            rhs[[k, piv]] = rhs[[piv, k]]
        det *= abs(M[k, k])
        if not det >= DET_FLOOR:
            raise SingularPointError(f"scattering system is singular (|det| = {det:.3g})")
        for i in range(k + 1, n):
            f = M[i, k] / M[k, k]
            M[i, k:] -= f * M[k, k:]
            rhs[i] -= f * rhs[k]
    x = np.zeros(n, dtype=complex)
    for k in range(n - 1, -1, -1):
        x[k] = (rhs[k] - M[k, k + 1 :] @ x[k + 1 :]) / M[k, k]
    return x


def _solve(params: SystemParams, direction: str) -> OracleSolution:
    p = validate(params)
    near, far = _sites(direction)
    driven = p.omega != 0
    if driven and p.delta3 == 0 and p.gamma3 == 0:
        raise DegenerateDriveError("drive acts on |3> with delta3 + i*gamma3 = 0")

    basis = np.eye(4, dtype=complex)
    xi = {1: basis[1], 2: basis[2], 3: basis[3]}
    if not driven:
        # |3> decouples entirely; keep xi3 identically zero
        xi[3] = np.zeros(4, dtype=complex)
    V = math.sqrt(p.big_gamma / 2)
    e = cmath.exp(1j * p.theta)
    a, b, t, r = _waves(xi, near, far, V, e, one=basis[0])
    forms = _relations(p, direction, xi, a, b, t, r, one=basis[0])
    n = 3 if driven else 2
    forms = forms[:n]
    M = np.array([f[1 : n + 1] for f in forms])
    rhs = -np.array([f[0] for f in forms])
    sol = _gauss_solve(M, rhs)

    values = {1: sol[0], 2: sol[1], 3: sol[2] if driven else 0j}
    a, b, t, r = _waves(values, near, far, V, e)
    return OracleSolution(
        complex(values[1]), complex(values[2]), complex(values[3]),
        complex(a), complex(b), complex(t), complex(r), direction,
    )


def solve_forward(params: SystemParams) -> OracleSolution:
    """Scattering of a wave incident from the cavity side."""
    return _solve(params, FORWARD)


def solve_backward(params: SystemParams) -> OracleSolution:
    """Scattering of a wave incident from the emitter side (mirrored geometry)."""
    return _solve(params, BACKWARD)


def residuals(sol: OracleSolution, params: SystemParams) -> float:
    """Largest violation of any stationary relation at ``sol``."""
    p = params
    near, far = _sites(sol.direction)
    V = math.sqrt(p.big_gamma / 2)
    e = cmath.exp(1j * p.theta)
    xi = {1: sol.xi1, 2: sol.xi2, 3: sol.xi3}
    a, b, t, r = _waves(xi, near, far, V, e)
    checks = _relations(p, sol.direction, xi, sol.a, sol.b, sol.t, sol.r)
    checks += [sol.a - a, sol.b - b, sol.t - t, sol.r - r]
    return max(abs(c) for c in checks)


def residual_scale(params: SystemParams) -> float:
    """``1 +`` the largest coefficient modulus, for relative residual bounds."""
    p = params
    coeffs = [
        abs(complex(p.delta1, p.gamma1)),
        abs(complex(p.delta2, p.gamma2)),
        abs(complex(p.delta3, p.gamma3)),
        abs(p.lam),
        p.omega / 2,
        math.sqrt(p.big_gamma / 2),
    ]
    return 1.0 + max(coeffs)
