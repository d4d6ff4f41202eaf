"""First caustic by refraction of a parallel beam entering a circle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import jets
from .envelope import DEFAULT_SAMPLES, ENDPOINT_MARGIN, Caustic, LineFamily, family_caustic, uniform_parameters
from .cusps import find_cusps
from .geometry import Point

AXIS_TOL = 1e-6


@dataclass(frozen=True)
class RefractionSetup:
    mu: float
    radius: float = 1.0

    def __post_init__(self):
        if not self.mu > 1.0:
            raise ValueError(f"refraction index must exceed 1, got {self.mu}")
        if not self.radius > 0:
            raise ValueError("radius must be positive")


def _refracted(setup: RefractionSetup, u, sincos, sqrt, branch: int = 1):
    """Refracted ray through the entry point at angle ``u`` (beam along +x).

    ``branch=-1`` flips the sign of ``cos r``: the second sheet of the algebraic
    family, the mirror image of the first under ``x -> -x``.
    """
    R, eta = setup.radius, 1.0 / setup.mu
    su, cu = sincos(u)
    cos_i = -cu
    cos_r = sqrt(1.0 - eta * eta * (1.0 - cos_i * cos_i))
    k = eta * cos_i - branch * cos_r
    tx = eta + k * cu
    ty = k * su
    return R * cu, R * su, tx, ty


def refraction_angles(setup: RefractionSetup, u):
    """Incidence and refraction angles at entry angle ``u``."""
    u = np.asarray(u, dtype=float)
    sin_i = np.abs(np.sin(u))
    return np.arcsin(sin_i), np.arcsin(sin_i / setup.mu)


def snell_residual(setup: RefractionSetup, u):
    """``sin i - mu sin r`` computed from the refracted direction itself."""
    u = np.asarray(u, dtype=float)
    _, _, tx, ty = _refracted(setup, u, lambda v: (np.sin(v), np.cos(v)), np.sqrt)
    nx, ny = -np.cos(u), -np.sin(u)
    sin_r = np.abs(tx * ny - ty * nx) / np.hypot(tx, ty)
    return np.abs(np.sin(u)) - setup.mu * sin_r


def refract_parallel_beam(setup: RefractionSetup, samples: int = DEFAULT_SAMPLES, *,
                          lit_only: bool = False, branch: int = 1,
                          margin: float = ENDPOINT_MARGIN) -> LineFamily:
    """Refracted rays parametrised by the entry angle ``u``.

    With ``lit_only`` the family is the physical one, the open arc
    ``(pi/2, 3 pi/2)`` trimmed by ``margin``.  Otherwise the same formulas are
    continued over the whole circle, which closes the family up; the grazing
    rays at ``u = pi/2, 3 pi/2`` then become interior points where the
    off-axis cusps sit.
    """
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    if lit_only:
        s = uniform_parameters(samples, 0.5 * math.pi + margin, 1.5 * math.pi - margin, closed=False)
    else:
        s = uniform_parameters(samples)

    def series(u):
        x, y, tx, ty = _refracted(setup, jets.Series.variable(u), jets.sincos, jets.sqrt, branch)
        angle = np.arctan2(ty.value, tx.value)
        if np.size(angle) > 1:
            angle = np.unwrap(angle)
        alpha = jets.atan2(ty, tx, value=angle)
        sn, cs = jets.sincos(alpha)
        return alpha, x * sn - y * cs

    if lit_only:
        return LineFamily.from_series(s, series, closed=False, period=math.pi)
    return LineFamily.from_series(s, series, closed=True)


def refraction_caustic(setup: RefractionSetup, samples: int = DEFAULT_SAMPLES, *,
                       lit_only: bool = False, branch: int = 1) -> Caustic:
    fam = refract_parallel_beam(setup, samples, lit_only=lit_only, branch=branch)
    return family_caustic(fam, Point.at_infinity(0.0), 1, label="refraction")


def refraction_cusps(setup: RefractionSetup, samples: int = DEFAULT_SAMPLES):
    """Cusps of both sheets, split into ``(off_axis, on_axis)``."""
    off, on = [], []
    for branch in (1, -1):
        for k in find_cusps(refraction_caustic(setup, samples, branch=branch)):
            (on if abs(k.location.y) < AXIS_TOL * setup.radius else off).append(k)
    return off, on


def on_axis_radii(setup: RefractionSetup) -> tuple[float, float]:
    """Distances of the on-axis cusps from the centre, ``R/(mu+1)`` and ``R/(mu-1)``."""
    R, mu = setup.radius, setup.mu
    return R / (mu + 1.0), R / (mu - 1.0)


def cusp_radii(cusps) -> list[float]:
    return [math.hypot(k.location.x, k.location.y) for k in cusps if not k.location.is_infinite]
