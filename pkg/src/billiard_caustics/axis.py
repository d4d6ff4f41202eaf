"""On-axis cusps: the mirror equation and the Mobius maps it induces."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import FocusPoint, OutsidePoint, ZeroDistance
from .geometry import FOCUS_TOL, ConicTable, Point

MAJOR = "major"
MINOR = "minor"


@dataclass(frozen=True)
class MobiusMap:
    """``x -> (m11 x + m12) / (m21 x + m22)`` on the projective line."""

    m11: float
    m12: float
    m21: float
    m22: float
    # high powers of a hyperbolic map are rank one to working precision
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if self.check and self.det == 0:
            raise ValueError("degenerate Mobius map")

    @classmethod
    def from_matrix(cls, m, check: bool = True) -> "MobiusMap":
        return cls(float(m[0][0]), float(m[0][1]), float(m[1][0]), float(m[1][1]), check)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    @property
    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    @property
    def trace(self) -> float:
        return self.m11 + self.m22

    @property
    def pole(self) -> float:
        return math.inf if self.m21 == 0 else -self.m22 / self.m21

    def __call__(self, x):
        if np.ndim(x) == 0:
            return _apply(self.matrix, x)
        return np.array([_apply(self.matrix, xi) for xi in np.ravel(x)]).reshape(np.shape(x))

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """``self o other``."""
        return MobiusMap.from_matrix(self.matrix @ other.matrix)

    def derivative(self, z):
        return self.det / (self.m21 * z + self.m22) ** 2

    def power(self, n: int) -> "MobiusMap":
        """n-fold iterate by squaring, rescaling the matrix at every step."""
        if n < 0:
            raise ValueError("n must be non-negative")
        result = np.eye(2)
        base = self.matrix / np.max(np.abs(self.matrix))
        while n:
            if n & 1:
                result = result @ base
                result /= np.max(np.abs(result))
            n >>= 1
            if n:
                base = base @ base
                base /= np.max(np.abs(base))
        return MobiusMap.from_matrix(result, check=False)


def _apply(m, x) -> float:
    if math.isinf(x):
        u, v = m[0][0], m[1][0]
    else:
        u = m[0][0] * x + m[0][1]
        v = m[1][0] * x + m[1][1]
    if abs(v) <= 1e-15 * abs(u):
        return math.inf
    return u / v


def mirror_image(d: float, k: float) -> float:
    """Image distance from ``1/d + 1/d' = 2k``; ``inf`` at the focal distance."""
    if d == 0:
        raise ZeroDistance("object on the mirror")
    inv = 2.0 * k - 1.0 / d
    if abs(inv) <= 1e-15 * abs(2.0 * k):
        return math.inf
    return 1.0 / inv


def mobius_f(table: ConicTable) -> MobiusMap:
    """Reflection at ``(a, 0)`` followed by the flip ``x -> -x``."""
    a, c2 = table.a, table.a ** 2 - table.b ** 2
    s = a * a + c2
    return MobiusMap(s, -2.0 * a * c2, -2.0 * a, s)


def mobius_g(table: ConicTable) -> MobiusMap:
    """Minor-axis analogue of :func:`mobius_f`."""
    b, c2 = table.b, table.a ** 2 - table.b ** 2
    d = c2 - b * b
    return MobiusMap(d, -2.0 * b * c2, 2.0 * b, d)


def iterate_axis_cusps(table: ConicTable, x0: float, n: int, axis: str = MAJOR) -> tuple[Point, Point]:
    """Cusps after ``n`` reflections of the two axis rays from ``x0`` on ``axis``.

    The first point follows the ray leaving in the positive axis direction.
    A landing on the Mobius pole is returned as a point at infinity.
    """
    if axis not in (MAJOR, MINOR):
        raise ValueError(f"unknown axis {axis!r}")
    half = table.a if axis == MAJOR else table.b
    if not abs(x0) < half:
        raise OutsidePoint(f"{x0} is not inside the table along the {axis} axis")
    focal = table.c if axis == MAJOR else (0.0 if table.is_circle else None)
    if focal is not None and min(abs(x0 - focal), abs(x0 + focal)) <= FOCUS_TOL * table.a:
        raise FocusPoint(f"{x0} is a focus")
    m = (mobius_f(table) if axis == MAJOR else mobius_g(table)).power(n)
    sign = -1.0 if n % 2 else 1.0
    forward = sign * m(x0)
    backward = -sign * m(-x0)
    return _axis_point(forward, axis), _axis_point(backward, axis)


def _axis_point(t: float, axis: str) -> Point:
    if math.isinf(t):
        return Point.at_infinity(0.0 if axis == MAJOR else math.pi / 2)
    return Point(t, 0.0) if axis == MAJOR else Point(0.0, t)


@dataclass(frozen=True)
class FixedPointReport:
    kind: str
    fixed_points: tuple
    multipliers: tuple
    rotation_angle: Optional[float] = None
    order: Optional[int] = None


def fixed_point_analysis(m: MobiusMap, rel_tol: float = 1e-12) -> FixedPointReport:
    """Fixed points, multipliers and type (hyperbolic, parabolic, elliptic)."""
    disc = (m.m22 - m.m11) ** 2 + 4.0 * m.m21 * m.m12
    scale = m.trace ** 2 + abs(m.det)
    if m.m21 == 0:
        if m.m11 == m.m22:
            return FixedPointReport("parabolic", (math.inf,), (1.0,))
        z = m.m12 / (m.m22 - m.m11)
        return FixedPointReport("hyperbolic", (z, math.inf), (m.derivative(z), m.m22 / m.m11))
    if abs(disc) <= rel_tol * scale:
        z = (m.m11 - m.m22) / (2.0 * m.m21)
        return FixedPointReport("parabolic", (z,), (1.0,))
    root = cmath.sqrt(disc)
    zs = ((m.m11 - m.m22 + root) / (2.0 * m.m21), (m.m11 - m.m22 - root) / (2.0 * m.m21))
    if disc > 0:
        zs = tuple(sorted(z.real for z in zs))
        return FixedPointReport("hyperbolic", zs, tuple(m.derivative(z) for z in zs))
    zs = tuple(sorted(zs, key=lambda z: z.imag))
    mults = tuple(m.derivative(z) for z in zs)
    # the lower fixed point carries the positive rotation
    angle = cmath.phase(mults[0]) % (2.0 * math.pi)
    frac = Fraction(angle / (2.0 * math.pi)).limit_denominator(1000)
    order = frac.denominator if abs(angle / (2.0 * math.pi) - frac) < 1e-9 else None
    return FixedPointReport("elliptic", zs, mults, angle, order)
