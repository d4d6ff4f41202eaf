"""One-parameter ray families, their billiard images and envelopes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import geometry as geo
from . import jets
from .errors import DegenerateSource, InsidePoint, NoIntersection, OutsidePoint, UnresolvedCrossing
from .geometry import ConicTable, Point

DEFAULT_SAMPLES = 4096
MIN_SAMPLES = 512
INFINITY_TOL = 1e-10
ENDPOINT_MARGIN = 1e-3

SERIES = "series"
FINITE_DIFFERENCE = "fd"

Evaluator = Callable[[np.ndarray], tuple]
SeriesMap = Callable[[np.ndarray], tuple]

_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_OFFSETS = np.arange(-2, 3)


def stencil_derivatives(evaluate: Evaluator, s, h: float):
    """Five-point central differences of ``(alpha, p)`` in ``s``."""
    s = np.atleast_1d(np.asarray(s, dtype=float))
    grid = s[None, :] + h * _OFFSETS[:, None]
    alpha, p = evaluate(grid.ravel())
    alpha = alpha.reshape(grid.shape)
    p = p.reshape(grid.shape)
    return (alpha[2], p[2], _D1 @ alpha / h, _D1 @ p / h,
            _D2 @ alpha / (h * h), _D2 @ p / (h * h))


def series_derivatives(series: SeriesMap, s):
    alpha, p = series(np.atleast_1d(np.asarray(s, dtype=float)))
    da, dp = alpha.derivative_values(), p.derivative_values()
    return da[0], dp[0], da[1], dp[1], da[2], dp[2]


@dataclass(frozen=True)
class LineFamily:
    """Sampled family of rays ``s -> (alpha(s), p(s))`` with derivatives.

    ``evaluate`` regenerates the family at arbitrary parameters.  ``series``,
    when present, returns Taylor series in ``s`` and gives exact derivatives;
    without it derivatives come from central differences with step ``step``.
    """

    s: np.ndarray
    alpha: np.ndarray
    p: np.ndarray
    alpha_s: np.ndarray
    p_s: np.ndarray
    alpha_ss: np.ndarray
    p_ss: np.ndarray
    closed: bool
    evaluate: Evaluator = field(repr=False)
    series: Optional[SeriesMap] = field(default=None, repr=False)
    step: float = 0.0
    period: float = geo.TWO_PI

    @classmethod
    def build(cls, s, evaluate, *, closed, series=None, step=None, period=geo.TWO_PI):
        s = np.asarray(s, dtype=float)
        if step is None:
            step = float(s[1] - s[0])
        if series is not None:
            values = series_derivatives(series, s)
        else:
            values = stencil_derivatives(evaluate, s, step)
        return cls(s, *values, closed=closed, evaluate=evaluate, series=series, step=step, period=period)

    @classmethod
    def from_series(cls, s, series: SeriesMap, *, closed, period=geo.TWO_PI):
        def evaluate(t):
            alpha, p = series(np.asarray(t, dtype=float))
            return alpha.value, p.value

        return cls.build(s, evaluate, closed=closed, series=series, period=period)

    def derivatives(self, s):
        """``(alpha, p, alpha_s, p_s, alpha_ss, p_ss)`` at arbitrary ``s``."""
        if self.series is not None:
            return series_derivatives(self.series, s)
        return stencil_derivatives(self.evaluate, s, self.step)

    def __len__(self):
        return len(self.s)


def uniform_parameters(samples: int, start: float = 0.0, stop: float = geo.TWO_PI, closed: bool = True):
    if closed:
        return start + (stop - start) * np.arange(samples) / samples
    return np.linspace(start, stop, samples)


def _pencil_series(x0: float, y0: float, shift: float = 0.0) -> SeriesMap:
    def series(s):
        alpha = jets.Series.variable(s + shift)
        sn, cs = jets.sincos(alpha)
        return alpha, x0 * sn - y0 * cs

    return series


def pencil(O: Point, samples: int = DEFAULT_SAMPLES, shift: float = 0.0) -> LineFamily:
    """All rays through ``O``: ``alpha = s + shift``, ``p = x0 sin alpha - y0 cos alpha``."""
    return LineFamily.from_series(uniform_parameters(samples), _pencil_series(O.x, O.y, shift), closed=True)


def image_family(table: ConicTable, family: LineFamily, n: int, step: Optional[float] = None,
                 method: str = SERIES) -> LineFamily:
    """The family after ``n`` reflections.

    With ``method="series"`` (default, needs a series-capable base family) the
    derivatives are exact; circles go through the closed form
    ``alpha + 2n arccos(p/R)``.  ``method="fd"`` uses five-point central
    differences with ``step`` (default: the sampling step).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if method not in (SERIES, FINITE_DIFFERENCE):
        raise ValueError(f"unknown method {method!r}")
    if n == 0 and method == SERIES:
        return family

    def evaluate(s):
        alpha, p = family.evaluate(s)
        try:
            return geo.reflect_lines_n(table, alpha, p, n)
        except NoIntersection as exc:
            if exc.s is not None:
                exc.s = float(np.ravel(s)[exc.s])
            raise

    series = None
    if method == SERIES and family.series is not None:
        base = family.series

        def series(s):
            alpha, p = base(s)
            try:
                return geo.reflect_series_n(table, alpha, p, n)
            except NoIntersection as exc:
                if exc.s is not None:
                    exc.s = float(np.ravel(s)[exc.s])
                raise

    h = float(family.s[1] - family.s[0]) if step is None else step
    return LineFamily.build(family.s, evaluate, closed=family.closed, series=series, step=h,
                            period=family.period)


def envelope_point(alpha, p, p_prime):
    """Touching point of the line ``(alpha, p)`` with its envelope."""
    sa, ca = np.sin(alpha), np.cos(alpha)
    x = p * sa + p_prime * ca
    y = -p * ca + p_prime * sa
    if np.ndim(x) == 0:
        return Point(float(x), float(y))
    return x, y


def cusp_function(alpha_s, p, p_s, alpha_ss, p_ss):
    """``(p + d2p/dalpha2) * alpha_s^3``: vanishes at cusps, finite at vertical tangents."""
    return p * alpha_s ** 3 + p_ss * alpha_s - p_s * alpha_ss


@dataclass(frozen=True)
class Caustic:
    """Envelope of an image family.

    ``x``/``y`` are NaN where the envelope escapes to infinity; ``at_infinity``
    marks those samples and the escape direction is ``alpha`` there.
    """

    family: LineFamily
    x: np.ndarray
    y: np.ndarray
    at_infinity: np.ndarray
    cusp_function: np.ndarray
    infinity_count: int
    source: Point
    n: int
    table: Optional[ConicTable] = None
    label: str = "reflection"

    @property
    def s(self):
        return self.family.s

    @property
    def points(self) -> list[Point]:
        out = []
        for xi, yi, inf, a in zip(self.x, self.y, self.at_infinity, self.family.alpha):
            out.append(Point.at_infinity(float(a)) if inf else Point(float(xi), float(yi)))
        return out

    def finite_points(self):
        keep = ~self.at_infinity
        return self.x[keep], self.y[keep]


def family_caustic(family: LineFamily, source: Point, n: int, table=None, label="reflection") -> Caustic:
    """Envelope points, cusp function and vertical-tangent count of a family."""
    a_s = family.alpha_s
    inf = np.abs(a_s) < INFINITY_TOL
    safe = np.where(inf, 1.0, a_s)
    x, y = envelope_point(family.alpha, family.p, family.p_s / safe)
    x = np.where(inf, np.nan, x)
    y = np.where(inf, np.nan, y)
    H = cusp_function(a_s, family.p, family.p_s, family.alpha_ss, family.p_ss)
    count = _sign_changes(a_s, family.closed)
    return Caustic(family, x, y, inf, H, count, source, n, table, label)


def caustic(table: ConicTable, O: Point, n: int, samples: int = DEFAULT_SAMPLES,
            method: str = SERIES) -> Caustic:
    """The n-th caustic by reflection from an interior source."""
    if samples < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples")
    if not table.contains(O):
        raise OutsidePoint(f"source {O} is not inside the table")
    if table.is_focal(O):
        raise DegenerateSource(f"source {O} is a focus; the caustic is a point")
    fam = image_family(table, pencil(O, samples), n, method=method)
    return family_caustic(fam, O, n, table)


def _sign_changes(values, closed: bool) -> int:
    signs = np.sign(values)
    nz = signs[signs != 0]
    if len(nz) == 0:
        return 0
    count = int(np.count_nonzero(nz[1:] != nz[:-1]))
    if closed and nz[0] != nz[-1]:
        count += 1
    return count


def touching_zeros(values, closed: bool, rel_tol: float) -> np.ndarray:
    """Samples where ``values`` dips to zero without changing sign.

    Either a local minimum of ``|values|`` below ``rel_tol`` times the peak with
    both neighbours of the same sign, or an exact zero flanked on one side.
    """
    mag = np.abs(values)
    sgn = np.sign(values)
    prev_s, next_s = np.roll(sgn, 1), np.roll(sgn, -1)
    same = (prev_s == sgn) & (next_s == sgn)
    out = (mag <= np.roll(mag, 1)) & (mag <= np.roll(mag, -1)) & same & (mag < rel_tol * np.max(mag))
    out |= (sgn == 0) & (prev_s == next_s) & (prev_s != 0)
    if not closed:
        out[[0, -1]] = False
    return out


def infinity_crossings(c: Caustic) -> int:
    """Number of sign changes of ``alpha_s``: escapes of the caustic to infinity."""
    a_s = c.family.alpha_s
    if float(np.max(np.abs(a_s))) == 0.0:
        raise UnresolvedCrossing("alpha_s vanishes identically")
    touching = touching_zeros(a_s, c.family.closed, 1e-8)
    if np.any(touching):
        s0 = float(c.family.s[np.flatnonzero(touching)[0]])
        raise UnresolvedCrossing(f"alpha_s touches zero near s={s0:.6g}")
    return _sign_changes(a_s, c.family.closed)


def external_arc(table: ConicTable, O: Point) -> tuple[float, float]:
    """Directions ``s`` (mod pi) of lines through exterior ``O`` meeting the table."""
    if table.contains(O):
        raise InsidePoint(f"source {O} is inside the table")
    x0, y0 = O.x, O.y
    # lambda along the pencil is mean + amp*cos(2s - phase)
    u, v = table.a ** 2 - x0 * x0, table.b ** 2 - y0 * y0
    mean = 0.5 * (u + v)
    amp = math.hypot(0.5 * (v - u), x0 * y0)
    phase = math.atan2(x0 * y0, 0.5 * (v - u))
    beta = math.acos(max(-1.0, min(1.0, -mean / amp)))
    return 0.5 * (phase - beta), 0.5 * (phase + beta)


def external_pencil(table: ConicTable, O: Point, samples: int = DEFAULT_SAMPLES,
                    margin: float = ENDPOINT_MARGIN) -> tuple[LineFamily, LineFamily]:
    """Both orientations of the lines through an exterior source that cross the table.

    The open parameter arc stops ``margin`` short of the two tangent lines.
    """
    lo, hi = external_arc(table, O)
    s = uniform_parameters(samples, lo + margin, hi - margin, closed=False)
    return tuple(LineFamily.from_series(s, _pencil_series(O.x, O.y, shift), closed=False, period=hi - lo)
                 for shift in (0.0, math.pi))


def external_caustics(table: ConicTable, O: Point, n: int, samples: int = DEFAULT_SAMPLES):
    """Caustics of both oriented families from an exterior source."""
    return tuple(family_caustic(image_family(table, fam, n), O, n, table, label="external")
                 for fam in external_pencil(table, O, samples))
