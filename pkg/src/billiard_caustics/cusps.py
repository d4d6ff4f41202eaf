"""Cusp detection, classification, and checks of predicted cusp locations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Union

import numpy as np
from scipy.optimize import brentq

from . import geometry as geo
from .axis import MAJOR, MINOR, iterate_axis_cusps
from .envelope import (
    DEFAULT_SAMPLES, INFINITY_TOL, Caustic, caustic, cusp_function, external_caustics, touching_zeros,
)
from .errors import DegeneratePencil, UnresolvedRoot
from .geometry import AXIS, FOCI_SEGMENT, ConfocalParam, ConicTable, Point, Ray

UNRESOLVED = "unresolved"
CLASSIFY_TOL = 1e-6
EVEN_CONTACT_TOL = 1e-10


@dataclass(frozen=True)
class Cusp:
    s: float
    location: Point
    order: Union[int, str] = UNRESOLVED
    lambda_tag: Optional[ConfocalParam] = None
    predicted: bool = False
    match_distance: Optional[float] = None


@dataclass(frozen=True)
class Classification:
    order: Union[int, str]
    gamma1: np.ndarray
    gamma2: np.ndarray
    gamma3: np.ndarray
    det23: float


def _h_at(family, s: float) -> float:
    _, p, a_s, p_s, a_ss, p_ss = family.derivatives(s)
    return float(cusp_function(a_s, p, p_s, a_ss, p_ss)[0])


def envelope_at(family, s: float) -> Point:
    """Envelope point at arbitrary ``s`` from refined local derivatives."""
    alpha, p, a_s, p_s, _, _ = (float(v[0]) for v in family.derivatives(s))
    if abs(a_s) < INFINITY_TOL:
        return Point.at_infinity(alpha)
    pp = p_s / a_s
    return Point(p * math.sin(alpha) + pp * math.cos(alpha), -p * math.cos(alpha) + pp * math.sin(alpha))


def _scale(c: Caustic) -> float:
    if c.table is not None:
        return c.table.a
    return float(np.max(np.abs(c.family.p))) or 1.0


def find_cusps(c: Caustic, classify: bool = True) -> list[Cusp]:
    """Sign changes of the cusp function, refined by bracketing."""
    if c.n == 0:
        raise DegeneratePencil("a pencil's envelope is a point; cusps are undefined")
    fam = c.family
    H = c.cusp_function
    s = fam.s
    scale = float(np.max(np.abs(H)))
    _check_even_contact(H, s, fam.closed, scale)
    brackets = []
    for i in range(len(s) - 1):
        if H[i] == 0.0:
            brackets.append((s[i], s[i]))
        elif H[i] * H[i + 1] < 0:
            brackets.append((s[i], s[i + 1]))
    if fam.closed:
        if H[-1] == 0.0:
            brackets.append((s[-1], s[-1]))
        elif H[-1] * H[0] < 0:
            brackets.append((s[-1] - fam.period, s[0]))
    cusps = []
    for lo, hi in brackets:
        root = lo if lo == hi else _refine(fam, lo, hi)
        if fam.closed:
            root = fam.s[0] + (root - fam.s[0]) % fam.period
        cusp = Cusp(root, envelope_at(fam, root))
        if classify:
            cusp = replace(cusp, order=classify_cusp(c, cusp).order)
        cusps.append(cusp)
    cusps.sort(key=lambda k: k.s)
    return cusps


def _refine(fam, lo: float, hi: float) -> float:
    f = lambda t: _h_at(fam, t)
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        # re-evaluation flipped a sign at a rounding-dominated endpoint
        return lo if abs(flo) < abs(fhi) else hi
    return brentq(f, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps, maxiter=200)


def _check_even_contact(H, s, closed: bool, scale: float) -> None:
    if scale == 0.0:
        raise UnresolvedRoot("cusp function vanishes identically")
    touching = touching_zeros(H, closed, EVEN_CONTACT_TOL)
    if np.any(touching):
        s0 = float(s[np.flatnonzero(touching)[0]])
        raise UnresolvedRoot(f"cusp function touches zero without crossing near s={s0:.6g}")


_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def _speed_derivatives(fam, s0: float, h: float):
    """``g = H / alpha_s^2`` and its first two derivatives at ``s0``.

    Exact for series-capable families, otherwise five-point stencils with one
    Richardson halving.
    """
    if fam.series is not None:
        A, P = fam.series(np.array([s0]))
        As, Ps = A.diff(), P.diff()
        H = P * As ** 3 + Ps.diff() * As - Ps * As.diff()
        g = (H / (As * As)).derivative_values()
        return float(g[0][0]), float(g[1][0]), float(g[2][0])

    def stencil(step):
        t = s0 + step * np.arange(-2, 3)
        _, p, a_s, p_s, a_ss, p_ss = fam.derivatives(t)
        g = cusp_function(a_s, p, p_s, a_ss, p_ss) / a_s ** 2
        return g[2], _D1 @ g / step, _D2 @ g / step ** 2

    g, d1h, d2h = stencil(h)
    _, d1, d2 = stencil(h / 2)
    return g, d1 + (d1 - d1h) / 15.0, d2 + (d2 - d2h) / 15.0


def _classify_at_infinity(fam, s0: float, h: float, tol: float) -> Classification:
    """A cusp at infinity in direction ``theta`` is ordinary iff ``alpha - theta``
    vanishes to order exactly three while ``p`` keeps moving."""
    if fam.series is not None:
        A, P = fam.series(np.array([s0]))
        da = [float(v[0]) for v in A.derivative_values()]
        p_s = float(P.derivative_values()[1][0])
        a_s, a_ss, a_sss = da[1], da[2], da[3]
    else:
        t = s0 + h * np.arange(-2, 3)
        _, _, a_s_t, p_s_t, a_ss_t, _ = fam.derivatives(t)
        a_s, a_ss, p_s = float(a_s_t[2]), float(a_ss_t[2]), float(p_s_t[2])
        a_sss = float(_D1 @ a_ss_t / h)
    ordinary = (abs(a_s) < INFINITY_TOL and abs(a_ss) < abs(a_sss) * h
                and abs(a_sss) > tol and abs(p_s) > tol)
    vec = lambda *v: np.array(v, dtype=float)
    return Classification(2 if ordinary else UNRESOLVED, vec(a_s, p_s), vec(a_ss, 0.0), vec(a_sss, 0.0), 0.0)


def classify_cusp(c: Caustic, cusp: Cusp, tol: float = CLASSIFY_TOL) -> Classification:
    """Decide whether a located cusp is ordinary (semicubical).

    The envelope moves with velocity ``g(s) (cos alpha, sin alpha)`` where
    ``g = H / alpha_s^2``, so its derivatives follow from ``g`` and the family
    jet.  Order 2 needs a vanishing first derivative, a non-zero second one
    and independent second and third derivatives.
    """
    fam = c.family
    h = 1e-4 * fam.period
    if cusp.location.is_infinite:
        return _classify_at_infinity(fam, cusp.s, h, tol)
    s0 = cusp.s
    alpha, _, a_s, _, a_ss, _ = (float(v[0]) for v in fam.derivatives(s0))
    g, g_s, g_ss = _speed_derivatives(fam, s0, h)
    e = np.array([math.cos(alpha), math.sin(alpha)])
    en = np.array([-math.sin(alpha), math.cos(alpha)])
    d1 = g * e
    d2 = g_s * e + g * a_s * en
    d3 = (g_ss - g * a_s ** 2) * e + (2.0 * g_s * a_s + g * a_ss) * en
    det = float(d2[0] * d3[1] - d2[1] * d3[0])
    scale = _scale(c)
    n2 = float(np.linalg.norm(d2))
    ordinary = (
        float(np.linalg.norm(d1)) < n2 * h
        and n2 > tol * scale
        and abs(det) > tol * scale * scale
    )
    return Classification(2 if ordinary else UNRESOLVED, d1, d2, d3, det)


# --- Predicted cusps ----------------------------------------------------


@dataclass(frozen=True)
class Prediction:
    ray: Ray
    point: Point
    param: ConfocalParam


def _axis_prediction(table: ConicTable, O: Point, n: int, param: ConfocalParam, positive: bool) -> Point:
    if table.is_circle:
        r = math.hypot(O.x, O.y)
        theta = math.atan2(O.y, O.x)
        fwd, back = iterate_axis_cusps(table, r, n, MAJOR)
        pt = fwd if positive else back
        if pt.is_infinite:
            return Point.at_infinity(theta)
        return Point(pt.x * math.cos(theta), pt.x * math.sin(theta))
    if not math.isclose(param.lam, table.a ** 2):
        fwd, back = iterate_axis_cusps(table, O.x, n, MAJOR)
    else:
        fwd, back = iterate_axis_cusps(table, O.y, n, MINOR)
    return fwd if positive else back


def predicted_cusps(table: ConicTable, O: Point, n: int) -> list[Prediction]:
    """Four cusps after ``n`` reflections of the rays tangent to the conics through ``O``."""
    preds = []
    for k, (ray, param) in enumerate(geo.tangent_rays_at(table, O)):
        image = geo.reflect_n(table, ray, n)
        if param.kind in (AXIS, FOCI_SEGMENT):
            # rays come in pairs: first along +axis, then reversed
            point = _axis_prediction(table, O, n, param, positive=(k % 2 == 0))
        else:
            point = geo.tangency_point(table, image, param)
        preds.append(Prediction(image, point, param))
    return preds


def match_points(predicted: list[Point], detected: list[Cusp]):
    """Greedy mutual-unique nearest-neighbour matching.

    Returns ``(i_pred, j_detected, distance)`` triples sorted by ``i_pred``.
    Pairs are committed in order of distance, ties broken by smaller ``s``.
    """
    pairs = []
    for i, p in enumerate(predicted):
        for j, cusp in enumerate(detected):
            pairs.append((p.distance(cusp.location), cusp.s, i, j))
    pairs.sort()
    used_i, used_j, out = set(), set(), []
    for dist, _, i, j in pairs:
        if i in used_i or j in used_j or not math.isfinite(dist):
            continue
        used_i.add(i)
        used_j.add(j)
        out.append((i, j, dist))
    return sorted(out)


@dataclass(frozen=True)
class TheoremReport:
    predicted: list
    detected: list
    matches: list
    verdict: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.verdict.values())


def tag_cusps(table: ConicTable, O: Point, n: int, detected: list[Cusp], tol: Optional[float] = None):
    """Mark detected cusps that match a prediction; returns ``(preds, tagged, matches)``."""
    tol = 1e-5 * table.a if tol is None else tol
    preds = predicted_cusps(table, O, n)
    matches = match_points([pr.point for pr in preds], detected)
    tagged = list(detected)
    for i, j, dist in matches:
        if dist <= tol:
            tagged[j] = replace(tagged[j], lambda_tag=preds[i].param, predicted=True, match_distance=dist)
    return preds, tagged, matches


def verify_theorem1(table: ConicTable, O: Point, n: int, tol: Optional[float] = None,
                    samples: int = DEFAULT_SAMPLES) -> TheoremReport:
    """Match the four predicted cusps against the detected ones.

    Only the presence of the predicted cusps is judged; extra cusps on a
    non-circular table are reported in ``detected`` without a verdict.
    """
    tol = 1e-5 * table.a if tol is None else tol
    detected = find_cusps(caustic(table, O, n, samples))
    preds, tagged, matches = tag_cusps(table, O, n, detected, tol)
    ok = sum(1 for _, _, d in matches if d <= tol)
    verdict = {"all_predicted_matched": ok == len(preds)}
    if table.is_circle:
        verdict["exactly_four"] = len(detected) == 4
        verdict["all_ordinary"] = all(k.order == 2 for k in detected)
    return TheoremReport(preds, tagged, matches, verdict)


def external_predictions(table: ConicTable, O: Point, n: int) -> list[Point]:
    """Cusps predicted for an exterior source: the two rays through ``O`` tangent
    to its confocal hyperbola, reflected ``n`` times, at their tangency points.

    For a circle the hyperbola degenerates to the line through ``O`` and the
    centre and no tangency point is defined; an empty list is returned.
    """
    param = geo.confocal_hyperbola_outside(table, O)
    if param.kind in (AXIS, FOCI_SEGMENT):
        return []
    gx = O.x / (table.a ** 2 - param.lam)
    gy = O.y / (table.b ** 2 - param.lam)
    theta = math.atan2(gx, -gy)
    return [geo.tangency_point(table, geo.reflect_n(table, Ray.through(O, al), n), param)
            for al in (theta, theta + math.pi)]


def external_residual(table: ConicTable, O: Point, point: Point) -> float:
    """How far ``point`` is from the confocal conic through the exterior ``O``."""
    if table.is_circle:
        r = math.hypot(O.x, O.y)
        return (point.x * O.y - point.y * O.x) / r
    return geo.confocal_hyperbola_outside(table, O).residual(table, point)


def verify_external(table: ConicTable, O: Point, n: int, tol: Optional[float] = None,
                    samples: int = DEFAULT_SAMPLES) -> TheoremReport:
    """Cusps of both orientations of the rays from an exterior source.

    Verdicts: exactly two cusps, all lying on the confocal hyperbola through
    ``O`` (the radial line for a circle), and matching the predicted tangency
    points when those exist.
    """
    tol = 1e-5 * table.a if tol is None else tol
    detected = [k for c in external_caustics(table, O, n, samples) for k in find_cusps(c)]
    preds = external_predictions(table, O, n)
    matches = match_points(preds, detected)
    verdict = {
        "exactly_two": len(detected) == 2,
        "on_confocal_conic": all(not k.location.is_infinite and abs(external_residual(table, O, k.location)) < tol
                                 for k in detected),
    }
    if preds:
        verdict["all_predicted_matched"] = len(matches) == len(preds) and all(d <= tol for *_, d in matches)
    return TheoremReport(preds, detected, matches, verdict)


def circle_cusp_layout(O: Point, cusps, line_tol: float = 1e-6, radius_tol: float = 1e-5):
    """Count cusps on the line through ``O`` and the centre, and the remaining
    ones on the circle ``|x| = |O|``.

    A cusp at infinity counts as on the line when its direction runs along it.
    """
    d = math.hypot(O.x, O.y)
    ux, uy = (O.x / d, O.y / d) if d > 0 else (1.0, 0.0)
    on_line = on_circle = 0
    for k in cusps:
        p = k.location
        if p.is_infinite:
            on_line += abs(math.sin(p.direction - math.atan2(uy, ux))) < line_tol
            continue
        if abs(p.x * uy - p.y * ux) < line_tol:
            on_line += 1
        elif abs(math.hypot(p.x, p.y) - d) < radius_tol:
            on_circle += 1
    return on_line, on_circle


# --- Closed-form circle criteria ---------------------------------------


def circle_inflection_residual(a, b, n):
    """Residual of the inflection condition at the normalised circle configuration.

    Zero iff the n-th image of the ray with ``alpha = 0`` through ``(a, b)`` is
    an inflection point of the image pencil.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    w = 1.0 - b * b
    lhs = b - b * (1.0 - 2.0 * a * n / np.sqrt(w)) ** 3
    rhs = 2.0 * a ** 3 * b * n / w ** 1.5
    out = lhs - rhs
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class CircleQuadratics:
    n: int
    coefficients: tuple
    discriminant: int
    x_roots: tuple
    a_roots: tuple


def circle_quadratics(n: int) -> CircleQuadratics:
    """Roots of ``(4n^2-1) x^2 - 6n x + 3 = 0``, shared by both circle criteria."""
    if n < 1:
        raise ValueError("n must be positive")
    A, B, C = 4 * n * n - 1, -6 * n, 3
    disc = B * B - 4 * A * C
    if disc < 0:
        roots = ()
    elif disc == 0:
        roots = (-B / (2 * A),)
    else:
        r = math.sqrt(disc)
        roots = tuple(sorted(((-B - r) / (2 * A), (-B + r) / (2 * A))))
    return CircleQuadratics(n, (A, B, C), disc, roots, roots)


def inflection_condition(p0, p1, p2, phi0, phi1, phi2):
    """Residual ``p2 + p0 (1 + p1 phi1)^3 - p1^3 phi2``.

    Zero iff the image of the graph ``p(alpha)`` under
    ``(alpha, p) -> (alpha + phi(p), p)`` has an inflection at the image point;
    ``phi0`` only shifts the image and does not enter.
    """
    return p2 + p0 * (1.0 + p1 * phi1) ** 3 - p1 ** 3 * phi2
