"""Reference computations that share no code with the package.

Each routine takes a different route to the same quantity: boundary
parametrisation instead of the ray quadratic, exact rationals instead of
floats, sympy instead of series arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import sympy as sp


def reflect_by_angle(a, b, alpha, p):
    """Billiard map via the boundary angle ``t`` of the hit point ``(a cos t, b sin t)``.

    The line ``x sin(alpha) - y cos(alpha) = p`` meets the ellipse where
    ``A cos t + B sin t = p`` with ``A = a sin(alpha)``, ``B = -b cos(alpha)``.
    Of the two solutions we take the one further along the direction.
    """
    A, B = a * math.sin(alpha), -b * math.cos(alpha)
    rho = math.hypot(A, B)
    phi = math.atan2(B, A)
    delta = math.acos(p / rho)
    d = np.array([math.cos(alpha), math.sin(alpha)])
    hits = [np.array([a * math.cos(t), b * math.sin(t)]) for t in (phi + delta, phi - delta)]
    q = max(hits, key=lambda h: float(h @ d))
    t = math.atan2(q[1] / b, q[0] / a)
    tangent = np.array([-a * math.sin(t), b * math.cos(t)])
    tangent /= np.linalg.norm(tangent)
    out = 2.0 * (d @ tangent) * tangent - d
    beta = math.atan2(out[1], out[0])
    return beta, q[0] * math.sin(beta) - q[1] * math.cos(beta)


def mobius_f_exact(a: Fraction, b: Fraction, x: Fraction) -> Fraction:
    """``f`` from the vertex mirror equation, in exact arithmetic.

    Reflection at ``(a, 0)`` with curvature ``k = a/b^2``: the object at
    distance ``d = a - x`` images to ``d'`` with ``1/d + 1/d' = 2k``; then flip.
    """
    k = a / (b * b)
    d = a - x
    d_img = 1 / (2 * k - 1 / d)
    return -(a - d_img)


def axis_cusps_exact(a, b, x0, n):
    """On-axis cusps ``(O_n, O'_n)`` by repeated exact mirror images."""
    a, b, x0 = Fraction(a), Fraction(b), Fraction(x0)
    fwd, back = x0, -x0
    for _ in range(n):
        fwd = mobius_f_exact(a, b, fwd)
        back = mobius_f_exact(a, b, back)
    return (-1) ** n * fwd, (-1) ** (n + 1) * back


def circle_cusp_function(x0, n):
    """Symbolic ``H(s)`` for the n-th image of the pencil at ``(x0, 0)`` in the unit circle."""
    s = sp.symbols("s", real=True)
    p = x0 * sp.sin(s)
    alpha = s + 2 * n * sp.acos(p)
    a1, p1 = sp.diff(alpha, s), sp.diff(p, s)
    H = p * a1 ** 3 + sp.diff(p1, s) * a1 - p1 * sp.diff(a1, s)
    return sp.lambdify(s, H, "math"), sp.lambdify(s, alpha, "math")


def synthetic_h():
    """``p + p''`` for ``p = 3 + cos 2a``: a double zero at every multiple of pi."""
    a = sp.symbols("a", real=True)
    p = 3 + sp.cos(2 * a)
    expr = sp.simplify(p + sp.diff(p, a, 2))
    return expr, a


def refracted_line(mu, u):
    """Refracted ray at entry angle ``u`` from Snell's law in angle form.

    The ray turns from the beam by ``i - r`` towards the centre.
    """
    i = math.asin(abs(math.sin(u)))
    r = math.asin(math.sin(i) / mu)
    sign = -1.0 if math.sin(u) > 0 else 1.0
    beta = sign * (i - r)
    x, y = math.cos(u), math.sin(u)
    return beta, x * math.sin(beta) - y * math.cos(beta)


def inflection_by_composition(p0, p1, p2, phi1, phi2, h=1e-3):
    """Whether the image of a 2-jet is an inflection, by direct composition.

    Maps the curve ``alpha -> (alpha, p(alpha))`` through
    ``(alpha, p) -> (alpha + phi(p), p)``, reparametrises the image as a graph
    and returns its ``P + P''`` at the image point from a fitted quadratic.
    """
    t = np.linspace(-h, h, 41)
    p = p0 + p1 * t + 0.5 * p2 * t * t
    dp = p - p0
    alpha = t + phi1 * dp + 0.5 * phi2 * dp * dp
    c2, c1, c0 = np.polyfit(alpha, p, 2)
    return c0 + 2.0 * c2


# Quantities worked out by hand once and frozen here.
FROZEN = {
    # f for a=2, b=1 is x -> (7x - 12)/(-4x + 7); its multiplier at c = sqrt 3
    "f_multiplier_c": 97.0 + 56.0 * math.sqrt(3.0),
    # circle, x0 = 0.4, n = 1: O_1 = -f(0.4), O'_1 = f(-0.4) with f(x) = x/(1-2x)
    "circle_axis_n1": (-2.0, -2.0 / 9.0),
    # chord from (0, 0.5): inscribed angle gives a turn of 2 arccos(0.5)
    "circle_turn_p_half": 2.0 * math.pi / 3.0,
    # unit circle mirror with d = 0.6
    "mirror_unit_0_6": 3.0,
}
