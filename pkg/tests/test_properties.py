"""Property tests over randomly drawn tables, sources and rays."""

import json
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from billiard_caustics import geometry as geo
from billiard_caustics.axis import fixed_point_analysis, mobius_f
from billiard_caustics.cusps import circle_cusp_layout, find_cusps
from billiard_caustics.envelope import caustic
from billiard_caustics.geometry import ConicTable, Point, Ray, reflect
from billiard_caustics.refraction import RefractionSetup, snell_residual
from billiard_caustics.report import dumps, fmt

from oracles import reflect_by_angle

semi_major = st.floats(1.0, 5.0)
aspect = st.floats(0.2, 1.0)
unit = st.floats(0.0, 0.95)
angle = st.floats(0.0, 2 * math.pi)


def wrap(x):
    return math.remainder(x, 2 * math.pi)


@st.composite
def table_and_ray(draw):
    a = draw(semi_major)
    t = ConicTable(a, a * draw(aspect))
    r, th = draw(unit), draw(angle)
    O = Point(t.a * r * math.cos(th), t.b * r * math.sin(th))
    return t, Ray.through(O, draw(st.floats(-10, 10)))


@given(table_and_ray())
def test_reversal_involution(tr):
    t, r = tr
    back = reflect(t, reflect(t, r).reversed())
    assert abs(wrap(back.alpha - r.reversed().alpha)) < 1e-9
    assert back.p == pytest.approx(r.reversed().p, abs=1e-9 * t.a)


@given(table_and_ray())
def test_commutes_with_axis_mirrors(tr):
    t, r = tr
    out = reflect(t, r)
    # x-axis mirror: (alpha, p) -> (-alpha, -p); y-axis mirror: (alpha, p) -> (pi - alpha, -p)
    mx = reflect(t, Ray(-r.alpha, -r.p))
    assert abs(wrap(mx.alpha + out.alpha)) < 1e-9 and mx.p == pytest.approx(-out.p, abs=1e-9 * t.a)
    my = reflect(t, Ray(math.pi - r.alpha, -r.p))
    assert abs(wrap(my.alpha - (math.pi - out.alpha))) < 1e-9 and my.p == pytest.approx(-out.p, abs=1e-9 * t.a)


@given(table_and_ray())
def test_matches_boundary_angle_oracle(tr):
    t, r = tr
    out = reflect(t, r)
    beta, p = reflect_by_angle(t.a, t.b, r.alpha, r.p)
    assert abs(wrap(out.alpha - beta)) < 1e-9
    assert out.p == pytest.approx(p, abs=1e-9 * t.a)


@given(st.floats(0.5, 3.0), st.floats(-1, 1), angle)
def test_circle_closed_form_agrees_with_intersection(R, frac, alpha):
    t = ConicTable(R, R)
    p = 0.999 * R * frac
    a1, p1 = geo.reflect_lines(t, alpha, p)
    a2, p2 = geo.reflect_lines_geometric(t, alpha, p)
    assert abs(wrap(float(a1 - a2))) < 1e-9
    assert float(p1) == pytest.approx(float(p2), abs=1e-9 * R)


@given(semi_major, st.floats(0.2, 0.99), unit, angle)
def test_confocal_roots_pass_through_source(a, ratio, r, th):
    t = ConicTable(a, a * ratio)
    O = Point(t.a * r * math.cos(th), t.b * r * math.sin(th))
    assume(not t.is_focal(O))
    a2, b2 = t.a ** 2, t.b ** 2
    for param in geo.confocal_through(t, O):
        # the conic equation cleared of denominators stays well conditioned on degenerate members
        u, v = a2 - param.lam, b2 - param.lam
        assert abs(O.x ** 2 * v + O.y ** 2 * u - u * v) < 1e-9 * a2 * a2


def test_centre_gives_degenerate_pair():
    E, H = geo.confocal_through(ConicTable(2, 1), Point(0.0, 0.0))
    assert (E.kind, H.kind) == (geo.FOCI_SEGMENT, geo.AXIS)
    assert H.residual(ConicTable(2, 1), Point(0.0, 0.7)) == 0.0


@settings(max_examples=15)
@given(aspect, unit, angle, st.integers(1, 5))
def test_caustic_points_lie_on_their_rays(ratio, r, th, n):
    t = ConicTable(2.0, 2.0 * ratio)
    O = Point(t.a * r * math.cos(th), t.b * r * math.sin(th))
    assume(not t.is_focal(O) and math.hypot(O.x, O.y) > 1e-3)
    c = caustic(t, O, n, 1024)
    keep = ~c.at_infinity
    f = c.family
    res = c.x[keep] * np.sin(f.alpha[keep]) - c.y[keep] * np.cos(f.alpha[keep]) - f.p[keep]
    scale = max(1.0, float(np.max(np.hypot(c.x[keep], c.y[keep]))))
    assert np.max(np.abs(res)) < 1e-8 * scale


@settings(max_examples=12)
@given(st.floats(0.05, 0.95), angle, st.integers(1, 8))
def test_circle_always_four_cusps(d, th, n):
    O = Point(d * math.cos(th), d * math.sin(th))
    cusps = find_cusps(caustic(ConicTable(1, 1), O, n))
    assert len(cusps) == 4
    assert all(k.order == 2 for k in cusps)
    assert circle_cusp_layout(O, cusps) == (2, 2)


@given(semi_major, st.floats(0.2, 0.99), st.integers(1, 40), st.floats(-0.9, 0.9))
def test_matrix_power_is_iteration(a, ratio, n, x):
    t = ConicTable(a, a * ratio)
    f = mobius_f(t)
    x0 = x * t.a
    y = x0
    for _ in range(n):
        y = f(y)
    z = f.power(n)(x0)
    assume(abs(y) < 1e6)
    assert z == pytest.approx(y, rel=1e-8, abs=1e-8 * t.a)


@given(semi_major, st.floats(0.2, 0.99))
def test_f_fixes_the_foci(a, ratio):
    t = ConicTable(a, a * ratio)
    f = mobius_f(t)
    for c in (t.c, -t.c):
        assert abs(f(c) - c) < 1e-12 * max(1.0, a * a)
    rep = fixed_point_analysis(f)
    assert rep.kind == "hyperbolic"
    assert rep.fixed_points == pytest.approx((-t.c, t.c), rel=1e-9)


@given(st.floats(1.01, 5.0), st.floats(math.pi / 2 + 1e-3, 3 * math.pi / 2 - 1e-3))
def test_snell(mu, u):
    assert abs(snell_residual(RefractionSetup(mu), np.array([u]))[0]) < 1e-12


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_format_round_trips(x):
    assert float(fmt(x)) == x


@given(st.dictionaries(st.text(max_size=5), st.floats(allow_nan=False, allow_infinity=False), max_size=5))
def test_json_round_trips(d):
    assert json.loads(dumps(d)) == d
