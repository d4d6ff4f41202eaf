"""Deterministic CSV, JSON and SVG writers.

Floats are printed with 17 significant digits and every file starts with the
configuration that produced it, so equal configs give byte-identical files.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Optional, Sequence

import numpy as np

from .cusps import Cusp
from .envelope import Caustic
from .geometry import ConicTable, Point

DIGITS = 17


def fmt(x) -> str:
    if x is None:
        return "null"
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, f".{DIGITS}g")


def dumps(obj, indent: int = 0) -> str:
    """JSON with fixed float formatting; non-finite numbers become ``null``."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(pad + dumps(v, indent + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, complex):
        return dumps([obj.real, obj.imag], indent)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)) and not math.isfinite(float(obj)):
        return "null"
    return fmt(obj)


def cusp_record(k: Cusp, degrees: bool = False) -> dict:
    loc = k.location
    s = math.degrees(k.s) if degrees else k.s
    return {
        "s": s,
        "x": None if loc.is_infinite else loc.x,
        "y": None if loc.is_infinite else loc.y,
        "order": k.order,
        "lambda": None if k.lambda_tag is None else k.lambda_tag.lam,
        "predicted": k.predicted,
        "match_distance": k.match_distance,
    }


def cusps_json(config: dict, cusps: Sequence[Cusp], degrees: bool = False, **extra) -> str:
    doc = {"config": config, "cusps": [cusp_record(k, degrees) for k in cusps]}
    doc.update(extra)
    return dumps(doc) + "\n"


CSV_COLUMNS = ("s", "alpha", "p", "x", "y", "H", "at_infinity")


def header_lines(config: dict, prefix: str = "# ") -> list[str]:
    return [prefix + "config " + json.dumps(config, sort_keys=True, default=str)]


def caustic_csv(config: dict, caustics: Iterable[Caustic], degrees: bool = False) -> str:
    lines = header_lines(config)
    lines.append(",".join(CSV_COLUMNS))
    conv = math.degrees if degrees else float
    for c in caustics:
        fam = c.family
        for i in range(len(fam)):
            inf = bool(c.at_infinity[i])
            row = (
                fmt(conv(fam.s[i])), fmt(conv(fam.alpha[i])), fmt(fam.p[i]),
                "" if inf else fmt(c.x[i]), "" if inf else fmt(c.y[i]),
                fmt(c.cusp_function[i]), "1" if inf else "0",
            )
            lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def table_csv(config: dict, columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = header_lines(config)
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(fmt(v) if not isinstance(v, str) else v for v in row))
    return "\n".join(lines) + "\n"


# --- SVG -------------------------------------------------------------------

WIDTH = 800


def default_viewport(table: Optional[ConicTable], source: Optional[Point] = None):
    r = 1.0 if table is None else table.a
    if source is not None and not source.is_infinite:
        r = max(r, abs(source.x), abs(source.y))
    r *= 1.5
    return (-r, r, -r, r)


def _segments(x, y, viewport):
    """Split a sampled curve at infinities and where it leaves the viewport."""
    xmin, xmax, ymin, ymax = viewport
    ok = np.isfinite(x) & np.isfinite(y) & (x >= xmin) & (x <= xmax) & (y >= ymin) & (y <= ymax)
    segs, cur = [], []
    for xi, yi, good in zip(x, y, ok):
        if good:
            cur.append((xi, yi))
        elif cur:
            segs.append(cur)
            cur = []
    if cur:
        segs.append(cur)
    return [s for s in segs if len(s) > 1]


def render_svg(config: dict, caustics: Sequence[Caustic], cusps: Sequence[Cusp], viewport,
               table: Optional[ConicTable] = None, source: Optional[Point] = None,
               circle_radius: Optional[float] = None) -> str:
    xmin, xmax, ymin, ymax = viewport
    scale = WIDTH / (xmax - xmin)
    height = int(round((ymax - ymin) * scale))

    def px(x, y):
        return fmt(round((x - xmin) * scale, 3)), fmt(round((ymax - y) * scale, 3))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}">',
        "<!-- config " + json.dumps(config, sort_keys=True, default=str).replace("--", "- -") + " -->",
        f'<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>',
    ]
    if table is not None or circle_radius is not None:
        a = table.a if table is not None else circle_radius
        b = table.b if table is not None else circle_radius
        cx, cy = px(0.0, 0.0)
        out.append(f'<ellipse class="table" cx="{cx}" cy="{cy}" rx="{fmt(round(a * scale, 3))}" '
                   f'ry="{fmt(round(b * scale, 3))}" fill="none" stroke="black" stroke-width="1.5"/>')
    for c in caustics:
        for seg in _segments(c.x, c.y, viewport):
            pts = " ".join("{},{}".format(*px(xi, yi)) for xi, yi in seg)
            out.append(f'<polyline class="caustic" points="{pts}" fill="none" stroke="steelblue" stroke-width="1"/>')
    if source is not None and not source.is_infinite:
        sx, sy = px(source.x, source.y)
        out.append(f'<circle class="source" cx="{sx}" cy="{sy}" r="3" fill="black"/>')
    for k in cusps:
        if k.location.is_infinite:
            continue
        kx, ky = px(k.location.x, k.location.y)
        out.append(f'<circle class="cusp" cx="{kx}" cy="{ky}" r="5" fill="none" stroke="gray" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
