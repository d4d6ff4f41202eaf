"""Command-line front end.

Subcommands::

    caustic     envelope points (CSV), cusp report (JSON), optional SVG
    verify      circle | ellipse | axis | refraction | external
    complexity  n against infinity crossings and cusp counts
    axis        Mobius iterates of the on-axis cusps

Exit codes: 0 success, 1 a verified claim failed, 2 invalid input,
3 degenerate source (a focus).
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import report
from .axis import MAJOR, MINOR, fixed_point_analysis, iterate_axis_cusps, mobius_f, mobius_g
from .cusps import CLASSIFY_TOL, circle_cusp_layout, find_cusps, tag_cusps, verify_external, verify_theorem1
from .envelope import DEFAULT_SAMPLES, MIN_SAMPLES, caustic, external_caustics, infinity_crossings
from .errors import CausticError, DegeneratePencil, DegenerateSource
from .geometry import ConicTable, Point, Ray, lambda_of_ray, reflect, reflect_n
from .refraction import RefractionSetup, on_axis_radii, refraction_caustic, refraction_cusps, snell_residual

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_DEGENERATE = 0, 1, 2, 3
SUITES = ("circle", "ellipse", "axis", "refraction", "external")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    suite: Optional[str] = None
    a: float = 1.0
    b: Optional[float] = None
    source: Optional[tuple] = None
    n: Optional[tuple] = None
    n_max: Optional[int] = None
    x0: Optional[float] = None
    axis: str = MAJOR
    mu: float = 2.0
    samples: int = DEFAULT_SAMPLES
    tol: float = CLASSIFY_TOL
    match_tol: float = 1e-5
    seed: int = 0
    svg: Optional[str] = None
    csv: Optional[str] = None
    json: Optional[str] = None
    viewport: Optional[tuple] = None
    degrees: bool = False

    def __post_init__(self):
        if self.b is None:
            self.b = self.a
        if not (self.a > 0 and 0 < self.b <= self.a):
            raise ConfigError(f"need 0 < b <= a, got a={self.a} b={self.b}")
        if self.samples < MIN_SAMPLES:
            raise ConfigError(f"--samples must be at least {MIN_SAMPLES}")
        if not self.tol > 0 or not self.match_tol > 0:
            raise ConfigError("tolerances must be positive")
        if self.n is not None and any(k < 0 for k in self.n):
            raise ConfigError("--n must be non-negative")
        if self.n_max is not None and self.n_max < 1:
            raise ConfigError("--n-max must be at least 1")
        if self.viewport is not None:
            xmin, xmax, ymin, ymax = self.viewport
            if not (xmin < xmax and ymin < ymax):
                raise ConfigError("--viewport needs xmin<xmax and ymin<ymax")
        if self.axis not in (MAJOR, MINOR):
            raise ConfigError(f"--axis must be {MAJOR} or {MINOR}")

    @property
    def table(self) -> ConicTable:
        return ConicTable(self.a, self.b)

    @property
    def point(self) -> Point:
        if self.source is None:
            raise ConfigError("--source x,y is required")
        return Point(*self.source)

    def orders(self, default_max: int = 1) -> list[int]:
        if self.n is not None:
            return list(self.n)
        return list(range(1, (self.n_max or default_max) + 1))

    def header(self) -> dict:
        """Everything that influences the output, with the output paths dropped."""
        d = asdict(self)
        for key in ("svg", "csv", "json"):
            d.pop(key)
        return d


def _floats(text: str, count: Optional[int] = None) -> tuple:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if count is not None and len(vals) != count:
        raise argparse.ArgumentTypeError(f"expected {count} numbers, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError("values must be finite")
    return vals


def _ints(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--a", type=float, default=1.0, help="semi-major axis (circle radius)")
    common.add_argument("--b", type=float, default=None, help="semi-minor axis (default: a)")
    common.add_argument("--source", type=lambda t: _floats(t, 2), help="source point x,y")
    common.add_argument("--n", type=_ints, help="reflection count(s), comma separated")
    common.add_argument("--n-max", type=int, help="use n = 1..N")
    common.add_argument("--x0", type=float, help="source position along the axis")
    common.add_argument("--axis", default=MAJOR, help="major or minor")
    common.add_argument("--mu", type=float, default=2.0, help="refraction index")
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    common.add_argument("--tol", type=float, default=CLASSIFY_TOL, help="cusp classification tolerance")
    common.add_argument("--match-tol", type=float, default=1e-5, help="cusp match tolerance, in units of a")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--svg")
    common.add_argument("--csv")
    common.add_argument("--json")
    common.add_argument("--viewport", type=lambda t: _floats(t, 4), help="xmin,xmax,ymin,ymax")
    common.add_argument("--degrees", action="store_true", help="print angles in degrees")

    parser = _Parser(prog="billiard-caustics", description="Caustics by reflection in circles and ellipses.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("caustic", parents=[common], help="compute one caustic")
    v = sub.add_parser("verify", parents=[common], help="check a family of claims")
    v.add_argument("suite", choices=SUITES)
    sub.add_parser("complexity", parents=[common], help="infinity crossings against n")
    sub.add_parser("axis", parents=[common], help="Mobius iterates of on-axis cusps")
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    return RunConfig(**ns)


def _emit(path: Optional[str], text: str, out) -> None:
    if path is None or path == "-":
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# --- caustic --------------------------------------------------------------


def cmd_caustic(cfg: RunConfig, out=sys.stdout) -> int:
    table, O = cfg.table, cfg.point
    if cfg.n is None or len(cfg.n) != 1:
        raise ConfigError("caustic needs a single --n")
    n = cfg.n[0]
    header = cfg.header()
    if table.contains(O):
        caustics = [caustic(table, O, n, cfg.samples)]
        cusps = [] if n == 0 else find_cusps(caustics[0])
        if cusps:
            _, cusps, _ = tag_cusps(table, O, n, cusps, cfg.match_tol * table.a)
    else:
        caustics = list(external_caustics(table, O, n, cfg.samples)) if n else []
        if not caustics:
            raise DegeneratePencil("a pencil's envelope is a point; cusps are undefined")
        cusps = [k for c in caustics for k in find_cusps(c)]
    extra = {"infinity_crossings": sum(infinity_crossings(c) for c in caustics)} if n else {}
    if cfg.csv:
        _emit(cfg.csv, report.caustic_csv(header, caustics, cfg.degrees), out)
    _emit(cfg.json, report.cusps_json(header, cusps, cfg.degrees, **extra), out)
    if cfg.svg:
        vp = cfg.viewport or report.default_viewport(table, O)
        _emit(cfg.svg, report.render_svg(header, caustics, cusps, vp, table=table, source=O), out)
    return EXIT_OK


# --- verify ---------------------------------------------------------------


def _lambda_claim(table: ConicTable, rng: np.random.Generator, count: int = 1000) -> dict:
    worst = 0.0
    for _ in range(count):
        r = math.sqrt(rng.uniform(0.0, 0.99))
        t = rng.uniform(0.0, 2 * math.pi)
        O = Point(table.a * r * math.cos(t), table.b * r * math.sin(t))
        ray = Ray.through(O, rng.uniform(0.0, 2 * math.pi))
        worst = max(worst, abs(lambda_of_ray(table, reflect(table, ray)) - lambda_of_ray(table, ray)))
    return {"claim": "lambda_invariance", "max_error": worst, "passed": worst < 1e-9 * table.a ** 2}


def _prediction_rows(cfg: RunConfig, table: ConicTable, O: Point) -> list[dict]:
    rows = []
    tol = cfg.match_tol * table.a
    for n in cfg.orders(8):
        rep = verify_theorem1(table, O, n, tol=tol, samples=cfg.samples)
        verdict = dict(rep.verdict)
        row = {"claim": "predicted_cusps", "n": n, "detected": len(rep.detected)}
        if table.is_circle:
            on_line, on_circle = circle_cusp_layout(O, rep.detected, 1e-6 * table.a, 1e-5 * table.a)
            verdict["two_on_center_line"] = on_line == 2
            verdict["two_at_source_radius"] = on_circle == 2
        row.update(verdict)
        row["cusps"] = [report.cusp_record(k, cfg.degrees) for k in rep.detected]
        row["passed"] = all(verdict.values())
        rows.append(row)
    return rows


def _verify_circle(cfg: RunConfig) -> list[dict]:
    if cfg.a != cfg.b:
        raise ConfigError("verify circle needs a == b")
    return _prediction_rows(cfg, cfg.table, cfg.point) + [_lambda_claim(cfg.table, np.random.default_rng(cfg.seed))]


def _verify_ellipse(cfg: RunConfig) -> list[dict]:
    return _prediction_rows(cfg, cfg.table, cfg.point) + [_lambda_claim(cfg.table, np.random.default_rng(cfg.seed))]


def _verify_axis(cfg: RunConfig) -> list[dict]:
    if cfg.x0 is None:
        raise ConfigError("verify axis needs --x0")
    table = cfg.table
    O = Point(cfg.x0, 0.0) if cfg.axis == MAJOR else Point(0.0, cfg.x0)
    tol = cfg.match_tol * table.a
    rows = []
    for n in cfg.orders(6):
        fwd, back = iterate_axis_cusps(table, cfg.x0, n, cfg.axis)
        detected = find_cusps(caustic(table, O, n, cfg.samples))
        dists = []
        for pt in (fwd, back):
            dists.append(min((pt.distance(k.location) for k in detected), default=math.inf))
        rows.append({"claim": "mobius_axis_cusps", "n": n, "forward": _point_record(fwd),
                     "backward": _point_record(back), "distances": dists,
                     "passed": all(d <= tol for d in dists)})
    return rows


def _verify_refraction(cfg: RunConfig) -> list[dict]:
    setup = RefractionSetup(cfg.mu, cfg.a)
    off, on = refraction_cusps(setup, cfg.samples)
    target = setup.radius / setup.mu
    radii = [math.hypot(k.location.x, k.location.y) for k in off]
    snell = float(np.max(np.abs(snell_residual(setup, refraction_caustic(setup, cfg.samples, lit_only=True).s))))
    inner, outer = on_axis_radii(setup)
    on_radii = sorted(abs(k.location.x) for k in on)
    return [
        {"claim": "off_axis_cusps_on_circle", "mu": cfg.mu, "expected_radius": target, "radii": radii,
         "passed": len(off) == 4 and all(abs(r - target) < 1e-5 * setup.radius for r in radii)},
        {"claim": "on_axis_cusps", "expected": [inner, outer], "radii": on_radii,
         "passed": len(on_radii) == 4 and all(min(abs(r - inner), abs(r - outer)) < 1e-5 * setup.radius
                                               for r in on_radii)},
        {"claim": "snell_residual", "max_error": snell, "passed": snell < 1e-12},
    ]


def _verify_external(cfg: RunConfig) -> list[dict]:
    table, O = cfg.table, cfg.point
    rows = []
    for n in cfg.orders(2):
        rep = verify_external(table, O, n, tol=cfg.match_tol * table.a, samples=cfg.samples)
        row = {"claim": "external_two_cusps", "n": n}
        row.update(rep.verdict)
        row["cusps"] = [report.cusp_record(k, cfg.degrees) for k in rep.detected]
        row["passed"] = rep.passed
        rows.append(row)
    return rows


def _point_record(p: Point) -> dict:
    if p.is_infinite:
        return {"x": None, "y": None, "direction": p.direction}
    return {"x": p.x, "y": p.y}


def cmd_verify(cfg: RunConfig, out=sys.stdout) -> int:
    runner = {
        "circle": _verify_circle,
        "ellipse": _verify_ellipse,
        "axis": _verify_axis,
        "refraction": _verify_refraction,
        "external": _verify_external,
    }[cfg.suite]
    rows = runner(cfg)
    ok = all(r["passed"] for r in rows)
    _emit(cfg.json, report.dumps({"config": cfg.header(), "claims": rows, "passed": ok}) + "\n", out)
    return EXIT_OK if ok else EXIT_FAILED


# --- complexity and axis ----------------------------------------------------


def cmd_complexity(cfg: RunConfig, out=sys.stdout) -> int:
    table, O = cfg.table, cfg.point
    orders = cfg.orders(8)
    if any(n < 1 for n in orders):
        raise DegeneratePencil("complexity needs n >= 1")
    rows = []
    for n in orders:
        c = caustic(table, O, n, cfg.samples)
        rows.append((n, infinity_crossings(c), len(find_cusps(c))))
    _emit(cfg.csv, report.table_csv(cfg.header(), ("n", "infinity_crossings", "cusps"), rows), out)
    return EXIT_OK


def cmd_axis(cfg: RunConfig, out=sys.stdout) -> int:
    if cfg.x0 is None:
        raise ConfigError("axis needs --x0")
    table = cfg.table
    rows = []
    for n in cfg.orders(10):
        fwd, back = iterate_axis_cusps(table, cfg.x0, n, cfg.axis)
        coord = (lambda p: p.x) if cfg.axis == MAJOR else (lambda p: p.y)
        rows.append((n, math.inf if fwd.is_infinite else coord(fwd), math.inf if back.is_infinite else coord(back)))
    _emit(cfg.csv, report.table_csv(cfg.header(), ("n", "forward", "backward"), rows), out)
    if cfg.json:
        summary = {}
        for name, m in (("f", mobius_f(table)), ("g", mobius_g(table))):
            rep = fixed_point_analysis(m)
            summary[name] = {"matrix": [[m.m11, m.m12], [m.m21, m.m22]], "kind": rep.kind,
                             "fixed_points": list(rep.fixed_points), "multipliers": list(rep.multipliers),
                             "rotation_angle": rep.rotation_angle, "order": rep.order}
        _emit(cfg.json, report.dumps({"config": cfg.header(), "maps": summary}) + "\n", out)
    return EXIT_OK


COMMANDS = {"caustic": cmd_caustic, "verify": cmd_verify, "complexity": cmd_complexity, "axis": cmd_axis}


def _fail(code: int, exc: Exception, err) -> int:
    reason = " ".join(str(exc).split())
    err.write(f"error={type(exc).__name__} exit={code} reason={reason}\n")
    return code


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        cfg = parse_config(argv)
        return COMMANDS[cfg.command](cfg, out)
    except DegenerateSource as exc:
        return _fail(EXIT_DEGENERATE, exc, err)
    except (ConfigError, CausticError, ValueError) as exc:
        return _fail(EXIT_INVALID, exc, err)


if __name__ == "__main__":
    sys.exit(main())
