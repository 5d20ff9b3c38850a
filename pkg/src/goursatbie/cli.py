"""Command-line driver.

    python -m goursatbie solve --shape circle --n 32
    python -m goursatbie verify --shape overlap --alpha 2pi/3 --n 64
    python -m goursatbie convergence --shape ellipse --m 0.5 --n-list 16,32,48
    python -m goursatbie field --shape overlap --alpha 2pi/3 --bbox -2,2,-2,2
    python -m goursatbie corner-exponent --beta 4pi/3

Settings come from flags, then an optional JSON ``--config`` file, then the
defaults (N=64, chi=0, quad n=16, eps=1e-15).  Diagnostics go to stderr.
"""

import argparse
import json
import logging
import re
import sys
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import assembler, corner, field as fieldmod, oracles, shapes
from .errors import GoursatError

__all__ = ["RunConfig", "parse_angle", "build_parser", "main"]

log = logging.getLogger("goursatbie")

DEFAULTS = {
    "shape": None,
    "m": None,
    "alpha": None,
    "samples_file": None,
    "corner_beta": None,
    "chi": 0.0,
    "n": 64,
    "corner": None,
    "corner_terms": None,
    "quad_n": 16,
    "quad_eps": 1e-15,
}

NEAR_CORNER_EPS = np.logspace(-2, -8, 13)

_ANGLE = re.compile(r"^\s*([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d*\.?\d+))?\s*$")


def parse_angle(text):
    """Radians from ``"1.047"``, ``"pi/3"``, ``"2pi/3"`` or ``"2*pi/3"``."""
    if isinstance(text, (int, float)):
        return float(text)
    m = _ANGLE.match(str(text))
    if m:
        coef = m.group(1)
        coef = 1.0 if coef in ("", "+") else (-1.0 if coef == "-" else float(coef))
        den = float(m.group(2)) if m.group(2) else 1.0
        return coef * np.pi / den
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


@dataclass
class RunConfig:
    command: str
    shape: str
    m: Optional[float] = None
    alpha: Optional[float] = None
    samples_file: Optional[str] = None
    corner_beta: Optional[float] = None
    chi: float = 0.0
    n: int = 64
    corner: Optional[bool] = None
    corner_terms: Optional[int] = None
    quad_n: int = 16
    quad_eps: float = 1e-15
    outputs: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def solver_config(self, n=None):
        return assembler.SolverConfig(
            N=self.n if n is None else n,
            chi=self.chi,
            use_corner=self.corner,
            quad_n=self.quad_n,
            quad_eps=self.quad_eps,
            corner_terms=self.corner_terms,
        )

    def build_shape(self):
        if self.shape == "circle":
            return shapes.circle()
        if self.shape == "ellipse":
            return shapes.ellipse(self.m)
        if self.shape == "overlap":
            return shapes.overlapping_circles(self.alpha)
        samples = shapes.load_samples_csv(self.samples_file)
        return shapes.custom_from_samples(samples, self.corner_beta)


def _add_problem_args(p):
    p.add_argument("--shape", choices=["circle", "ellipse", "overlap", "custom"])
    p.add_argument("--m", type=float, help="ellipse parameter in (0, 1)")
    p.add_argument("--alpha", type=parse_angle, help="overlap angle, e.g. 2pi/3")
    p.add_argument("--samples-file", help="CSV of theta,r at the Chebyshev nodes (custom shape)")
    p.add_argument("--corner-beta", type=parse_angle, help="corner opening of a custom shape")
    p.add_argument("--chi", type=float, help="far-field stress ratio sigma_y / sigma_x")
    p.add_argument("--n", type=int, help="basis size N")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--corner", dest="corner", action="store_const", const=True, help="force the corner term on")
    grp.add_argument("--no-corner", dest="corner", action="store_const", const=False, help="leave the corner term out")
    p.add_argument("--corner-terms", type=int, help="number of wedge eigenvalues in the basis")
    p.add_argument("--quad-n", type=int, help="Gauss-Legendre panel size")
    p.add_argument("--quad-eps", type=float, help="nested quadrature tolerance")
    p.add_argument("--config", help="JSON file with default settings")


def build_parser():
    parser = argparse.ArgumentParser(prog="goursatbie", description="Stress around a hole by a boundary integral method.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve and write coefficients plus the boundary trace")
    _add_problem_args(p)
    p.add_argument("--json", default="solution.json", help="coefficient output (JSON)")
    p.add_argument("--trace", default="trace.csv", help="sigma_x + sigma_y on the boundary (CSV)")
    p.add_argument("--points", type=int, default=201, help="trace samples on [0, pi/2)")

    p = sub.add_parser("verify", help="compare against the exact solution")
    _add_problem_args(p)
    p.add_argument("--report", help="JSON report path (default: stdout)")

    p = sub.add_parser("convergence", help="L2 error for several N")
    _add_problem_args(p)
    p.add_argument("--n-list", default="8,16,24,32", help="comma separated basis sizes")
    p.add_argument("--out", help="CSV path (default: stdout)")

    p = sub.add_parser("field", help="stresses on a grid in the solid")
    _add_problem_args(p)
    p.add_argument("--bbox", default="-3,3,-3,3", help="xmin,xmax,ymin,ymax")
    p.add_argument("--nx", type=int, default=100)
    p.add_argument("--ny", type=int, default=100)
    p.add_argument("--out", default="field.csv", help="grid CSV path")
    p.add_argument("--meta", help="JSON sidecar path (default: CSV path with .json)")

    p = sub.add_parser("corner-exponent", help="Williams exponent of a corner")
    p.add_argument("--beta", type=parse_angle, required=True, help="opening through the solid, radians or e.g. 4pi/3")
    return parser


def _resolve(args, parser):
    """Merge flags over the config file over the defaults and validate."""
    settings = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config file: {exc}")
        for key, value in loaded.items():
            key = key.replace("-", "_")
            if key not in settings:
                parser.error(f"unknown config key {key!r}")
            settings[key] = parse_angle(value) if key in ("alpha", "corner_beta") else value
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    if settings["shape"] is None:
        parser.error("--shape is required")
    if settings["shape"] == "ellipse" and settings["m"] is None:
        parser.error("--m is required for the ellipse")
    if settings["shape"] == "overlap" and settings["alpha"] is None:
        parser.error("--alpha is required for overlapping circles")
    if settings["shape"] == "custom" and not settings["samples_file"]:
        parser.error("--samples-file is required for a custom shape")
    if settings["n"] < 8:
        parser.error("--n must be at least 8")
    if not 0 < settings["quad_eps"] <= 1e-6:
        parser.error("--quad-eps must lie in (0, 1e-6]")
    return RunConfig(command=args.command, **settings)


def _oracle(cfg, shape):
    """``(quantity, oracle)`` used to measure the error for ``cfg``."""
    if cfg.shape == "circle":
        return "phi", lambda t: oracles.circle_phi(t, cfg.chi)
    if cfg.shape == "ellipse":
        return "phi", lambda t: oracles.ellipse_phi(t, cfg.m, cfg.chi)
    if cfg.shape == "overlap":
        params = oracles.ling_params(cfg.alpha, cfg.chi)
        return "trace", lambda t: oracles.ling_trace(t, params)
    raise GoursatError("no exact solution is available for a custom shape")


def _errors(cfg, shape, g):
    quantity, oracle = _oracle(cfg, shape)
    if quantity == "phi":
        l2 = fieldmod.l2_error_phi(g, oracle)
    else:
        l2 = fieldmod.l2_error_trace(g, shape, oracle, cfg.chi)
    near = None
    if cfg.shape == "overlap" and cfg.alpha > np.pi / 2:
        theta = np.pi / 2 - NEAR_CORNER_EPS
        exact = oracle(theta)
        near = float(np.max(np.abs(fieldmod.trace(g, shape, cfg.chi, theta) / exact - 1.0)))
    return quantity, l2, near


def _report_diagnostics(g):
    d = g.diagnostics
    print(
        f"residual_norm={d['residual_norm']:.6e} condition_estimate={d['condition_estimate']:.6e} "
        f"rows={d['rows']} columns={d['columns']}",
        file=sys.stderr,
    )


def cmd_solve(cfg):
    shape = cfg.build_shape()
    g = assembler.solve(shape, cfg.solver_config())
    _report_diagnostics(g)
    with open(cfg.outputs["json"], "w") as fh:
        fh.write(g.to_json(indent=2))
        fh.write("\n")
    theta = np.linspace(0.0, np.pi / 2, cfg.extra["points"], endpoint=False)
    oracles.write_trace_csv(cfg.outputs["trace"], theta, fieldmod.trace(g, shape, cfg.chi, theta))
    return 0


def cmd_verify(cfg):
    shape = cfg.build_shape()
    g = assembler.solve(shape, cfg.solver_config())
    _report_diagnostics(g)
    quantity, l2, near = _errors(cfg, shape, g)
    report = {
        "shape": cfg.shape,
        "N": cfg.n,
        "chi": cfg.chi,
        "quantity": quantity,
        "l2_error": l2,
        "max_rel_error_near_corner": near,
    }
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if cfg.outputs.get("report"):
        with open(cfg.outputs["report"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_convergence(cfg, n_list):
    shape = cfg.build_shape()
    rows = ["N,l2_error"]
    for n in n_list:
        g = assembler.solve(shape, cfg.solver_config(n))
        _, l2, _ = _errors(replace(cfg, n=n), shape, g)
        print(f"N={n} l2_error={l2:.6e}", file=sys.stderr)
        rows.append(f"{n},{l2:.17g}")
    text = "\n".join(rows) + "\n"
    if cfg.outputs.get("out"):
        with open(cfg.outputs["out"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_field(cfg, bbox, nx, ny):
    shape = cfg.build_shape()
    g = assembler.solve(shape, cfg.solver_config())
    _report_diagnostics(g)
    boundary = fieldmod.boundary_field(g, shape, cfg.chi)
    grid = fieldmod.field_grid(boundary, bbox, nx, ny)
    fieldmod.write_grid(grid, cfg.outputs["out"], cfg.outputs["meta"])
    return 0


def cmd_corner_exponent(beta):
    spec = corner.williams_exponent(beta)
    print(f"lambda={spec.lam:.17g}")
    print(f"exponent={spec.exponent:.17g}")
    if spec.lam_imag:
        print(f"lambda_imag={spec.lam_imag:.17g}")
    return 0


def _int_list(text, parser):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        parser.error(f"bad --n-list {text!r}")
    if not values or min(values) < 8:
        parser.error("--n-list needs basis sizes of at least 8")
    return values


def _bbox(text, parser):
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        values = []
    if len(values) != 4 or values[1] <= values[0] or values[3] <= values[2]:
        parser.error(f"bad --bbox {text!r}; expected xmin,xmax,ymin,ymax")
    return values


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr, format="%(message)s")
    try:
        if args.command == "corner-exponent":
            return cmd_corner_exponent(args.beta)
        cfg = _resolve(args, parser)
        if args.command == "solve":
            cfg.outputs = {"json": args.json, "trace": args.trace}
            cfg.extra = {"points": args.points}
            return cmd_solve(cfg)
        if args.command == "verify":
            cfg.outputs = {"report": args.report}
            return cmd_verify(cfg)
        if args.command == "convergence":
            cfg.outputs = {"out": args.out}
            return cmd_convergence(cfg, _int_list(args.n_list, parser))
        if args.command == "field":
            if args.nx < 1 or args.ny < 1:
                parser.error("--nx and --ny must be positive")
            meta = args.meta or re.sub(r"\.csv$", "", args.out) + ".json"
            cfg.outputs = {"out": args.out, "meta": meta}
            return cmd_field(cfg, _bbox(args.bbox, parser), args.nx, args.ny)
    except (GoursatError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0
