"""Command-line interface.

    nullpoint det          --model rect --E 0.5 --V0 1 --b 0.1 --theta -0.3546
    nullpoint roots        --model tri --E 0.5 --V0 1 --c 1
    nullpoint coeffs       --model rect --E 0.5 --V0 1 --b 0.1 --branch 0
    nullpoint wavefunction --model rect --E 0.5 --V0 1 --b 0.1 --samples 50
    nullpoint repro        table1|table2|fig6|xi-sweep [--jobs N]

Exit codes: 0 ok, 2 domain error, 3 no root, 4 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import repro
from .determinants import DELTA_FORM, determinant_form
from .errors import DegenerateRootError, DomainError, NoRootError
from .kinematics import (
    CircuitSpec,
    Delta,
    Rectangular,
    ScaledRectangular,
    Triangular,
    kinematics,
)
from .reporting import Report
from .solver import (
    DEFAULT_GRID_STEP,
    DEFAULT_WINDOW,
    DET_TOLERANCE,
    recover_coefficients,
    scan_roots,
    trace_wavefunction,
)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_NO_ROOT = 3
EXIT_IO = 4

MODELS = ("rect", "tri", "delta", "scaled")
REPRO_TARGETS = ("table1", "table2", "fig6", "xi-sweep")


@dataclass
class RunConfig:
    """Everything a run depends on; ``to_dict`` round-trips through
    ``--config``."""

    command: str = "det"
    target: str | None = None
    model: str = "rect"
    E: float | None = None
    V0: float = 1.0
    b: float | None = None
    c: float | None = None
    alpha: float = 1.0
    xi: str | None = None
    theta: float | None = None
    theta_min: float | None = None
    theta_max: float | None = None
    grid_step: float = DEFAULT_GRID_STEP
    tol: float = DET_TOLERANCE
    branch: int = 0
    samples: int = 200
    normalize: bool = False
    format: str = "csv"
    out: str | None = None
    jobs: int = 1
    degrees: bool = False

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    # angles at the boundary
    def _angle_in(self, v):
        return None if v is None else (math.radians(v) if self.degrees else float(v))

    @property
    def theta_rad(self):
        return self._angle_in(self.theta)

    @property
    def window(self) -> tuple[float, float]:
        lo = self._angle_in(self.theta_min)
        hi = self._angle_in(self.theta_max)
        return (DEFAULT_WINDOW[0] if lo is None else lo, DEFAULT_WINDOW[1] if hi is None else hi)

    def xi_values(self) -> list[float]:
        if self.xi is None:
            return []
        try:
            return [float(v) for v in str(self.xi).split(",") if v.strip()]
        except ValueError as exc:
            raise DomainError(f"bad --xi value {self.xi!r}") from exc


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    S = argparse.SUPPRESS
    p.add_argument("--model", choices=MODELS, default=S)
    p.add_argument("--E", type=float, default=S, help="particle energy (eV)")
    p.add_argument("--V0", type=float, default=S, help="barrier height (eV)")
    p.add_argument("--b", type=float, default=S, help="rectangular barrier length (nm)")
    p.add_argument("--c", type=float, default=S, help="triangular barrier length (nm)")
    p.add_argument("--alpha", type=float, default=S, help="delta strength (eV nm)")
    p.add_argument("--xi", default=S, help="barrier scale; comma list for xi-sweep")
    p.add_argument("--theta", type=float, default=S)
    p.add_argument("--theta-min", dest="theta_min", type=float, default=S)
    p.add_argument("--theta-max", dest="theta_max", type=float, default=S)
    p.add_argument("--grid-step", dest="grid_step", type=float, default=S)
    p.add_argument("--tol", type=float, default=S, help="determinant tolerance")
    p.add_argument("--branch", type=int, default=S)
    p.add_argument("--samples", type=int, default=S, help="samples per region")
    p.add_argument("--normalize", action="store_true", default=S)
    p.add_argument("--format", choices=("csv", "json"), default=S)
    p.add_argument("--out", default=S, help="output file (default stdout)")
    p.add_argument("--jobs", type=int, default=S)
    p.add_argument("--degrees", action="store_true", default=S,
                   help="angles in and out in degrees")
    p.add_argument("--config", default=S, help="JSON file with RunConfig fields")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nullpoint", description="Null points of closed tunneling circuits."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("det", "evaluate the normalized determinant at theta"),
        ("roots", "list determinant zeros in the theta window"),
        ("coeffs", "wavefunction coefficients at a root"),
        ("wavefunction", "sample psi around the loop at a root"),
    ):
        _common(sub.add_parser(name, help=text))
    rp = sub.add_parser("repro", help="regenerate reference tables and statistics")
    rp.add_argument("target", choices=REPRO_TARGETS)
    _common(rp)
    return parser


def config_from_args(argv=None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    base: dict = {}
    cfg_path = ns.pop("config", None)
    if cfg_path is not None:
        try:
            base = json.loads(Path(cfg_path).read_text())
        except OSError:
            raise
        except ValueError as exc:
            raise DomainError(f"config file {cfg_path}: {exc}") from exc
    base.update(ns)
    return RunConfig.from_dict(base)


# ---------------------------------------------------------------------------
# model construction
# ---------------------------------------------------------------------------


def _need(cfg: RunConfig, name: str):
    v = getattr(cfg, name)
    if v is None:
        raise DomainError(f"--{name} is required for model {cfg.model}")
    return v


def build_spec(cfg: RunConfig) -> CircuitSpec:
    E = _need(cfg, "E")
    if cfg.model == "rect":
        model = Rectangular(cfg.V0, _need(cfg, "b"))
    elif cfg.model == "tri":
        model = Triangular(cfg.V0, _need(cfg, "c"))
    elif cfg.model == "delta":
        model = Delta(cfg.alpha)
    elif cfg.model == "scaled":
        xis = cfg.xi_values() or [1.0]
        if len(xis) != 1:
            raise DomainError("--xi takes a single value for the scaled model")
        model = ScaledRectangular(cfg.V0, _need(cfg, "b"), xis[0])
    else:
        raise DomainError(f"unknown model {cfg.model!r}")
    return CircuitSpec(model, E)


def _angle_out(cfg: RunConfig, theta):
    if theta is None:
        return None
    return math.degrees(theta) if cfg.degrees else theta


def _angle_col(cfg: RunConfig) -> tuple[str, str]:
    return ("theta_deg", "deg") if cfg.degrees else ("theta_rad", "rad")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_det(cfg: RunConfig) -> Report:
    theta = cfg.theta_rad
    if theta is None:
        raise DomainError("--theta is required")
    if cfg.model == "delta" and cfg.E is None:
        form = DELTA_FORM
    else:
        form = determinant_form(build_spec(cfg))
    tcol, tunit = _angle_col(cfg)
    rec = {
        "model": cfg.model,
        tcol: _angle_out(cfg, theta),
        "det": form(theta),
        "det_scale": form.scale,
        "normalization": form.normalization,
    }
    return Report("det", list(rec), {tcol: tunit, "det": "1", "det_scale": "1"},
                  [rec], cfg.to_dict())


def _roots(cfg: RunConfig, spec: CircuitSpec):
    roots = scan_roots(spec, cfg.window, cfg.grid_step, cfg.tol)
    if not roots:
        raise NoRootError(f"no root in theta window {cfg.window!r}")
    return roots


def cmd_roots(cfg: RunConfig) -> Report:
    spec = build_spec(cfg)
    tcol, tunit = _angle_col(cfg)
    cols = ["branch_index", tcol, "pre_barrier_length_nm", "det_residual",
            "det_scale", "matrix_condition"]
    recs = [
        {
            "branch_index": r.branch_index,
            tcol: _angle_out(cfg, r.theta),
            "pre_barrier_length_nm": r.pre_barrier_length,
            "det_residual": r.det_residual,
            "det_scale": r.det_scale,
            "matrix_condition": r.matrix_condition,
        }
        for r in _roots(cfg, spec)
    ]
    units = {tcol: tunit, "pre_barrier_length_nm": "nm", "det_residual": "1",
             "det_scale": "1", "matrix_condition": "1"}
    return Report("roots", cols, units, recs, cfg.to_dict())


def _root_theta(cfg: RunConfig, spec: CircuitSpec) -> float:
    if cfg.theta is not None:
        return cfg.theta_rad
    roots = _roots(cfg, spec)
    if cfg.branch < 0 or cfg.branch >= len(roots):
        raise NoRootError(f"branch {cfg.branch} not in window ({len(roots)} roots)")
    return roots[cfg.branch].theta


def cmd_coeffs(cfg: RunConfig) -> Report:
    spec = build_spec(cfg)
    theta = _root_theta(cfg, spec)
    cs = recover_coefficients(spec, theta)
    tcol, tunit = _angle_col(cfg)
    rec = {
        tcol: _angle_out(cfg, theta),
        "A": cs.A, "B": cs.B, "C": cs.C, "D": cs.D,
        "residual_1": cs.boundary_residuals[0],
        "residual_2": cs.boundary_residuals[1],
        "residual_3": cs.boundary_residuals[2],
        "residual_4": cs.boundary_residuals[3],
        "max_residual": cs.max_residual,
        "accepted": cs.accepted,
    }
    units = {k: "1" for k in rec}
    units[tcol] = tunit
    return Report("coeffs", list(rec), units, [rec], cfg.to_dict())


def cmd_wavefunction(cfg: RunConfig) -> Report:
    spec = build_spec(cfg)
    theta = _root_theta(cfg, spec)
    cs = recover_coefficients(spec, theta)
    tr = trace_wavefunction(spec, cs, kinematics(spec, theta), cfg.samples, cfg.normalize)
    recs = [{"x_nm": float(x), "psi": float(p)} for x, p in zip(tr.x, tr.psi)]
    summary = {
        "theta_rad": theta,
        "origin_continuity_residual": tr.origin_residual,
        "closure_continuity_residual": tr.closure_residual,
        "normalized": tr.normalized,
        "norm": tr.norm,
        "samples_per_region": cfg.samples,
    }
    return Report("wavefunction", ["x_nm", "psi"], {"x_nm": "nm", "psi": "1"},
                  recs, cfg.to_dict(), summary)


TABLE_UNITS = {
    "E_eV": "eV", "barrier_length_nm": "nm", "paper_value": "as printed",
    "computed_exact_nm": "nm", "computed_branch1_nm": "nm",
    "computed_linearized_nm": "nm", "theta_rad": "rad", "det_residual": "1",
    "agreement": "class",
}


def _table_report(kind: str, cells, diag_names, cfg: RunConfig, notes) -> Report:
    cols = ["E_eV", "barrier_length_nm", "paper_value", "computed_exact_nm"]
    if kind == "table1":
        cols += ["computed_branch1_nm", "computed_linearized_nm"]
    cols += ["theta_rad", "det_residual", *diag_names, "agreement"]
    units = {c: TABLE_UNITS.get(c, "1") for c in cols}
    if "theta_deg" in units:
        units["theta_deg"] = "deg"
    recs = []
    for cell in cells:
        rec = {
            "E_eV": cell.E,
            "barrier_length_nm": cell.barrier_length,
            "paper_value": cell.paper_value,
            "computed_exact_nm": cell.computed_exact,
            "computed_branch1_nm": cell.computed_branch1,
            "computed_linearized_nm": cell.computed_linearized,
            "theta_rad": cell.theta,
            "det_residual": cell.det_residual,
            "agreement": cell.agreement,
        }
        rec.update(dict(cell.ratio_diagnostics))
        recs.append(rec)
    counts = repro.agreement_counts(cells)
    n = len(cells)
    summary = {
        "cells": n,
        "counts": counts,
        "outliers": [[c.E, c.barrier_length, c.paper_value, c.agreement]
                     for c in repro.outliers(cells)],
    }
    return Report(kind, cols, units, recs, cfg.to_dict(), summary, list(notes))


def cmd_repro(cfg: RunConfig) -> Report:
    window = cfg.window
    jobs = max(1, cfg.jobs)
    if cfg.target == "table1":
        cells = repro.reproduce_table1(V0=cfg.V0, window=window,
                                       grid_step=cfg.grid_step, jobs=jobs)
        rep = _table_report("table1", cells,
                            ["r", "printed_over_exact", "exact_over_linearized"], cfg,
                            ["r = printed * (pi/180) * E / (b (V0 - E))"])
        ok = rep.summary["counts"][repro.LINEARIZED_MATCH] + rep.summary["counts"][repro.EXACT]
        rep.summary["linearized_fraction"] = ok / len(cells)
        return rep
    if cfg.target == "table2":
        cells = repro.reproduce_table2(V0=cfg.V0, window=window,
                                       grid_step=cfg.grid_step, jobs=jobs)
        rep = _table_report(
            "table2", cells,
            ["printed_pm_over_exact", "printed_pm_over_free_wire", "theta_deg"], cfg,
            [repro.UNIT_FINDING],
        )
        c = rep.summary["counts"]
        rep.summary["match_fraction"] = (c[repro.UNIT_SHIFT] + c[repro.EXACT]) / len(cells)
        return rep
    if cfg.target == "fig6":
        c = cfg.c if cfg.c is not None else repro.ref.FIG_BARRIER_LENGTH
        st = repro.fig6_stats(V0=cfg.V0, c=c, grid_step=cfg.grid_step, jobs=jobs)
        recs = [{"E_eV": E, "theta_deg": t, "paired": p}
                for E, t, p in zip(st.energies, st.theta_deg, st.paired)]
        summary = {
            "mean_theta_deg": st.mean_theta_deg,
            "stddev_theta_deg": st.stddev_theta_deg,
            "slope_deg_per_eV": st.slope,
            "intercept_deg": st.intercept,
            "reference_mean_theta_deg": repro.ref.FIG_MEAN_THETA_DEG,
            "reference_stddev_theta_deg": repro.ref.FIG_STDDEV_THETA_DEG,
        }
        return Report("fig6", ["E_eV", "theta_deg", "paired"],
                      {"E_eV": "eV", "theta_deg": "deg", "paired": "bool"},
                      recs, cfg.to_dict(), summary,
                      ["stddev uses ddof = 1; paired rows use the midpoint of two "
                       f"crossings within {repro.PAIR_TOLERANCE_DEG:g} deg of -360"])
    if cfg.target == "xi-sweep":
        xis = cfg.xi_values() or [1.0, 10.0, 100.0, 1000.0]
        b = cfg.b if cfg.b is not None else 0.1
        E = cfg.E if cfg.E is not None else 0.5
        sw = repro.xi_sweep(cfg.V0, b, E, xis, grid_step=cfg.grid_step)
        cols = ["xi_scale", "branch", "theta_rad", "det_residual",
                "height_times_length_eV_nm", "distance_to_limit_rad",
                "distance_to_two_pi_n_rad", "distance_to_n_pi_rad"]
        recs = [
            {
                "xi_scale": p.xi_scale, "branch": p.branch, "theta_rad": p.theta,
                "det_residual": p.det_residual,
                "height_times_length_eV_nm": p.height_times_length,
                "distance_to_limit_rad": p.distance_to_limit,
                "distance_to_two_pi_n_rad": p.distance_to_two_pi_n,
                "distance_to_n_pi_rad": p.distance_to_n_pi,
            }
            for p in sw.points
        ]
        units = {"xi_scale": "1", "branch": "1", "theta_rad": "rad", "det_residual": "1",
                 "height_times_length_eV_nm": "eV nm", "distance_to_limit_rad": "rad",
                 "distance_to_two_pi_n_rad": "rad", "distance_to_n_pi_rad": "rad"}
        summary = {
            "theta_limit_rad": sw.theta_limit,
            "families": {str(k): v for k, v in sw.families.items()},
            "lost_branches": [list(x) for x in sw.lost],
            "family_summary": sw.family_summary(),
        }
        return Report("xi-sweep", cols, units, recs, cfg.to_dict(), summary)
    raise DomainError(f"unknown repro target {cfg.target!r}")


COMMANDS = {
    "det": cmd_det,
    "roots": cmd_roots,
    "coeffs": cmd_coeffs,
    "wavefunction": cmd_wavefunction,
    "repro": cmd_repro,
}


def _emit(cfg: RunConfig, rep: Report) -> None:
    text = rep.render(cfg.format)
    if cfg.out is None:
        sys.stdout.write(text)
        if rep.summary and cfg.format == "csv":
            sys.stderr.write(rep.summary_json())
        return
    out = Path(cfg.out)
    out.write_text(text)
    if rep.summary and cfg.format == "csv":
        out.with_name(out.stem + ".summary.json").write_text(rep.summary_json())


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
        rep = COMMANDS[cfg.command](cfg)
        _emit(cfg, rep)
    except NoRootError as exc:
        print(f"nullpoint: no root: {exc}", file=sys.stderr)
        return EXIT_NO_ROOT
    except (DomainError, DegenerateRootError, ValueError, TypeError) as exc:
        print(f"nullpoint: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"nullpoint: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
