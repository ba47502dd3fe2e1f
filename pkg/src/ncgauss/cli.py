"""Command-line interface.

Subcommands: classify, spectrum, metric, volume, sweep, figures, report.
Exit codes: 0 success, 1 domain/runtime error (one-line diagnostic on
stderr), 2 usage error (argparse usage text).

A config file (``--config``) holds ``key = value`` lines using the long
flag names (``theta = 0.5``); command-line flags override file values.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import report as report_mod
from .errors import DomainError, NCGaussError
from .infogeo import fisher_metric_numeric, toy_family, toy_metric_closed_form, toy_metric_det
from .phasespace import NCParams, nc_form, ppt_form
from .states import (
    CLASSIFY_TOL,
    ToyPoint,
    classify,
    nu_minus,
    nu_prime_minus,
    symplectic_spectrum,
    toy_covariance,
)
from .svgplot import emit_plot
from .tables import emit_table, render_csv
from .volume import RegionSpec, SweepTable, entangled_volume, integrate_region, sweep

#: per-parameter sweep grid defaults (start, stop, steps), mirroring the
#: reference figures
SWEEP_DEFAULTS = {
    "kappa": (0.5, 4.0, 8),
    "theta": (0.1, 1.0, 10),
    "eta": (0.1, 1.0, 10),
}


@dataclass
class RunConfig:
    """Resolved options of one invocation; validated before any compute."""

    command: str
    m: float = 0.0
    n: float = 0.0
    theta: float = 0.0
    eta: float = 0.0
    kappa: float = 2.0
    backend: str = "paper"
    density: str = "det"
    budget: int = 50_000
    seed: int = 0
    region: str = "positive-disk"
    param: str | None = None
    start: float | None = None
    stop: float | None = None
    steps: int | None = None
    out: str | None = None
    fmt: str | None = None
    plot: str | None = None
    tol: float = CLASSIFY_TOL

    def validate(self) -> None:
        if self.theta * self.eta >= 1.0:
            raise DomainError("theta*eta must be < 1")
        if self.command in ("classify", "spectrum") and np.hypot(self.m, self.n) >= 1.0:
            raise DomainError("(m, n) must lie inside the unit disk")
        if self.kappa <= 0.0:
            raise DomainError("kappa must be positive")
        if self.budget < 10_000:
            raise DomainError("budget must be >= 10000")
        if self.tol < 0.0:
            raise DomainError("tol must be >= 0")
        if self.steps is not None and self.steps < 1:
            raise DomainError("steps must be >= 1")


def _load_config(path: str) -> dict:
    """Parse ``key = value`` lines; '#' starts a comment."""
    values: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for sep in ("=", ":"):
            if sep in line:
                key, _, val = line.partition(sep)
                values[key.strip()] = val.strip()
                break
        else:
            raise DomainError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
    return values


_CONFIG_TYPES = {
    "m": float, "n": float, "theta": float, "eta": float, "kappa": float,
    "tol": float, "from": float, "to": float, "budget": int, "seed": int,
    "steps": int, "backend": str, "density": str, "region": str, "param": str,
    "out": str, "format": str, "plot": str,
}

_KEY_TO_ATTR = {"from": "start", "to": "stop", "format": "fmt"}


def _resolve(args: argparse.Namespace, defaults: dict) -> RunConfig:
    """Merge CLI flags over config-file values over per-command defaults."""
    file_vals: dict = {}
    if getattr(args, "config", None):
        raw = _load_config(args.config)
        for key, sval in raw.items():
            if key not in _CONFIG_TYPES:
                raise DomainError(f"unknown config key {key!r}")
            try:
                file_vals[key] = _CONFIG_TYPES[key](sval)
            except ValueError:
                raise DomainError(f"config key {key!r}: cannot parse {sval!r}") from None

    cfg = RunConfig(command=args.command)
    for key in _CONFIG_TYPES:
        attr = _KEY_TO_ATTR.get(key, key)
        cli_val = getattr(args, attr, None)
        if cli_val is not None:
            setattr(cfg, attr, cli_val)
        elif key in file_vals:
            setattr(cfg, attr, file_vals[key])
        elif attr in defaults:
            setattr(cfg, attr, defaults[attr])
    cfg.validate()
    return cfg


def _fmt(x: float) -> str:
    return f"{x:.9g}"


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------

def _cmd_classify(cfg: RunConfig) -> int:
    point = ToyPoint(cfg.m, cfg.n, NCParams(cfg.theta, cfg.eta))
    print(classify(point, cfg.tol).value)
    return 0


def _cmd_spectrum(cfg: RunConfig) -> int:
    point = ToyPoint(cfg.m, cfg.n, NCParams(cfg.theta, cfg.eta))
    sigma = toy_covariance(point)
    omega = nc_form(point.nc)
    nus = symplectic_spectrum(sigma, omega)
    nups = symplectic_spectrum(sigma, ppt_form(omega))
    print("nu:       " + " ".join(_fmt(v) for v in nus))
    print("nu_prime: " + " ".join(_fmt(v) for v in nups))
    for label, fn in (("nu_minus_closed", nu_minus), ("nu_prime_minus_closed", nu_prime_minus)):
        try:
            print(f"{label}: {_fmt(fn(point))}")
        except NCGaussError as exc:
            print(f"{label}: invalid-domain ({exc})")
    return 0


def _cmd_metric(cfg: RunConfig) -> int:
    if cfg.backend == "paper":
        g = toy_metric_closed_form(cfg.m, cfg.n)
        det = toy_metric_det(cfg.m, cfg.n)
    else:
        g = fisher_metric_numeric(toy_family(), [cfg.m, cfg.n])
        det = float(np.linalg.det(g))
    print(f"g[m,m] g[m,n]: {_fmt(g[0, 0])} {_fmt(g[0, 1])}")
    print(f"g[n,m] g[n,n]: {_fmt(g[1, 0])} {_fmt(g[1, 1])}")
    print(f"det: {_fmt(det)}")
    return 0


def _cmd_volume(cfg: RunConfig) -> int:
    nc = NCParams(cfg.theta, cfg.eta)
    region = RegionSpec(cfg.region, nc)
    est = integrate_region(
        region, cfg.kappa, backend=cfg.backend, density=cfg.density,
        budget=cfg.budget, seed=cfg.seed, method="gauss", tol=cfg.tol,
    )
    tail = f" [{est.note}]" if est.note else ""
    print(
        f"gamma_{cfg.region} = {_fmt(est.value)} +/- {_fmt(est.std_error)} "
        f"(method={est.method}, evals={est.evals}, kappa={cfg.kappa:g}, "
        f"theta={cfg.theta:g}, eta={cfg.eta:g}, backend={cfg.backend}, "
        f"density={cfg.density}){tail}"
    )
    return 0


def _sweep_table(cfg: RunConfig, method: str = "mc") -> SweepTable:
    start, stop, steps = SWEEP_DEFAULTS[cfg.param]
    start = cfg.start if cfg.start is not None else start
    stop = cfg.stop if cfg.stop is not None else stop
    steps = cfg.steps if cfg.steps is not None else steps
    grid = list(np.linspace(start, stop, steps))
    fixed = {"kappa": cfg.kappa, "theta": cfg.theta, "eta": cfg.eta}
    fixed.pop(cfg.param, None)
    return sweep(
        cfg.param, grid, fixed, backend=cfg.backend, density=cfg.density,
        budget=cfg.budget, seed=cfg.seed, method=method, tol=cfg.tol,
    )


def _cmd_sweep(cfg: RunConfig) -> int:
    if cfg.param not in SWEEP_DEFAULTS:
        raise DomainError("--param must be one of kappa, theta, eta")
    table = _sweep_table(cfg)
    fmt = cfg.fmt or "csv"
    if cfg.out:
        emit_table(table, fmt, cfg.out)
        print(f"wrote {cfg.out}")
    else:
        sys.stdout.write(render_csv(table))
    if cfg.plot:
        emit_plot(table, cfg.plot)
        print(f"wrote {cfg.plot}")
    return 0


def _cmd_figures(cfg: RunConfig) -> int:
    outdir = Path(cfg.out or "figures")
    outdir.mkdir(parents=True, exist_ok=True)
    jobs = [
        # (param, fixed overrides, csv name, [(svg name, series, title)])
        ("kappa", {"theta": 0.0, "eta": 0.0}, "kappa_sweep.csv",
         [("fig1_kappa_volume.svg", ("gamma_quantum",),
           "positive-state volume vs kappa")]),
        ("theta", {"eta": 0.0, "kappa": 4.0}, "theta_sweep.csv",
         [("fig2_theta_volumes.svg",
           ("gamma_quantum", "gamma_separable", "gamma_entangled"),
           "state-space volumes vs theta (eta=0, kappa=4)"),
          ("fig3_theta_ratio.svg", ("ratio",),
           "entangled/separable ratio vs theta (eta=0, kappa=4)")]),
        ("eta", {"theta": 0.0, "kappa": 4.0}, "eta_sweep.csv",
         [("fig4_eta_ratio.svg", ("ratio",),
           "entangled/separable ratio vs eta (theta=0, kappa=4)")]),
    ]
    for param, fixed, csv_name, plots in jobs:
        start, stop, steps = SWEEP_DEFAULTS[param]
        grid = list(np.linspace(start, stop, steps))
        table = sweep(
            param, grid, fixed, backend=cfg.backend, density=cfg.density,
            budget=cfg.budget, seed=cfg.seed, method="gauss", tol=cfg.tol,
        )
        emit_table(table, "csv", outdir / csv_name)
        print(f"wrote {outdir / csv_name}")
        for svg_name, series, title in plots:
            emit_plot(table, outdir / svg_name, series=series, title=title)
            print(f"wrote {outdir / svg_name}")
    return 0


def _cmd_report(cfg: RunConfig) -> int:
    if cfg.fmt == "csv":
        raise DomainError("report supports --format json (or text by default)")
    rep = report_mod.build_report()
    text = report_mod.render_json(rep) if cfg.fmt == "json" else report_mod.render_text(rep)
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
        print(f"wrote {cfg.out}")
    else:
        sys.stdout.write(text)
    return 0


_COMMANDS = {
    "classify": (_cmd_classify, {}),
    "spectrum": (_cmd_spectrum, {}),
    "metric": (_cmd_metric, {"backend": "numeric"}),
    "volume": (_cmd_volume, {"budget": 100_000}),
    "sweep": (_cmd_sweep, {"kappa": 4.0}),
    "figures": (_cmd_figures, {"kappa": 4.0}),
    "report": (_cmd_report, {}),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncgauss",
        description=(
            "Bipartite Gaussian states on deformed phase space: "
            "classification, spectra, metrics, and state-space volumes."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *groups):
        p = sub.add_parser(name, help=help_text)
        if "point" in groups:
            p.add_argument("--m", type=float, help="first family parameter")
            p.add_argument("--n", type=float, help="second family parameter")
        if "nc" in groups:
            p.add_argument("--theta", type=float, help="position-position deformation")
            p.add_argument("--eta", type=float, help="momentum-momentum deformation")
        if "vol" in groups:
            p.add_argument("--kappa", type=float, help="regularizer scale (> 0)")
            p.add_argument("--backend", choices=("paper", "numeric"),
                           help="metric/regularizer backend")
            p.add_argument("--density", choices=("det", "sqrt-det"),
                           help="metric density in the integrand")
            p.add_argument("--budget", type=int, help="integrand evaluation budget")
            p.add_argument("--seed", type=int, help="sampling seed")
        if "grid" in groups:
            p.add_argument("--param", choices=("kappa", "theta", "eta"),
                           help="swept parameter")
            p.add_argument("--from", dest="start", type=float, help="grid start")
            p.add_argument("--to", dest="stop", type=float, help="grid end")
            p.add_argument("--steps", type=int, help="number of grid points")
        if "out" in groups:
            p.add_argument("--out", help="output path")
            p.add_argument("--format", dest="fmt", choices=("csv", "json"),
                           help="table format")
            p.add_argument("--plot", help="write an SVG line chart here")
        p.add_argument("--tol", type=float, help="classification tolerance")
        p.add_argument("--config", help="key = value config file; flags override")
        return p

    add("classify", "classify a family point", "point", "nc")
    add("spectrum", "print symplectic spectra and closed-form minima", "point", "nc")
    p = add("metric", "print the information metric at a point", "point")
    p.add_argument("--backend", choices=("paper", "numeric"),
                   help="closed-form or finite-difference metric")
    p = add("volume", "regularized volume of one region", "nc", "vol")
    p.add_argument("--region", choices=("positive-disk", "quantum", "separable", "entangled"),
                   help="integration region")
    add("sweep", "volumes along a parameter grid", "nc", "vol", "grid", "out")
    p = add("figures", "reproduce the reference sweeps (CSV + SVG)", "vol")
    p.add_argument("--out", help="output directory (default: figures)")
    p = add("report", "closed-form vs numeric discrepancy report")
    p.add_argument("--out", help="output path")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), help="report format")
    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse and execute; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse printed usage/help already
        code = exc.code
        return code if isinstance(code, int) else 2
    handler, defaults = _COMMANDS[args.command]
    try:
        cfg = _resolve(args, defaults)
        return handler(cfg)
    except NCGaussError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
