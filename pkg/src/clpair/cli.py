"""Command-line interface: config handling, sweeps, serialization.

Subcommands (one verb per artifact): `measure` (single point), `sweep`
(parameter-plane CSV), `dist` (joint distribution grids), `regime-map`
(categorical map), `validate` (oracle suite), `render` (SVG from a
sweep CSV).

The config file is an INI-style key-value document; the only
environment overrides are CLPAIR_OUT (output directory) and
CLPAIR_THREADS (worker count). Exit codes: 0 success, 1 cell or oracle
failure, 2 configuration error.
"""

from __future__ import annotations

import configparser
import csv
import hashlib
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import click
import numpy as np

from . import __version__
from .errors import ConfigError, ConvergenceError, DomainError
from .measures import (
    PURITY_QUAD,
    MeasureResult,
    RegimeThresholds,
    evaluate_point,
)
from .model import (
    BeamParams,
    PhaseModel,
    PolarLinearPhase,
    QuadratureSpec,
    RadialDkPhase,
    RadialKcPhase,
    SpectrumModel,
    ZeroPhase,
    wavelength_to_wavenumbers,
)
from .render import ContourSpec, render_heatmap

CSV_HEADER = [
    "dq_perp_um_inv",
    "dk_ph_um_inv",
    "purity_sc",
    "purity_z",
    "var_rel_pos_um2",
    "var_tot_wv_um_inv2",
    "d2",
    "schmidt_number",
    "regime",
    "longitudinal_entangled",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SweepAxes:
    dq_perp_min: float
    dq_perp_max: float
    dq_perp_steps: int
    dk_ph_min: float
    dk_ph_max: float
    dk_ph_steps: int

    def __post_init__(self):
        for lo, hi, n in (
            (self.dq_perp_min, self.dq_perp_max, self.dq_perp_steps),
            (self.dk_ph_min, self.dk_ph_max, self.dk_ph_steps),
        ):
            if not (0.0 < lo < hi):
                raise ConfigError("sweep ranges must be positive with min < max")
            if n < 2:
                raise ConfigError("sweep steps must be at least 2")

    def dq_perp_values(self) -> np.ndarray:
        return np.logspace(math.log10(self.dq_perp_min), math.log10(self.dq_perp_max), self.dq_perp_steps)

    def dk_ph_values(self) -> np.ndarray:
        return np.logspace(math.log10(self.dk_ph_min), math.log10(self.dk_ph_max), self.dk_ph_steps)


@dataclass(frozen=True)
class RunConfig:
    kinetic_energy_kev: float
    dq_par: float
    k_c: float
    dk_ph: float
    dq_perp: Optional[float] = None
    phase_variant: str = "zero"
    phase_xi: float = 0.0
    sweep: Optional[SweepAxes] = None
    purity_threshold: float = 2.0 / 3.0
    epr_threshold: float = 1.0
    rel_tol: float = PURITY_QUAD.rel_tol
    abs_tol: float = PURITY_QUAD.abs_tol
    truncation_sigmas: float = 8.0
    mc_samples: int = 200_000
    mc_seed: int = 20260824
    out_dir: str = "."

    def beam(self, dq_perp: Optional[float] = None) -> BeamParams:
        dq = dq_perp if dq_perp is not None else self.dq_perp
        if dq is None:
            raise ConfigError("this command needs beam.l_perp_um or beam.dq_perp_um_inv")
        return BeamParams.create(self.kinetic_energy_kev, dq, self.dq_par)

    def spectrum(self, dk_ph: Optional[float] = None) -> SpectrumModel:
        return SpectrumModel.create(self.k_c, dk_ph if dk_ph is not None else self.dk_ph)

    def phase(self) -> PhaseModel:
        if self.phase_variant == "zero":
            return ZeroPhase()
        if self.phase_variant == "polar_linear":
            return PolarLinearPhase(eta1=_identity, xi1=self.phase_xi)
        if self.phase_variant == "radial_kc":
            return RadialKcPhase(xi2=self.phase_xi)
        if self.phase_variant == "radial_dk":
            return RadialDkPhase(xi2=self.phase_xi)
        raise ConfigError(f"unknown phase variant {self.phase_variant!r}")

    def thresholds(self) -> RegimeThresholds:
        return RegimeThresholds(self.purity_threshold, self.epr_threshold)

    def quadrature(self) -> QuadratureSpec:
        return QuadratureSpec(
            rel_tol=self.rel_tol,
            abs_tol=self.abs_tol,
            truncation_sigmas=self.truncation_sigmas,
            mc_samples=self.mc_samples,
            mc_seed=self.mc_seed,
        )


def _identity(theta):
    return theta


# ---------------------------------------------------------------------------
# config parsing

def _exclusive(section, base: dict, name_a: str, name_b: str, convert_a, where: str) -> float:
    has_a, has_b = name_a in base, name_b in base
    if has_a == has_b:
        raise ConfigError(f"[{where}] needs exactly one of {name_a} / {name_b}")
    return convert_a(_float(base, name_a, where)) if has_a else _float(base, name_b, where)


def _float(section: dict, key: str, where: str) -> float:
    try:
        return float(section[key])
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"[{where}] {key}: missing or not a number") from exc


def _int(section: dict, key: str, where: str, default: Optional[int] = None) -> int:
    if key not in section and default is not None:
        return default
    try:
        return int(section[key])
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"[{where}] {key}: missing or not an integer") from exc


def load_config(path: str) -> RunConfig:
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        return parse_config(parser)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def parse_config(parser: configparser.ConfigParser) -> RunConfig:
    if "beam" not in parser or "spectrum" not in parser:
        raise ConfigError("config must contain [beam] and [spectrum] sections")
    beam = dict(parser["beam"])
    spec = dict(parser["spectrum"])

    dq_par = _exclusive(parser, beam, "l_par_um", "dq_par_um_inv", lambda v: TWO_PI / v, "beam")
    dq_perp = None
    if "l_perp_um" in beam or "dq_perp_um_inv" in beam:
        dq_perp = _exclusive(parser, beam, "l_perp_um", "dq_perp_um_inv", lambda v: TWO_PI / v, "beam")

    if ("lambda_c_um" in spec) == ("k_c_um_inv" in spec):
        raise ConfigError("[spectrum] needs exactly one of lambda_c_um / k_c_um_inv")
    if ("dlambda_um" in spec) == ("dk_ph_um_inv" in spec):
        raise ConfigError("[spectrum] needs exactly one of dlambda_um / dk_ph_um_inv")
    if "lambda_c_um" in spec:
        lam = _float(spec, "lambda_c_um", "spectrum")
        if "dlambda_um" in spec:
            k_c, dk_ph = wavelength_to_wavenumbers(lam, _float(spec, "dlambda_um", "spectrum"))
        else:
            k_c = TWO_PI / lam
            dk_ph = _float(spec, "dk_ph_um_inv", "spectrum")
    else:
        k_c = _float(spec, "k_c_um_inv", "spectrum")
        if "dlambda_um" in spec:
            lam = TWO_PI / k_c
            _, dk_ph = wavelength_to_wavenumbers(lam, _float(spec, "dlambda_um", "spectrum"))
        else:
            dk_ph = _float(spec, "dk_ph_um_inv", "spectrum")

    sweep = None
    if "sweep" in parser:
        s = dict(parser["sweep"])
        sweep = SweepAxes(
            _float(s, "dq_perp_min", "sweep"),
            _float(s, "dq_perp_max", "sweep"),
            _int(s, "dq_perp_steps", "sweep"),
            _float(s, "dk_ph_min", "sweep"),
            _float(s, "dk_ph_max", "sweep"),
            _int(s, "dk_ph_steps", "sweep"),
        )

    phase_variant, phase_xi = "zero", 0.0
    if "phase" in parser:
        p = dict(parser["phase"])
        phase_variant = p.get("variant", "zero")
        if phase_variant not in ("zero", "polar_linear", "radial_kc", "radial_dk"):
            raise ConfigError(f"unknown phase variant {phase_variant!r}")
        phase_xi = _float(p, "xi", "phase") if "xi" in p else 0.0

    th = dict(parser["thresholds"]) if "thresholds" in parser else {}
    qd = dict(parser["quadrature"]) if "quadrature" in parser else {}
    out = dict(parser["output"]) if "output" in parser else {}

    cfg = RunConfig(
        kinetic_energy_kev=_float(beam, "kinetic_energy_kev", "beam"),
        dq_par=dq_par,
        k_c=k_c,
        dk_ph=dk_ph,
        dq_perp=dq_perp,
        phase_variant=phase_variant,
        phase_xi=phase_xi,
        sweep=sweep,
        purity_threshold=_float(th, "purity", "thresholds") if "purity" in th else 2.0 / 3.0,
        epr_threshold=_float(th, "epr", "thresholds") if "epr" in th else 1.0,
        rel_tol=_float(qd, "rel_tol", "quadrature") if "rel_tol" in qd else PURITY_QUAD.rel_tol,
        abs_tol=_float(qd, "abs_tol", "quadrature") if "abs_tol" in qd else PURITY_QUAD.abs_tol,
        truncation_sigmas=_float(qd, "truncation_sigmas", "quadrature") if "truncation_sigmas" in qd else 8.0,
        mc_samples=_int(qd, "mc_samples", "quadrature", 200_000),
        mc_seed=_int(qd, "mc_seed", "quadrature", 20260824),
        out_dir=out.get("out_dir", "."),
    )
    # fail fast on inadmissible parameters
    cfg.spectrum()
    cfg.quadrature()
    cfg.thresholds()
    cfg.phase()
    return cfg


def dump_config(cfg: RunConfig) -> str:
    """Canonical config text; parse(dump(cfg)) == cfg."""
    parser = configparser.ConfigParser()
    parser["beam"] = {
        "kinetic_energy_kev": repr(cfg.kinetic_energy_kev),
        "dq_par_um_inv": repr(cfg.dq_par),
    }
    if cfg.dq_perp is not None:
        parser["beam"]["dq_perp_um_inv"] = repr(cfg.dq_perp)
    parser["spectrum"] = {"k_c_um_inv": repr(cfg.k_c), "dk_ph_um_inv": repr(cfg.dk_ph)}
    parser["phase"] = {"variant": cfg.phase_variant, "xi": repr(cfg.phase_xi)}
    if cfg.sweep is not None:
        parser["sweep"] = {
            "dq_perp_min": repr(cfg.sweep.dq_perp_min),
            "dq_perp_max": repr(cfg.sweep.dq_perp_max),
            "dq_perp_steps": str(cfg.sweep.dq_perp_steps),
            "dk_ph_min": repr(cfg.sweep.dk_ph_min),
            "dk_ph_max": repr(cfg.sweep.dk_ph_max),
            "dk_ph_steps": str(cfg.sweep.dk_ph_steps),
        }
    parser["thresholds"] = {"purity": repr(cfg.purity_threshold), "epr": repr(cfg.epr_threshold)}
    parser["quadrature"] = {
        "rel_tol": repr(cfg.rel_tol),
        "abs_tol": repr(cfg.abs_tol),
        "truncation_sigmas": repr(cfg.truncation_sigmas),
        "mc_samples": str(cfg.mc_samples),
        "mc_seed": str(cfg.mc_seed),
    }
    parser["output"] = {"out_dir": cfg.out_dir}
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()


def config_hash(cfg: RunConfig) -> str:
    return hashlib.sha256(dump_config(cfg).encode()).hexdigest()


# ---------------------------------------------------------------------------
# sweep machinery

def _cell_row(args) -> dict:
    """Evaluate one sweep cell; failures become an 'error' row."""
    cfg, dq_perp, dk_ph = args
    base = {"dq_perp_um_inv": dq_perp, "dk_ph_um_inv": dk_ph}
    try:
        result = evaluate_point(
            cfg.beam(dq_perp),
            cfg.spectrum(dk_ph),
            cfg.phase(),
            cfg.thresholds(),
            cfg.quadrature(),
        )
    except (DomainError, ConvergenceError) as exc:
        return {
            **base,
            "purity_sc": math.nan,
            "purity_z": math.nan,
            "var_rel_pos_um2": math.nan,
            "var_tot_wv_um_inv2": math.nan,
            "d2": math.nan,
            "schmidt_number": math.nan,
            "regime": "error",
            "longitudinal_entangled": "",
            "_error": str(exc),
        }
    return {**base, **result_to_row(result)}


def result_to_row(result: MeasureResult) -> dict:
    return {
        "purity_sc": result.purity_sc,
        "purity_z": result.purity_z,
        "var_rel_pos_um2": result.var_rel_pos,
        "var_tot_wv_um_inv2": result.var_tot_wavevector,
        "d2": result.d2,
        "schmidt_number": result.schmidt_number,
        "regime": result.regime.value,
        "longitudinal_entangled": result.longitudinal_entangled,
    }


def run_sweep(cfg: RunConfig, threads: int = 1) -> list[dict]:
    """Evaluate every sweep cell in deterministic row-major order."""
    if cfg.sweep is None:
        raise ConfigError("sweep commands need a [sweep] section")
    cells = [
        (cfg, float(dqp), float(dkp))
        for dqp in cfg.sweep.dq_perp_values()
        for dkp in cfg.sweep.dk_ph_values()
    ]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_cell_row, cells, chunksize=4))
    else:
        rows = [_cell_row(c) for c in cells]
    return rows


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([_fmt(row[k]) for k in CSV_HEADER])
    return buf.getvalue()


def csv_to_rows(text: str) -> list[dict]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != CSV_HEADER:
        raise ConfigError(f"unexpected CSV header {header!r}")
    rows = []
    for rec in reader:
        row = dict(zip(header, rec))
        for key in CSV_HEADER[:-2]:
            row[key] = float(row[key])
        row["longitudinal_entangled"] = row["longitudinal_entangled"] == "true"
        rows.append(row)
    return rows


def _provenance(cfg: RunConfig, **extra) -> dict:
    import numpy
    import scipy

    return {
        "package_version": __version__,
        "numpy_version": numpy.__version__,
        "scipy_version": scipy.__version__,
        "config_hash": config_hash(cfg),
        "config": dump_config(cfg),
        **extra,
    }


def _out_dir(cfg: RunConfig, cli_out: Optional[str]) -> Path:
    out = cli_out or os.environ.get("CLPAIR_OUT") or cfg.out_dir
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _threads(cli_threads: Optional[int]) -> int:
    if cli_threads is not None:
        return max(1, cli_threads)
    env = os.environ.get("CLPAIR_THREADS")
    return max(1, int(env)) if env else 1


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# commands

@click.group()
def main():
    """Electron-photon pair entanglement diagnostics."""


_config_opt = click.option("--config", "config_path", required=True, type=click.Path(), help="Config file path.")
_out_opt = click.option("--out", "out", default=None, type=click.Path(), help="Output directory.")
_threads_opt = click.option("--threads", default=None, type=int, help="Worker process count.")


def _load(config_path: str) -> RunConfig:
    try:
        return load_config(config_path)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)


@main.command()
@_config_opt
@_out_opt
def measure(config_path, out):
    """Evaluate all diagnostics at the configured single point."""
    cfg = _load(config_path)
    try:
        row = {
            "dq_perp_um_inv": cfg.beam().dq_perp,
            "dk_ph_um_inv": cfg.dk_ph,
            **result_to_row(
                evaluate_point(cfg.beam(), cfg.spectrum(), cfg.phase(), cfg.thresholds(), cfg.quadrature())
            ),
        }
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    except (DomainError, ConvergenceError) as exc:
        click.echo(f"measurement failed: {exc}", err=True)
        sys.exit(1)
    out_path = _out_dir(cfg, out)
    (out_path / "measure.csv").write_text(rows_to_csv([row]))
    _write_json(out_path / "measure.json", _provenance(cfg, rows=[{k: _fmt(v) for k, v in row.items()}]))
    click.echo(rows_to_csv([row]), nl=False)


@main.command()
@_config_opt
@_out_opt
@_threads_opt
def sweep(config_path, out, threads):
    """Evaluate the configured parameter-plane sweep to CSV + JSON."""
    cfg = _load(config_path)
    try:
        rows = run_sweep(cfg, _threads(threads))
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    out_path = _out_dir(cfg, out)
    (out_path / "sweep.csv").write_text(rows_to_csv(rows))
    _write_json(
        out_path / "sweep.json",
        _provenance(cfg, rows=[{k: _fmt(v) for k, v in r.items() if not k.startswith("_")} for r in rows]),
    )
    failures = [r for r in rows if r["regime"] == "error"]
    for r in failures:
        click.echo(f"cell ({r['dq_perp_um_inv']}, {r['dk_ph_um_inv']}) failed: {r.get('_error')}", err=True)
    click.echo(f"wrote {len(rows)} cells to {out_path / 'sweep.csv'}")
    if failures:
        sys.exit(1)


@main.command()
@_config_opt
@_out_opt
def dist(config_path, out):
    """Emit the joint momentum and joint position distribution grids."""
    from .distributions import joint_position, momentum_grid

    cfg = _load(config_path)
    try:
        beam = cfg.beam()
        mg = momentum_grid(beam, cfg.spectrum(), cfg.quadrature())
        pg = joint_position(beam, cfg.spectrum(), cfg.quadrature())
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    except (DomainError, ConvergenceError) as exc:
        click.echo(f"distribution failed: {exc}", err=True)
        sys.exit(1)
    out_path = _out_dir(cfg, out)
    for name, grid in (("momentum", mg), ("position", pg)):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"{grid.axis1_name}\\{grid.axis2_name}"] + [repr(v) for v in grid.axis2.tolist()])
        for a1, drow in zip(grid.axis1.tolist(), grid.density):
            writer.writerow([repr(a1)] + [repr(float(v)) for v in drow])
        (out_path / f"dist_{name}.csv").write_text(buf.getvalue())
    _write_json(
        out_path / "dist.json",
        _provenance(
            cfg,
            momentum_shape=list(mg.density.shape),
            position_shape=list(pg.density.shape),
            momentum_integral=mg.integral(),
            position_integral=pg.integral(),
        ),
    )
    click.echo(f"wrote distribution grids to {out_path}")


@main.command("regime-map")
@_config_opt
@_out_opt
@_threads_opt
def regime_map(config_path, out, threads):
    """Sweep the plane and render the categorical regime map SVG."""
    cfg = _load(config_path)
    try:
        rows = run_sweep(cfg, _threads(threads))
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    out_path = _out_dir(cfg, out)
    (out_path / "regime_map.csv").write_text(rows_to_csv(rows))
    svg = _render_rows(rows, "regime", cfg)
    (out_path / "regime_map.svg").write_text(svg)
    click.echo(f"wrote {out_path / 'regime_map.svg'}")
    if any(r["regime"] == "error" for r in rows):
        sys.exit(1)


@main.command()
@_config_opt
@click.option("--seed", default=None, type=int, help="Monte Carlo seed override.")
@_out_opt
def validate(config_path, seed, out):
    """Run the oracle suite at the configured point."""
    from .oracles import run_suite

    cfg = _load(config_path)
    try:
        reports = run_suite(
            cfg.beam(),
            cfg.spectrum(),
            cfg.quadrature(),
            seed=seed if seed is not None else cfg.mc_seed,
            mc_samples=cfg.mc_samples,
        )
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    except (DomainError, ConvergenceError) as exc:
        click.echo(f"oracle failure: {exc}", err=True)
        sys.exit(1)
    out_path = _out_dir(cfg, out)
    payload = _provenance(
        cfg,
        seed=seed if seed is not None else cfg.mc_seed,
        reports=[
            {
                "quantity": r.quantity,
                "value": r.value,
                "oracle_value": r.oracle_value,
                "discrepancy": r.discrepancy,
                "tolerance": r.tolerance,
                "passed": r.passed,
                "metadata": {k: _fmt(v) for k, v in r.metadata.items()},
            }
            for r in reports
        ],
    )
    _write_json(out_path / "validate.json", payload)
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        click.echo(f"{status} {r.quantity}: |{r.value:.6e} - {r.oracle_value:.6e}| = {r.discrepancy:.2e} <= {r.tolerance:.2e}")
    if not all(r.passed for r in reports):
        sys.exit(1)


@main.command()
@_config_opt
@click.option("--field", "field_name", required=True, help="CSV column to render.")
@click.option("--input", "input_csv", default=None, type=click.Path(), help="Sweep CSV (default <out>/sweep.csv).")
@_out_opt
def render(config_path, field_name, input_csv, out):
    """Render a heatmap SVG of one field from an existing sweep CSV."""
    cfg = _load(config_path)
    out_path = _out_dir(cfg, out)
    src = Path(input_csv) if input_csv else out_path / "sweep.csv"
    if not src.exists():
        click.echo(f"config error: sweep CSV not found at {src}", err=True)
        sys.exit(2)
    try:
        rows = csv_to_rows(src.read_text())
        svg = _render_rows(rows, field_name, cfg)
    except (ConfigError, DomainError) as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    (out_path / f"render_{field_name}.svg").write_text(svg)
    click.echo(f"wrote {out_path / f'render_{field_name}.svg'}")


def _render_rows(rows: list[dict], field_name: str, cfg: RunConfig) -> str:
    if field_name not in CSV_HEADER[2:]:
        raise DomainError(f"unknown field {field_name!r}; choose from {CSV_HEADER[2:]}")
    xs = sorted({row["dq_perp_um_inv"] for row in rows})
    ys = sorted({row["dk_ph_um_inv"] for row in rows})
    index = {(row["dq_perp_um_inv"], row["dk_ph_um_inv"]): row for row in rows}
    if len(index) != len(xs) * len(ys):
        raise DomainError("sweep CSV does not cover a full rectangular grid")

    def grid_of(key):
        return np.array([[_as_float(index[(x, y)][key]) for y in ys] for x in xs])

    d2 = grid_of("d2")
    purity = grid_of("purity_sc")
    contours = [
        ContourSpec(d2, cfg.epr_threshold, "#ffffff", f"d2 = {cfg.epr_threshold:g}"),
        ContourSpec(purity, cfg.purity_threshold, "#ff00ff", f"purity = {cfg.purity_threshold:.3g}"),
    ]
    if field_name == "regime":
        cats = [str(index[(x, y)]["regime"]) for x in xs for y in ys]
        return render_heatmap(xs, ys, np.zeros((len(xs), len(ys))), field_name, contours=contours, categories=cats)
    values = grid_of(field_name)
    return render_heatmap(xs, ys, values, field_name, contours=contours)


def _as_float(value) -> float:
    if isinstance(value, bool):
        return 1.0 if value else 0.0
    if isinstance(value, str):
        if value in ("true", "false", ""):
            return 1.0 if value == "true" else 0.0
        try:
            return float(value)
        except ValueError:
            return math.nan
    return float(value)


if __name__ == "__main__":
    main()
