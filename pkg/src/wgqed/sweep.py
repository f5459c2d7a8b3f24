"""Grid sweeps, JSON configuration and CSV/JSON export."""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .amplitudes import AmplitudeSet, evaluate, normalize_model
from .params import PARAM_NAMES, SingularPointError, SystemParams, validate
from .spectral import Link, SMatrixSpectrum, apply_links, s_eigenvalues

RESULT_COLUMNS = (
    "t_re", "t_im", "rf_re", "rf_im", "rb_re", "rb_im",
    "T", "R_f", "R_b", "A_f", "A_b",
    "s_plus_re", "s_plus_im", "s_minus_re", "s_minus_im", "gap",
)
COLUMNS = PARAM_NAMES + RESULT_COLUMNS + ("flag",)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Axis:
    param: str
    start: float
    stop: float
    count: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepGrid:
    axes: tuple[Axis, ...]
    base: SystemParams = SystemParams()
    model: str = "three_level"
    links: tuple[Link, ...] = ()
    label: str = "custom"
    inferred: tuple[str, ...] = ()

    def check(self) -> None:
        if not 1 <= len(self.axes) <= 2:
            raise ConfigError(f"a sweep needs 1 or 2 axes, got {len(self.axes)}")
        names = [ax.param for ax in self.axes]
        if len(set(names)) != len(names):
            raise ConfigError(f"duplicate axis in {names}")
        for ax in self.axes:
            if ax.param not in PARAM_NAMES:
                raise ConfigError(f"unknown axis parameter {ax.param!r}")
            if ax.count < 2:
                raise ConfigError(f"axis {ax.param!r} needs count >= 2")
            if not (math.isfinite(ax.start) and math.isfinite(ax.stop) and ax.start < ax.stop):
                raise ConfigError(f"axis {ax.param!r} needs finite start < stop")
        for link in self.links:
            if link.target not in PARAM_NAMES or link.source not in PARAM_NAMES:
                raise ConfigError(f"link {link} names an unknown parameter")
            if link.target in names:
                raise ConfigError(f"linked target {link.target!r} is also an axis")
        normalize_model(self.model)

    def points(self) -> list[SystemParams]:
        """Resolved parameters for every grid point, in row-major order."""
        grids = [ax.values() for ax in self.axes]
        base = self.base.as_dict()
        out = []
        for combo in itertools.product(*grids):
            values = dict(base)
            for ax, v in zip(self.axes, combo):
                values[ax.param] = float(v)
            out.append(SystemParams(**apply_links(values, self.links)))
        return out


@dataclass(frozen=True)
class Row:
    params: SystemParams
    amps: AmplitudeSet | None
    spectrum: SMatrixSpectrum | None

    @property
    def flag(self) -> str:
        return "ok" if self.amps is not None else "singular"

    def values(self) -> dict:
        out: dict = self.params.as_dict()
        a, s = self.amps, self.spectrum
        if a is None:
            out.update({k: None for k in RESULT_COLUMNS})
        else:
            out.update(
                t_re=a.t.real, t_im=a.t.imag, rf_re=a.r_f.real, rf_im=a.r_f.imag,
                rb_re=a.r_b.real, rb_im=a.r_b.imag,
                T=a.T, R_f=a.R_f, R_b=a.R_b, A_f=a.A_f, A_b=a.A_b,
                s_plus_re=s.s_plus.real, s_plus_im=s.s_plus.imag,
                s_minus_re=s.s_minus.real, s_minus_im=s.s_minus.imag, gap=s.gap,
            )
        out["flag"] = self.flag
        return out


@dataclass
class SweepResult:
    grid: SweepGrid
    rows: list[Row]
    metadata: dict = field(default_factory=dict)

    def table(self) -> list[dict]:
        return [r.values() for r in self.rows]


def _evaluate_point(params: SystemParams, model: str) -> Row:
    try:
        amps = evaluate(params, model)
    except SingularPointError:
        return Row(params, None, None)
    return Row(params, amps, s_eigenvalues(amps))


def run_sweep(grid: SweepGrid, workers: int = 1) -> SweepResult:
    """Evaluate ``grid.model`` at every grid point.

    Rows come back in lexicographic axis order whatever ``workers`` is;
    singular points become rows flagged ``"singular"``.
    """
    grid.check()
    validate(grid.base)
    model = normalize_model(grid.model)
    points = grid.points()
    if workers <= 1 or len(points) < 2:
        rows = [_evaluate_point(p, model) for p in points]
    else:
        n_chunks = min(len(points), 4 * workers)
        bounds = np.linspace(0, len(points), n_chunks + 1).astype(int)
        chunks = [points[lo:hi] for lo, hi in zip(bounds[:-1], bounds[1:])]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(lambda chunk: [_evaluate_point(p, model) for p in chunk], chunks)
            rows = [row for part in parts for row in part]
    metadata = {
        "preset": grid.label,
        "model": model,
        "axes": [asdict(ax) for ax in grid.axes],
        "links": [asdict(link) for link in grid.links],
        "inferred": list(grid.inferred),
        "version": __version__,
    }
    return SweepResult(grid, rows, metadata)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return f"{value:.17g}"


def to_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in result.table():
        writer.writerow([_fmt(row[c]) for c in COLUMNS])
    return buf.getvalue()


def to_json(result: SweepResult) -> str:
    return json.dumps({"metadata": result.metadata, "rows": result.table()}, indent=1) + "\n"


def export(result: SweepResult, path, fmt: str = "csv") -> Path:
    path = Path(path)
    if fmt == "csv":
        text = to_csv(result)
    elif fmt == "json":
        text = to_json(result)
    else:
        raise ValueError(f"unknown export format {fmt!r}; use 'csv' or 'json'")
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write sweep output to {path}: {exc}") from exc
    return path


def read_csv(path) -> list[dict]:
    """Parse an exported CSV back into rows of floats (``None`` for blanks)."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    out = []
    for row in rows:
        out.append({
            k: (v if k == "flag" else (float(v) if v != "" else None))
            for k, v in row.items()
        })
    return out


# -- configuration ---------------------------------------------------------

CONFIG_KEYS = {"preset", "variant", "model", "base", "axes", "links", "tolerances", "slice"}
TOLERANCE_KEYS = {"tol_zero", "tol_nonzero", "bracket"}


def _reject_unknown(section: str, got, allowed) -> None:
    extra = set(got) - set(allowed)
    if extra:
        raise ConfigError(f"unknown key(s) in {section}: {sorted(extra)}")


def _parse_base(raw: dict, start: SystemParams) -> SystemParams:
    if not isinstance(raw, dict):
        raise ConfigError("'base' must be an object")
    _reject_unknown("base", raw, PARAM_NAMES)
    try:
        return start.replace(**{k: float(v) for k, v in raw.items()})
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value in base: {exc}") from exc


def _parse_axes(raw) -> tuple[Axis, ...]:
    axes = []
    for item in raw:
        _reject_unknown("axis", item, {"param", "start", "stop", "count"})
        try:
            axes.append(Axis(item["param"], float(item["start"]), float(item["stop"]), int(item["count"])))
        except KeyError as exc:
            raise ConfigError(f"axis missing key {exc}") from exc
    return tuple(axes)


def _parse_links(raw) -> tuple[Link, ...]:
    links = []
    for item in raw:
        _reject_unknown("link", item, {"target", "source", "offset"})
        try:
            links.append(Link(item["target"], item["source"], float(item.get("offset", 0.0))))
        except KeyError as exc:
            raise ConfigError(f"link missing key {exc}") from exc
    return tuple(links)


@dataclass
class Config:
    base: SystemParams = SystemParams()
    model: str = "three_level"
    axes: tuple[Axis, ...] = ()
    links: tuple[Link, ...] = ()
    label: str = "custom"
    inferred: tuple[str, ...] = ()
    tolerances: dict = field(default_factory=dict)
    slice: dict | None = None

    def grid(self) -> SweepGrid:
        if not self.axes:
            raise ConfigError("config defines no sweep axes")
        grid = SweepGrid(self.axes, self.base, self.model, self.links, self.label, self.inferred)
        grid.check()
        return grid


def parse_config(raw: dict) -> Config:
    """Build a configuration from a decoded JSON object.

    A ``preset`` key (with optional ``variant``) seeds every field from a
    built-in preset; ``base`` entries then override single parameters and
    ``axes``, ``links`` and ``model`` replace the preset's wholesale.
    """
    from .presets import preset as get_preset

    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    _reject_unknown("config", raw, CONFIG_KEYS)
    cfg = Config()
    if "preset" in raw:
        g = get_preset(raw["preset"]).grid_for(raw.get("variant"))
        cfg = Config(g.base, g.model, g.axes, g.links, g.label, g.inferred)
    elif "variant" in raw:
        raise ConfigError("'variant' requires 'preset'")
    if "base" in raw:
        cfg.base = _parse_base(raw["base"], cfg.base)
    if "axes" in raw:
        cfg.axes = _parse_axes(raw["axes"])
    if "links" in raw:
        cfg.links = _parse_links(raw["links"])
    if "model" in raw:
        try:
            cfg.model = normalize_model(raw["model"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    tolerances = raw.get("tolerances", {})
    _reject_unknown("tolerances", tolerances, TOLERANCE_KEYS)
    cfg.tolerances = {k: float(v) for k, v in tolerances.items()}
    if "slice" in raw:
        _reject_unknown("slice", raw["slice"], {"param", "start", "stop", "count"})
        cfg.slice = dict(raw["slice"])
    return cfg


def load_config(path) -> Config:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return parse_config(raw)
