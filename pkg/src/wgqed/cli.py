"""Command-line entry point: ``wgqed <subcommand> [options]``."""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .amplitudes import evaluate, normalize_model
from .oracle import solve_backward, solve_forward
from .params import InvalidParameterError, SingularPointError, SystemParams, validate
from .presets import PRESET_NAMES, preset
from .spectral import EPTolerances, InvalidSliceError, SweepSlice, find_eps, s_eigenvalues
from .sweep import ConfigError, Config, export, load_config, run_sweep, to_csv, to_json

# Ranges for oracle-check draws.
DRAW_RANGES = {
    "delta": (-5.0, 5.0),
    "gamma": (0.0, 2.0),
    "big_gamma": (0.0, 3.0),
    "lam": (-2.0, 2.0),
    "omega": (0.0, 2.0),
    "theta": (0.0, 2 * math.pi),
}

PARAM_FLAGS = {
    "delta1": "--delta1",
    "delta2": "--delta2",
    "delta3": "--delta3",
    "gamma1": "--gamma1",
    "gamma2": "--gamma2",
    "gamma3": "--gamma3",
    "big_gamma": "--big-gamma",
    "lam": "--lambda",
    "omega": "--omega",
    "theta": "--theta",
}


def random_params(rng: np.random.Generator) -> SystemParams:
    """One passive draw over :data:`DRAW_RANGES`, in a fixed order."""
    d = rng.uniform(*DRAW_RANGES["delta"], size=3)
    g = rng.uniform(*DRAW_RANGES["gamma"], size=3)
    return SystemParams(
        delta1=float(d[0]), delta2=float(d[1]), delta3=float(d[2]),
        gamma1=float(g[0]), gamma2=float(g[1]), gamma3=float(g[2]),
        big_gamma=float(rng.uniform(*DRAW_RANGES["big_gamma"])),
        lam=float(rng.uniform(*DRAW_RANGES["lam"])),
        omega=float(rng.uniform(*DRAW_RANGES["omega"])),
        theta=float(rng.uniform(*DRAW_RANGES["theta"])),
    )


def oracle_deviation(p: SystemParams) -> float:
    """Max amplitude mismatch between closed forms and the direct solve.

    Checks the driven closed form at ``p`` and the undriven one at
    ``p`` with ``omega = 0``.
    """
    worst = 0.0
    for model, q in (("three_level", p), ("two_level", p.replace(omega=0.0))):
        amps = evaluate(q, model)
        fwd, bwd = solve_forward(q), solve_backward(q)
        worst = max(worst, abs(fwd.t - amps.t), abs(bwd.t - amps.t),
                    abs(fwd.r - amps.r_f), abs(bwd.r - amps.r_b))
    return worst


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--out", help="output file (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tol-zero", type=float, default=None)
    parser.add_argument("--tol-nonzero", type=float, default=None)


def _param_flags(parser: argparse.ArgumentParser) -> None:
    for name, flag in PARAM_FLAGS.items():
        parser.add_argument(flag, dest=name, type=float, default=None)
    parser.add_argument("--model", default=None, help="three-level | two-level")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wgqed", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="evaluate one parameter point")
    _common(p)
    _param_flags(p)

    p = sub.add_parser("sweep", help="run a preset or config-defined grid")
    _common(p)
    p.add_argument("--preset", choices=PRESET_NAMES)
    p.add_argument("--variant")

    p = sub.add_parser("ep-find", help="search a 1D slice for exceptional points")
    _common(p)
    _param_flags(p)
    p.add_argument("--preset", choices=PRESET_NAMES)
    p.add_argument("--slice", dest="slice_name", help="named slice of the preset (default: all)")
    p.add_argument("--param", help="swept coordinate")
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--count", type=int, default=2001)

    p = sub.add_parser("oracle-check", help="compare closed forms with the direct solve")
    _common(p)
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--threshold", type=float, default=1e-10)

    p = sub.add_parser("preset-list", help="list built-in presets")
    _common(p)
    return parser


def _config(args) -> Config:
    return load_config(args.config) if args.config else Config()


def _with_flags(cfg: Config, args) -> tuple[SystemParams, str]:
    base = cfg.base.replace(**{k: getattr(args, k) for k in PARAM_FLAGS if getattr(args, k) is not None})
    model = normalize_model(args.model) if args.model else cfg.model
    return validate(base), model


def _tolerances(cfg: Config, args) -> EPTolerances:
    tol = dict(cfg.tolerances)
    if args.tol_zero is not None:
        tol["tol_zero"] = args.tol_zero
    if args.tol_nonzero is not None:
        tol["tol_nonzero"] = args.tol_nonzero
    return EPTolerances(**tol)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_point(args) -> int:
    base, model = _with_flags(_config(args), args)
    amps = evaluate(base, model)
    spectrum = s_eigenvalues(amps)
    if args.format == "json":
        payload = {
            "model": model,
            "params": base.as_dict(),
            "t": [amps.t.real, amps.t.imag],
            "r_f": [amps.r_f.real, amps.r_f.imag],
            "r_b": [amps.r_b.real, amps.r_b.imag],
            "T": amps.T, "R_f": amps.R_f, "R_b": amps.R_b, "A_f": amps.A_f, "A_b": amps.A_b,
            "s_plus": [spectrum.s_plus.real, spectrum.s_plus.imag],
            "s_minus": [spectrum.s_minus.real, spectrum.s_minus.imag],
            "gap": spectrum.gap,
        }
        _emit(json.dumps(payload, indent=1) + "\n", args.out)
        return 0
    lines = [f"model    {model}"]
    for name in ("t", "r_f", "r_b"):
        z = getattr(amps, name)
        lines.append(f"{name:<8} {z.real:+.12g} {z.imag:+.12g}j")
    for name in ("T", "R_f", "R_b", "A_f", "A_b"):
        lines.append(f"{name:<8} {getattr(amps, name):.12g}")
    lines.append(f"s_plus   {spectrum.s_plus.real:+.12g} {spectrum.s_plus.imag:+.12g}j")
    lines.append(f"s_minus  {spectrum.s_minus.real:+.12g} {spectrum.s_minus.imag:+.12g}j")
    lines.append(f"gap      {spectrum.gap:.12g}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_sweep(args) -> int:
    if args.preset:
        grid = preset(args.preset).grid_for(args.variant)
        if args.config:
            raise ConfigError("give either --preset or --config, not both")
    elif args.config:
        grid = _config(args).grid()
    else:
        raise ConfigError("sweep needs --preset or --config")
    result = run_sweep(grid, workers=args.threads)
    if args.out:
        export(result, args.out, args.format)
        flagged = sum(1 for r in result.rows if r.amps is None)
        print(f"wrote {len(result.rows)} rows ({flagged} singular) to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(to_csv(result) if args.format == "csv" else to_json(result))
    return 0


def _slices(args, cfg: Config) -> dict[str, SweepSlice]:
    if args.preset:
        slices = preset(args.preset).ep_slices
        if not slices:
            raise InvalidSliceError(f"preset {args.preset!r} defines no EP slices")
        if args.slice_name:
            if args.slice_name not in slices:
                raise InvalidSliceError(f"no slice {args.slice_name!r}; available: {sorted(slices)}")
            slices = {args.slice_name: slices[args.slice_name]}
        return slices
    base, model = _with_flags(cfg, args)
    bounds = dict(cfg.slice or {})
    for key in ("param", "start", "stop"):
        if getattr(args, key) is not None:
            bounds[key] = getattr(args, key)
    if "count" not in bounds or args.count != 2001:
        bounds["count"] = args.count
    missing = [k for k in ("param", "start", "stop") if k not in bounds]
    if missing:
        raise InvalidSliceError(f"slice needs {', '.join('--' + m for m in missing)}")
    sl = SweepSlice(base, bounds["param"], float(bounds["start"]), float(bounds["stop"]),
                    int(bounds["count"]), model, cfg.links)
    return {"slice": sl}


def cmd_ep_find(args) -> int:
    cfg = _config(args)
    tol = _tolerances(cfg, args)
    rows = []
    for name, sl in _slices(args, cfg).items():
        records = find_eps(sl, tol)
        if not records:
            print(f"{name}: no exceptional point on {sl.param} in [{sl.start:g}, {sl.stop:g}]")
        for rec in records:
            print(f"{name}: EP at {rec.slice_param}={rec.location:.10g} "
                  f"({rec.vanishing_side} reflection vanishes) "
                  f"|r_zero|={rec.r_zero_mod:.3e} |r_other|={rec.r_other_mod:.6g} gap={rec.gap:.3e}")
            rows.append({"slice": name, "param": rec.slice_param, "location": rec.location,
                         "vanishing_side": rec.vanishing_side, "r_zero_mod": rec.r_zero_mod,
                         "r_other_mod": rec.r_other_mod, "gap": rec.gap})
    if args.out:
        _emit(json.dumps(rows, indent=1) + "\n", args.out)
    return 0


def cmd_oracle_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    worst, worst_params, skipped = 0.0, None, 0
    for _ in range(args.n):
        p = random_params(rng)
        try:
            dev = oracle_deviation(p)
        except SingularPointError:
            skipped += 1
            continue
        if not dev <= worst:
            worst, worst_params = dev, p
    print(f"draws={args.n} seed={args.seed} skipped_singular={skipped} max_deviation={worst:.3e}")
    if not worst < args.threshold:
        print(f"deviation exceeds {args.threshold:g} at {worst_params}", file=sys.stderr)
        return 1
    return 0


def cmd_preset_list(args) -> int:
    for name in PRESET_NAMES:
        p = preset(name)
        extras = ", ".join(sorted(p.variants)) or "-"
        slices = ", ".join(sorted(p.ep_slices)) or "-"
        print(f"{name}  {p.description}")
        print(f"      model={p.grid.model} variants: {extras}; ep slices: {slices}")
        for item in p.inferred:
            print(f"      inferred: {item}")
    return 0


COMMANDS = {
    "point": cmd_point,
    "sweep": cmd_sweep,
    "ep-find": cmd_ep_find,
    "oracle-check": cmd_oracle_check,
    "preset-list": cmd_preset_list,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, InvalidParameterError, InvalidSliceError, SingularPointError,
            KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"wgqed {args.command}: error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
