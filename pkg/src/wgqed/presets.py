"""Built-in parameter sets for the reference scans.

Values that the reference scans leave open are listed in each preset's
``inferred`` tuple and echoed into export metadata.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .params import SystemParams
from .spectral import Link, SweepSlice
from .sweep import Axis, SweepGrid

PI = math.pi


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    grid: SweepGrid
    variants: dict[str, SweepGrid] = field(default_factory=dict)
    ep_slices: dict[str, SweepSlice] = field(default_factory=dict)

    @property
    def inferred(self) -> tuple[str, ...]:
        return self.grid.inferred

    def grid_for(self, variant: str | None = None) -> SweepGrid:
        if variant is None:
            return self.grid
        try:
            return self.variants[variant]
        except KeyError:
            raise KeyError(
                f"preset {self.name!r} has no variant {variant!r}; "
                f"available: {sorted(self.variants)}"
            ) from None


# Driven three-level presets share the same emitter: |3> is assumed to sit
# one unit below |2> and to decay like |2>.
_FIG2_BASE = SystemParams(
    theta=0.1 * PI, omega=0.1, big_gamma=1.2, gamma1=0.27, gamma2=0.001, gamma3=0.001,
)
_FIG2_LINKS = (Link("delta2", "delta1", 0.0), Link("delta3", "delta1", 1.0))
_FIG2_INFERRED = (
    "gamma3=0.001 (taken equal to gamma2)",
    "delta2=delta1 (cavity and emitter degenerate)",
    "delta3=delta1+1 (places the |2>-|3> feature at delta1=-1)",
)


def _fig2() -> Preset:
    grid = SweepGrid(
        (Axis("lam", 0.0, 1.0, 101), Axis("delta1", -3.0, 1.0, 401)),
        _FIG2_BASE, "three_level", _FIG2_LINKS, "fig2", _FIG2_INFERRED,
    )
    at_lam = _FIG2_BASE.replace(lam=0.2)
    ef = SweepGrid((Axis("delta1", -1.5, -0.5, 1001),), at_lam, "three_level",
                   _FIG2_LINKS, "fig2:ef", _FIG2_INFERRED)
    sl = SweepSlice(at_lam, "delta1", -1.5, -0.5, 2001, "three_level", _FIG2_LINKS)
    return Preset("fig2", "driven emitter: reflection vs coupling and cavity detuning",
                  grid, {"ef": ef}, {"lam0.2": sl})


def _fig3() -> Preset:
    inferred = _FIG2_INFERRED + ("omega axis 0..1", "theta axis 0..2pi")
    grid = SweepGrid(
        (Axis("omega", 0.0, 1.0, 101), Axis("delta1", -3.0, 1.0, 401)),
        _FIG2_BASE.replace(lam=0.2), "three_level", _FIG2_LINKS, "fig3", inferred + ("lam=0.2",),
    )
    eh = SweepGrid(
        (Axis("theta", 0.0, 2 * PI, 181), Axis("delta1", -3.0, 1.0, 401)),
        _FIG2_BASE.replace(lam=0.2, omega=0.3), "three_level", _FIG2_LINKS, "fig3:eh",
        inferred + ("lam=0.2",),
    )
    return Preset("fig3", "driven emitter: Rabi frequency and phase dependence", grid, {"eh": eh})


_FIG4_BASE = SystemParams(big_gamma=0.5, gamma1=1.0, gamma2=0.01)
_DEGENERATE = (Link("delta2", "delta1", 0.0),)


def _fig4() -> Preset:
    inferred = ("delta=0 for the theta scans",)
    # lam axis with two points realises the lam=0 and lam=1 panels
    grid = SweepGrid((Axis("lam", 0.0, 1.0, 2), Axis("theta", 0.0, 2 * PI, 361)),
                     _FIG4_BASE, "two_level", (), "fig4", inferred)
    ab = SweepGrid((Axis("lam", 0.0, 1.5, 151), Axis("delta1", -3.0, 3.0, 301)),
                   _FIG4_BASE.replace(theta=1.5 * PI), "two_level", _DEGENERATE, "fig4:ab", ())
    slices = {
        f"lam{lam:g}": SweepSlice(_FIG4_BASE.replace(lam=lam), "theta", 0.1 * PI, 0.2 * PI, 2001)
        for lam in (0.0, 1.0)
    }
    return Preset("fig4", "degenerate two-level: reflection vs phase for lam=0 and 1",
                  grid, {"ab": ab}, slices)


def _fig5() -> Preset:
    inferred = (
        "gamma1=1, gamma2=0.01, big_gamma=0.5 (two-level parameters of fig4)",
        "theta axis 0..4pi",
    )
    grid = SweepGrid((Axis("theta", 0.0, 4 * PI, 361), Axis("delta1", -3.0, 3.0, 301)),
                     _FIG4_BASE, "two_level", _DEGENERATE, "fig5", inferred)
    lam1 = replace(grid, base=_FIG4_BASE.replace(lam=1.0), label="fig5:lam1")
    return Preset("fig5", "degenerate two-level: phase and detuning maps", grid, {"lam1": lam1})


_FIG6_BASE = SystemParams(big_gamma=1.7, gamma1=0.32, gamma2=0.01, theta=0.1 * PI)


def _fig6() -> Preset:
    grid = SweepGrid((Axis("lam", 0.0, 1.5, 151), Axis("delta2", -3.0, 3.0, 301)),
                     _FIG6_BASE, "two_level", (), "fig6", ())
    b09 = replace(grid, base=_FIG6_BASE.replace(theta=0.9 * PI), label="fig6:theta0.9pi")
    slices = {
        "theta0.1pi": SweepSlice(_FIG6_BASE.replace(lam=0.5), "delta2", -3.0, 3.0, 2001),
        "theta0.9pi": SweepSlice(_FIG6_BASE.replace(lam=0.5, theta=0.9 * PI), "delta2", -1.0, 3.0, 2001),
    }
    return Preset("fig6", "detuned two-level: reflection vs coupling and emitter detuning",
                  grid, {"theta0.9pi": b09}, slices)


def _fig7() -> Preset:
    base = SystemParams(big_gamma=1.8, gamma1=1.0, gamma2=0.01, lam=0.5)
    inferred = ("lam=0.5", "delta1=0", "theta axis 0..2pi", "big_gamma axis 0..3")
    grid = SweepGrid((Axis("theta", 0.0, 2 * PI, 181), Axis("delta2", -3.0, 3.0, 301)),
                     base, "two_level", (), "fig7", inferred)
    eh = SweepGrid((Axis("big_gamma", 0.0, 3.0, 151), Axis("delta2", -3.0, 3.0, 301)),
                   base.replace(theta=0.1 * PI), "two_level", (), "fig7:eh", inferred)
    return Preset("fig7", "detuned two-level: phase and decay-rate maps", grid, {"eh": eh})


_BUILDERS = {
    "fig2": _fig2,
    "fig3": _fig3,
    "fig4": _fig4,
    "fig5": _fig5,
    "fig6": _fig6,
    "fig7": _fig7,
}

PRESET_NAMES = tuple(_BUILDERS)


def preset(name: str) -> Preset:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}") from None
