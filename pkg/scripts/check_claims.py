"""Feature checks on the preset scans.

Prints the resonant one-way reflection values, EP searches on every
preset slice, and the smallest one-sided reflection met on each slice so
that a missing EP can be told apart from a near miss.
"""

import math

import numpy as np

from wgqed import EPTolerances, SystemParams, eval_two_level, find_eps
from wgqed.presets import PRESET_NAMES, preset

PI = math.pi


def resonant_reflection():
    base = SystemParams(big_gamma=0.5, gamma1=1.0, gamma2=0.01)
    print("resonant one-way reflection (gamma1=1, gamma2=0.01, Gamma=0.5)")
    for lam in (0.0, 1.0):
        for theta in (PI / 2, 3 * PI / 2):
            a = eval_two_level(base.replace(lam=lam, theta=theta))
            print(f"  lam={lam:g} theta={theta / PI:.1f}pi  R_f={a.R_f:.4e}  R_b={a.R_b:.4e}")


def ep_searches():
    tol = EPTolerances()
    print("\nexceptional-point searches")
    for name in PRESET_NAMES:
        for label, sl in preset(name).ep_slices.items():
            eps = find_eps(sl, tol)
            xs, r_f, r_b = sl.scan()
            m = np.minimum(np.abs(r_f), np.abs(r_b))
            i = int(np.argmin(m))
            print(f"  {name}/{label}: {sl.param} in [{sl.start:.4g}, {sl.stop:.4g}]")
            print(f"    closest approach min(|r_f|,|r_b|)={m[i]:.3e} at {sl.param}={xs[i]:+.4f}")
            for e in eps:
                print(f"    EP at {e.location:+.6f}, {e.vanishing_side} side, "
                      f"|r_zero|={e.r_zero_mod:.2e} |r_other|={e.r_other_mod:.3f} gap={e.gap:.2e}")
            if not eps:
                print("    no EP within tolerances")


if __name__ == "__main__":
    resonant_reflection()
    ep_searches()
