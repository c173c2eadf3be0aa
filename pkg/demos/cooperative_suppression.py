#!/usr/bin/env python3
"""Interference between the two coupling channels suppresses entanglement.

With the coherent coupling fixed at its sweet spot, turning on a small
dissipative admixture only degrades the stationary entanglement: E_N falls
monotonically with the coupling ratio, at 0.4 K and at 4 K alike.
"""

import numpy as np

from optomech import Scenario, SweepAxis, SweepSpec, PhysicalParams, TWO_PI, sweep

params = PhysicalParams(
    omega_d=TWO_PI * 281.96e12, omega_m=TWO_PI * 136e3,
    gamma_m=TWO_PI * 0.23, kappa_a=TWO_PI * 1.5e6,
    mass=80e-12, length_L=8.7e-2,
    g_omega=0.0, g_kappa=0.0, power=50e-3, temperature=0.4)


def ratio_scan(temperature):
    spec = SweepSpec(
        scenario=Scenario.COOPERATIVE,
        axes=(SweepAxis("g_ratio", 0.0, 0.2, 81),),
        mode="effective-detuning",
        fixed={"delta_s_over_omega_m": 2.2, "g_omega": 3.0,
               "temperature": temperature})
    result = sweep(params, spec)
    ratios = result.axis_values[0]
    e_ns = np.array([p.e_n if p.e_n is not None else np.nan
                     for p in result.points])
    return ratios, e_ns


print("scanning the dissipative/coherent coupling ratio at delta_s = 2.2 w_m")
curves = {}
for temp in (0.4, 4.0):
    ratios, e_ns = ratio_scan(temp)
    curves[temp] = (ratios, e_ns)
    drop = 100 * (1 - e_ns[-1] / e_ns[0])
    print(f"  T = {temp} K: E_N falls {e_ns[0]:.4f} -> {e_ns[-1]:.4f} "
          f"({drop:.0f}% suppression) over ratio 0 -> 0.2, "
          f"monotone: {bool(np.all(np.diff(e_ns) <= 1e-12))}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.5, 4))
    for (temp, (ratios, e_ns)), style in zip(curves.items(), ("r-", "b--")):
        ax.plot(ratios, e_ns, style, label=f"T = {temp} K")
    ax.set_xlabel("coupling ratio g_kappa / g_omega")
    ax.set_ylabel("logarithmic negativity")
    ax.legend()
    fig.tight_layout()
    fig.savefig("cooperative_suppression.png", dpi=150)
    print("wrote cooperative_suppression.png")
except ImportError:
    print("matplotlib not available; skipped the plot")
