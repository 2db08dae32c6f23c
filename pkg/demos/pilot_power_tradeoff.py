"""How pilot power shapes secure throughput.

When both receivers estimate their channels from the same pilots (Eve detects
with her imperfect estimate), raising the pilot power eventually helps the
eavesdropper more than the legitimate pair: throughput peaks at a finite pilot
power.  When Eve already knows her channel perfectly, pilots only help Bob and
more power never hurts.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from secure_onoff import (
    OutageConstraints,
    RatePair,
    Scenario,
    SystemConfig,
    optimize_pilot_power,
    solve_s1,
    solve_s2,
)

rates = RatePair(2.0, 1.0)
con = OutageConstraints(eps=0.05, delta=0.1)
alphas = np.geomspace(0.05, 200.0, 120)

fig, ax = plt.subplots(figsize=(7, 4.5))
for pb_db, color in ((10.0, "tab:blue"), (15.0, "tab:orange"), (20.0, "tab:green")):
    p_b = 10.0 ** (pb_db / 10.0)
    for solver, style, label in ((solve_s1, "-", "Eve estimates too"),
                                 (solve_s2, "--", "Eve knows her channel")):
        etas = []
        for a in alphas:
            sol = solver(SystemConfig(p_b=p_b, p_e=1.0, alpha=float(a)), rates, con)
            etas.append(sol.report.eta if sol.feasible else 0.0)
        ax.semilogx(alphas, etas, style, color=color,
                    label=f"Pb={pb_db:.0f} dB, {label}")

    a_star, eta_star = optimize_pilot_power(
        Scenario.S1, SystemConfig(p_b=p_b, p_e=1.0, alpha=1.0), con, rates=rates
    )
    ax.plot([a_star], [eta_star], "o", color=color)
    print(f"Pb = {pb_db:.0f} dB: best pilot power {a_star:.3f} "
          f"(throughput {eta_star:.4f}) when Eve estimates too")

ax.set_xlabel("normalized pilot power")
ax.set_ylabel("throughput [bits/channel use]")
ax.legend(fontsize=8)
ax.grid(alpha=0.3)
out = Path(__file__).with_suffix(".png")
fig.savefig(out, dpi=150, bbox_inches="tight")
print(f"saved {out}")
