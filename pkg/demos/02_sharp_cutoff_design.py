"""
Designing a sharp cut-off
=========================

Search the feasible (b, c, d) region for the filter whose response drops
the most between pi/16 and pi/4 after 100 steps.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import scalespace2x2 as ss

result = ss.optimize(l=100, theta_lo=np.pi / 16, theta_hi=np.pi / 4)
p = result.params
print(f"best: b={p.b:.4f} c={p.c:.4f} d={p.d:.4f}  fall-off {result.objective:.4f}")
print("tight constraints:", result.active_constraints)
print(f"{len(result.trace)} evaluations, {result.rejected} rejected as infeasible")

###############################################################################
# The optimum sits on c = 1 + 2d. Restricting to d = 0 gives the best
# Gaussian for comparison.

gauss = ss.optimize(l=100, theta_lo=np.pi / 16, theta_hi=np.pi / 4, fix_d=0.0)
print(f"best Gaussian fall-off {gauss.objective:.4f}")

###############################################################################
# Both responses, with the design band shaded.

theta = np.linspace(0, np.pi, 512)
fig, ax = plt.subplots(figsize=(6, 4))
ax.axvspan(np.pi / 16, np.pi / 4, color="0.9")
ax.plot(theta, ss.equivalent_response(p, theta, 100), label="matrix filter")
ax.plot(theta, ss.equivalent_response(gauss.params, theta, 100), label="Gaussian")
ax.set_xlabel("theta")
ax.set_ylabel("F^100(theta)")
ax.legend()
fig.savefig("sharp_cutoff.png", dpi=120)

###############################################################################
# The multiplier-free realization uses cross taps [1, 0, -1] and [d, 0, -d]
# and produces the same symbols.

report = ss.verify_realization(ss.realize_multiplier_free_cross(p), p)
print("multiplier-free realization verified:", report.passed)
