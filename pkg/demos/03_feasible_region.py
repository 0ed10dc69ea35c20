"""
The feasible region and what lies outside it
============================================

Slice the closed-form region at a few values of d and compare membership
with the numeric scale-space checks. Points inside always pass. Some points
outside pass too, since the region is sufficient but not necessary.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import scalespace2x2 as ss

b = np.linspace(-0.5, 2.5, 61)
c = np.linspace(-1.5, 1.5, 61)

fig, axes = plt.subplots(1, 3, figsize=(12, 4), sharey=True)
for ax, d in zip(axes, (0.0, -0.25, -0.5)):
    inside = np.array([[ss.is_feasible(bb, cc, d) for bb in b] for cc in c])
    valid = np.array(
        [[ss.numeric_validate(ss.DesignParams(bb, cc, d), grid_size=64, l_max=40).passed for bb in b] for cc in c]
    )
    # 0 = fails, 1 = passes numerically only, 2 = inside the region
    ax.imshow(valid + inside, origin="lower", extent=(b[0], b[-1], c[0], c[-1]), cmap="Greys", vmin=0, vmax=2)
    ax.set_title(f"d = {d}")
    ax.set_xlabel("b")
    print(f"d = {d}: {inside.sum()} grid points inside, {valid.sum()} pass numerically, "
          f"{(inside & ~valid).sum()} inside but failing")
axes[0].set_ylabel("c")
fig.savefig("feasible_region.png", dpi=120)

###############################################################################
# A point that breaks only b + c <= 2 + 2d and still validates.

p = ss.DesignParams(1.315, 0.221, -0.413)
print(ss.theorem2_check(p).violations)
print("numeric checks pass:", ss.numeric_validate(p, l_max=300).passed)
