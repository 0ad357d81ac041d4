"""
Trajectories and the Brownian limit
===================================

Seen as a process in rescaled time t in [0,1], the normalized gap sum
W(t) = (Q(floor(mt)) - Mmt)/(sigma sqrt(m)) converges to standard Brownian
motion.  Two fingerprints of that limit are checked on a simulated ensemble:
W(t) has variance close to t, and a single path shows the familiar rough
wandering around zero.
"""

import math
from pathlib import Path

import numpy as np

import wordperim as wp
from wordperim import svgplot

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

m = 500
config = wp.SimulationConfig(
    model=wp.Model.uniform(6), m=m, trajectories=20000, seed=9, record_full_paths=True
)
ensemble = wp.simulate(config)

# marginal variances: Var W(t) ~ t
print("marginal variance of W(t):")
for t in (0.25, 0.5, 0.75, 1.0):
    j = int(m * t)
    w = (ensemble.paths[:, j] - float(ensemble.mean_gap) * m * t) / (
        ensemble.sigma * math.sqrt(m)
    )
    print(f"  t = {t:4.2f}: var = {w.var():.4f}  (limit {t})")

# one raw trajectory with its drift line, and the same path normalized
row = ensemble.paths[0]
traj_svg = OUT / "trajectory.svg"
traj_svg.write_text(svgplot.plot_trajectory(row, float(ensemble.mean_gap)))

grid = np.linspace(0.0, 1.0, m + 1)
w = wp.normalized_path(ensemble, 0, grid)
norm_svg = OUT / "normalized_path.svg"
norm_svg.write_text(svgplot.plot_normalized_path(grid, w))
print(f"\nwrote {traj_svg} and {norm_svg}")

# endpoint consistency: W(1) is exactly the stored normalized endpoint
assert abs(w[-1] - ensemble.z[0]) < 1e-12
assert w[0] == 0.0
