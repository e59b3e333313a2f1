"""Sampling from an awkward density with Metropolis-Hastings.

The density c*(1+|y|)^3*exp(-y^4) has no tractable CDF, so direct inversion
is out.  We (1) pin down the normalizing constant by quadrature, then
(2) draw from the density with a random-walk MH chain and check the draws
against the truth.

Run: python demos/mh_sampling_walkthrough.py
"""

import numpy as np

from statlab.mh import MhConfig, TargetDensity, density_distance, run_chain
from statlab.numerics import integrate_real_line

SEED = 20070420

# Step 1: the normalizing constant.  The density is even, so integrate the
# positive half line and double.
density = TargetDensity()
from statlab.mh import unnormalized  # noqa: E402

quad = integrate_real_line(unnormalized, tol=1e-10, even=True)
c = density.normalize()
print(f"integral of the unnormalized density: {quad.value:.6f} "
      f"(+-{quad.abs_error:.1e}, {quad.evaluations} evaluations)")
print(f"normalizing constant c = 1/{quad.value:.6f} = {c:.6f}\n")

# Step 2: run the chain with the standard configuration -- normal(x, 1)
# proposals, 100k burn-in, 100k kept samples, started at x=3.
chain = run_chain(MhConfig(), root_seed=SEED)
print(f"chain of {chain.config.n_samples} samples "
      f"after {chain.config.burn_in} burn-in steps")
print(f"acceptance rate: {chain.acceptance_rate:.3f}")

# Step 3: does the sample look like the target?
mean = chain.samples.mean()
var = chain.samples.var()
target_var = density.second_moment()
print(f"sample mean     {mean:+.4f}   (target 0, by symmetry)")
print(f"sample variance {var:.4f}   (target {target_var:.4f}, by quadrature)")
print(f"fraction positive: {(chain.samples > 0).mean():.4f} (target 0.5)")

distance = density_distance(chain.samples, density, bins=40, lo=-3, hi=3)
print(f"\nsup histogram-vs-truth gap on [-3, 3], 40 bins: {distance:.4f}")

# crude terminal histogram against the bin-averaged truth
counts, edges = np.histogram(chain.samples, bins=20, range=(-3, 3))
peak = counts.max()
print("\n      sample histogram")
for j, count in enumerate(counts):
    bar = "#" * int(40 * count / peak)
    print(f"{edges[j]:+5.2f} {bar}")
