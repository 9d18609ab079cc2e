"""What the relative participation ratio does and does not react to.

delta compares mean eigenvector participation between a correlation matrix
and a null that keeps every correlation value but scrambles their
arrangement. So delta is a score for *patterned* structure:

  * pure noise            -> nothing to destroy     -> delta ~ 0
  * equicorrelated        -> shuffle changes nothing -> delta = 0 exactly
  * homogeneous 1-factor  -> values all ~gamma       -> delta ~ 0
  * heterogeneous sectors -> pattern destroyed       -> delta large
"""

import numpy as np

from comovement import (
    CorrelationMatrix,
    FactorSpec,
    correlate,
    generate_blocks,
    generate_one_factor,
    relative_participation_ratio,
)

N, T, M = 40, 3000, 100

equi = np.full((N, N), 0.4)
np.fill_diagonal(equi, 1.0)

cases = {
    "iid noise": correlate(generate_one_factor(FactorSpec(n=N, t=T, gamma=0.0, seed=1))),
    "equicorrelated 0.4": CorrelationMatrix([f"A{i:03d}" for i in range(N)], equi),
    "one-factor gamma=0.5": correlate(
        generate_one_factor(FactorSpec(n=N, t=T, gamma=0.5, seed=1))
    ),
    "two sectors 0.9/0.5": correlate(
        generate_blocks(FactorSpec(n=N, t=T, seed=1, blocks=[(20, 0.9), (20, 0.5)]))
    ),
    "four sectors 0.9..0.3": correlate(
        generate_blocks(
            FactorSpec(n=N, t=T, seed=1, blocks=[(10, 0.9), (10, 0.7), (10, 0.5), (10, 0.3)])
        )
    ),
}

print(f"relative participation ratio, N={N}, T={T}, ensemble M={M}\n")
print(f"{'structure':26s} {'delta':>9s} {'std':>7s}")
for name, C in cases.items():
    delta, std = relative_participation_ratio(C, M, seed=2024)
    print(f"{name:26s} {delta:+9.4f} {std:7.4f}")

print(
    "\nOnly the sector matrices score high: their correlation values are"
    "\nheterogeneous AND arranged in a pattern, which the shuffle destroys."
)
