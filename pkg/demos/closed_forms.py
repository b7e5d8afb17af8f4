"""
Closed forms against simulation
===============================

The replicated code admits pencil-and-paper answers: an exact mean for
optimal decoding, a large-k asymptote for one-step decoding, a tail
bound, and a replication threshold past which errors vanish. Each is
printed next to a quick Monte Carlo estimate of the same quantity.
"""

import numpy as np

from gradcoding import (
    CodeParams,
    decode_one_step,
    decode_optimal,
    default_rho,
    frc_expected_one_step,
    frc_expected_optimal,
    frc_tail_bound,
    frc_threshold_s,
    generate,
    num_nonstragglers,
    sample_uniform,
)

k, s, delta = 60, 6, 0.3
r = num_nonstragglers(k, delta)
am = generate("frc", CodeParams(k, k, s))
rho = default_rho(k, r, s)

one_step = []
optimal = []
zero_err = 0
for t in range(3000):
    sub = sample_uniform(am, r, seed=t)
    one_step.append(decode_one_step(sub.a, rho).err_sq)
    err = decode_optimal(sub.a).err_sq
    optimal.append(err)
    zero_err += err < 1e-9

# the optimal-decoding mean is exact at any size
print(f"optimal mean: simulated {np.mean(optimal):.4f}, "
      f"closed form {frc_expected_optimal(k, s, r):.4f}")

# the one-step formula is only the k -> infinity limit, so the simulated
# mean sits visibly above it at k=60
print(f"one-step mean: simulated {np.mean(one_step):.4f}, "
      f"asymptote {frc_expected_one_step(k, s, delta):.4f}")

# frc_tail_bound lower-bounds P(err <= alpha*s); its complement caps the
# failure rate, and the union bound behind it is tight when misses are rare
cap = 1 - frc_tail_bound(k, s, r, alpha=0)
print(f"s={s}: P(err > 0) simulated {1 - zero_err / 3000:.4f}, cap {cap:.4f}")
print(f"threshold load: {frc_threshold_s(k, delta, alpha=1):.2f}")

# raise the load past the threshold and failures all but disappear
heavy = generate("frc", CodeParams(k, k, 10))
heavy_fail = 0
for t in range(3000):
    sub = sample_uniform(heavy, r, seed=t)
    heavy_fail += decode_optimal(sub.a).err_sq > 1e-9
print(f"s=10: P(err > 0) simulated {heavy_fail / 3000:.4f}, "
      f"cap {1 - frc_tail_bound(k, 10, r, alpha=0):.2e}")
