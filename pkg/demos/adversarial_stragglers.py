"""
Adversarial straggler selection
===============================

Random stragglers rarely hurt a replicated code, but an adversary who
picks the stragglers can wipe out whole replication groups. This script
compares the average case against the worst case, then checks the fast
group-dropping adversary against exhaustive search on a small instance.
"""

import numpy as np

from gradcoding import (
    CodeParams,
    StragglerModel,
    brute_force_adversary,
    decode_optimal,
    frc_adversary,
    generate,
    sample_uniform,
)

k = 24
s = 4
r = 16

am = generate("frc", CodeParams(k, k, s))

# average case: uniformly random survivor sets barely miss a group
errs = []
for t in range(400):
    sub = sample_uniform(am, r, seed=t)
    errs.append(decode_optimal(sub.a).err_sq)
print(f"random stragglers: mean err {np.mean(errs):.3f}, worst {max(errs):.1f}")

# worst case: keep whole groups only, losing k - r tasks outright
adv = frc_adversary(am, r)
print(f"adversarial pick: err {decode_optimal(adv.a).err_sq:.1f} (k - r = {k - r})")

# sanity check the shortcut against exhaustive search where that is cheap
small = generate("frc", CodeParams(8, 8, 2))
model = StragglerModel(kind="brute_force", objective="optimal")
_, brute_err = brute_force_adversary(small, model, r=4)
fast_err = decode_optimal(frc_adversary(small, 4).a).err_sq
print(f"k=8 exhaustive worst err {brute_err:.1f}, group-dropping err {fast_err:.1f}")

# a Bernoulli code has no groups to drop, so the exhaustive worst case
# sits far below losing k - r tasks
bgc = generate("bgc", CodeParams(8, 8, 2), seed=3)
_, bgc_worst = brute_force_adversary(bgc, model, r=4)
print(f"bernoulli k=8 worst err {bgc_worst:.2f} vs replication {fast_err:.1f}")
