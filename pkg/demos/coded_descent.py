"""
Gradient descent with coded workers
===================================

A synthetic least squares problem is split into 20 tasks. Every round,
30 percent of the workers straggle, the survivors' sums are decoded
into a gradient estimate, and the model steps anyway. With a replicated
code and optimal decoding the loss tracks plain gradient descent.
"""

from gradcoding import (
    CodeParams,
    DecoderConfig,
    generate,
    make_quadratic_problem,
    run_gd_demo,
    run_gd_exact,
    spectral_norm,
)

problem = make_quadratic_problem(tasks=20, dim=8, rows_per_task=5, noise=0.0, seed=3)
lr = 1.0 / (2.0 * spectral_norm(problem.x).sigma_max_sq)
rounds = 120

exact = run_gd_exact(problem, lr, rounds)

am = generate("frc", CodeParams(20, 20, 4))
coded = run_gd_demo(
    problem, am, delta=0.3, decoder=DecoderConfig(kind="optimal"),
    lr=lr, rounds=rounds, seed=9,
)

print("round   plain loss    coded loss    gradient gap")
for t in (0, 10, 30, 60, 120):
    print(f"{t:>5d}   {exact.losses[t]:.4e}   {coded.losses[t]:.4e}"
          f"   {coded.grad_dev_sq[t - 1] if t else 0.0:.2e}")

print("diverged:", coded.diverged)
print("final gap to plain descent:", abs(coded.losses[-1] - exact.losses[-1]))
