"""Tests for straggler sampling and adversarial straggler selection."""

import itertools

import numpy as np
import pytest

from gradcoding.codes import CodeParams, gen_bgc, gen_frc
from gradcoding.decoders import decode_one_step, decode_optimal
from gradcoding.stragglers import (
    NonStragglerSample,
    StragglerModel,
    brute_force_adversary,
    frc_adversary,
    num_nonstragglers,
    permute_columns,
    sample_uniform,
)


def frc(k, s):
    return gen_frc(CodeParams(k=k, n=k, s=s))


# ---------- survivor counts ----------

def test_num_nonstragglers():
    assert num_nonstragglers(100, 0.3) == 70
    assert num_nonstragglers(100, 0.0) == 100
    assert num_nonstragglers(10, 0.99) == 1  # never below one survivor
    assert num_nonstragglers(100, 0.05) == 95
    with pytest.raises(ValueError):
        num_nonstragglers(10, 1.0)
    with pytest.raises(ValueError):
        num_nonstragglers(10, -0.1)


# ---------- uniform sampling ----------

def test_sample_uniform_full_set_is_identity():
    am = frc(6, 2)
    smp = sample_uniform(am, r=6, seed=0)
    assert np.array_equal(smp.columns, np.arange(6))
    assert np.array_equal(smp.a, am.g)


def test_sample_uniform_shape_and_sortedness():
    am = gen_bgc(CodeParams(k=9, n=7, s=3), seed=1)
    smp = sample_uniform(am, r=4, seed=5)
    assert smp.a.shape == (9, 4)
    assert (np.diff(smp.columns) > 0).all()
    assert np.array_equal(smp.a, am.g[:, smp.columns])


def test_sample_uniform_deterministic_per_seed():
    am = gen_bgc(CodeParams(k=8, n=8, s=2), seed=0)
    a = sample_uniform(am, r=3, seed=11)
    b = sample_uniform(am, r=3, seed=11)
    assert np.array_equal(a.columns, b.columns)


def test_sample_uniform_rejects_bad_r():
    am = frc(4, 2)
    for r in (0, 5, -1):
        with pytest.raises(ValueError):
            sample_uniform(am, r=r, seed=0)


def test_sample_uniform_marginal_inclusion():
    # every column appears with frequency r/n; check at 3 s.e.
    am = gen_bgc(CodeParams(k=5, n=10, s=2), seed=0)
    r, trials = 3, 4000
    counts = np.zeros(10)
    for t in range(trials):
        counts[sample_uniform(am, r=r, seed=t).columns] += 1
    freq = counts / trials
    p = r / 10
    se = np.sqrt(p * (1 - p) / trials)
    assert (np.abs(freq - p) <= 3 * se + 1e-12).all()


# ---------- block adversary ----------

def test_frc_adversary_small_case():
    smp = frc_adversary(frc(4, 2), r=2)
    assert decode_optimal(smp.a).err_sq == pytest.approx(2.0, abs=1e-9)


def test_frc_adversary_keeps_whole_groups():
    am = frc(12, 3)
    smp = frc_adversary(am, r=6)
    assert smp.a.shape == (12, 6)
    # exactly two groups survive, so optimal decoding loses the other six tasks
    assert decode_optimal(smp.a).err_sq == pytest.approx(6.0, abs=1e-9)
    covered = (smp.a.sum(axis=1) > 0).sum()
    assert covered == 6


def test_frc_adversary_full_set_is_harmless():
    smp = frc_adversary(frc(6, 2), r=6)
    assert decode_optimal(smp.a).err_sq == pytest.approx(0.0, abs=1e-9)


def test_frc_adversary_matches_exhaustive_maximum():
    am = frc(6, 2)
    model = StragglerModel(kind="brute_force", objective="optimal")
    _, worst = brute_force_adversary(am, model, r=4)
    smp = frc_adversary(am, r=4)
    assert decode_optimal(smp.a).err_sq == pytest.approx(worst, abs=1e-9)
    assert worst == pytest.approx(2.0, abs=1e-9)


def test_frc_adversary_survives_column_permutation():
    am = permute_columns(frc(8, 2), seed=3)
    smp = frc_adversary(am, r=4)
    assert decode_optimal(smp.a).err_sq == pytest.approx(4.0, abs=1e-9)


def test_frc_adversary_rejects_bad_inputs():
    with pytest.raises(ValueError):
        frc_adversary(frc(4, 2), r=3)  # group size must divide r
    bg = gen_bgc(CodeParams(k=6, n=6, s=2), seed=0)
    with pytest.raises(ValueError):
        frc_adversary(bg, r=2)  # no repeated-block structure


# ---------- exhaustive adversary ----------

def test_brute_force_optimal_small_case():
    am = frc(4, 2)
    model = StragglerModel(kind="brute_force", objective="optimal")
    smp, worst = brute_force_adversary(am, model, r=2)
    assert worst == pytest.approx(2.0, abs=1e-9)
    # ties resolve to the first subset in lexicographic order
    assert tuple(smp.columns) == (0, 1)


def test_brute_force_one_step_small_case():
    # with rho = 1 the duplicated block overshoots: residual (1,1,1,1) twice
    am = frc(4, 2)
    model = StragglerModel(kind="brute_force", objective="one-step", rho=1.0)
    smp, worst = brute_force_adversary(am, model, r=2)
    assert worst == pytest.approx(4.0, abs=1e-12)
    assert tuple(smp.columns) == (0, 1)


def test_brute_force_default_rho_is_load_balanced():
    am = frc(4, 2)
    model = StragglerModel(kind="brute_force", objective="one-step")
    smp, worst = brute_force_adversary(am, model, r=2)
    # rho defaults to k/(r*s) = 1; same answer as the explicit case
    assert worst == pytest.approx(4.0, abs=1e-12)


def test_brute_force_agrees_with_direct_enumeration():
    am = gen_bgc(CodeParams(k=6, n=6, s=2), seed=7)
    model = StragglerModel(kind="brute_force", objective="optimal")
    smp, worst = brute_force_adversary(am, model, r=3)
    best = -1.0
    best_cols = None
    for cols in itertools.combinations(range(6), 3):
        err = decode_optimal(am.g[:, cols]).err_sq
        if err > best:
            best, best_cols = err, cols
    assert worst == pytest.approx(best, abs=1e-12)
    assert tuple(smp.columns) == best_cols


def test_brute_force_is_at_least_any_uniform_sample():
    am = gen_bgc(CodeParams(k=7, n=7, s=3), seed=9)
    model = StragglerModel(kind="brute_force", objective="optimal")
    _, worst = brute_force_adversary(am, model, r=4)
    for seed in range(30):
        smp = sample_uniform(am, r=4, seed=seed)
        assert decode_optimal(smp.a).err_sq <= worst + 1e-9


def test_brute_force_enumeration_cap():
    am = gen_bgc(CodeParams(k=30, n=30, s=3), seed=0)
    model = StragglerModel(kind="brute_force", objective="optimal")
    with pytest.raises(ValueError):
        brute_force_adversary(am, model, r=15, enumeration_cap=1000)


def test_brute_force_rejects_nonpositive_rho():
    am = frc(4, 2)
    model = StragglerModel(kind="brute_force", objective="one-step", rho=0.0)
    with pytest.raises(ValueError):
        brute_force_adversary(am, model, r=2)


# ---------- permutation helper ----------

def test_permute_columns_is_a_permutation():
    am = gen_bgc(CodeParams(k=6, n=6, s=2), seed=1)
    stir = permute_columns(am, seed=2)
    assert stir.g.shape == am.g.shape
    assert sorted(map(tuple, stir.g.T.tolist())) == sorted(map(tuple, am.g.T.tolist()))
    assert np.array_equal(permute_columns(am, seed=2).g, stir.g)
