"""Tests for the assignment matrix generators and their serialization."""

import numpy as np
import pytest

from gradcoding.codes import (
    CodeParams,
    gen_bgc,
    gen_frc,
    gen_rbgc,
    gen_sregular,
    parse_text,
    to_text,
    validate,
)


# ---------- frc ----------

def test_frc_k4_s2_exact():
    am = gen_frc(CodeParams(k=4, n=4, s=2))
    want = np.array([
        [1, 1, 0, 0],
        [1, 1, 0, 0],
        [0, 0, 1, 1],
        [0, 0, 1, 1],
    ])
    assert np.array_equal(am.g, want)
    assert am.scheme == "frc"
    assert am.seed is None
    validate(am)


def test_frc_degenerate_single_block():
    am = gen_frc(CodeParams(k=3, n=3, s=3))
    assert np.array_equal(am.g, np.ones((3, 3), dtype=int))
    validate(am)


def test_frc_block_structure():
    am = gen_frc(CodeParams(k=6, n=6, s=2))
    g = am.g
    assert g.shape == (6, 6)
    assert (g.sum(axis=0) == 2).all()
    assert (g.sum(axis=1) == 2).all()
    # columns 2j and 2j+1 are identical, blocks do not overlap
    for b in range(3):
        assert np.array_equal(g[:, 2 * b], g[:, 2 * b + 1])
        assert g[2 * b : 2 * b + 2, 2 * b : 2 * b + 2].sum() == 4
    validate(am)


def test_frc_rejects_bad_params():
    with pytest.raises(ValueError):
        gen_frc(CodeParams(k=6, n=6, s=4))  # s does not divide k
    with pytest.raises(ValueError):
        gen_frc(CodeParams(k=6, n=8, s=2))  # needs one worker per task


# ---------- bgc ----------

def test_bgc_full_density_is_all_ones():
    am = gen_bgc(CodeParams(k=5, n=5, s=5), seed=0)
    assert np.array_equal(am.g, np.ones((5, 5), dtype=int))


def test_bgc_deterministic_per_seed():
    p = CodeParams(k=30, n=20, s=4)
    a = gen_bgc(p, seed=123)
    b = gen_bgc(p, seed=123)
    c = gen_bgc(p, seed=124)
    assert np.array_equal(a.g, b.g)
    assert not np.array_equal(a.g, c.g)
    assert a.seed == 123
    validate(a)


def test_bgc_column_weight_mean():
    # column weights are Binomial(k, s/k); check the empirical mean at 3 s.e.
    k, n, s, draws = 50, 50, 5, 5000
    p = CodeParams(k=k, n=n, s=s)
    sums = np.concatenate([gen_bgc(p, seed=i).g.sum(axis=0) for i in range(draws)])
    se = sums.std(ddof=1) / np.sqrt(sums.size)
    assert abs(sums.mean() - s) <= 3 * se


def test_bgc_shape_is_k_by_n():
    am = gen_bgc(CodeParams(k=8, n=5, s=2), seed=1)
    assert am.g.shape == (8, 5)


# ---------- rbgc ----------

def _first_seed_with_overloaded_column(p, limit=200):
    for seed in range(limit):
        base = gen_bgc(p, seed=seed)
        if (base.g.sum(axis=0) > 2 * p.s).any():
            return seed
    raise AssertionError("no overloaded column found; widen the search")


def test_rbgc_matches_bgc_on_calm_columns_and_prunes_offenders():
    p = CodeParams(k=30, n=30, s=2)
    seed = _first_seed_with_overloaded_column(p)
    base = gen_bgc(p, seed=seed)
    reg = gen_rbgc(p, seed=seed)
    base_deg = base.g.sum(axis=0)
    reg_deg = reg.g.sum(axis=0)
    hit = base_deg > 2 * p.s
    assert hit.any()
    # untouched columns are bitwise equal to the plain draw
    assert np.array_equal(reg.g[:, ~hit], base.g[:, ~hit])
    # offenders come back with exactly s entries, all from the original support
    assert (reg_deg[hit] == p.s).all()
    assert ((base.g - reg.g) >= 0).all()
    validate(reg)


def test_rbgc_max_degree_capped():
    p = CodeParams(k=50, n=50, s=3)
    for seed in range(300):
        am = gen_rbgc(p, seed=seed)
        assert am.g.sum(axis=0).max() <= 2 * p.s


def test_rbgc_deterministic_per_seed():
    p = CodeParams(k=40, n=40, s=2)
    assert np.array_equal(gen_rbgc(p, seed=9).g, gen_rbgc(p, seed=9).g)


# ---------- sregular ----------

def test_sregular_k4_s3_is_complete_graph():
    am = gen_sregular(CodeParams(k=4, n=4, s=3), seed=0)
    want = np.ones((4, 4), dtype=int) - np.eye(4, dtype=int)
    assert np.array_equal(am.g, want)
    validate(am)


def test_sregular_structure():
    for seed in range(30):
        am = gen_sregular(CodeParams(k=10, n=10, s=4), seed=seed)
        g = am.g
        assert np.array_equal(g, g.T)
        assert (np.diag(g) == 0).all()
        assert (g.sum(axis=0) == 4).all()
        assert (g.sum(axis=1) == 4).all()
        assert np.isin(g, (0, 1)).all()
        validate(am)


def test_sregular_deterministic_per_seed():
    p = CodeParams(k=12, n=12, s=3)
    assert np.array_equal(gen_sregular(p, seed=5).g, gen_sregular(p, seed=5).g)


def test_sregular_rejects_bad_params():
    with pytest.raises(ValueError):
        gen_sregular(CodeParams(k=5, n=5, s=3), seed=0)  # odd stub count
    with pytest.raises(ValueError):
        gen_sregular(CodeParams(k=4, n=4, s=4), seed=0)  # degree must leave room
    with pytest.raises(ValueError):
        gen_sregular(CodeParams(k=4, n=6, s=2), seed=0)  # square only


# ---------- params and validate ----------

def test_code_params_validation():
    with pytest.raises(ValueError):
        CodeParams(k=0, n=4, s=1)
    with pytest.raises(ValueError):
        CodeParams(k=4, n=0, s=1)
    with pytest.raises(ValueError):
        CodeParams(k=4, n=4, s=0)
    with pytest.raises(ValueError):
        CodeParams(k=4, n=4, s=5)  # heavier than the task count


def test_validate_catches_tampering():
    am = gen_frc(CodeParams(k=4, n=4, s=2))
    am.g[0, 2] = 1
    with pytest.raises(ValueError):
        validate(am)

    bg = gen_bgc(CodeParams(k=5, n=5, s=2), seed=0)
    bg.g[0, 0] = 2
    with pytest.raises(ValueError):
        validate(bg)

    sr = gen_sregular(CodeParams(k=6, n=6, s=2), seed=0)
    sr.g[0, 1] = 1 - sr.g[0, 1]
    with pytest.raises(ValueError):
        validate(sr)

    rb = gen_rbgc(CodeParams(k=20, n=20, s=1), seed=0)
    rb.g[:, 0] = 1  # degree 20 > 2s
    with pytest.raises(ValueError):
        validate(rb)


def test_validate_accepts_column_permuted_frc():
    am = gen_frc(CodeParams(k=6, n=6, s=2))
    perm = np.array([3, 1, 5, 0, 2, 4])
    am.g = am.g[:, perm]
    validate(am)


# ---------- serialization ----------

def test_serialization_frozen_text():
    am = gen_frc(CodeParams(k=4, n=4, s=2))
    want = "4 4 2 frc -\n1 1 0 0\n1 1 0 0\n0 0 1 1\n0 0 1 1\n"
    assert to_text(am) == want


def test_serialization_round_trip_all_schemes():
    mats = [
        gen_frc(CodeParams(k=6, n=6, s=3)),
        gen_bgc(CodeParams(k=7, n=5, s=2), seed=42),
        gen_rbgc(CodeParams(k=12, n=12, s=2), seed=7),
        gen_sregular(CodeParams(k=8, n=8, s=3), seed=3),
    ]
    for am in mats:
        text = to_text(am)
        back = parse_text(text)
        assert back.scheme == am.scheme
        assert back.seed == am.seed
        assert back.params == am.params
        assert np.array_equal(back.g, am.g)
        assert to_text(back) == text


def test_parse_rejects_malformed_input():
    good = to_text(gen_frc(CodeParams(k=4, n=4, s=2)))
    with pytest.raises(ValueError):
        parse_text("")
    with pytest.raises(ValueError):
        parse_text("4 4 2\n" + good.split("\n", 1)[1])  # short header
    with pytest.raises(ValueError):
        parse_text(good.replace("frc", "mystery"))
    with pytest.raises(ValueError):
        parse_text(good.replace("1 1 0 0\n", "1 1 0\n", 1))  # ragged row
    with pytest.raises(ValueError):
        parse_text(good.replace("1 1 0 0", "1 2 0 0", 1))  # non-binary entry
    with pytest.raises(ValueError):
        parse_text("\n".join(good.splitlines()[:-1]) + "\n")  # missing row
