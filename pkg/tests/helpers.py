"""Shared oracles for the test suite.

These deliberately avoid the library's own code paths: enumeration runs
over explicit subsets, and closed forms are derived from first principles
(hypergeometric overlap counts), so agreement with the library is
evidence rather than tautology.
"""

import itertools
import math

import numpy as np


def frc_matrix(k, s):
    return np.kron(np.eye(k // s, dtype=int), np.ones((s, s), dtype=int))


def exhaustive_mean_one_step(g, r, rho):
    """Average uniform-weight error over every r-subset of columns."""
    k, n = g.shape
    total = 0.0
    count = 0
    for cols in itertools.combinations(range(n), r):
        v = rho * g[:, list(cols)].sum(axis=1)
        total += float(np.sum((v - 1.0) ** 2))
        count += 1
    return total / count


def exhaustive_mean_optimal(g, r):
    """Average least-squares error over every r-subset of columns."""
    k, n = g.shape
    ones = np.ones(k)
    total = 0.0
    count = 0
    for cols in itertools.combinations(range(n), r):
        a = g[:, list(cols)].astype(float)
        x, _, _, _ = np.linalg.lstsq(a, ones, rcond=None)
        total += float(np.sum((a @ x - ones) ** 2))
        count += 1
    return total / count


def exact_one_step_mean(k, s, r):
    """Exact mean uniform-weight error for the block construction under
    uniform without-replacement survivor sampling, rho = k/(r*s).

    Derivation: the error is rho^2 * sum_ij a_i.a_j - k, the diagonal
    contributes r*s, and an off-diagonal pair overlaps (in s entries) iff
    the second column is one of the s-1 duplicates among the other k-1.
    """
    rho = k / (r * s)
    pair = s * (s - 1) / (k - 1)
    return rho**2 * (r * s + r * (r - 1) * pair) - k


def second_eigen_by_eig(adj):
    """Largest non-principal |eigenvalue| of a symmetric adjacency matrix."""
    lam = np.linalg.eigvalsh(np.asarray(adj, dtype=float))
    top = np.argmax(lam)
    rest = np.delete(lam, top)
    return float(np.abs(rest).max())
