"""Exponential-sum evaluation and empirical decay-exponent fitting.

W(alpha) = sum over the weight support of w(m) e(alpha m), with e(z) =
exp(2 pi i z).  Phases come from per-term argument reduction of alpha*m mod 1
(no recurrence across m, so error does not accumulate along the support) and
the terms are pairwise-summed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from partitio.arcs import sample_slice_alphas
from partitio.weights import Weight

TWO_PI = 2.0 * math.pi


def exp_sum(w: Weight, alpha: float, j: int = 1) -> complex:
    """sum_m w(m) e(j * alpha * m), folding in the weight's own phase."""
    if len(w.support) == 0:
        return 0.0 + 0.0j
    mult = float(j * w.phase)
    frac = (w.support.astype(float) * (mult * alpha)) % 1.0
    return complex(np.sum(w.values * np.exp(1j * TWO_PI * frac)))


def exp_sum_many(w: Weight, alphas: np.ndarray, j: int = 1, chunk: int = 512) -> np.ndarray:
    """Vectorised |support| x |alphas| evaluation, chunked to bound memory."""
    alphas = np.asarray(alphas, dtype=float)
    out = np.empty(len(alphas), dtype=complex)
    if len(w.support) == 0:
        out[:] = 0.0
        return out
    support = w.support.astype(float)
    mult = float(j * w.phase)
    for start in range(0, len(alphas), chunk):
        block = alphas[start : start + chunk]
        frac = np.outer(block * mult, support) % 1.0
        out[start : start + chunk] = np.exp(1j * TWO_PI * frac) @ w.values
    return out


def exp_sum_rational(w: Weight, a: int, q: int) -> complex:
    """Exact-phase evaluation of W(a/q) by grouping the support modulo q."""
    if q < 1 or q > w.n:
        raise ValueError(f"need 1 <= q <= n, got q={q}, n={w.n}")
    if len(w.support) == 0:
        return 0.0 + 0.0j
    residues = (w.support % q).astype(np.int64)
    sums = np.bincount(residues, weights=w.values, minlength=q)
    idx = (np.arange(q, dtype=np.int64) * (a * w.phase)) % q
    roots = np.exp(1j * TWO_PI * np.arange(q) / q)
    return complex(np.sum(sums * roots[idx]))


def sup_profile(
    w: Weight,
    n: int,
    Q_list: Sequence[float],
    samples_per_slice: int = 300,
    seed: int = 0,
) -> list[tuple[float, float]]:
    """Sampled sup of |W| over each height-Q slice N(Q).

    Slices get independent child streams of the seed, so partitioning the
    Q-list across workers and concatenating reproduces this output exactly.
    """
    if any(Q_list[i] >= Q_list[i + 1] for i in range(len(Q_list) - 1)):
        raise ValueError("Q_list must ascend")
    children = np.random.SeedSequence(seed).spawn(len(Q_list))
    profile = []
    for Q, child in zip(Q_list, children):
        rng = np.random.default_rng(child)
        alphas = sample_slice_alphas(n, Q, samples_per_slice, rng)
        sup = float(np.abs(exp_sum_many(w, alphas)).max()) if len(alphas) else 0.0
        profile.append((float(Q), sup))
    return profile


@dataclass(frozen=True)
class DecayFit:
    phi_hat: float   # decay exponent: sup ~ c * norm * Q**(-phi)
    c_hat: float
    residual: float  # RMS in log space


def fit_decay(profile: Sequence[tuple[float, float]], norm: float) -> DecayFit:
    """Least squares for log(sup/norm) = log(c) - phi * log(Q)."""
    if len(profile) < 2:
        raise ValueError("need at least two profile points")
    qs = np.array([p[0] for p in profile], dtype=float)
    sups = np.array([p[1] for p in profile], dtype=float)
    if np.any(sups <= 0):
        raise ValueError("all sups must be positive")
    if np.all(qs == qs[0]):
        raise ValueError("degenerate profile: all Q equal")
    x = np.log(qs)
    y = np.log(sups / norm)
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return DecayFit(phi_hat=float(-slope), c_hat=float(math.exp(intercept)), residual=resid)
