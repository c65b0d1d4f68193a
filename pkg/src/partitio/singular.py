"""Gauss sums, truncated singular series, the exact singular integral, and
local solubility of the square-plus-k-th-powers congruences."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd
from typing import Optional

import numpy as np

TWO_PI = 2.0 * math.pi


def gauss_sum(q: int, a: int, k: int) -> complex:
    """S(q, a) = sum_{x=1..q} e(a x^k / q), with (a, q) = 1."""
    if q < 1:
        raise ValueError("q must be at least 1")
    if gcd(a, q) != 1:
        raise ValueError(f"a and q must be coprime, got ({a}, {q})")
    residues = np.array([pow(x, k, q) for x in range(1, q + 1)], dtype=np.int64)
    phases = (residues * (a % q)) % q
    return complex(np.exp(1j * TWO_PI * phases / q).sum())


def _power_residue_counts(q: int, k: int) -> np.ndarray:
    counts = np.zeros(q, dtype=np.int64)
    for x in range(1, q + 1):
        counts[pow(x, k, q)] += 1
    return counts


def _gauss_sums_all(q: int, k: int) -> np.ndarray:
    """S(q, a) for a = 0..q-1 at once: the inverse DFT of the residue-count
    vector of x -> x^k mod q."""
    counts = _power_residue_counts(q, k)
    return np.fft.ifft(counts) * q  # entry a equals sum_v counts[v] e(av/q)


def a_coeff(m: int, q: int, s: int, k: int) -> float:
    """A_m(q) = sum over reduced residues a of S(q,a)^s e(-a m / q).

    The conjugate pairing a <-> q - a makes this real; the imaginary residue
    is checked against a q**s-scaled tolerance before being dropped.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    S = _gauss_sums_all(q, k)
    a_vals = np.array([a for a in range(1, q + 1) if gcd(a, q) == 1], dtype=np.int64)
    phases = np.exp(-1j * TWO_PI * ((a_vals * (m % q)) % q) / q)
    total = complex((S[a_vals % q] ** s * phases).sum())
    scale = max(1.0, float(q) ** s)
    if abs(total.imag) > 1e-9 * scale:
        raise ArithmeticError(f"A_m({q}) imaginary part {total.imag} too large")
    return total.real


@dataclass(frozen=True)
class SingularSeriesResult:
    m: int
    s: int
    k: int
    Q_cut: int
    partial: float     # sum_{q <= Q_cut} q^{-s} A_m(q)
    last_block: float  # contribution of q in (Q_cut/2, Q_cut]


class _GaussSumCache:
    """Per-(k, s) cache of S(q, a)^s over reduced residues, for series sums."""

    def __init__(self, k: int, s: int):
        self.k = k
        self.s = s
        self._powers: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}

    def powers(self, q: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if q not in self._powers:
            S = _gauss_sums_all(q, self.k)
            a_vals = np.array([a for a in range(1, q + 1) if gcd(a, q) == 1], dtype=np.int64)
            roots = np.exp(-1j * TWO_PI * np.arange(q) / q)
            self._powers[q] = (a_vals, S[a_vals % q] ** self.s, roots)
        return self._powers[q]

    def a_coeff(self, m: int, q: int) -> float:
        a_vals, spow, roots = self.powers(q)
        idx = (a_vals * (m % q)) % q
        return float((spow * roots[idx]).sum().real)


def singular_series(
    m: int,
    s: int,
    k: int,
    Q_cut: int = 1000,
    cache: Optional[_GaussSumCache] = None,
) -> SingularSeriesResult:
    """Truncated singular series sum_{q <= Q_cut} q^{-s} A_m(q).

    No effective tail bound is asserted; ``last_block`` (the contribution of
    the top dyadic block) is reported as the convergence diagnostic instead.
    """
    if Q_cut < 1:
        raise ValueError("Q_cut must be at least 1")
    if s < 4:
        raise ValueError("series needs s >= 4 for absolute convergence")
    cache = cache or _GaussSumCache(k, s)
    partial = 0.0
    last_block = 0.0
    half = Q_cut / 2
    for q in range(1, Q_cut + 1):
        term = cache.a_coeff(m, q) / q**s
        partial += term
        if q > half:
            last_block += term
    return SingularSeriesResult(m=m, s=s, k=k, Q_cut=Q_cut, partial=partial, last_block=last_block)


def singular_series_blocks(
    m: int, s: int, k: int, Q_cuts: list[int], cache: Optional[_GaussSumCache] = None
) -> list[SingularSeriesResult]:
    """Partial sums at several cutoffs sharing one Gauss-sum cache."""
    cache = cache or _GaussSumCache(k, s)
    return [singular_series(m, s, k, Q, cache=cache) for Q in Q_cuts]


def singular_integral(m: int, s: int, k: int) -> tuple[float, float]:
    """(exact, asymptotic) archimedean density for s k-th powers at m.

    exact: the composition sum over u_1 + ... + u_s = m, u_j >= 1, of
    (u_1 ... u_s)^(1/k - 1), computed by iterated truncated convolution.
    asymptotic: Gamma(1/k)^s / Gamma(s/k) * m^(s/k - 1), the constant that
    matches the sum with its k^-s normalisation factor omitted (note
    Gamma(1/k) = k * Gamma(1 + 1/k)).  The ratio exact/asymptotic tends to 1
    from below, at the slow rate set by the u^(1/k-1) endpoint corrections.
    """
    if s < 1 or k < 1 or m < 0:
        raise ValueError
    if s > 6 or m > 10**4:
        raise ValueError("exact path is guarded to s <= 6, m <= 10**4")
    asymptotic = math.gamma(1 / k) ** s / math.gamma(s / k) * m ** (s / k - 1) if m > 0 else 0.0
    if m < s:
        return 0.0, asymptotic
    kernel = np.zeros(m + 1)
    u = np.arange(1, m + 1, dtype=float)
    kernel[1:] = u ** (1.0 / k - 1.0)
    acc = kernel.copy()
    for _ in range(s - 1):
        acc = np.convolve(acc, kernel)[: m + 1]
    return float(acc[m]), asymptotic


@dataclass(frozen=True)
class LocalSolubility:
    modulus: int                       # 4k
    R_set: frozenset[int]              # residues j mod 4k with 1 <= j <= s
    n_minus_square_hits_R: bool
    witness: Optional[tuple[int, int]]  # (x0, j) with n - x0^2 = j mod 4k


def local_solubility(k: int, s: int, n: int) -> LocalSolubility:
    """Search for x0 with n - x0^2 in a residue class j mod 4k, 1 <= j <= s.

    For k a power of two the class set is the genuine obstruction; otherwise
    every class is admissible and the set is all of Z/4k.  Odd x0 are
    preferred (they realise the squares-of-odd-numbers classes 1 + 8l), with
    even x0 as a fallback.
    """
    mod = 4 * k
    if k >= 1 and (k & (k - 1)) == 0:
        R = frozenset(j % mod for j in range(1, min(s, mod) + 1))
    else:
        R = frozenset(range(mod))
    witness = None
    for x0 in [x for x in range(1, mod + 1) if x % 2 == 1] + [
        x for x in range(1, mod + 1) if x % 2 == 0
    ]:
        residue = (n - x0 * x0) % mod
        j = residue if residue >= 1 else mod
        if j <= s:
            witness = (x0, j)
            break
    return LocalSolubility(
        modulus=mod,
        R_set=R,
        n_minus_square_hits_R=witness is not None,
        witness=witness,
    )
