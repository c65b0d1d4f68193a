"""Diophantine approximation and the Farey-dissection arc families.

The unit interval is dissected at order 2*sqrt(n): every alpha gets coprime
(a, q) with q <= 2*sqrt(n) and |q*alpha - a| <= 1/(2*sqrt(n)).  Height-Q
major arcs M(Q) collect |q*alpha - a| <= Q/n over q <= Q while Q stays below
sqrt(n)/2; beyond that M(Q) grows by the order-2*sqrt(n) Farey cells of
height up to Q.  N(Q) = M(Q) minus M(Q/4) are the dyadic slices.

Points exactly on an arc boundary are assigned to the smaller q (the <=
comparisons below), a measure-zero convention that keeps classification
deterministic.  The splitting of the complement into Farey cells uses the
best-approximation cell of each point, i.e. the convergent minimising
|q*alpha - a|, with ties again resolved toward smaller q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Union

import numpy as np

Real = Union[float, Fraction]


@dataclass(frozen=True)
class RationalApprox:
    a: int
    q: int
    err: float  # |q*alpha - a|


def dirichlet_approx(alpha: Real, q_max: int) -> RationalApprox:
    """Best rational approximation with denominator at most q_max.

    Walks the continued-fraction convergents of alpha (taken exactly, floats
    are converted to their binary rational); the last convergent with q <=
    q_max minimises |q*alpha - a| over all q <= q_max, and satisfies
    |q*alpha - a| <= 1/q_max.
    """
    if q_max < 1:
        raise ValueError("q_max must be at least 1")
    x = alpha if isinstance(alpha, Fraction) else Fraction(alpha)
    if not 0 <= x <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {float(x)}")

    a0 = x.numerator // x.denominator
    p_prev, q_prev = 1, 0
    p_cur, q_cur = a0, 1
    rem = x - a0
    while rem != 0:
        x2 = 1 / rem
        a_i = x2.numerator // x2.denominator
        p_next = a_i * p_cur + p_prev
        q_next = a_i * q_cur + q_prev
        if q_next > q_max:
            break
        p_prev, q_prev, p_cur, q_cur = p_cur, q_cur, p_next, q_next
        rem = x2 - a_i
    err = abs(q_cur * x - p_cur)
    return RationalApprox(a=int(p_cur), q=int(q_cur), err=float(err))


@dataclass(frozen=True)
class ArcLabel:
    in_major: bool
    slice_q: Optional[float]  # smallest dyadic level Q/4**j still containing alpha
    core: bool


@dataclass(frozen=True)
class Dissection:
    """Arc families of the order-2*sqrt(n) dissection for one fixed n."""

    n: int

    @property
    def L(self) -> float:
        return math.log(self.n)

    @property
    def half_height(self) -> int:
        # largest integer q allowed in the low half of the dissection
        return max(1, math.isqrt(self.n) // 2)

    @property
    def full_height(self) -> int:
        return math.isqrt(4 * self.n)  # floor(2*sqrt(n))

    def assign(self, alpha: Real) -> RationalApprox:
        """Farey cell of alpha: the containing low-height arc if there is
        one, otherwise the best order-2*sqrt(n) approximation."""
        thresh = 0.5 / math.sqrt(self.n)
        best = dirichlet_approx(alpha, self.half_height)
        if best.err <= thresh:
            return best
        return dirichlet_approx(alpha, self.full_height)

    def upsilon(self, alpha: Real) -> float:
        b = self.assign(alpha)
        return 1.0 / (b.q + self.n * b.err)

    def in_major(self, alpha: Real, Q: float) -> bool:
        if not 1 <= Q <= 2 * math.sqrt(self.n) + 1e-9:
            raise ValueError(f"Q={Q} outside [1, 2*sqrt(n)]")
        if Q <= 0.5 * math.sqrt(self.n):
            best = dirichlet_approx(alpha, int(math.floor(Q)))
            return best.err <= Q / self.n
        best = self.assign(alpha)
        if best.q <= self.half_height:
            return best.err <= 0.5 / math.sqrt(self.n)
        return best.q <= Q

    def in_slice(self, alpha: Real, Q: float) -> bool:
        """Membership in N(Q) = M(Q) minus M(Q/4)."""
        if not self.in_major(alpha, Q):
            return False
        return Q / 4 < 1 or not self.in_major(alpha, Q / 4)

    def in_core(self, alpha: Real) -> bool:
        B = self.L ** (1.0 / 15.0)
        x = float(alpha)
        for q in range(1, int(math.floor(B)) + 1):
            a = round(q * x)
            if 0 <= a <= q and abs(x - a / q) <= B / self.n:
                return True
        return False

    def arc_halfwidth(self, q: int, Q: float) -> float:
        """Half-width (in alpha) of the height-Q arc around a/q."""
        return min(Q, 0.5 * math.sqrt(self.n)) / (q * self.n)


def upsilon(alpha: Real, n: int) -> float:
    """(q + n|q*alpha - a|)**-1 for the Farey cell of alpha; lies in (0, 1]."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return Dissection(n).upsilon(alpha)


def arc_classify(alpha: Real, n: int, Q: float) -> ArcLabel:
    """Locate alpha relative to M(Q), its dyadic refinements, and the core."""
    d = Dissection(n)
    in_major = d.in_major(alpha, Q)
    slice_q: Optional[float] = None
    if in_major:
        slice_q = Q
        while slice_q / 4 >= 1 and d.in_major(alpha, slice_q / 4):
            slice_q /= 4
    return ArcLabel(in_major=in_major, slice_q=slice_q, core=d.in_core(alpha))


def sample_slice_alphas(
    n: int,
    Q: float,
    count: int,
    rng: np.random.Generator,
    uniform_share: float = 0.25,
) -> np.ndarray:
    """Stratified sample from the slice N(Q).

    Mixes arc centres a/q for q in (Q/4, Q] with offsets j/8 of the arc
    half-width (boundary stress), rim points of lower arcs, and uniform
    draws; every candidate is then filtered through the exact classifier.
    """
    d = Dissection(n)
    qlo = int(math.floor(Q / 4))
    qhi = max(1, int(math.floor(min(Q, d.full_height))))
    out: list[float] = []

    qs = np.arange(qlo + 1, qhi + 1)
    if len(qs) > 80:
        qs = np.unique(rng.choice(qs, size=80, replace=False))
    offsets = np.array([0.0, 0.25, -0.25, 0.625, -0.625, 0.875, -0.875])
    for q in qs:
        q = int(q)
        coprime = [a for a in range(0, q + 1) if gcd(a, q) == 1]
        if len(coprime) > 4:
            coprime = list(rng.choice(coprime, size=4, replace=False))
        hw = d.arc_halfwidth(q, Q)
        low_witness = q <= d.half_height  # then membership in M(Q) is automatic
        for a in coprime:
            center = a / q
            for delta in offsets * hw * 0.999:
                alpha = center + delta
                if not 0.0 <= alpha <= 1.0:
                    continue
                in_top = d.in_major(alpha, Q) if not low_witness else True
                if in_top and (Q / 4 < 1 or not d.in_major(alpha, Q / 4)):
                    out.append(alpha)

    # rim stratum: the annulus of the lower arcs q <= Q/4 that N(Q) keeps
    vlo = min(Q / 4, 0.5 * math.sqrt(n))
    vhi = min(Q, 0.5 * math.sqrt(n))
    if qlo >= 1 and vhi > vlo * 1.001:
        rim_qs = np.arange(1, qlo + 1)
        if len(rim_qs) > 40:
            rim_qs = np.unique(
                np.concatenate([rim_qs[:8], rng.choice(rim_qs, size=32, replace=False)])
            )
        rim_vs = np.geomspace(vlo * 1.02, vhi * 0.999, 4)
        for q in rim_qs:
            q = int(q)
            coprime = [a for a in range(0, q + 1) if gcd(a, q) == 1]
            if len(coprime) > 4:
                coprime = list(rng.choice(coprime, size=4, replace=False))
            for a in coprime:
                for v in rim_vs:
                    for sign in (1.0, -1.0):
                        alpha = a / q + sign * v / (q * n)
                        if 0.0 <= alpha <= 1.0 and not d.in_major(alpha, Q / 4):
                            out.append(alpha)

    n_uniform = max(8, int(count * uniform_share))
    for alpha in rng.random(n_uniform * 4):
        if len(out) >= count * 4:
            break
        if d.in_slice(alpha, Q):
            out.append(float(alpha))

    if not out:
        return np.empty(0)
    arr = np.sort(np.array(out))
    if len(arr) > count:
        # even-spaced thinning preserves every stratum, unlike a random draw
        idx = np.unique(np.round(np.linspace(0, len(arr) - 1, count)).astype(int))
        arr = arr[idx]
    return arr


@dataclass(frozen=True)
class SliceStats:
    fraction_in_slice: float  # sampled frequency of the |W| window inside N(Q)
    sup_in_slice: float       # max |W| seen inside the window (0 if empty)
    samples_in_band: int
    samples_total: int


def size_slices(
    w,
    n: int,
    Q: float,
    T: float,
    samples: int,
    seed: int = 0,
) -> SliceStats:
    """Monte-Carlo portrait of the size-T window inside the height-Q slice.

    The window collects alpha in N(Q) with norm/T < |W(alpha)| <= 2*norm/T.
    """
    from partitio.expsums import exp_sum

    if T < 2:
        raise ValueError("T must be at least 2")
    if w.norm == 0:
        raise ValueError("zero-norm weight")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    alphas = sample_slice_alphas(n, Q, samples, rng)
    if len(alphas) == 0:
        return SliceStats(0.0, 0.0, 0, 0)
    mags = np.array([abs(exp_sum(w, float(a))) for a in alphas])
    lo, hi = w.norm / T, 2 * w.norm / T
    in_band = (mags > lo) & (mags <= hi)
    sup = float(mags[in_band].max()) if in_band.any() else 0.0
    return SliceStats(
        fraction_in_slice=float(in_band.mean()),
        sup_in_slice=sup,
        samples_in_band=int(in_band.sum()),
        samples_total=len(alphas),
    )
