"""Exact branch-level distribution of the main-decoder code symbols.

Each code symbol is the XOR of the error bits on its tap set, and the error
bits are i.i.d. Bernoulli(eps).  The joint law of ``(v1, v2)`` follows from
enumerating every error pattern on the union support of the two tap sets.
Patterns are first binned by Hamming weight and by the two parities, using
integer counts; probabilities and the exact integer polynomials in eps are
then both read off the same census, so results do not depend on evaluation
order or on how enumeration is chunked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from sstdist.code import TapSet

__all__ = [
    "BranchDist",
    "EpsPolynomial",
    "SupportTooLarge",
    "DEFAULT_MAX_SUPPORT",
    "marginal_prob",
    "marginal_poly",
    "joint_dist",
    "joint_poly",
    "lemma1_residuals",
]

DEFAULT_MAX_SUPPORT = 24
_CHUNK_BITS = 20


class SupportTooLarge(ValueError):
    """Raised when the union support exceeds the enumeration bound."""


@dataclass(frozen=True)
class BranchDist:
    """Joint distribution of the two code symbols of one trellis branch.

    ``a_ij = P(v1 = i, v2 = j)``, ``a1 = P(v1 = 1)``, ``a2 = P(v2 = 1)``
    and ``delta = a11 - a1 * a2``.
    """

    a1: float
    a2: float
    a00: float
    a01: float
    a10: float
    a11: float
    delta: float

    def __post_init__(self):
        probs = (self.a1, self.a2, self.a00, self.a01, self.a10, self.a11)
        if any(not (-1e-12 <= p <= 1 + 1e-12) for p in probs):
            raise ValueError(f"probabilities out of [0, 1]: {probs}")
        if abs(self.a00 + self.a01 + self.a10 + self.a11 - 1.0) > 1e-12:
            raise ValueError("joint probabilities do not sum to 1")
        if abs(self.a10 + self.a11 - self.a1) > 1e-12 or abs(self.a01 + self.a11 - self.a2) > 1e-12:
            raise ValueError("joint probabilities disagree with the marginals")
        if abs(self.a11 - self.a1 * self.a2 - self.delta) > 1e-12:
            raise ValueError("delta != a11 - a1*a2")

    @classmethod
    def from_joint(cls, a00: float, a01: float, a10: float, a11: float) -> "BranchDist":
        a1 = a10 + a11
        a2 = a01 + a11
        return cls(a1=a1, a2=a2, a00=a00, a01=a01, a10=a10, a11=a11, delta=a11 - a1 * a2)

    @property
    def weights(self) -> tuple[float, float, float, float]:
        return (self.a00, self.a01, self.a10, self.a11)


@dataclass(frozen=True)
class EpsPolynomial:
    """Integer-coefficient polynomial in eps; ``coeffs[k]`` multiplies ``eps**k``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __call__(self, eps: float) -> float:
        acc = 0.0
        for a in reversed(self.coeffs):
            acc = acc * eps + a
        return acc

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if k < len(self.coeffs) else 0

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.coeffs) if self.coeffs else "0"


def _support(taps: Sequence[TapSet], max_support: int) -> tuple[int, tuple[int, ...]]:
    positions = sorted(set().union(*(t.taps for t in taps)))
    n = len(positions)
    if n > max_support:
        raise SupportTooLarge(f"union support has {n} bits, bound is {max_support}")
    index = {p: i for i, p in enumerate(positions)}
    masks = tuple(sum(1 << index[p] for p in t.taps) for t in taps)
    return n, masks


@lru_cache(maxsize=256)
def _census(n: int, mask1: int, mask2: int) -> np.ndarray:
    """Count error patterns on ``n`` bits by (weight, parity on mask1, parity on mask2)."""
    counts = np.zeros((n + 1) * 4, dtype=np.int64)
    total = 1 << n
    step = 1 << _CHUNK_BITS
    m1 = np.uint64(mask1)
    m2 = np.uint64(mask2)
    one = np.uint64(1)
    for start in range(0, total, step):
        p = np.arange(start, min(start + step, total), dtype=np.uint64)
        w = np.bitwise_count(p).astype(np.int64)
        x1 = (np.bitwise_count(p & m1) & one).astype(np.int64)
        x2 = (np.bitwise_count(p & m2) & one).astype(np.int64)
        counts += np.bincount(w * 4 + x1 * 2 + x2, minlength=(n + 1) * 4)
    out = counts.reshape(n + 1, 2, 2)
    out.flags.writeable = False
    return out


def _eval_counts(counts: np.ndarray, eps: float) -> np.ndarray:
    n = counts.shape[0] - 1
    w = np.arange(n + 1)
    # 0.0 ** 0 == 1.0, so eps = 0 and eps = 1 are handled exactly
    weights = np.power(eps, w) * np.power(1.0 - eps, n - w)
    return np.tensordot(weights, counts.astype(np.float64), axes=(0, 0))


def _poly_from_counts(counts: Sequence[int]) -> EpsPolynomial:
    # sum_w N_w eps^w (1 - eps)^(n - w), expanded exactly
    n = len(counts) - 1
    coeffs = [0] * (n + 1)
    for w, nw in enumerate(counts):
        nw = int(nw)
        if nw == 0:
            continue
        m = n - w
        for j in range(m + 1):
            coeffs[w + j] += nw * math.comb(m, j) * (-1) ** j
    return EpsPolynomial(tuple(coeffs))


def _check_eps(eps: float) -> None:
    if not 0.0 <= eps <= 0.5:
        raise ValueError(f"eps must lie in [0, 0.5], got {eps}")


def marginal_prob(t: TapSet, eps: float) -> float:
    """P(XOR of the bits on ``t`` is 1) for i.i.d. Bernoulli(eps) bits."""
    _check_eps(eps)
    return 0.5 * (1.0 - (1.0 - 2.0 * eps) ** len(t))


def marginal_poly(t: TapSet, max_support: int = DEFAULT_MAX_SUPPORT) -> EpsPolynomial:
    n, (mask,) = _support([t], max_support)
    counts = _census(n, mask, 0)
    return _poly_from_counts(counts[:, 1, :].sum(axis=1))


def joint_dist(t1: TapSet, t2: TapSet, eps: float, max_support: int = DEFAULT_MAX_SUPPORT) -> BranchDist:
    """Exact joint law of ``(v1, v2)`` by enumeration over the union support."""
    _check_eps(eps)
    n, (m1, m2) = _support([t1, t2], max_support)
    p = _eval_counts(_census(n, m1, m2), eps)
    return BranchDist.from_joint(float(p[0, 0]), float(p[0, 1]), float(p[1, 0]), float(p[1, 1]))


def joint_poly(t1: TapSet, t2: TapSet, max_support: int = DEFAULT_MAX_SUPPORT) -> EpsPolynomial:
    """Exact polynomial in eps for P(v1 = 1, v2 = 1)."""
    n, (m1, m2) = _support([t1, t2], max_support)
    return _poly_from_counts(_census(n, m1, m2)[:, 1, 1])


def lemma1_residuals(b: BranchDist) -> tuple[float, float, float, float]:
    """The four covariance expressions that must all equal ``delta``.

    Returns ``a00 - (1-a1)(1-a2)``, ``(1-a1) a2 - a01``, ``a1 (1-a2) - a10``
    and ``a11 - a1 a2`` in that order.
    """
    a1, a2 = b.a1, b.a2
    return (
        b.a00 - (1.0 - a1) * (1.0 - a2),
        (1.0 - a1) * a2 - b.a01,
        a1 * (1.0 - a2) - b.a10,
        b.a11 - a1 * a2,
    )
