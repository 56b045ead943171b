"""Gaussian entropy bounds for the main-decoder input mixtures.

With unit-variance noise, code symbol 0 maps to mean ``+c`` and symbol 1 to
``-c``.  The branch input ``(r1, r2)`` is then a four-component Gaussian
mixture weighted by the joint symbol law, and its entropy is bounded by the
Gaussian with the same covariance.  All entropies are in nats.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from sstdist.channel import ebn0_to_point
from sstdist.code import CodeSpec, taps_for_mode
from sstdist.dist import BranchDist, joint_dist

__all__ = [
    "Mixture2",
    "Cov2",
    "EntropyRow",
    "Gap",
    "NonPositiveDeterminant",
    "MismatchedRows",
    "CSV_COLUMNS",
    "branch_mixture",
    "z_mixture",
    "cov_branch",
    "cov_z",
    "gauss_bound_1d",
    "gauss_bound_2d",
    "per_symbol_gap",
    "correction_term",
    "branch_gap",
    "build_table",
    "inequality_check",
    "mixture_entropy_1d",
    "mixture_entropy_2d",
    "table_to_csv",
]

LOG_2PIE = math.log(2.0 * math.pi * math.e)
CSV_COLUMNS = ("ebn0_db", "c", "eps", "h1", "h2", "corr", "total")


class NonPositiveDeterminant(ValueError):
    pass


class MismatchedRows(ValueError):
    pass


@dataclass(frozen=True)
class Mixture2:
    """Four-component mixture ``sum_ij w_ij q(x -+ c) q(y -+ c)``.

    ``weights`` are ``(w00, w01, w10, w11)``; index 0 places the component
    at ``+c`` on that axis, index 1 at ``-c``.  Components have unit variance.
    """

    weights: tuple[float, float, float, float]
    c: float

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        if len(w) != 4 or any(x < -1e-15 for x in w) or abs(sum(w) - 1.0) > 1e-12:
            raise ValueError(f"invalid mixture weights {w}")
        object.__setattr__(self, "weights", w)

    @property
    def marginal_ones(self) -> tuple[float, float]:
        """Weight of the ``-c`` component on each axis."""
        w00, w01, w10, w11 = self.weights
        return w10 + w11, w01 + w11

    def pdf(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        qx = (_phi(x - self.c), _phi(x + self.c))
        qy = (_phi(y - self.c), _phi(y + self.c))
        w00, w01, w10, w11 = self.weights
        return w00 * qx[0] * qy[0] + w01 * qx[0] * qy[1] + w10 * qx[1] * qy[0] + w11 * qx[1] * qy[1]


@dataclass(frozen=True)
class Cov2:
    s11: float
    s22: float
    s12: float

    @property
    def det(self) -> float:
        return self.s11 * self.s22 - self.s12 * self.s12


@dataclass(frozen=True)
class EntropyRow:
    ebn0_db: float
    c: float
    eps: float
    h1: float
    h2: float
    corr: float
    total: float

    def __post_init__(self):
        if abs(self.h1 + self.h2 + self.corr - self.total) > 1e-12:
            raise ValueError("total != h1 + h2 + corr")
        if self.corr < 0:
            raise ValueError(f"correction term must be non-negative, got {self.corr}")


class Gap(NamedTuple):
    h1: float
    h2: float
    corr: float
    total: float


def _phi(x):
    return np.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


def branch_mixture(b: BranchDist, c: float) -> Mixture2:
    return Mixture2(b.weights, c)


def z_mixture(c: float) -> Mixture2:
    return Mixture2((0.25, 0.25, 0.25, 0.25), c)


def cov_branch(b: BranchDist, c: float) -> Cov2:
    k = 4.0 * c * c
    return Cov2(1.0 + k * b.a1 * (1.0 - b.a1), 1.0 + k * b.a2 * (1.0 - b.a2), k * b.delta)


def cov_z(c: float) -> Cov2:
    if not c > 0:
        raise ValueError(f"amplitude must be positive, got {c}")
    return Cov2(1.0 + c * c, 1.0 + c * c, 0.0)


def gauss_bound_1d(var: float) -> float:
    return 0.5 * (LOG_2PIE + math.log(var))


def gauss_bound_2d(s: Cov2) -> float:
    """Maximum entropy ``0.5 * ln((2 pi e)^2 det)`` over densities with covariance ``s``."""
    det = s.det
    if not det > 0:
        raise NonPositiveDeterminant(f"covariance determinant is {det}")
    return LOG_2PIE + 0.5 * math.log(det)


def per_symbol_gap(a: float, c: float) -> float:
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"probability out of range: {a}")
    return 0.5 * math.log((1.0 + c * c) / (1.0 + 4.0 * c * c * a * (1.0 - a)))


def correction_term(s: Cov2) -> float:
    """Entropy correction for correlated symbols, ``0.5 ln(s11 s22 / det)``."""
    det = s.det
    if not det > 0:
        raise NonPositiveDeterminant(f"covariance determinant is {det}")
    return 0.5 * math.log(s.s11 * s.s22 / det)


def branch_gap(b: BranchDist, c: float) -> Gap:
    h1 = per_symbol_gap(b.a1, c)
    h2 = per_symbol_gap(b.a2, c)
    corr = correction_term(cov_branch(b, c))
    return Gap(h1, h2, corr, h1 + h2 + corr)


def build_table(
    code: CodeSpec,
    mode: str,
    rows: Iterable[float],
    rate: Optional[float] = None,
) -> list[EntropyRow]:
    """Entropy-gap rows for each Eb/N0 value (dB), general or QLI pre-decoder."""
    if code.n0 != 2:
        raise ValueError("entropy tables are defined for n0 = 2 only")
    t1, t2 = taps_for_mode(code, mode)
    out = []
    for db in rows:
        pt = ebn0_to_point(db, code.rate if rate is None else rate)
        gap = branch_gap(joint_dist(t1, t2, pt.eps), pt.c)
        out.append(EntropyRow(pt.ebn0_db, pt.c, pt.eps, *gap))
    return out


def inequality_check(row_general: EntropyRow, row_qli: EntropyRow) -> bool:
    """True iff the general-code total is strictly below the QLI total."""
    for name in ("ebn0_db", "c", "eps"):
        a, b = getattr(row_general, name), getattr(row_qli, name)
        if not math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-15):
            raise MismatchedRows(f"rows differ in {name}: {a} vs {b}")
    return row_general.total < row_qli.total


def _entropy_on_grid(density, n: int, half_width: float) -> float:
    x, w = np.polynomial.legendre.leggauss(n)
    x = x * half_width
    w = w * half_width
    p = density(x)
    logp = np.log(np.where(p > 0, p, 1.0))
    return float(-np.sum(_outer_weights(w, p.ndim) * p * logp))


def _outer_weights(w: np.ndarray, ndim: int) -> np.ndarray:
    return w if ndim == 1 else np.outer(w, w)


def _refine(density, half_width: float, tol: float, n0: int = 64, n_max: int = 2048) -> float:
    n = n0
    prev = _entropy_on_grid(density, n, half_width)
    while n < n_max:
        n *= 2
        cur = _entropy_on_grid(density, n, half_width)
        if abs(cur - prev) < tol:
            return cur
        prev = cur
    return prev


def mixture_entropy_2d(m: Mixture2, tol: float = 1e-6) -> float:
    """Differential entropy of a :class:`Mixture2` by tensor Gauss-Legendre quadrature.

    The grid covers ``[-(c+8), c+8]^2`` and is doubled until successive
    estimates agree within ``tol``.
    """
    w00, w01, w10, w11 = m.weights

    def density(x):
        q0 = _phi(x - m.c)
        q1 = _phi(x + m.c)
        return w00 * np.outer(q0, q0) + w01 * np.outer(q0, q1) + w10 * np.outer(q1, q0) + w11 * np.outer(q1, q1)

    return _refine(density, abs(m.c) + 8.0, tol)


def mixture_entropy_1d(p_one: float, c: float, tol: float = 1e-9) -> float:
    """Entropy of ``(1 - p_one) q(y - c) + p_one q(y + c)``."""

    def density(x):
        return (1.0 - p_one) * _phi(x - c) + p_one * _phi(x + c)

    return _refine(density, abs(c) + 8.0, tol)


def table_to_csv(rows: Sequence[EntropyRow], precision: Optional[int] = 4) -> str:
    """Render rows as CSV.

    ``c`` and ``eps`` are always written at full precision; the entropy
    columns use ``precision`` decimals, or full precision when ``None``.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)

    def ent(x: float) -> str:
        return repr(float(x)) if precision is None else f"{x:.{precision}f}"

    for r in rows:
        writer.writerow([f"{r.ebn0_db:g}", repr(r.c), repr(r.eps), ent(r.h1), ent(r.h2), ent(r.corr), ent(r.total)])
    return buf.getvalue()
