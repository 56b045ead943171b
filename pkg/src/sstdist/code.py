"""Code specifications and the tap sets expressing main-decoder code symbols.

In SST decoding the code part of the main-decoder input is
``v = e Ginv G`` (general pre-decoder) or ``v = e F G`` with ``F = (1, 1)^T``
(QLI pre-decoder), where ``e`` is the channel-error sequence.  Each output
symbol ``v^(l)`` is therefore an XOR of error bits ``e^(s)_{k-d}``; a
:class:`TapSet` lists those ``(s, d)`` positions.
"""

from __future__ import annotations

import configparser
import os
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from sstdist.gf2 import Gf2Poly, TransferMatrix, matrix_mul, poly_add, verify_inverse

__all__ = [
    "CodeSpec",
    "TapSet",
    "NotQli",
    "CODE_DIR_ENV",
    "taps_general",
    "taps_qli",
    "taps_for_mode",
    "load_code",
    "parse_code",
    "resolve_code_path",
    "default_code",
]

CODE_DIR_ENV = "SSTDIST_CODE_DIR"
MODES = ("general", "qli")


class NotQli(ValueError):
    """Raised when a QLI-only operation is applied to a non-QLI code."""


@dataclass(frozen=True)
class TapSet:
    """Positions ``(stream, delay)`` of error bits XORed into one code symbol.

    Streams are numbered from 1, delays are non-negative.
    """

    taps: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        taps = frozenset((int(s), int(d)) for s, d in self.taps)
        if any(s < 1 or d < 0 for s, d in taps):
            raise ValueError(f"invalid tap in {sorted(taps)}")
        object.__setattr__(self, "taps", taps)

    def __len__(self) -> int:
        return len(self.taps)

    def __iter__(self):
        return iter(sorted(self.taps))

    def __contains__(self, tap) -> bool:
        return tap in self.taps

    @property
    def max_delay(self) -> int:
        return max((d for _, d in self.taps), default=0)

    def delays(self, stream: int) -> list[int]:
        return sorted(d for s, d in self.taps if s == stream)


@dataclass(frozen=True)
class CodeSpec:
    n0: int
    k0: int
    G: TransferMatrix
    Ginv: TransferMatrix
    qli_L: Optional[int] = None
    name: str = ""
    tau: int = field(init=False)

    def __post_init__(self):
        if self.n0 < 2 or self.k0 < 1:
            raise ValueError(f"need n0 >= 2 and k0 >= 1, got n0={self.n0}, k0={self.k0}")
        if (self.G.rows, self.G.cols) != (self.k0, self.n0):
            raise ValueError(f"G must be {self.k0}x{self.n0}, got {self.G.rows}x{self.G.cols}")
        object.__setattr__(self, "tau", verify_inverse(self.G, self.Ginv))
        if self.qli_L is not None:
            if (self.k0, self.n0) != (1, 2):
                raise ValueError("QLI codes must have k0=1, n0=2")
            s = poly_add(self.G[0, 0], self.G[0, 1])
            if s != Gf2Poly.monomial(self.qli_L):
                raise ValueError(f"g1 + g2 = {s}, expected D^{self.qli_L} for a QLI code")

    @property
    def rate(self) -> float:
        return self.k0 / self.n0

    @property
    def is_qli(self) -> bool:
        return self.qli_L is not None


def _column_taps(m: TransferMatrix) -> list[TapSet]:
    # m is n0 x n0 mapping error streams (rows) to code symbols (columns)
    out = []
    for col in range(m.cols):
        taps = {(row + 1, d) for row in range(m.rows) for d in m[row, col].exponents}
        out.append(TapSet(frozenset(taps)))
    return out


def taps_general(code: CodeSpec) -> list[TapSet]:
    """Tap sets of ``v = e Ginv G`` for the general-inverse pre-decoder."""
    return _column_taps(matrix_mul(code.Ginv, code.G))


def taps_qli(code: CodeSpec) -> list[TapSet]:
    """Tap sets of ``v = e F G`` with ``F = (1, 1)^T`` for the QLI pre-decoder."""
    if not code.is_qli:
        raise NotQli(f"code {code.name or '<unnamed>'} has no QLI relation")
    one = Gf2Poly.monomial(0)
    F = TransferMatrix.from_rows([[one], [one]])
    return _column_taps(matrix_mul(F, code.G))


def taps_for_mode(code: CodeSpec, mode: str) -> list[TapSet]:
    if mode == "general":
        return taps_general(code)
    if mode == "qli":
        return taps_qli(code)
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def _parse_matrix(text: str) -> TransferMatrix:
    # commas inside [...] exponent lists do not separate entries
    rows = [[Gf2Poly.parse(e) for e in re.split(r",(?![^\[]*\])", r)] for r in text.split(";") if r.strip()]
    return TransferMatrix.from_rows(rows)


def parse_code(text: str) -> CodeSpec:
    """Parse a code config (INI text with a ``[code]`` section)."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    cp.read_string(text)
    if not cp.has_section("code"):
        raise ValueError("code config lacks a [code] section")
    sec = cp["code"]
    try:
        n0 = sec.getint("n0")
        k0 = sec.getint("k0")
        G = _parse_matrix(sec["G"])
        Ginv = _parse_matrix(sec["Ginv"])
    except KeyError as exc:
        raise ValueError(f"code config missing key {exc}") from None
    qli = sec.get("qli_L")
    return CodeSpec(
        n0=n0,
        k0=k0,
        G=G,
        Ginv=Ginv,
        qli_L=int(qli) if qli not in (None, "") else None,
        name=sec.get("name", ""),
    )


def resolve_code_path(name: str | os.PathLike) -> Path:
    """Locate a code file: literal path, then ``$SSTDIST_CODE_DIR``, then bundled codes."""
    p = Path(name)
    if p.is_file():
        return p
    candidates = [p.name, f"{p.name}.code"]
    env_dir = os.environ.get(CODE_DIR_ENV)
    if env_dir:
        for c in candidates:
            q = Path(env_dir) / c
            if q.is_file():
                return q
    bundled = resources.files("sstdist") / "codes"
    for c in candidates:
        q = bundled / c
        if q.is_file():
            return Path(str(q))
    raise FileNotFoundError(f"code file {name!s} not found")


def load_code(path: str | os.PathLike) -> CodeSpec:
    return parse_code(resolve_code_path(path).read_text())


def default_code() -> CodeSpec:
    return load_code("c1.code")
