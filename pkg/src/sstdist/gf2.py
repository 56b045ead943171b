"""Binary polynomials in the delay operator D and small matrices over GF(2)[D].

Polynomials are stored sparsely as a sorted tuple of the exponents whose
coefficient is 1, so code memory is not limited by a machine word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Gf2Poly",
    "TransferMatrix",
    "NotAnInverse",
    "poly_add",
    "poly_mul",
    "matrix_mul",
    "verify_inverse",
]


class NotAnInverse(ValueError):
    """Raised when G * Ginv is not D^tau times an identity matrix."""


@dataclass(frozen=True)
class Gf2Poly:
    exponents: tuple[int, ...] = ()

    def __post_init__(self):
        exps = tuple(self.exponents)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        if len(set(exps)) != len(exps):
            raise ValueError(f"duplicate exponents in {exps}; cancel them mod 2 first")
        object.__setattr__(self, "exponents", tuple(sorted(exps)))

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> "Gf2Poly":
        """Build a polynomial from exponents, cancelling repeats mod 2."""
        acc: set[int] = set()
        for e in exps:
            acc ^= {e}
        return cls(tuple(acc))

    @classmethod
    def monomial(cls, k: int) -> "Gf2Poly":
        return cls((k,))

    @classmethod
    def from_octal(cls, text: str) -> "Gf2Poly":
        """Parse an octal generator, most significant bit = D^0 (so 7 -> 1+D+D^2)."""
        bits = bin(int(text, 8))[2:]
        if bits == "0":
            return cls()
        return cls(tuple(i for i, b in enumerate(bits) if b == "1"))

    @classmethod
    def parse(cls, text: str) -> "Gf2Poly":
        """Parse ``1+D+D^2``, ``[0,1,2]`` or ``0o7`` notation."""
        s = text.strip().replace(" ", "")
        if s.lower().startswith("0o"):
            return cls.from_octal(s[2:])
        if s.startswith("[") and s.endswith("]"):
            body = s[1:-1]
            return cls.from_exponents(int(t) for t in body.split(",") if t)
        if s == "0":
            return cls()
        exps = []
        for term in s.split("+"):
            if term == "1":
                exps.append(0)
            elif term == "D":
                exps.append(1)
            else:
                m = re.fullmatch(r"D\^?(\d+)", term)
                if m is None:
                    raise ValueError(f"cannot parse polynomial term {term!r} in {text!r}")
                exps.append(int(m.group(1)))
        return cls.from_exponents(exps)

    @property
    def is_zero(self) -> bool:
        return not self.exponents

    @property
    def degree(self) -> int:
        """Largest exponent; -1 for the zero polynomial."""
        return self.exponents[-1] if self.exponents else -1

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return poly_add(self, other)

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        return poly_mul(self, other)

    def __str__(self) -> str:
        if not self.exponents:
            return "0"
        terms = []
        for e in self.exponents:
            terms.append("1" if e == 0 else "D" if e == 1 else f"D^{e}")
        return "+".join(terms)


ZERO = Gf2Poly()
ONE = Gf2Poly((0,))


def poly_add(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    return Gf2Poly(tuple(set(a.exponents) ^ set(b.exponents)))


def poly_mul(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    acc: set[int] = set()
    for i in a.exponents:
        for j in b.exponents:
            acc ^= {i + j}
    return Gf2Poly(tuple(acc))


@dataclass(frozen=True)
class TransferMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Gf2Poly, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(r) for r in self.entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} grid")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Gf2Poly]]) -> "TransferMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "TransferMatrix":
        return cls(n, n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Gf2Poly:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "TransferMatrix") -> "TransferMatrix":
        return matrix_mul(self, other)

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for row in self.entries for p in row)


def matrix_mul(a: TransferMatrix, b: TransferMatrix) -> TransferMatrix:
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = ZERO
            for k in range(a.cols):
                acc = poly_add(acc, poly_mul(a.entries[i][k], b.entries[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return TransferMatrix(a.rows, b.cols, tuple(out))


def verify_inverse(g: TransferMatrix, ginv: TransferMatrix) -> int:
    """Check that ``g @ ginv == D^tau * I`` and return the delay ``tau``.

    Parameters
    ----------
    g : TransferMatrix
        Generator matrix, k0 x n0.
    ginv : TransferMatrix
        Candidate right inverse, n0 x k0.

    Returns
    -------
    int
        Delay offset tau (0 for a delay-free inverse).

    Raises
    ------
    NotAnInverse
        If the shapes do not fit or the product is not a monomial multiple
        of the identity.
    """
    if g.cols != ginv.rows or g.rows != ginv.cols:
        raise NotAnInverse(f"shape {g.rows}x{g.cols} times {ginv.rows}x{ginv.cols} is not square k0 x k0")
    prod = matrix_mul(g, ginv)
    diag = prod.entries[0][0]
    if len(diag.exponents) != 1:
        raise NotAnInverse(f"diagonal entry {diag} is not a monomial D^tau")
    for i in range(prod.rows):
        for j in range(prod.cols):
            want = diag if i == j else ZERO
            if prod.entries[i][j] != want:
                raise NotAnInverse(f"entry ({i},{j}) of G*Ginv is {prod.entries[i][j]}, expected {want}")
    return diag.exponents[0]
