"""Linear algebra over GF(2) for functionals on B = (Z/2Z)^n.

Vectors are stored as Python ints; bit ``n-1`` is the first coordinate so that
the string form reads most-significant coordinate first (``"110"``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, InvalidFunctionalError

MAX_N = 64


@dataclass(frozen=True, order=True)
class BitVector:
    bits: int
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise DimensionMismatchError(f"n must be in [1, {MAX_N}], got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise DimensionMismatchError(f"bits {self.bits} do not fit in n={self.n}")

    @classmethod
    def parse(cls, text: str):
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(int(text, 2), len(text))

    @classmethod
    def basis(cls, i: int, n: int):
        """The i-th standard basis vector, i counted from 0 at the left."""
        return cls(1 << (n - 1 - i), n)

    def __str__(self) -> str:
        return format(self.bits, f"0{self.n}b")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __add__(self, other):
        _check_same_n([self, other])
        return type(self)(self.bits ^ other.bits, self.n)


class Functional(BitVector):
    """An element of the dual space B*."""


class GroupLetter(BitVector):
    """An element b of the level group B."""


def pairing(psi: BitVector, b: BitVector) -> int:
    """Evaluate psi(b): parity of the coordinatewise product."""
    _check_same_n([psi, b])
    return (psi.bits & b.bits).bit_count() & 1


def _check_same_n(vs: Sequence[BitVector]) -> int | None:
    ns = {v.n for v in vs}
    if len(ns) > 1:
        raise DimensionMismatchError(f"mixed dimensions {sorted(ns)}")
    return ns.pop() if ns else None


def echelon_bits(rows: Iterable[int]) -> list[int]:
    """Reduced row echelon basis of the span of ``rows`` (ints), sorted by
    decreasing leading bit. This is the canonical normal form of a span."""
    basis: list[int] = []
    for r in rows:
        for v in basis:
            r = min(r, r ^ v)
        if r:
            basis = [min(v, v ^ r) for v in basis]
            basis.append(r)
    basis.sort(reverse=True)
    return basis


def rank_bits(rows: Iterable[int]) -> int:
    return len(echelon_bits(rows))


def in_span_bits(v: int, rows: Iterable[int]) -> bool:
    for r in echelon_bits(rows):
        v = min(v, v ^ r)
    return v == 0


def rank(fs: Sequence[BitVector]) -> int:
    _check_same_n(fs)
    return rank_bits(f.bits for f in fs)


def in_span(psi: BitVector, fs: Sequence[BitVector]) -> bool:
    _check_same_n([psi, *fs])
    return in_span_bits(psi.bits, (f.bits for f in fs))


def span_basis(fs: Sequence[BitVector]) -> list[BitVector]:
    """Canonical (reduced echelon) basis of span(fs)."""
    n = _check_same_n(fs)
    if n is None:
        return []
    cls = type(fs[0])
    return [cls(b, n) for b in echelon_bits(f.bits for f in fs)]


def kernel_basis(psi: Functional) -> list[GroupLetter]:
    """n-1 independent elements b of B with psi(b) = 0."""
    if not psi:
        raise InvalidFunctionalError("kernel basis of the zero functional")
    n = psi.n
    pivot = psi.bits.bit_length() - 1
    out = []
    for j in range(n - 1, -1, -1):
        if j == pivot:
            continue
        b = 1 << j
        if (psi.bits >> j) & 1:
            b |= 1 << pivot
        out.append(GroupLetter(b, n))
    return out


def express(psi: int, rows: Sequence[int]) -> list[int] | None:
    """Indices of a subset of ``rows`` summing to ``psi``, or None."""
    # track combinations alongside the echelon reduction
    basis: list[tuple[int, int]] = []
    for idx, r in enumerate(rows):
        combo = 1 << idx
        for v, c in basis:
            if r ^ v < r:
                r, combo = r ^ v, combo ^ c
        if r:
            basis.append((r, combo))
            basis.sort(reverse=True)
    combo = 0
    for v, c in basis:
        if psi ^ v < psi:
            psi, combo = psi ^ v, combo ^ c
    if psi:
        return None
    return [i for i in range(len(rows)) if (combo >> i) & 1]
