"""Generators of the spinal group G_omega as depth-truncated portraits.

The root generator ``a`` swaps the two maximal subtrees. An element ``b`` of
B = C_2^n fixes the spine 1^k and acts at the vertex 1^k 0 as ``a`` exactly
when omega_{k+1}(b) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DepthError, InvalidFunctionalError, PreconditionError
from .gf2 import Functional, GroupLetter, express, pairing
from .sequence import DefiningSequence
from .tree import Portrait, rooted_level_parity

# classical letters of the first Grigorchuk group, against the period 10, 01, 11
GRIGORCHUK_LETTERS = {"b": "11", "c": "10", "d": "01"}


def root_generator(depth: int) -> Portrait:
    if depth < 1:
        raise DepthError("the root generator needs depth >= 1")
    return Portrait.root_swap(depth)


def level_generator(omega: DefiningSequence, b: GroupLetter, depth: int) -> Portrait:
    """Portrait of b in B; uses the letters omega_1 .. omega_{depth-1}."""
    if b.n != omega.n:
        raise InvalidFunctionalError(f"letter of B has n={b.n}, sequence has n={omega.n}")
    if depth < 0:
        raise DepthError("depth must be non-negative")
    bits = np.zeros((1 << depth) - 1, dtype=np.uint8)
    for k in range(depth - 1):
        if pairing(omega.letter(k + 1), b):
            # vertex 1^k 0 sits at level k+1 with index 2^(k+1) - 2
            bits[(2 << k) - 1 + (2 << k) - 2] = 1
    return Portrait(depth, bits)


@dataclass(frozen=True)
class SpinalGroupSpec:
    omega: DefiningSequence
    depth: int

    def generators(self) -> list[Portrait]:
        return spinal_generating_set(self.omega, self.depth)


def spinal_generating_set(omega: DefiningSequence, depth: int) -> list[Portrait]:
    """a followed by the level generators of the standard basis of B."""
    n = omega.n
    return [root_generator(depth)] + [
        level_generator(omega, GroupLetter.basis(i, n), depth) for i in range(n)
    ]


def grigorchuk_generators(depth: int) -> dict[str, Portrait]:
    """The classical generators a, b, c, d of the first Grigorchuk group."""
    from .sequence import grigorchuk

    omega = grigorchuk()
    out = {"a": root_generator(depth)}
    for name, bits in GRIGORCHUK_LETTERS.items():
        out[name] = level_generator(omega, GroupLetter.parse(bits), depth)
    return out


def _first_occurrences(omega: DefiningSequence, limit: int) -> dict[Functional, int]:
    seen: dict[Functional, int] = {}
    for pos in range(1, limit + 1):
        seen.setdefault(omega.letter(pos), pos - 1)
    return seen


def psi_bar(psi: Functional, x: int, g: Portrait, omega: DefiningSequence, depth: int | None = None) -> int:
    """The parity homomorphism on Stab(1) attached to psi and a letter x.

    ``psi_bar(psi, 0, .)`` sends b to psi(b) and b^a to 0; ``x = 1`` swaps the
    roles. psi must be a sum of distinct letters occurring in omega before
    position ``depth``; each letter first seen at position n_j + 1 contributes
    the parity of level n_j below the level-1 vertex 1 - x (the vertex x itself
    when n_j = 0).
    """
    depth = g.depth if depth is None else depth
    if depth > g.depth:
        raise DepthError(f"portrait depth {g.depth} below requested depth {depth}")
    if x not in (0, 1):
        raise ValueError("x must be 0 or 1")
    if depth >= 1 and g.swap("") != 0:
        raise PreconditionError("psi_bar is defined on the first level stabiliser only")
    first = _first_occurrences(omega, max(depth - 1, 0))
    letters = list(first)
    combo = express(psi.bits, [f.bits for f in letters])
    if combo is None:
        raise InvalidFunctionalError(f"{psi} is not in the span of the letters seen up to depth {depth}")
    other = str(1 - x)
    value = 0
    for idx in combo:
        nj = first[letters[idx]]
        if nj == 0:
            value ^= g.swap(str(x))
        else:
            value ^= rooted_level_parity(g, other, nj)
    return value
