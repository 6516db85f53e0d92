"""Automorphisms of the binary rooted tree, truncated at a finite depth.

A :class:`Portrait` of depth ``d`` stores one swap bit per vertex of levels
``0 .. d-1`` in level order, so it represents an element of Aut T mod d. The
swap bit at ``w`` is the root permutation of the section ``g@w``. Vertices
are words over ``{0, 1}``; at level ``k`` the word ``w`` has index
``int(w, 2)``.

Products read left to right: ``g * h`` applies ``g`` first, then ``h``. With
this convention ``g ** h`` (conjugation) is ``h^-1 g h`` and sections obey
``(g*h)@w = (g@w) * (h@(w^g))``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DepthError


def _vertex(w) -> tuple[int, int]:
    """(level, index) of a vertex given as a word string or bit tuple."""
    if isinstance(w, str):
        if set(w) - {"0", "1"}:
            raise ValueError(f"vertex words are over {{0,1}}, got {w!r}")
        return len(w), int(w, 2) if w else 0
    w = tuple(w)
    idx = 0
    for x in w:
        idx = 2 * idx + int(x)
    return len(w), idx


def _word(level: int, index: int) -> str:
    return format(index, f"0{level}b") if level else ""


class Portrait:
    """Depth-``d`` portrait; immutable, hashable, comparable with ``==``."""

    __slots__ = ("depth", "bits", "_imgs")

    def __init__(self, depth: int, bits=None):
        if depth < 0:
            raise DepthError("depth must be non-negative")
        size = (1 << depth) - 1
        if bits is None:
            arr = np.zeros(size, dtype=np.uint8)
        else:
            arr = np.asarray(bits, dtype=np.uint8).copy()
            if arr.shape != (size,):
                raise DepthError(f"depth {depth} needs {size} swap bits, got {arr.shape}")
            if arr.max(initial=0) > 1:
                raise ValueError("swap bits must be 0 or 1")
        arr.flags.writeable = False
        self.depth = depth
        self.bits = arr
        self._imgs = None

    # -- construction -------------------------------------------------------

    @classmethod
    def identity(cls, depth: int) -> "Portrait":
        return cls(depth)

    @classmethod
    def root_swap(cls, depth: int) -> "Portrait":
        if depth < 1:
            raise DepthError("the root swap needs depth >= 1")
        bits = np.zeros((1 << depth) - 1, dtype=np.uint8)
        bits[0] = 1
        return cls(depth, bits)

    @classmethod
    def random(cls, depth: int, rng: np.random.Generator) -> "Portrait":
        return cls(depth, rng.integers(0, 2, (1 << depth) - 1, dtype=np.uint8))

    @classmethod
    def parse(cls, text: str) -> "Portrait":
        """Inverse of ``str``: level bit strings joined by ``|``."""
        text = text.strip()
        if not text:
            return cls(0)
        levels = text.split("|")
        for k, lv in enumerate(levels):
            if len(lv) != 1 << k:
                raise ValueError(f"level {k} needs {1 << k} bits, got {lv!r}")
        return cls(len(levels), [int(c) for lv in levels for c in lv])

    @classmethod
    def from_vertices(cls, depth: int, vertices: Iterable) -> "Portrait":
        """Portrait swapping exactly at the given vertices."""
        bits = np.zeros((1 << depth) - 1, dtype=np.uint8)
        for w in vertices:
            lv, idx = _vertex(w)
            if lv >= depth:
                raise DepthError(f"vertex {w!r} is not internal at depth {depth}")
            bits[(1 << lv) - 1 + idx] ^= 1
        return cls(depth, bits)

    # -- basic access -------------------------------------------------------

    def level(self, k: int) -> np.ndarray:
        return self.bits[(1 << k) - 1:(2 << k) - 1]

    def swap(self, w) -> int:
        lv, idx = _vertex(w)
        if lv >= self.depth:
            raise DepthError(f"vertex {w!r} is not internal at depth {self.depth}")
        return int(self.bits[(1 << lv) - 1 + idx])

    def __str__(self) -> str:
        return "|".join("".join(map(str, self.level(k))) for k in range(self.depth))

    def __repr__(self) -> str:
        return f"Portrait({self.depth}, {str(self)!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Portrait):
            return NotImplemented
        return self.depth == other.depth and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash((self.depth, self.bits.tobytes()))

    def is_identity(self) -> bool:
        return not self.bits.any()

    def images(self) -> list[np.ndarray]:
        """``images()[k][i]`` is the index of the image of level-k vertex i."""
        if self._imgs is None:
            imgs = [np.zeros(1, dtype=np.int64)]
            for k in range(self.depth):
                prev2 = 2 * imgs[-1]
                b = self.level(k).astype(np.int64)
                nxt = np.empty(2 << k, dtype=np.int64)
                nxt[0::2] = prev2 + b
                nxt[1::2] = prev2 + (1 - b)
                imgs.append(nxt)
            object.__setattr__(self, "_imgs", imgs)
        return self._imgs

    def act(self, w) -> str:
        """Image w^g of a vertex."""
        lv, idx = _vertex(w)
        if lv > self.depth:
            raise DepthError(f"vertex {w!r} is below depth {self.depth}")
        return _word(lv, int(self.images()[lv][idx]))

    # -- group operations ---------------------------------------------------

    def _check_depth(self, other: "Portrait"):
        if self.depth != other.depth:
            raise DepthError(f"depth mismatch: {self.depth} vs {other.depth}")

    def __mul__(self, other: "Portrait") -> "Portrait":
        self._check_depth(other)
        imgs = self.images()
        out = np.empty_like(self.bits)
        for k in range(self.depth):
            lo, hi = (1 << k) - 1, (2 << k) - 1
            out[lo:hi] = self.bits[lo:hi] ^ other.bits[lo:hi][imgs[k]]
        return Portrait(self.depth, out)

    def inverse(self) -> "Portrait":
        imgs = self.images()
        out = np.empty_like(self.bits)
        for k in range(self.depth):
            lo, hi = (1 << k) - 1, (2 << k) - 1
            out[lo:hi][imgs[k]] = self.bits[lo:hi]
        return Portrait(self.depth, out)

    def __pow__(self, e):
        if isinstance(e, Portrait):
            return e.inverse() * self * e
        if e < 0:
            return self.inverse() ** (-e)
        result, base = Portrait(self.depth), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def commutator(self, other: "Portrait") -> "Portrait":
        """[g, h] = g^-1 h^-1 g h."""
        return self.inverse() * other.inverse() * self * other

    def order(self) -> int:
        g, o = self, 1
        while not g.is_identity():
            g, o = g * g, 2 * o
        return o

    # -- tree structure -----------------------------------------------------

    def section(self, w) -> "Portrait":
        """g@w as a portrait of depth ``depth - |w|``."""
        lv, idx = _vertex(w)
        if lv > self.depth:
            raise DepthError(f"word {w!r} longer than depth {self.depth}")
        d = self.depth - lv
        out = np.empty((1 << d) - 1, dtype=np.uint8)
        for t in range(d):
            src = (1 << (lv + t)) - 1 + (idx << t)
            out[(1 << t) - 1:(2 << t) - 1] = self.bits[src:src + (1 << t)]
        return Portrait(d, out)

    def truncate(self, depth: int) -> "Portrait":
        """Image in Aut T mod ``depth``."""
        if depth > self.depth:
            raise DepthError(f"cannot truncate depth {self.depth} to {depth}")
        return Portrait(depth, self.bits[:(1 << depth) - 1])

    def extend(self, depth: int) -> "Portrait":
        """Same swap bits, acting trivially on the new levels."""
        if depth < self.depth:
            raise DepthError("extend cannot reduce depth")
        out = np.zeros((1 << depth) - 1, dtype=np.uint8)
        out[:self.bits.size] = self.bits
        return Portrait(depth, out)

    def leaf_permutation(self) -> np.ndarray:
        """Images of the 2^depth leaves (one-line form)."""
        return self.images()[self.depth].copy()

    def vertex_permutation(self, m: int | None = None) -> np.ndarray:
        """Action on the vertices of levels 1..m, numbered in level order
        (level-k vertex i has number 2^k - 2 + i)."""
        m = self.depth if m is None else m
        if m > self.depth:
            raise DepthError(f"level {m} below depth {self.depth}")
        imgs = self.images()
        return np.concatenate([imgs[k] + ((1 << k) - 2) for k in range(1, m + 1)]) \
            if m else np.zeros(0, dtype=np.int64)


# -- free functions ---------------------------------------------------------


def compose(g: Portrait, h: Portrait) -> Portrait:
    """Apply g, then h."""
    return g * h


def section(g: Portrait, w) -> Portrait:
    return g.section(w)


def pair(g0: Portrait, g1: Portrait, swap: int = 0) -> Portrait:
    """<g0, g1> sigma^swap, one level deeper than its arguments."""
    g0._check_depth(g1)
    d = g0.depth
    out = np.empty((2 << d) - 1, dtype=np.uint8)
    out[0] = swap & 1
    for k in range(d):
        lo = (2 << k) - 1
        out[lo:lo + (1 << k)] = g0.level(k)
        out[lo + (1 << k):lo + (2 << k)] = g1.level(k)
    return Portrait(d + 1, out)


def graft(w, g: Portrait, depth: int, truncate: bool = False) -> Portrait:
    """w * g: acts as g on the subtree below w, trivially elsewhere.

    ``g`` shallower than the room below ``w`` acts trivially further down;
    deeper ``g`` is an error unless ``truncate`` (then only its image mod the
    available depth is used).
    """
    lv, idx = _vertex(w)
    room = depth - lv
    if room < 0:
        raise DepthError(f"vertex {w!r} below depth {depth}")
    if g.depth > room:
        if not truncate:
            raise DepthError(f"graft of depth {g.depth} at level {lv} overflows depth {depth}")
        g = g.truncate(room)
    out = np.zeros((1 << depth) - 1, dtype=np.uint8)
    for t in range(g.depth):
        dst = (1 << (lv + t)) - 1 + (idx << t)
        out[dst:dst + (1 << t)] = g.level(t)
    return Portrait(depth, out)


def adding_machine(n: int, depth: int) -> Portrait:
    """a_n = <1, a_{n-1}> sigma: swaps at 1^k for k < n; a full 2^n-cycle on level n."""
    if n < 1:
        raise DepthError("adding machine a_n needs n >= 1")
    if depth < n:
        raise DepthError(f"a_{n} needs depth >= {n}")
    return Portrait.from_vertices(depth, ["1" * k for k in range(n)])


def delta_graft(gs: Sequence[Portrait], depth: int, truncate: bool = False) -> Portrait:
    """delta(g_1..g_n) = prod_i (1^i 0^(n-i)) * g_{i+1}; the subtree 1^n is left trivial."""
    n = len(gs)
    if n < 1:
        raise ValueError("delta needs at least one element")
    if depth < n:
        raise DepthError(f"delta of {n} elements needs depth >= {n}")
    out = np.zeros((1 << depth) - 1, dtype=np.uint8)
    for i, g in enumerate(gs):
        out |= graft("1" * i + "0" * (n - i), g, depth, truncate=truncate).bits
    return Portrait(depth, out)


def level_parity(g: Portrait, k: int) -> int:
    """phi_k(g): parity of the swap bits on level k."""
    if not 0 <= k < g.depth:
        raise DepthError(f"level {k} is not internal at depth {g.depth}")
    return int(g.level(k).sum() & 1)


def rooted_level_parity(g: Portrait, v, k: int) -> int:
    """v phi_k(g): parity of the swap bits at the vertices v w, |w| = k."""
    lv, idx = _vertex(v)
    if k < 0 or lv + k >= g.depth:
        raise DepthError(f"level {lv + k} is not internal at depth {g.depth}")
    start = (1 << (lv + k)) - 1 + (idx << k)
    return int(g.bits[start:start + (1 << k)].sum() & 1)


def to_leaf_permutation(g: Portrait) -> np.ndarray:
    return g.leaf_permutation()


def all_vertex_swaps(depth: int) -> list[Portrait]:
    """Generators of the whole of Aut T mod depth: one swap per internal vertex."""
    out = []
    for k in range(depth):
        for i in range(1 << k):
            out.append(Portrait.from_vertices(depth, [_word(k, i)]))
    return out
