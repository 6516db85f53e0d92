"""Exact permutation-group oracle.

Permutations are numpy integer arrays of images. Products read left to right:
"p then q" is ``q[p]``, matching the portrait convention in :mod:`tree`.

:class:`PermGroup` keeps a stabiliser chain built by a deterministic,
incremental Schreier-Sims procedure: every Schreier generator is sifted, and
pairs already checked are cached so that adding generators later (normal
closures) only does new work. A group can be created with a pre-seeded base;
tree groups seed every vertex in level order, which makes the chain prefix up
to level m describe the quotient by the level-m stabiliser.

:func:`bfs_enumerate` is an independent brute-force cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError, NotATwoGroupError, OracleCapError, PreconditionError
from .tree import Portrait

DEFAULT_DEGREE_CAP = 1 << 14
DEFAULT_BFS_CAP = 1 << 22


def as_perm(p, degree: int | None = None) -> np.ndarray:
    arr = np.asarray(p, dtype=np.intp)
    if arr.ndim != 1:
        raise ValueError("a permutation is a one-dimensional image array")
    if degree is not None and arr.size != degree:
        raise DimensionMismatchError(f"permutation of degree {arr.size}, expected {degree}")
    if not np.array_equal(np.sort(arr), np.arange(arr.size)):
        raise ValueError("not a permutation")
    return arr


def perm_inverse(p: np.ndarray) -> np.ndarray:
    inv = np.empty_like(p)
    inv[p] = np.arange(p.size, dtype=p.dtype)
    return inv


def perm_mul(*ps: np.ndarray) -> np.ndarray:
    """Product applying the arguments from left to right."""
    out = ps[0]
    for p in ps[1:]:
        out = p[out]
    return out


def perm_conj(p: np.ndarray, g: np.ndarray) -> np.ndarray:
    """p^g = g^-1 p g."""
    return g[p[perm_inverse(g)]]


def perm_comm(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """[p, q] = p^-1 q^-1 p q."""
    return perm_mul(perm_inverse(p), perm_inverse(q), p, q)


def cycle(points: Sequence[int], degree: int) -> np.ndarray:
    """The cyclic permutation points[0] -> points[1] -> ... -> points[0]."""
    p = np.arange(degree, dtype=np.intp)
    for x, y in zip(points, list(points[1:]) + [points[0]]):
        p[x] = y
    return p


class PermGroup:
    """Permutation group with a verified stabiliser chain."""

    def __init__(self, degree: int, generators: Iterable = (), base: Sequence[int] = (),
                 cap: int = DEFAULT_DEGREE_CAP):
        if degree > cap:
            raise OracleCapError(f"degree {degree} exceeds the oracle cap {cap}")
        self.degree = degree
        self.cap = cap
        self._id = np.arange(degree, dtype=np.intp)
        self._seed = tuple(int(b) for b in base)
        self.generators: list[np.ndarray] = []
        self.base: list[int] = []
        self.strong: list[np.ndarray] = []
        self.strong_level: list[int] = []
        self.orbits: list[dict[int, np.ndarray]] = []
        self.uinv: list[dict[int, np.ndarray]] = []
        self._checked: set[tuple[int, int, int]] = set()
        self._base_arr = np.zeros(0, dtype=np.intp)
        for b in self._seed:
            self._new_level(b)
        for g in generators:
            self.add_generator(g)

    # -- chain maintenance --------------------------------------------------

    def _new_level(self, b: int):
        self.base.append(b)
        self.orbits.append({b: self._id})
        self.uinv.append({b: self._id})
        self._base_arr = np.asarray(self.base, dtype=np.intp)

    def _is_identity(self, g: np.ndarray) -> bool:
        return bool(np.array_equal(g, self._id))

    def _sift(self, g: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        B = self._base_arr
        nb = B.size
        lvl = start
        while lvl < nb:
            moved = np.flatnonzero(g[B[lvl:]] != B[lvl:])
            if moved.size == 0:
                return g, nb
            lvl += int(moved[0])
            ui = self.uinv[lvl].get(int(g[B[lvl]]))
            if ui is None:
                return g, lvl
            g = ui[g]
            lvl += 1
        return g, nb

    def _extend_orbit(self, lvl: int, new: np.ndarray):
        orbit, uinv = self.orbits[lvl], self.uinv[lvl]
        gens = [s for s, sl in zip(self.strong, self.strong_level) if sl >= lvl]
        queue = []
        for p, u in list(orbit.items()):
            q = int(new[p])
            if q not in orbit:
                uq = new[u]
                orbit[q], uinv[q] = uq, perm_inverse(uq)
                queue.append(q)
        while queue:
            p = queue.pop()
            u = orbit[p]
            for s in gens:
                q = int(s[p])
                if q not in orbit:
                    uq = s[u]
                    orbit[q], uinv[q] = uq, perm_inverse(uq)
                    queue.append(q)

    def _insert(self, h: np.ndarray, lvl: int):
        if lvl == len(self.base):
            self._new_level(int(np.flatnonzero(h != self._id)[0]))
        self.strong.append(h)
        self.strong_level.append(lvl)
        for l in range(lvl + 1):
            self._extend_orbit(l, h)

    def _close(self, lvl: int):
        i = lvl
        while i >= 0:
            orbit = self.orbits[i]
            if len(orbit) == 1:
                i -= 1
                continue
            b = self.base[i]
            grew = False
            sidx = [j for j, sl in enumerate(self.strong_level) if sl >= i]
            for p, u in list(orbit.items()):
                for j in sidx:
                    key = (i, p, j)
                    if key in self._checked:
                        continue
                    self._checked.add(key)
                    s = self.strong[j]
                    if p == b and s[b] == b:
                        continue  # the Schreier generator is s itself
                    su = s[u]
                    sg = self.uinv[i][int(s[p])][su]
                    h, at = self._sift(sg, i + 1)
                    if not self._is_identity(h):
                        self._insert(h, at)
                        i, grew = at, True
                        break
                if grew:
                    break
            if not grew:
                i -= 1

    def add_generator(self, g) -> bool:
        """Add ``g``; returns False when it was already a member."""
        g = as_perm(g, self.degree)
        self.generators.append(g)
        h, lvl = self._sift(g)
        if self._is_identity(h):
            return False
        self._insert(h, lvl)
        self._close(lvl)
        return True

    # -- queries ------------------------------------------------------------

    def order(self) -> int:
        out = 1
        for orb in self.orbits:
            out *= len(orb)
        return out

    def order_exponent(self) -> int:
        o = self.order()
        if o & (o - 1):
            raise NotATwoGroupError(f"group order {o} is not a power of two")
        return o.bit_length() - 1

    def basic_orbit_lengths(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def contains(self, g) -> bool:
        g = as_perm(g, self.degree)
        h, _ = self._sift(g)
        return self._is_identity(h)

    __contains__ = contains

    def orbit(self, point: int) -> set[int]:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} outside 0..{self.degree - 1}")
        seen = {point}
        queue = [point]
        while queue:
            p = queue.pop()
            for g in self.generators:
                q = int(g[p])
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return seen

    def subgroup(self, generators: Iterable = ()) -> "PermGroup":
        """Empty-chain group of the same kind (same degree and seeded base)."""
        return type(self)._like(self, generators)

    @classmethod
    def _like(cls, other: "PermGroup", generators):
        return cls(other.degree, generators, base=other._seed, cap=other.cap)


def build(generators: Sequence, degree: int | None = None, base: Sequence[int] = (),
          cap: int = DEFAULT_DEGREE_CAP) -> PermGroup:
    gens = [np.asarray(g, dtype=np.intp) for g in generators]
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generating set")
        degree = gens[0].size
    return PermGroup(degree, gens, base=base, cap=cap)


def order_exponent(G: PermGroup) -> int:
    return G.order_exponent()


def membership(g, G: PermGroup) -> bool:
    return G.contains(g)


def orbit(G: PermGroup, point: int) -> set[int]:
    return G.orbit(point)


def normal_closure(S: Iterable, G: PermGroup, check: bool = True) -> PermGroup:
    """Smallest normal subgroup of G containing S."""
    S = [as_perm(s, G.degree) for s in S]
    if check:
        for s in S:
            if not G.contains(s):
                raise PreconditionError("normal closure of elements outside the group")
    N = G.subgroup()
    queue = [s for s in S if N.add_generator(s)]
    inv = [(g, perm_inverse(g)) for g in G.generators]
    while queue:
        x = queue.pop()
        for g, gi in inv:
            c = g[x[gi]]
            if N.add_generator(c):
                queue.append(c)
    return N


def derived_subgroup(G: PermGroup) -> PermGroup:
    gens = G.generators
    comms = [perm_comm(gens[i], gens[j]) for i in range(len(gens)) for j in range(i + 1, len(gens))]
    return normal_closure(comms, G, check=False)


# -- brute force ------------------------------------------------------------


@dataclass(frozen=True)
class BfsResult:
    order: int | None
    overflow: bool
    cap: int


def bfs_enumerate(generators: Sequence, cap: int = DEFAULT_BFS_CAP) -> BfsResult:
    """Exact order by breadth-first closure; ``overflow`` once ``cap`` is passed."""
    gens = [np.asarray(g) for g in generators]
    if not gens:
        return BfsResult(1, False, cap)
    deg = gens[0].size
    if any(g.size != deg for g in gens):
        raise DimensionMismatchError("generators of different degrees")
    dt = np.uint8 if deg <= 256 else np.uint16 if deg <= 65536 else np.uint32
    gens = [g.astype(dt) for g in gens]
    void = np.dtype((np.void, deg * np.dtype(dt).itemsize))

    def key(rows):
        return np.ascontiguousarray(rows).view(void).ravel()

    frontier = np.arange(deg, dtype=dt)[None, :]
    seen = key(frontier).copy()
    while frontier.shape[0]:
        cand = np.concatenate([g[frontier] for g in gens])
        ck, idx = np.unique(key(cand), return_index=True)
        pos = np.searchsorted(seen, ck)
        pos[pos == seen.size] = 0
        fresh = seen[pos] != ck
        if not fresh.any():
            break
        frontier = cand[idx[fresh]]
        new = ck[fresh]
        seen = np.insert(seen, np.searchsorted(seen, new), new)
        if seen.size > cap:
            return BfsResult(None, True, cap)
    return BfsResult(int(seen.size), False, cap)


# -- tree quotients ---------------------------------------------------------


def vertex_number(level: int, index: int) -> int:
    """Point used for a vertex of level >= 1 in the vertex action."""
    return (1 << level) - 2 + index


class TreeGroup(PermGroup):
    """Subgroup of Aut T mod m acting on the vertices of levels 1..m.

    Every vertex is a base point, in level order, so all basic orbits have
    length 1 or 2 and the chain prefix through level k gives |G mod k|.
    """

    def __init__(self, degree: int, generators: Iterable = (), base: Sequence[int] = (),
                 cap: int = DEFAULT_DEGREE_CAP):
        m = (degree + 2).bit_length() - 2
        if vertex_number(m + 1, 0) != degree:
            raise DimensionMismatchError(f"degree {degree} is not 2^(m+1) - 2")
        self.levels = m
        super().__init__(degree, generators, base=base or range(degree), cap=cap)

    def level_exponent(self, k: int) -> int:
        """log2 |G mod k| for 0 <= k <= levels."""
        if not 0 <= k <= self.levels:
            raise ValueError(f"level {k} outside 0..{self.levels}")
        top = vertex_number(k + 1, 0)
        total = 0
        for b, orb in zip(self.base, self.orbits):
            if b < top and len(orb) > 1:
                if len(orb) != 2:
                    raise NotATwoGroupError(f"basic orbit of length {len(orb)}")
                total += 1
        return total

    def level_exponents(self) -> list[int]:
        """[log2 |G mod k| for k = 1..levels]."""
        return [self.level_exponent(k) for k in range(1, self.levels + 1)]


def tree_group(portraits: Iterable[Portrait], m: int, cap: int = DEFAULT_DEGREE_CAP) -> TreeGroup:
    """The group generated by the images of ``portraits`` in Aut T mod m."""
    degree = vertex_number(m + 1, 0)
    if degree > cap:
        raise OracleCapError(f"degree {degree} exceeds the oracle cap {cap}")
    return TreeGroup(degree, [p.vertex_permutation(m) for p in portraits], cap=cap)


def tree_element(p: Portrait, m: int) -> np.ndarray:
    return p.vertex_permutation(m)


def leaf_group(portraits: Iterable[Portrait], cap: int = DEFAULT_DEGREE_CAP) -> PermGroup:
    """The same quotient acting on leaves only (faithful at the full depth)."""
    perms = [p.leaf_permutation() for p in portraits]
    return build(perms, cap=cap)
