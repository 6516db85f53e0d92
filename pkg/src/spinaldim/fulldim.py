"""Two-generated groups of full Hausdorff dimension, checked at finite levels.

``btilde(n, d)`` unfolds

    b~_n = delta(a, b_(1,n-3), ..., b_(n-3,n-3), a_{n+1}, b~_{n+1})

down to depth d. delta grafts below level n, so the portrait of b~_n mod d
only needs b~_{n+1} mod (d - n), and anything mod a depth <= n is trivial.
The recursion is therefore exact on all d levels; nothing is guessed at the
cut.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DepthError, OracleCapError, PreconditionError
from .oracle import (DEFAULT_DEGREE_CAP, TreeGroup, derived_subgroup, tree_element, tree_group,
                     vertex_number)
from .tree import Portrait, adding_machine, delta_graft, graft, pair

DELTA_LEMMA_DEGREE_CAP = 1 << 10


def _root(depth: int) -> Portrait:
    return Portrait.root_swap(depth) if depth >= 1 else Portrait.identity(0)


def _odometer(n: int, depth: int) -> Portrait:
    """a_n truncated to ``depth`` (exact: a_n only swaps on the spine above level n)."""
    return Portrait.from_vertices(depth, ["1" * k for k in range(min(n, depth))])


def sunic_generators(n: int, d: int) -> list[Portrait]:
    """[a, b_(1,n), ..., b_(n,n)] with b_(i,n) = <1, b_(i+1,n)> and b_(n,n) = <a, b_(1,n)>."""
    if n < 1:
        raise PreconditionError("G_n needs n >= 1")
    if d < 1:
        raise DepthError("depth must be at least 1")
    # bs[i] is b_(i+1,n) at the current depth, built up one level at a time
    bs = [Portrait.identity(0) for _ in range(n)]
    for depth in range(1, d + 1):
        below = depth - 1
        bs = [pair(Portrait.identity(below), bs[i + 1]) for i in range(n - 1)] + \
             [pair(_root(below), bs[0])]
    return [Portrait.root_swap(d)] + bs


def _btilde(n: int, d: int) -> Portrait:
    if d <= n:
        return Portrait.identity(d)
    r = d - n
    args = [_root(r)]
    if n > 3:
        args += sunic_generators(n - 3, r)[1:]
    args += [_odometer(n + 1, r), _btilde(n + 1, r)]
    return delta_graft(args, d)


def btilde(n: int, d: int) -> Portrait:
    """b~_n mod d, exact on every level."""
    if n < 3:
        raise PreconditionError("b~_n is defined for n >= 3")
    if d < n + 1:
        raise DepthError(f"b~_{n} needs depth >= {n + 1}, got {d}")
    return _btilde(n, d)


@dataclass(frozen=True)
class FullDimSpec:
    n: int
    depth: int

    def __post_init__(self):
        if self.n < 3:
            raise PreconditionError("H_n is defined for n >= 3")
        if self.depth < self.n + 1:
            raise DepthError(f"H_{self.n} needs depth >= {self.n + 1}")

    @property
    def reliable_depth(self) -> int:
        return self.depth

    def generators(self) -> tuple[Portrait, Portrait]:
        return h_group_generators(self.n, self.depth)

    def group(self, m: int) -> TreeGroup:
        if m > self.reliable_depth:
            raise DepthError(f"level {m} is beyond the reliable depth {self.reliable_depth}")
        return tree_group([g.truncate(m) for g in self.generators()], m)


def h_group_generators(n: int, d: int) -> tuple[Portrait, Portrait]:
    """(a_n, b~_n) mod d."""
    return adding_machine(n, d), btilde(n, d)


def h_exponent_table(n: int, m_max: int, m_min: int | None = None) -> list[tuple[int, int, Fraction]]:
    """Rows (m, log2 |H_n mod m|, that over 2^m)."""
    m_min = n + 1 if m_min is None else m_min
    G = tree_group(h_group_generators(n, m_max), m_max)
    return [(m, e := G.level_exponent(m), Fraction(e, 1 << m)) for m in range(m_min, m_max + 1)]


# -- the delta lemma ----------------------------------------------------------


@dataclass
class DeltaLemmaReport:
    n: int
    depth: int
    outcomes: dict = field(default_factory=dict)  # (w, i, j) -> bool, 1-based i < j
    identity_conjugation: bool = True
    identity_commutator: bool = True

    @property
    def memberships_hold(self) -> bool:
        return all(self.outcomes.values())

    @property
    def ok(self) -> bool:
        return self.memberships_hold and self.identity_conjugation and self.identity_commutator

    def failures(self) -> list:
        return [key for key, v in self.outcomes.items() if not v]


def _fit(g: Portrait, depth: int) -> Portrait:
    return g.truncate(depth) if g.depth > depth else g.extend(depth)


def delta_vertex(n: int, i: int) -> str:
    """1^i 0^(n-i), the image of 1^n under a_n^(2^i)."""
    return "1" * i + "0" * (n - i)


def conjugation_identities(gs: Sequence[Portrait], d: int) -> tuple[bool, bool]:
    """Exact portrait checks of the two relations behind the lemma, for every k.

    delta^(a_n^k) = prod_i ((1^n)^(a_n^(2^i + k))) * g_{i+1}, and, when k = 2^i - 2^j,
    [delta, a_n^k][delta^-1, a_n^k] = (1^i 0^(n-i)) * [g_{j+1}, g_{i+1}]^(g_{j+1}^-1).
    Commutators are x^-1 y^-1 x y and x^y = y^-1 x y.
    """
    n = len(gs)
    r = d - n
    gs = [_fit(g, r) for g in gs]
    delta = delta_graft(gs, d)
    a = adding_machine(n, d)
    spine = "1" * n
    conj_ok = comm_ok = True
    for k in range(1 << n):
        ak = a ** k
        rhs = Portrait.identity(d)
        for i, g in enumerate(gs):
            rhs = rhs * graft((a ** ((1 << i) + k)).act(spine), g, d)
        conj_ok &= delta ** ak == rhs
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j and ((1 << i) - (1 << j)) % (1 << n) == k]
        if len(pairs) == 1:
            i, j = pairs[0]
            lhs = delta.commutator(ak) * delta.inverse().commutator(ak)
            inner = gs[j].commutator(gs[i]) ** gs[j].inverse()
            comm_ok &= lhs == graft(delta_vertex(n, i), inner, d)
    return bool(conj_ok), bool(comm_ok)


def check_delta_lemma(gs: Sequence[Portrait], d: int,
                      cap: int = DELTA_LEMMA_DEGREE_CAP) -> DeltaLemmaReport:
    """Test w * [g_i, g_j] in H' for all w in X^n, i < j, with H = <a_n, delta(gs)> mod d."""
    n = len(gs)
    if not 1 <= n <= 3:
        raise PreconditionError("the lemma check supports 1 <= n <= 3")
    if d <= n:
        raise DepthError(f"depth must exceed n = {n}")
    if vertex_number(d + 1, 0) > cap:
        raise OracleCapError(f"depth {d} exceeds the oracle degree cap {cap}")
    r = d - n
    fitted = [_fit(g, r) for g in gs]
    H = tree_group([adding_machine(n, d), delta_graft(fitted, d)], d)
    Hd = derived_subgroup(H)
    report = DeltaLemmaReport(n, d)
    for i, j in itertools.combinations(range(n), 2):
        c = fitted[i].commutator(fitted[j])
        for w in itertools.product("01", repeat=n):
            w = "".join(w)
            report.outcomes[(w, i + 1, j + 1)] = Hd.contains(tree_element(graft(w, c, d), d))
    report.identity_conjugation, report.identity_commutator = conjugation_identities(gs, d)
    return report


# -- block containment ---------------------------------------------------------


@dataclass
class BlockReport:
    n: int
    m: int
    lower_exponent: int   # 2^n log2 |H mod (m - n)|
    upper_exponent: int   # log2 |G mod m|
    memberships: dict = field(default_factory=dict)

    @property
    def inequality(self) -> bool:
        return self.lower_exponent <= self.upper_exponent

    @property
    def holds(self) -> bool:
        return self.inequality and all(self.memberships.values())


def _quotient(gens: Sequence[Portrait], m: int, derived: bool) -> TreeGroup:
    G = tree_group([_fit(g, m) for g in gens], m)
    return derived_subgroup(G) if derived else G


def block_containment_check(h_gens: Sequence[Portrait], g_gens: Sequence[Portrait], n: int, m: int,
                            derived: bool = False, samples: int = 0,
                            rng: np.random.Generator | None = None) -> BlockReport:
    """|H mod (m-n)|^(2^n) <= |G mod m|, optionally with sampled graft memberships.

    With ``derived`` both groups are replaced by their derived subgroups.
    Sampled elements are random words in the (derived) generators of H,
    grafted at random level-n vertices.
    """
    if not 0 <= n < m:
        raise PreconditionError("need 0 <= n < m")
    if vertex_number(m + 1, 0) > DEFAULT_DEGREE_CAP:
        raise OracleCapError(f"level {m} exceeds the oracle degree cap")
    H = _quotient(h_gens, m - n, derived) if m - n >= 1 else None
    G = _quotient(g_gens, m, derived)
    e_h = H.level_exponent(m - n) if H is not None else 0
    report = BlockReport(n, m, e_h << n, G.level_exponent(m))
    if samples and H is not None:
        rng = rng or np.random.default_rng(0)
        gens = _perm_generators_as_portraits(H, m - n)
        for t in range(samples):
            h = Portrait.identity(m - n)
            for idx in rng.integers(0, len(gens), size=8):
                h = h * gens[idx]
            w = format(int(rng.integers(0, 1 << n)), f"0{n}b") if n else ""
            report.memberships[(t, w)] = G.contains(tree_element(graft(w, h, m), m))
    return report


def _perm_generators_as_portraits(G: TreeGroup, m: int) -> list[Portrait]:
    return [portrait_from_vertex_permutation(p, m) for p in G.generators]


def portrait_from_vertex_permutation(p: np.ndarray, m: int) -> Portrait:
    """Recover the portrait mod m from the vertex action on levels 1..m."""
    bits = np.zeros((1 << m) - 1, dtype=np.uint8)
    bits[0] = p[vertex_number(1, 0)] != vertex_number(1, 0)
    for k in range(1, m):
        base = vertex_number(k, 0)
        for idx in range(1 << k):
            child = p[vertex_number(k + 1, 2 * idx)] - vertex_number(k + 1, 0)
            img = p[base + idx] - base
            bits[(1 << k) - 1 + idx] = child != 2 * img
    return Portrait(m, bits)
