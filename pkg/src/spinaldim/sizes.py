"""Closed-form and recursive exponents log2 |G_omega mod m|.

Everything here is exact integer arithmetic on the letters visible mod m,
so both periodic and finite-prefix sequences work as long as the prefix
covers the first m - 1 letters.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from . import gf2
from .errors import InconsistencyError, PreconditionError
from .gf2 import Functional
from .sequence import DefiningSequence

BRANCH_ROOT = "m=1"
BRANCH_DIHEDRAL = "dihedral"
BRANCH_MAIN = "main-formula"


@dataclass(frozen=True)
class SizeBreakdown:
    m: int
    exponent: int
    branch: str
    dim: int = 1
    syllables: int = 0
    lambdas: tuple[int, ...] = ()
    deltas: tuple[int, ...] = ()
    terms: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self) | {"lambdas": list(self.lambdas), "deltas": list(self.deltas)}


def _prefix_sums(mults) -> list[int]:
    s = [0]
    for a in mults:
        s.append(s[-1] + a)
    return s


def size_exponent(omega: DefiningSequence, m: int) -> SizeBreakdown:
    """log2 |G_omega mod m| with the branch and the indices used."""
    if m < 1:
        raise PreconditionError("m must be a positive integer")
    if m == 1:
        return SizeBreakdown(1, 1, BRANCH_ROOT, dim=0)
    w = omega.window(m)
    K = len(w)
    if K == 1:
        return SizeBreakdown(m, m + 1, BRANCH_DIHEDRAL, dim=1, syllables=1)
    bits = [x.bits for x, _ in w]
    s = _prefix_sums(a for _, a in w)
    n = gf2.rank_bits(bits)
    lambdas = [omega.lambda_at_level(i, m) for i in range(1, n)]
    if lambdas[0] != K - 1:
        raise InconsistencyError(f"lambda_1 = {lambdas[0]}, expected {K - 1}")
    sigma = sum(w[j - 1][1] << s[j - 1] for j in range(1, K))
    middle = sum((1 << (s[lam] + 1)) - (1 << s[lam - 1]) for lam in lambdas[1:])
    l1 = lambdas[0]
    tail = (m - s[l1]) << s[l1]
    exponent = 3 + sigma + middle - (1 << s[l1 - 1]) + tail
    deltas = tuple(omega.delta_j(m, j) for j in range(K + 1))
    terms = {"sigma": sigma, "middle": middle, "correction": -(1 << s[l1 - 1]), "tail": tail}
    return SizeBreakdown(m, exponent, BRANCH_MAIN, n, K, tuple(lambdas), deltas, terms)


def exponent(omega: DefiningSequence, m: int) -> int:
    return size_exponent(omega, m).exponent


# -- one-step and multi-step descent ---------------------------------------


@dataclass(frozen=True)
class DescentStep:
    """exponent(omega, m) = 2 + a1 + delta + 2^a1 (shifted - 2 delta - 1)."""

    m: int
    a1: int
    delta: int
    shifted_m: int
    shifted_exponent: int

    @property
    def exponent(self) -> int:
        return self.apply(self.shifted_exponent)

    def apply(self, shifted_exponent: int) -> int:
        return 2 + self.a1 + self.delta + (shifted_exponent - 2 * self.delta - 1) * (1 << self.a1)


def descent_step(omega: DefiningSequence, m: int, shifted_exponent: int | None = None) -> DescentStep:
    """Relate level m of omega to level m - a1 of sigma^{a1} omega (needs m > a1)."""
    a1 = omega.a(1)
    if m <= a1:
        raise PreconditionError(f"descent needs m > a1 = {a1}, got m = {m}")
    delta = omega.delta_j(m, 1)
    if shifted_exponent is None:
        shifted_exponent = exponent(omega.shift(a1), m - a1)
    return DescentStep(m, a1, delta, m - a1, shifted_exponent)


def unroll_descent(omega: DefiningSequence, m: int) -> int:
    """Exponent obtained purely by repeated descent steps down to a dihedral level."""
    if m == 1:
        return 1
    steps = []
    while True:
        if len(omega.window(m)) == 1:
            value = m + 1
            break
        a1 = omega.a(1)
        steps.append(descent_step(omega, m, shifted_exponent=0))
        omega, m = omega.shift(a1), m - a1
    for st in reversed(steps):
        value = st.apply(value)
    return value


@dataclass(frozen=True)
class MultiDescent:
    m: int
    lam: int
    s: tuple[int, ...]
    a: tuple[int, ...]
    deltas: tuple[int, ...]
    shifted_exponent: int
    exponent: int
    spanning_tail: bool
    first_independence: bool
    spanning_value: int | None
    first_independence_value: int | None


def multi_descent(omega: DefiningSequence, m: int, lam: int,
                  shifted_exponent: int | None = None) -> MultiDescent:
    """lam descent steps at once, plus the two closed specialisations.

    ``spanning_tail``: letters lam+1 .. s_inv(m) span every visible letter.
    ``first_independence``: lam is the first syllable letter independent of
    the later visible ones (and m > a1 + 1).
    """
    if lam < 0:
        raise PreconditionError("lambda must be non-negative")
    w = omega.window(m)
    K = len(w)
    s = _prefix_sums(a for _, a in w)
    if lam > K or m <= s[lam]:
        raise PreconditionError(f"multi-descent needs m > s_lambda (lambda={lam}, m={m})")
    if lam >= 1 and lam == K:
        # the last visible syllable may be cut by the window; use its true length
        s[lam] = omega.s(lam)
        if m <= s[lam]:
            raise PreconditionError(f"multi-descent needs m > s_lambda (lambda={lam}, m={m})")
    a = [s[j] - s[j - 1] for j in range(1, lam + 1)]
    deltas = [omega.delta_j(m, j) for j in range(lam + 1)]
    if shifted_exponent is None:
        shifted_exponent = exponent(omega.shift(s[lam]), m - s[lam]) if s[lam] else exponent(omega, m)
    value = 3
    for j in range(1, lam + 1):
        value += (1 + a[j - 1] + deltas[j] - 2 * deltas[j - 1]) << s[j - 1]
    value += (shifted_exponent - 2 * deltas[lam] - 1) << s[lam]

    bits = [x.bits for x, _ in w]
    sigma = sum(a[j - 1] << s[j - 1] for j in range(1, lam + 1))
    spanning = gf2.rank_bits(bits[lam:]) == gf2.rank_bits(bits)
    span_val = 3 + sigma + ((shifted_exponent - 3) << s[lam]) if spanning else None
    first = (lam >= 1 and m > omega.a(1) + 1 and deltas[lam] == 0
             and all(deltas[j] == 1 for j in range(1, lam)))
    first_val = (3 + sigma + (1 << (s[lam] + 1)) - (1 << s[lam - 1])
                 + ((shifted_exponent - 3) << s[lam])) if first else None
    return MultiDescent(m, lam, tuple(s[:lam + 1]), tuple(a), tuple(deltas), shifted_exponent,
                        value, spanning, first, span_val, first_val)


# -- normal-closure indices -------------------------------------------------


def t_index_general(omega: DefiningSequence, psi0: Functional, m: int) -> int:
    """log2 of the index of T_omega(psi0) mod m in G_omega mod m, psi0 != omega_1."""
    if m < 1:
        raise PreconditionError("m must be a positive integer")
    if not psi0:
        raise PreconditionError("psi0 must be non-zero")
    if psi0 == omega.letter(1):
        raise PreconditionError("psi0 equals omega_1; use t_index_first")
    k = omega.first_independence(psi0, start=1, m=m)
    if k == math.inf or m <= omega.s(k) + 1:
        return 1
    return 3


def t_index_first(omega: DefiningSequence, m: int) -> int:
    """log2 of the index of T_omega(omega_1) mod m in G_omega mod m."""
    if m < 1:
        raise PreconditionError("m must be a positive integer")
    if m == 1:
        return 1
    if len(omega.window(m)) == 1:
        return m + 1
    a1 = omega.a(1)
    k = omega.first_independence(omega.letter(1), start=2, m=m)
    if k == math.inf or m <= omega.s(k) + 1:
        return a1 + 2
    return a1 + 3


def greatest_independent_k(omega: DefiningSequence, psi: Functional, start: int = 1):
    """The k of the index lemmas over the whole sequence (``math.inf`` if never spanned)."""
    return omega.first_independence(psi, start=start)
