"""Exact affine maps and the Cantor-set construction of dimensions.

``f(a, n)`` is x -> (x + a + n) / 2^a. The maps f_1, f_2 form an IFS whose
attractor C' is the image of the quarter-removed Cantor set under
x -> (x + 2) / 3, sitting inside [2/3, 1].

For a code b_0 b_1 ... over {1, 2} and a separator s > 2 the sequence with
multiplicities b_0, s, b_1 b_0, s, b_2 b_1 b_0, s, ... on alternating
letters has dimension 1/2 (f_{s,1} o f_{b_0,-1} o f_{b_0}^{-1})(x_hat).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .errors import PreconditionError
from .gf2 import Functional
from .sequence import DefiningSequence

Interval = tuple[Fraction, Fraction]
HULL: Interval = (Fraction(2, 3), Fraction(1))
DEFAULT_LETTERS = ("10", "01")


@dataclass(frozen=True)
class AffineMap:
    slope: Fraction
    intercept: Fraction

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "intercept", Fraction(self.intercept))
        if self.slope == 0:
            raise ValueError("affine map with zero slope")

    def __call__(self, x) -> Fraction:
        return self.slope * Fraction(x) + self.intercept

    def __matmul__(self, other: "AffineMap") -> "AffineMap":
        """self o other: apply other first."""
        return AffineMap(self.slope * other.slope, self.slope * other.intercept + self.intercept)

    compose = __matmul__

    def inverse(self) -> "AffineMap":
        return AffineMap(1 / self.slope, -self.intercept / self.slope)

    def fixed_point(self) -> Fraction:
        if self.slope == 1:
            raise PreconditionError("a translation has no unique fixed point")
        return self.intercept / (1 - self.slope)

    def image(self, interval: Interval) -> Interval:
        lo, hi = self(interval[0]), self(interval[1])
        return (lo, hi) if lo <= hi else (hi, lo)

    def __str__(self) -> str:
        return f"x -> {self.slope}*x + {self.intercept}"


IDENTITY = AffineMap(Fraction(1), Fraction(0))


def f(a: int, n: int = 0) -> AffineMap:
    if a < 1:
        raise PreconditionError(f"f_(a,n) needs a >= 1, got a = {a}")
    return AffineMap(Fraction(1, 1 << a), Fraction(a + n, 1 << a))


def compose_chain(maps: Sequence[AffineMap]) -> AffineMap:
    """maps[0] o maps[1] o ... o maps[-1]."""
    if not maps:
        raise PreconditionError("empty chain")
    return reduce(AffineMap.__matmul__, maps)


def cantor_embed() -> AffineMap:
    return AffineMap(Fraction(1, 3), Fraction(2, 3))


@dataclass(frozen=True)
class CantorCode:
    """Digits over {1, 2}: a finite prefix, optionally followed by a repeating period."""

    prefix: tuple[int, ...]
    period: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.prefix and not self.period:
            raise PreconditionError("a code needs at least one digit")
        if any(d not in (1, 2) for d in self.prefix + self.period):
            raise PreconditionError("code digits must be 1 or 2")

    _PATTERN = re.compile(r"^([12]*)(?:\(([12]+)\))?$")

    @classmethod
    def parse(cls, text: str) -> "CantorCode":
        """``"12(1)"`` is 1 2 1 1 1 ...; ``"(2)"`` is 2 2 2 ...; ``"1"`` is finite."""
        m = cls._PATTERN.match(text.replace(" ", "").replace(",", ""))
        if not m or not (m.group(1) or m.group(2)):
            raise PreconditionError(f"cannot parse code {text!r}; use digits 1/2 and an optional (period)")
        return cls(tuple(map(int, m.group(1))), tuple(map(int, m.group(2) or "")))

    @property
    def is_periodic(self) -> bool:
        return bool(self.period)

    def digits(self, count: int) -> tuple[int, ...]:
        if not self.period:
            if count > len(self.prefix):
                raise PreconditionError(f"finite code has only {len(self.prefix)} digits")
            return self.prefix[:count]
        out = list(self.prefix[:count])
        i = 0
        while len(out) < count:
            out.append(self.period[i % len(self.period)])
            i += 1
        return tuple(out)

    def __getitem__(self, i: int) -> int:
        return self.digits(i + 1)[i]

    def __str__(self) -> str:
        body = "".join(map(str, self.prefix))
        return body + (f"({''.join(map(str, self.period))})" if self.period else "")


def _as_code(code) -> CantorCode:
    return code if isinstance(code, CantorCode) else CantorCode.parse(str(code))


def code_map(digits: Sequence[int]) -> AffineMap:
    return compose_chain([f(b) for b in digits]) if digits else IDENTITY


def code_to_point(code) -> Fraction | Interval:
    """x_hat for a periodic code; for a finite code, the interval of points sharing it."""
    code = _as_code(code)
    head = code_map(code.prefix)
    if code.is_periodic:
        return head(code_map(code.period).fixed_point())
    return head.image(HULL)


def selector(s: int, b0: int) -> AffineMap:
    """f_{s,1} o f_{b0,-1} o f_{b0}^{-1}."""
    _check_s(s)
    return f(s, 1) @ f(b0, -1) @ f(b0).inverse()


def _check_s(s: int) -> None:
    if s <= 2:
        raise PreconditionError(f"the construction needs s > 2, got s = {s}")


def predicted_dimension(code, s: int) -> Fraction | Interval:
    """1/2 f_{s,1} f_{b0,-1} f_{b0}^{-1}(x_hat); an interval when the code is finite."""
    code = _as_code(code)
    _check_s(s)
    half = AffineMap(Fraction(1, 2), Fraction(0))
    g = half @ selector(s, code[0])
    x = code_to_point(code)
    return g(x) if code.is_periodic else g.image(x)


def construction_multiplicities(digits: Sequence[int], s: int) -> list[int]:
    """b_0, s, b_1 b_0, s, ..., b_t .. b_0, s."""
    _check_s(s)
    out: list[int] = []
    for j in range(len(digits)):
        out.extend(reversed(digits[: j + 1]))
        out.append(s)
    return out


def _letters(letters) -> tuple[Functional, Functional]:
    w1, w2 = (x if isinstance(x, Functional) else Functional.parse(x) for x in letters)
    if w1 == w2 or not w1 or not w2 or w1.n != 2 or w2.n != 2:
        raise PreconditionError("need two distinct nonzero functionals on C_2^2")
    return w1, w2


def build_omega_from_code(code, s: int, letters=DEFAULT_LETTERS, digits: int | None = None,
                          syllables: int | None = None) -> DefiningSequence:
    """Finite prefix of the interleaved construction.

    ``digits`` code digits are used (all of a finite code by default); with
    ``syllables`` the multiplicity list is cut to exactly that many entries,
    drawing as many digits as needed.
    """
    code = _as_code(code)
    _check_s(s)
    if syllables is not None:
        if syllables < 1:
            raise PreconditionError("need at least one syllable")
        digits = 1
        while len(construction_multiplicities(code.digits(digits), s)) < syllables:
            digits += 1
    elif digits is None:
        if code.is_periodic:
            raise PreconditionError("pass digits= or syllables= to truncate a periodic code")
        digits = len(code.prefix)
    mults = construction_multiplicities(code.digits(digits), s)
    if syllables is not None:
        mults = mults[:syllables]
    w1, w2 = _letters(letters)
    seq = [w1 if i % 2 == 0 else w2 for i in range(len(mults))]
    return DefiningSequence.from_syllables(2, seq, mults, periodic=False)


# -- eventually periodic surrogates ------------------------------------------


@dataclass(frozen=True)
class Surrogate:
    """Periodic repetition of the block b_J .. b_0, s.

    Every term with a_k = s sees the chain f_{s,1} f_{b0,-1} f_{b1} .. f_{bJ} f_s f_{b0} ..,
    whose limit is ``chain_value``. The true construction instead sees the
    ever longer chain f_{b1} f_{b2} ..., so the two agree only up to 2^{-(b_1+..+b_J)}.
    """

    omega: DefiningSequence
    block: tuple[int, ...]
    s: int

    @property
    def chain_value(self) -> Fraction:
        b0 = self.block[-2]
        inner = compose_chain([f(b) for b in reversed(self.block[:-2])] + [f(self.s), f(b0)]) \
            if len(self.block) > 2 else f(self.s) @ f(b0)
        y = inner.fixed_point()
        return Fraction(1, 2) * (f(self.s, 1) @ f(b0, -1))(y)


def periodic_surrogate(code, s: int, length: int | None = None, letters=DEFAULT_LETTERS) -> Surrogate:
    """Eventually periodic stand-in that repeats the block of the first ``length`` digits."""
    code = _as_code(code)
    _check_s(s)
    if length is None:
        length = len(code.prefix) + max(len(code.period), 1)
    block = tuple(reversed(code.digits(length))) + (s,)
    mults = list(block)
    if len(mults) % 2:  # keep the letter alternation periodic
        mults = mults * 2
    w1, w2 = _letters(letters)
    seq = [w1 if i % 2 == 0 else w2 for i in range(len(mults))]
    omega = DefiningSequence.from_syllables(2, seq, mults, periodic=True)
    return Surrogate(omega, block, s)


def selection_bounds(alpha: int, beta: int) -> tuple[Fraction, Fraction]:
    """(f_{alpha,1} o f_{beta,-1})(0) and (1)."""
    g = f(alpha, 1) @ f(beta, -1)
    return g(0), g(1)


def construction_estimate(code, s: int, digits: int | None = None, syllables: int | None = None,
                          letters=DEFAULT_LETTERS):
    """dimension_window over the last two blocks of a finite piece of the construction."""
    from .dimension import dimension_window

    code = _as_code(code)
    omega = build_omega_from_code(code, s, letters, digits=digits, syllables=syllables)
    complete = omega.head_length - 1  # the final syllable of a prefix is open
    used = omega.syllable_form().multiplicities.count(s) + 1  # digits are < s, separators are s
    k_lo = max(2, complete - 2 * (used + 1))
    return dimension_window(omega, k_lo, complete, n=2)
