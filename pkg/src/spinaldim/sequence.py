"""Defining sequences omega = omega_1 omega_2 ... of non-zero functionals.

A sequence is either eventually periodic (``preperiod`` then ``period``
repeated forever) or a finite prefix. Letters are 1-indexed throughout, as
are syllables: syllable ``k`` has letter ``syllable_letter(k)`` and
multiplicity ``a(k)``, and ``s(k) = a(1) + ... + a(k)`` with ``s(0) = 0``.

Most combinatorial indices attached to a level ``m`` only look at the first
``m - 1`` letters; they are computed on that window so finite prefixes work
whenever they are long enough.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import gf2
from .errors import (
    DimensionMismatchError,
    InsufficientPrefixError,
    InvalidFunctionalError,
    PreconditionError,
    UndefinedIndexError,
    UnsupportedModeError,
)
from .gf2 import Functional

PERIODIC = "periodic"
PREFIX = "prefix"


def _rle(letters: Sequence[Functional]) -> list[tuple[Functional, int]]:
    out: list[list] = []
    for x in letters:
        if out and out[-1][0] == x:
            out[-1][1] += 1
        else:
            out.append([x, 1])
    return [(x, a) for x, a in out]


def _minimal_period(period: list) -> list:
    p = len(period)
    for d in range(1, p + 1):
        if p % d == 0 and period == period[:d] * (p // d):
            return period[:d]
    return period


@dataclass(frozen=True)
class SyllableForm:
    """Run-length form of a sequence.

    ``letters``/``multiplicities`` list the head syllables followed by one
    copy of the repeating block. ``tail`` is ``"periodic"`` (syllables from
    index ``cycle_start`` on repeat), ``"infinite"`` (the last syllable never
    ends) or ``"truncated"`` (finite prefix; the last multiplicity is only a
    lower bound).
    """

    letters: tuple[Functional, ...]
    multiplicities: tuple[int, ...]
    tail: str
    cycle_start: int | None = None

    @property
    def prefix_sums(self) -> tuple[int, ...]:
        sums = [0]
        for a in self.multiplicities:
            sums.append(sums[-1] + a)
        return tuple(sums)

    def to_developed_form(self, length: int) -> list[Functional]:
        """First ``length`` letters of the developed sequence."""
        out: list[Functional] = []
        k = 0
        while len(out) < length:
            if k < len(self.letters):
                x, a = self.letters[k], self.multiplicities[k]
                last = k == len(self.letters) - 1
                if last and self.tail == "infinite":
                    a = length - len(out)
                elif last and self.tail == "truncated" and len(out) + a < length:
                    raise InsufficientPrefixError("truncated syllable form exhausted")
                out.extend([x] * a)
                k += 1
            elif self.tail == "periodic":
                k = self.cycle_start
            else:
                raise InsufficientPrefixError("syllable form exhausted")
        return out[:length]


class DefiningSequence:
    """An eventually periodic or finite-prefix sequence of non-zero functionals.

    Eventually periodic sequences are canonicalised (minimal period, minimal
    preperiod) so that ``==`` decides equality of the infinite sequences.
    """

    def __init__(self, n: int, preperiod=(), period=None, prefix=None):
        if (period is None) == (prefix is None):
            raise PreconditionError("give exactly one of period or prefix")
        self.n = n
        to_f = lambda x: Functional.parse(x) if isinstance(x, str) else x
        if period is not None:
            pre = [to_f(x) for x in preperiod]
            per = [to_f(x) for x in period]
            if not per:
                raise PreconditionError("period must be non-empty")
            self._check(pre + per)
            per = _minimal_period(per)
            while pre and pre[-1] == per[-1]:
                pre.pop()
                per = [per[-1]] + per[:-1]
            self.mode = PERIODIC
            self.preperiod = tuple(pre)
            self.period = tuple(per)
            self.prefix = None
        else:
            if preperiod:
                raise PreconditionError("preperiod is only meaningful with a period")
            pre = [to_f(x) for x in prefix]
            self._check(pre)
            self.mode = PREFIX
            self.preperiod = ()
            self.period = None
            self.prefix = tuple(pre)

    def _check(self, letters):
        for x in letters:
            if x.n != self.n:
                raise DimensionMismatchError(f"letter {x} does not have n={self.n}")
            if not x:
                raise InvalidFunctionalError("defining sequences need non-zero letters")

    # -- constructors -------------------------------------------------------

    @classmethod
    def periodic(cls, n, period, preperiod=()):
        return cls(n, preperiod=preperiod, period=period)

    @classmethod
    def finite(cls, n, prefix):
        return cls(n, prefix=prefix)

    @classmethod
    def from_syllables(cls, n, letters, mults, periodic=True, preperiod_syllables=0):
        """Build from syllable shorthand.

        With ``periodic`` the syllables from index ``preperiod_syllables`` on
        repeat; otherwise the developed letters form a finite prefix.
        """
        if len(letters) != len(mults) or not letters:
            raise PreconditionError("letters and mults must be non-empty and equal length")
        if any(a < 1 for a in mults):
            raise PreconditionError("multiplicities must be positive")
        letters = [Functional.parse(x) if isinstance(x, str) else x for x in letters]
        dev = [x for x, a in zip(letters, mults) for _ in range(a)]
        if not periodic:
            return cls.finite(n, dev)
        cut = sum(mults[:preperiod_syllables])
        return cls.periodic(n, dev[cut:], dev[:cut])

    @classmethod
    def from_json(cls, data: dict):
        n = int(data["n"])
        if "letters" in data:
            return cls.from_syllables(
                n,
                data["letters"],
                data["mults"],
                periodic=data.get("periodic", True),
                preperiod_syllables=data.get("preperiod_syllables", 0),
            )
        if "prefix" in data:
            return cls.finite(n, data["prefix"])
        return cls.periodic(n, data["period"], data.get("preperiod", ()))

    def to_json(self) -> dict:
        if self.mode == PERIODIC:
            return {
                "n": self.n,
                "preperiod": [str(x) for x in self.preperiod],
                "period": [str(x) for x in self.period],
            }
        return {"n": self.n, "prefix": [str(x) for x in self.prefix]}

    # -- basic access -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, DefiningSequence):
            return NotImplemented
        return (self.n, self.mode, self.preperiod, self.period, self.prefix) == (
            other.n, other.mode, other.preperiod, other.period, other.prefix)

    def __hash__(self):
        return hash((self.n, self.mode, self.preperiod, self.period, self.prefix))

    def __repr__(self):
        if self.mode == PERIODIC:
            pre = " ".join(map(str, self.preperiod))
            per = " ".join(map(str, self.period))
            return f"DefiningSequence(n={self.n}, {pre + ' ' if pre else ''}({per}))"
        return f"DefiningSequence(n={self.n}, prefix={' '.join(map(str, self.prefix))})"

    @property
    def length(self) -> float:
        """Number of available letters (``math.inf`` when periodic)."""
        return math.inf if self.mode == PERIODIC else len(self.prefix)

    def letter(self, i: int) -> Functional:
        """The i-th letter of the developed form, i >= 1."""
        if i < 1:
            raise IndexError("letters are 1-indexed")
        if self.mode == PREFIX:
            if i > len(self.prefix):
                raise InsufficientPrefixError(
                    f"letter {i} requested but the prefix has {len(self.prefix)}")
            return self.prefix[i - 1]
        if i <= len(self.preperiod):
            return self.preperiod[i - 1]
        return self.period[(i - 1 - len(self.preperiod)) % len(self.period)]

    def letters(self, count: int) -> list[Functional]:
        return [self.letter(i) for i in range(1, count + 1)]

    def shift(self, t: int = 1) -> "DefiningSequence":
        """sigma^t omega."""
        if t < 0:
            raise PreconditionError("shift amount must be non-negative")
        if self.mode == PREFIX:
            if t >= len(self.prefix):
                raise InsufficientPrefixError(f"cannot shift a {len(self.prefix)}-letter prefix by {t}")
            return DefiningSequence.finite(self.n, self.prefix[t:])
        lp = len(self.preperiod)
        if t <= lp:
            return DefiningSequence.periodic(self.n, self.period, self.preperiod[t:])
        r = (t - lp) % len(self.period)
        return DefiningSequence.periodic(self.n, self.period[r:] + self.period[:r])

    # -- syllables ----------------------------------------------------------

    @cached_property
    def _syllables(self):
        """(head, cycle) lists of (letter, multiplicity); cycle may be None."""
        if self.mode == PREFIX:
            return _rle(self.prefix), None
        pre, per = list(self.preperiod), list(self.period)
        if len(per) == 1:
            return _rle(pre) + [(per[0], math.inf)], None
        P = len(per)
        dev = pre + per * 4
        i0 = len(pre)
        # a cycle must start on a syllable boundary and end on one
        while (i0 > 0 and dev[i0] == dev[i0 - 1]) or dev[i0 + P] == dev[i0 + P - 1]:
            i0 += 1
        return _rle(dev[:i0]), _rle(dev[i0:i0 + P])

    def syllable_form(self) -> SyllableForm:
        head, cycle = self._syllables
        if self.mode == PREFIX:
            return SyllableForm(tuple(x for x, _ in head), tuple(a for _, a in head), "truncated")
        if cycle is None:
            return SyllableForm(tuple(x for x, _ in head), tuple(a for _, a in head), "infinite")
        allsyl = head + cycle
        return SyllableForm(
            tuple(x for x, _ in allsyl), tuple(a for _, a in allsyl), "periodic", len(head))

    def syllable(self, k: int) -> tuple[Functional, float]:
        """(letter, multiplicity) of syllable k >= 1.

        In prefix mode the last syllable of the prefix is open (it may continue
        beyond the data) and is therefore refused.
        """
        if k < 1:
            raise IndexError("syllables are 1-indexed")
        head, cycle = self._syllables
        if self.mode == PREFIX:
            if k >= len(head):
                raise InsufficientPrefixError(f"syllable {k} is not complete in the prefix")
            return head[k - 1]
        if k <= len(head):
            return head[k - 1]
        if cycle is None:
            raise IndexError(f"sequence has only {len(head)} syllables")
        return cycle[(k - len(head) - 1) % len(cycle)]

    def syllable_letter(self, k: int) -> Functional:
        head, _ = self._syllables
        if self.mode == PREFIX and k == len(head):
            return head[-1][0]
        return self.syllable(k)[0]

    def a(self, k: int) -> int:
        return self.syllable(k)[1]

    def s(self, k: int) -> int:
        """s_k = a_1 + ... + a_k."""
        if k < 0:
            raise IndexError("s_k needs k >= 0")
        head, cycle = self._syllables
        if cycle is None or k <= len(head):
            return sum(self.syllable(j)[1] for j in range(1, k + 1))
        full, rem = divmod(k - len(head), len(cycle))
        return (sum(a for _, a in head) + full * sum(a for _, a in cycle)
                + sum(a for _, a in cycle[:rem]))

    @property
    def cycle(self):
        """Syllables of one repeating block, or None."""
        return self._syllables[1]

    @property
    def head_length(self) -> int:
        return len(self._syllables[0])

    # -- level-window indices -----------------------------------------------

    def window(self, m: int) -> list[tuple[Functional, int]]:
        """Syllables of the prefix of length m - 1 (the letters visible mod m)."""
        if m < 1:
            raise PreconditionError("m must be a positive integer")
        if m - 1 > self.length:
            raise InsufficientPrefixError(
                f"level {m} needs {m - 1} letters but the prefix has {self.length}")
        return _rle(self.letters(m - 1))

    def s_inv(self, m: int) -> int:
        """Number of syllables of the length-(m-1) prefix; s_inv(1) = 0."""
        return len(self.window(m))

    def dim_mod(self, m: int) -> int:
        """Rank of the syllable letters visible mod m."""
        return gf2.rank_bits(x.bits for x, _ in self.window(m))

    def lambda_at_level(self, i: int, m: int) -> int:
        """Smallest lambda with dim(sigma^{s_lambda} omega mod (m - s_lambda)) = i.

        The shifted window is exactly syllables lambda+1 .. s_inv(m) of the
        window of level m.
        """
        w = self.window(m)
        bits = [x.bits for x, _ in w]
        for lam in range(len(w)):
            if gf2.rank_bits(bits[lam:]) == i:
                return lam
        raise UndefinedIndexError(f"no lambda with dimension {i} at level {m}")

    def lambda_index(self, k: int, i: int) -> int:
        """lambda_i(k): ``lambda_at_level(i, s_k + 1)``, the level at which the
        size ratio is minimal among levels with k visible syllables."""
        if k < 1:
            raise UndefinedIndexError("lambda_i(k) needs k >= 1")
        self.syllable(k)
        return self.lambda_at_level(i, self.s(k) + 1)

    def delta_j(self, m: int, j: int) -> int:
        """0 if syllable letter j is independent of letters j+1..s_inv(m), else 1."""
        if j == 0:
            return 1
        w = self.window(m)
        if not 1 <= j <= len(w):
            raise IndexError(f"j={j} outside 1..{len(w)}")
        later = [x.bits for x, _ in w[j:]]
        return 1 if gf2.in_span_bits(w[j - 1][0].bits, later) else 0

    def sigma_k(self, k: int) -> int:
        """Sigma_k = sum_{j=1}^k 2^{s_{j-1}} a_j."""
        total, s = 0, 0
        for j in range(1, k + 1):
            a = self.a(j)
            total += a << s
            s += a
        return total

    def diminf(self) -> int:
        """Rank of the letters recurring forever (exact for periodic mode)."""
        if self.mode != PERIODIC:
            raise UnsupportedModeError("diminf needs an eventually periodic sequence; "
                                       "use diminf_estimate for prefixes")
        best = None
        for t in range(len(self.period)):
            tail = self.shift(len(self.preperiod) + t).period
            r = gf2.rank_bits(x.bits for x in tail)
            best = r if best is None else min(best, r)
        return best

    def diminf_estimate(self, tail: int | None = None) -> int:
        """Rank of the last ``tail`` letters of a prefix (default: half of it).

        Only an estimate: unseen letters may change the answer either way.
        """
        if self.mode == PERIODIC:
            return self.diminf()
        L = len(self.prefix)
        tail = max(1, L // 2) if tail is None else tail
        return gf2.rank_bits(x.bits for x in self.prefix[L - tail:])

    def first_independence(self, psi: Functional, start: int = 1, m: int | None = None):
        """Greatest k such that psi is independent of syllable letters start..k.

        Returns ``math.inf`` when psi never enters the span. With ``m`` given
        only the letters visible mod m are scanned, and ``math.inf`` means
        "not within the window" (enough to decide every level-m question).
        """
        if m is not None:
            letters = [x for x, _ in self.window(m)]
        else:
            head, cycle = self._syllables
            if self.mode == PREFIX:
                raise UnsupportedModeError("unbounded scan of a finite prefix; pass m")
            letters = [x for x, _ in head] + [x for x, _ in (cycle or [])]
        span: list[int] = []
        for k in range(start, len(letters) + 1):
            span.append(letters[k - 1].bits)
            if gf2.in_span_bits(psi.bits, span):
                return k - 1
        return math.inf


# -- presets ----------------------------------------------------------------


def grigorchuk() -> DefiningSequence:
    """omega_1 omega_2 omega_3 repeated: the three non-zero functionals on C2^2."""
    return DefiningSequence.periodic(2, ["10", "01", "11"])


def sunic(n: int) -> DefiningSequence:
    """Period running through a basis of B*, so every n consecutive letters span."""
    return DefiningSequence.periodic(n, [Functional.basis(i, n) for i in range(n)])


def constant(n: int = 1) -> DefiningSequence:
    return DefiningSequence.periodic(n, [Functional.basis(0, n)])


PRESETS = {
    "grigorchuk": grigorchuk,
    "sunic": sunic,
    "constant": constant,
}


def preset(name: str) -> DefiningSequence:
    """Look up ``"grigorchuk"``, ``"sunic N"`` / ``"sunic-N"`` or ``"constant"``."""
    parts = name.replace("-", " ").split()
    if not parts or parts[0] not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; known: {sorted(PRESETS)}")
    args = [int(p) for p in parts[1:]]
    return PRESETS[parts[0]](*args)
