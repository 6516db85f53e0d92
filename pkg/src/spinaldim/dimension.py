"""Hausdorff dimension of spinal groups, exactly where possible.

For a sequence with diminf n >= 2 the dimension is half the liminf over k of

    t_k = Sigma_k / 2^{s_k}
          + 2^{-s_k} * sum_{i=2}^{n-1} 2^{s_{lambda_i(k)}} (2 - 2^{-a_{lambda_i(k)}})
          + 2^{-a_k} (1 - 2^{-a_{k-1}}).

When omega is eventually periodic with a cycle of p syllables summing to S,
each residue class k = r mod p converges: the Sigma part is a geometric
series with ratio 2^{-S}, and the other two parts only look back less than
one cycle, so they are eventually constant on the class. The liminf is the
least of these p limits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import gf2
from .errors import PreconditionError, UndefinedIndexError, UnsupportedModeError
from .sequence import PERIODIC, DefiningSequence

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class DimensionTerm:
    k: int
    value: Fraction
    sigma_part: Fraction
    middle_part: Fraction
    tail_part: Fraction
    lambdas: tuple[int, ...] = ()


@dataclass(frozen=True)
class DimensionResult:
    """A dimension value with a label saying how much to trust it.

    ``mode`` is "exact" (a proven value), "window" or "empirical" (finite
    data, no convergence guarantee). ``interval`` is the range of the
    half-terms that were examined, for the non-exact modes.
    """

    value: Fraction
    mode: str
    interval: tuple[Fraction, Fraction] | None = None
    residue_limits: dict = field(default_factory=dict)
    note: str = ""

    def decimal(self, precision: int = 12) -> str:
        return fraction_decimal(self.value, precision)

    def to_json(self, precision: int = 12) -> dict:
        out = {"value": str(self.value), "decimal": self.decimal(precision), "mode": self.mode}
        if self.interval is not None:
            out["interval"] = [str(x) for x in self.interval]
        if self.residue_limits:
            out["residue_limits"] = {str(r): str(v) for r, v in self.residue_limits.items()}
        if self.note:
            out["note"] = self.note
        return out


def fraction_decimal(x: Fraction, precision: int = 12) -> str:
    """Decimal expansion of x truncated toward zero, without float rounding."""
    sign = "-" if x < 0 else ""
    x = abs(x)
    whole = x.numerator // x.denominator
    frac = (x - whole) * 10 ** precision
    digits = str(frac.numerator // frac.denominator).rjust(precision, "0")
    return f"{sign}{whole}.{digits}" if precision else f"{sign}{whole}"


def _default_n(omega: DefiningSequence) -> int:
    return omega.diminf() if omega.mode == PERIODIC else omega.diminf_estimate()


def _sigma_part(omega: DefiningSequence, k: int) -> Fraction:
    return Fraction(omega.sigma_k(k), 1 << omega.s(k))


def dimension_term(omega: DefiningSequence, k: int, n: int | None = None) -> DimensionTerm:
    """t_k; raises UndefinedIndexError when some lambda_i(k) is not available."""
    if k < 2:
        raise PreconditionError("terms start at k = 2")
    n = _default_n(omega) if n is None else n
    if n < 2:
        raise PreconditionError(f"the term formula needs diminf >= 2, got {n}")
    sk = omega.s(k)
    lambdas = []
    middle = Fraction(0)
    for i in range(2, n):
        lam = omega.lambda_index(k, i)
        if lam == 0:
            raise UndefinedIndexError(f"lambda_{i}({k}) = 0 has no multiplicity")
        lambdas.append(lam)
        middle += Fraction(1 << omega.s(lam), 1 << sk) * (2 - Fraction(1, 1 << omega.a(lam)))
    sig = _sigma_part(omega, k)
    tail = Fraction(1, 1 << omega.a(k)) * (1 - Fraction(1, 1 << omega.a(k - 1)))
    return DimensionTerm(k, sig + middle + tail, sig, middle, tail, tuple(lambdas))


def dimension_cor2(omega: DefiningSequence, k: int) -> DimensionTerm:
    """The two-term form of t_k, valid when diminf = 2."""
    if k < 2:
        raise PreconditionError("terms start at k = 2")
    n = _default_n(omega)
    if n != 2:
        raise PreconditionError(f"the two-term form needs diminf = 2, got {n}")
    sig = _sigma_part(omega, k)
    tail = Fraction(1, 1 << omega.a(k)) * (1 - Fraction(1, 1 << omega.a(k - 1)))
    return DimensionTerm(k, sig + tail, sig, Fraction(0), tail)


def _residue_limit(omega: DefiningSequence, k: int, n: int) -> Fraction:
    """Limit of t_{k + jp} as j grows; k must sit at least two cycles past the head."""
    cyc = omega.cycle
    p = len(cyc)
    S = sum(a for _, a in cyc)
    sk = omega.s(k)
    last = sum(Fraction(omega.a(j) << omega.s(j - 1), 1 << sk) for j in range(k - p + 1, k + 1))
    geometric = last * Fraction(1 << S, (1 << S) - 1)
    term = dimension_term(omega, k, n)
    return geometric + term.middle_part + term.tail_part


def dimension_exact(omega: DefiningSequence) -> DimensionResult:
    if omega.mode != PERIODIC:
        raise UnsupportedModeError("exact dimension needs an eventually periodic sequence; "
                                   "use dimension_window")
    n = omega.diminf()
    if n == 1:
        return DimensionResult(Fraction(0), "exact", note="eventually constant")
    p = len(omega.cycle)
    base = omega.head_length + 2 * p + 1
    limits = {}
    for r in range(p):
        k = base + r
        limits[(k - omega.head_length - 1) % p] = _residue_limit(omega, k, n)
    return DimensionResult(HALF * min(limits.values()), "exact", residue_limits=limits)


def dimension_window(omega: DefiningSequence, k_lo: int, k_hi: int, n: int | None = None) -> DimensionResult:
    """Half the least term over k_lo..k_hi (terms with undefined lambdas skipped)."""
    if k_hi < k_lo:
        raise PreconditionError("empty window")
    k_lo = max(k_lo, 2)
    n = _default_n(omega) if n is None else n
    omega.syllable(k_hi)  # fails loudly when the prefix is too short
    terms = []
    for k in range(k_lo, k_hi + 1):
        try:
            terms.append(dimension_term(omega, k, n).value)
        except UndefinedIndexError:
            continue
    if not terms:
        raise UndefinedIndexError(f"no term defined in the window {k_lo}..{k_hi}")
    lo, hi = HALF * min(terms), HALF * max(terms)
    return DimensionResult(lo, "window", (lo, hi),
                           note="finite window of the liminf; no convergence guarantee")


def empirical_dimension(exponents: Iterable[tuple[int, int]]) -> DimensionResult:
    """min over the given levels of e_m / 2^m."""
    ratios = [Fraction(e, 1 << m) for m, e in exponents]
    if not ratios:
        raise PreconditionError("no levels given")
    lo, hi = min(ratios), max(ratios)
    return DimensionResult(lo, "empirical", (lo, hi), note="finite range of levels")


def level_ratio(omega: DefiningSequence, m: int) -> Fraction:
    """log2 |G_omega mod m| / 2^m."""
    from .sizes import exponent

    return Fraction(exponent(omega, m), 1 << m)


def window_rank(omega: DefiningSequence, k: int) -> int:
    return gf2.rank_bits(omega.syllable_letter(j).bits for j in range(1, k + 1))
