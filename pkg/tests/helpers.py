"""Shared random sequence corpus for the formula-vs-oracle tests."""

from __future__ import annotations

import random

from spinaldim.gf2 import Functional
from spinaldim.sequence import DefiningSequence


def random_sequence(rng: random.Random, n_choices=(2, 3), max_mult: int = 3,
                    max_period: int = 4) -> DefiningSequence:
    """Eventually periodic sequence with at most ``max_period`` syllables per period."""
    n = rng.choice(n_choices)
    period = rng.randint(1, max_period)
    head = rng.randint(0, 2)
    letters: list[int] = []
    for _ in range(head + period):
        while True:
            x = rng.randint(1, (1 << n) - 1)
            if not letters or x != letters[-1]:
                break
        letters.append(x)
    mults = [rng.randint(1, max_mult) for _ in letters]
    fs = [Functional(x, n) for x in letters]
    return DefiningSequence.from_syllables(n, fs, mults, periodic=True, preperiod_syllables=head)


def corpus(count: int, seed: int = 7, **kw) -> list[DefiningSequence]:
    rng = random.Random(seed)
    return [random_sequence(rng, **kw) for _ in range(count)]
