"""Oracle-side quantities for spinal groups, for comparison with the formulas."""

from __future__ import annotations

from .gf2 import Functional, kernel_basis
from .oracle import TreeGroup, normal_closure, tree_group
from .sequence import DefiningSequence
from .sizes import exponent
from .spinal import level_generator, spinal_generating_set


def spinal_tree_group(omega: DefiningSequence, m: int) -> TreeGroup:
    return tree_group(spinal_generating_set(omega, m), m)


def oracle_exponents(omega: DefiningSequence, m_max: int) -> list[int]:
    """[log2 |G_omega mod m| for m = 1..m_max] from one stabiliser chain."""
    return spinal_tree_group(omega, m_max).level_exponents()


def oracle_t_indices(omega: DefiningSequence, psi: Functional, m_max: int,
                     group: TreeGroup | None = None) -> list[int]:
    """[log2 |G mod m : T_omega(psi) mod m| for m = 1..m_max]."""
    G = group or spinal_tree_group(omega, m_max)
    kernel = [level_generator(omega, b, m_max).vertex_permutation(m_max) for b in kernel_basis(psi)]
    T = normal_closure(kernel, G, check=False)
    return [G.level_exponent(m) - T.level_exponent(m) for m in range(1, m_max + 1)]


def compare_sizes(omega: DefiningSequence, m_max: int) -> list[tuple[int, int, int]]:
    """Rows (m, formula, oracle) for m = 1..m_max."""
    orc = oracle_exponents(omega, m_max)
    return [(m, exponent(omega, m), orc[m - 1]) for m in range(1, m_max + 1)]
