"""Spinal groups on the binary rooted tree.

Exact sizes of the level quotients, Hausdorff dimensions, a permutation-group
oracle to check them, and two constructions: sequences whose dimension is a
point of a Cantor set, and 2-generated groups of full dimension.
"""

from .cantor import (AffineMap, CantorCode, build_omega_from_code, cantor_embed, code_to_point,
                     compose_chain, f, periodic_surrogate, predicted_dimension)
from .dimension import (DimensionResult, DimensionTerm, dimension_cor2, dimension_exact,
                        dimension_term, dimension_window, empirical_dimension)
from .errors import *  # noqa: F401,F403
from .fulldim import (block_containment_check, btilde, check_delta_lemma, h_group_generators,
                      sunic_generators)
from .gf2 import BitVector, Functional, GroupLetter, kernel_basis, rank, span_basis
from .oracle import PermGroup, TreeGroup, bfs_enumerate, derived_subgroup, normal_closure, tree_group
from .sequence import DefiningSequence, constant, grigorchuk, preset, sunic
from .sizes import (SizeBreakdown, descent_step, multi_descent, size_exponent, t_index_first,
                    t_index_general, unroll_descent)
from .spinal import level_generator, psi_bar, root_generator, spinal_generating_set
from .tree import Portrait, adding_machine, delta_graft, graft, pair

__version__ = "0.1.0"
