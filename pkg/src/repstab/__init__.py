"""Modification rules, branching rules and representation stability for
``GL_n`` and ``Sp_2n``, with a brute-force character oracle."""

from ._backend import BACKEND
from .branching import (
    outer_restrict,
    outer_restrict_gl,
    outer_restrict_sp,
    restrict_gl_one,
    restrict_sp_one,
    stable_branch_gl,
    stable_branch_sp,
    tau,
    tensor,
    tensor_gl,
    tensor_sp,
    wedge_stable,
)
from .characters import (
    SymLaurent,
    decompose,
    exterior_power,
    free_lie_component,
    gl_character,
    irrep_dim,
    multiply,
    sp_character,
    split_restrict,
)
from .errors import RepstabError
from .labels import GL, SP, GlLabel, PairDecomp, SpLabel, VirtualDecomp, parse_label
from .lr import lr_coefficient, schur_product_expand
from .modification import SignedLabel, mod_gl, mod_sp
from .partitions import EMPTY, Partition, conjugate, contains, parse_partition, remove_border_strip
from .stability import SequenceSpec, detect_stability, generate, tau_sequence

__version__ = "0.1.0"
