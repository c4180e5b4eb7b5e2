"""Garside calculus, parabolic subgroups and marking graphs for finite-type
Artin groups.

Quick tour::

    from artinmark import context, normalize
    ctx = context("A3")
    normalize(ctx, "s1 s2 s1").to_text()    # 'DELTA^0 | s1 s2 s1' and friends

Contexts are cached per type spec; all values are immutable and safe to
share.
"""

from .coxeter import (
    ArtinType,
    CoxeterElement,
    DefiningGraph,
    RootSystem,
    build_defining_graph,
    cox_multiply,
    cox_support,
    descents,
    longest_element,
    root_reflection_table,
)
from .errors import ArtinMarkError
from .garside import (
    ArtinElement,
    GarsideContext,
    atom_length,
    conjugate,
    context,
    invert,
    is_positive,
    is_prefix,
    member_of_standard,
    multiply,
    normalize,
    parse_element,
    parse_word,
    support,
)
from .graph import (
    ExploredGraph,
    all_standard_markings,
    bfs,
    export_graph,
    neighbors,
    standard_marking_connectivity,
    verify_action_isometry,
)
from .marking import (
    Marking,
    TransversalData,
    conjugate_marking,
    enumerate_flip_moves,
    is_flip_edge,
    is_twist_edge,
    marking_stabilizer_probe,
    projection,
    standard_transversals,
    standardize_marking,
    transversal_decomposition,
    transversal_swap_path,
    twist_move,
    validate_marking,
)
from .parabolic import (
    ConjugacyGraph,
    ParabolicSubgroup,
    build_conjugacy_graph,
    central_generator_z,
    delta_permutation,
    garside_delta,
    irreducible_components,
    minimal_standardizer,
    simultaneous_standardizer,
    standard_conjugate,
    z_of_parabolic,
)
from .ribbons import Ribbon, elementary_ribbon, ribbon_delta_form
from .simplex import (
    AscendingProduct,
    CparabSimplex,
    LevelDecomposition,
    StandardizedSimplex,
    adjacent,
    canonical_positive_standardizer,
    decompose_levels,
    enumerate_maximal_standard,
    extract_ascending_product,
    is_maximal_standard,
    stabilizes_simplex,
    standardization_change,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
