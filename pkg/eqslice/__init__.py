"""
Strongly invertible knots, equivariant trees and sliceness certificates.

The package works with planar diagrams in PD notation.  On top of the
classical layer (diagrams, Reidemeister moves and invariants) it models
strongly invertible knots drawn symmetrically about an axis, their quotient
knots and symmetric crossing changes; locally bipartitioned trees and the
links associated with them; symmetric plumbing trees of spheres; and the
pipeline that turns an equivariant unknotting sequence into a sliceness
certificate or a quotient knot into a non-sliceness verdict.

Resource bounds are set with `limits`; everything else is a pure function
of its arguments.
"""
import logging

from ._errors import (  # noqa: F401
    AxisNormalError as AxisNormalError,
    ConfigError as ConfigError,
    DatabaseError as DatabaseError,
    DiagramError as DiagramError,
    EqsliceError as EqsliceError,
    LimitExceeded as LimitExceeded,
    ParseError as ParseError,
    Problem as Problem,
    TreeError as TreeError,
    ValidationError as ValidationError,
)
from ._limits import (  # noqa: F401
    current_limits as current_limits,
    get_limit as get_limit,
    limits as limits,
)
from ._laurent import LaurentPolynomial as LaurentPolynomial  # noqa: F401
from ._linkdiag import (  # noqa: F401
    LinkDiagram as LinkDiagram,
    canonical_key as canonical_key,
    change_shift as change_shift,
    connect_sum as connect_sum,
    crossing_change as crossing_change,
    disjoint_union as disjoint_union,
    from_unoriented as from_unoriented,
    linking_matrix as linking_matrix,
    mirror as mirror,
    parse_pd as parse_pd,
    parse_pd_blocks as parse_pd_blocks,
    relabel as relabel,
    reverse as reverse,
    splice as splice,
)
from ._reidemeister import (  # noqa: F401
    r1_add as r1_add,
    r1_remove as r1_remove,
    r1_sites as r1_sites,
    r2_add as r2_add,
    r2_remove as r2_remove,
    r2_sites as r2_sites,
    r3 as r3,
    r3_sites as r3_sites,
    random_perturbation as random_perturbation,
    remove_crossings as remove_crossings,
    simplify as simplify,
)
from ._invariants import (  # noqa: F401
    InvariantReport as InvariantReport,
    UnknotStatus as UnknotStatus,
    arf as arf,
    determinant as determinant,
    goeritz as goeritz,
    goeritz_matrix as goeritz_matrix,
    invariant_report as invariant_report,
    jones as jones,
    jones_determinant as jones_determinant,
    kauffman_bracket as kauffman_bracket,
    signature as signature,
    try_unknot as try_unknot,
    unknotting_moves as unknotting_moves,
)
from ._symdiag import (  # noqa: F401
    FixedPoint as FixedPoint,
    Move as Move,
    MoveType as MoveType,
    NotFound as NotFound,
    OnAxisCrossing as OnAxisCrossing,
    SymmetricDiagram as SymmetricDiagram,
    UnknottingSequence as UnknottingSequence,
    apply_move as apply_move,
    candidate_moves as candidate_moves,
    check_symmetric as check_symmetric,
    classify_move as classify_move,
    equivariant_unknotting_search as equivariant_unknotting_search,
    mirror_symmetric as mirror_symmetric,
    parse_sym as parse_sym,
    quotient as quotient,
    slot_action as slot_action,
    validate_symmetric as validate_symmetric,
)
from ._eqtree import (  # noqa: F401
    BipartitionedTree as BipartitionedTree,
    EquivariantTree as EquivariantTree,
    associated_link as associated_link,
    associated_si_link as associated_si_link,
    check_equivariant as check_equivariant,
    hopf_link as hopf_link,
    parse_tree as parse_tree,
    prune_to_size as prune_to_size,
    tree_to_text as tree_to_text,
    tree_type as tree_type,
    validate_equivariant as validate_equivariant,
    validate_tree as validate_tree,
)
from ._plumbing import (  # noqa: F401
    AmbientDescriptor as AmbientDescriptor,
    EmbeddingMap as EmbeddingMap,
    ImmersedSurfaceBudget as ImmersedSurfaceBudget,
    PlumbingTree as PlumbingTree,
    ambient as ambient,
    ambient_tags as ambient_tags,
    builtin as builtin,
    capacity_check as capacity_check,
    check_plumbing as check_plumbing,
    derive_embedded_tree as derive_embedded_tree,
    parse_plumbing as parse_plumbing,
    plumbing_to_text as plumbing_to_text,
    plumbing_type as plumbing_type,
    validate_plumbing as validate_plumbing,
)
from ._certify import (  # noqa: F401
    Certificate as Certificate,
    Conclusion as Conclusion,
    DatabaseEntry as DatabaseEntry,
    ImmersedDiskDescriptor as ImmersedDiskDescriptor,
    Rejection as Rejection,
    Verdict as Verdict,
    adjudicate as adjudicate,
    check_theorem as check_theorem,
    disk_from_sequence as disk_from_sequence,
    load_database as load_database,
    parse_database as parse_database,
    quotient_obstruction as quotient_obstruction,
)
from ._corpus import (  # noqa: F401
    DiagramRegistry as DiagramRegistry,
    bundled_corpus as bundled_corpus,
    load_plumbing as load_plumbing,
    load_symmetric as load_symmetric,
    load_tree as load_tree,
    symmetric_names as symmetric_names,
)
from ._dot import plumbing_to_dot as plumbing_to_dot, tree_to_dot as tree_to_dot  # noqa: F401
from ._render import render_plumbing as render_plumbing, render_tree as render_tree  # noqa: F401
from ._version import __version__  # noqa: F401

_log = logging.getLogger(__name__)
