"""Berenstein-Zelevinsky quilt semigroups over trivalent trees."""

from .bzdiagram import (
    BZDiagram,
    BZWeighting,
    boundary_weight,
    boundary_weights,
    build_diagram,
    hexagon_constraints,
    sl3_named_triangles,
    triangle_cone,
    zero_weighting,
)
from .gtpattern import (
    GTPattern,
    embed_generator,
    enumerate_patterns,
    hilbert_function_compare,
    ideal_equality_check,
    wedge_vee_move,
)
from .lattice import (
    BinomialMove,
    HilbertBasis,
    IntegerCone,
    ResourceLimitError,
    available_backends,
    count_fiber,
    factorization_components,
    factorizations,
    fiber_graph_connected,
    get_backend,
    hilbert_basis,
    relations_up_to_degree,
    set_backend,
)
from .liealg import invariant_dim, parse_weights, tensor_decompose, weyl_dim
from .presentation import (
    GeneratorTag,
    RelationFamily,
    caterpillar_quadratics,
    generators,
    p_face_generators,
    relation_families,
    verify_presentation,
)
from .quilt import (
    Quilt,
    QuiltWeighting,
    boundary_map,
    build_quilt,
    fiber_count,
    glue_duality_check,
    omega2_functional,
    restrict,
    support,
)
from .tree import (
    ProperSubtree,
    Tree,
    TreeError,
    all_trees,
    caterpillar,
    is_odd_subtree,
    parse_tree,
    proper_subtrees,
    subtree,
)

__version__ = "0.1.0"
