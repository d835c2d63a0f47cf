"""thcap: vertex-transitive simplicial complexes with prescribed homotopy
wedge summands, verified by exact integral homology and discrete Morse
collapses."""

from .complexes import (
    Graph,
    SimplicialComplex,
    barycentric_1skeleton,
    connected_components,
    from_facets,
    induced_subcomplex,
    join,
    one_skeleton,
    simplex,
    t_fold_join,
)
from .constructions import (
    GolombRuler,
    choose_modulus,
    clique_complex,
    closed_neighbourhood_complex,
    cyclic_extension,
    greedy_golomb,
    group_extension_graph,
    identity_component,
    is_golomb,
    k_family_complex,
    open_neighbourhood_complex,
    power_cycle,
    progression_free,
)
from .clusters import ClusterDecomposition, cluster_girth, verify_cluster, wedge_circle_count
from .groups import (
    Cyclic,
    DirectProduct,
    GroupPair,
    Symmetric,
    cayley_graph,
    gamma_d_pair,
    generated_subgroup,
    satisfies_G,
    satisfies_R,
    verify_transposition_identities,
)
from .homology import HomologyProfile, boundary_matrix, homology, smith_normal_form, wedge_prediction
from .morse import AcyclicMatching, collapse_critical, neighbourhood_matching
from .transitivity import (
    GroupAction,
    is_facet_transitive,
    is_vertex_transitive,
    lefschetz_obstruction,
    verify_simplicial_action,
)

__version__ = "0.1.0"
