"""Toric promotion, toggles and friends-and-strangers graphs on graph labelings."""

from .graph import (Graph, VertexPartition, complement, connected_components, enumerate_forests,
                    enumerate_trees, from_edge_list, from_prufer, is_forest, make_generator, tree_path)
from .labeling import (Labeling, OperatorSpec, cpro_path, cyclic_shift, factored_tpro_power,
                       forest_power_path, jdt_slide, parse_labeling, parse_operator, promotion, toggle,
                       toric_promotion, toric_promotion_pi, zeta_permutation)
from .orientation import (AcyclicOrientation, double_flip, double_flip_classes, enumerate_acyclic_orientations,
                          flip, flip_classes, induced_orientation, linear_extensions, nu, sources_and_sinks)
from .fs import (fs_adjacent, fs_components, inversion_isomorphism_check, verify_component_correspondence,
                 verify_component_cycle)
from .orbits import (CensusReport, VerificationScope, census, match_conjugacy_class, operator_order, orbit,
                     predicted_orbit_size, verify_cpro_order, verify_forest_theorem, verify_zeta_conjecture)

__version__ = "0.1.0"
