"""Cell-complex models, homology, and products."""

from .cubical import Axis, CubicalGrid, bounded_axis, cross_chain, periodic_axis
from .homology import (HomologyClass, Subcomplex, all_nonzero_classes,
                       betti_numbers, class_coordinates_gf2, class_from_label,
                       cycle_basis_gf2, homology_basis_gf2,
                       image_rank_gf2, induced_map_matrix_gf2,
                       sub_homology_basis_gf2,
                       validate_boundary_squares_to_zero)
from .io import (complex_from_dict, complex_to_dict, load_complex,
                 load_function_values, resolve_complex, save_complex,
                 save_function_values)
from .models import circle, from_id, point, sphere2, torus
from .products import (cohomology_basis_gf2, cup_length,
                       intersection_product)
from .simplicial import SimplicialComplex

__all__ = [
    "Axis", "CubicalGrid", "SimplicialComplex", "HomologyClass", "Subcomplex",
    "bounded_axis", "periodic_axis", "cross_chain",
    "all_nonzero_classes", "betti_numbers", "class_coordinates_gf2",
    "class_from_label", "cycle_basis_gf2", "homology_basis_gf2",
    "image_rank_gf2", "induced_map_matrix_gf2", "sub_homology_basis_gf2",
    "validate_boundary_squares_to_zero",
    "complex_from_dict", "complex_to_dict", "load_complex",
    "load_function_values", "resolve_complex", "save_complex",
    "save_function_values",
    "circle", "from_id", "point", "sphere2", "torus",
    "cohomology_basis_gf2", "cup_length", "intersection_product",
]
