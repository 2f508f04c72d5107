from liealg.algebra import LieAlgebra, diagonal_3d, from_constants, jacobi_defect, jacobi_defects, load
from liealg.curvature import (
    BIVECTOR_BASIS,
    CurvaturePack,
    bivector_matrix,
    connection,
    connection_coefficients,
    cotton,
    cotton_york,
    cotton_york_closed_form_3d,
    covariant,
    curvature_pack,
    kulkarni_nomizu,
    mu_3d,
    ricci,
    ricci_closed_form_3d,
    riemann,
    scalar,
    schouten,
    weyl,
    weyl_bivector_operator,
    weyl_from_components,
)
