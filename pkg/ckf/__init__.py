from ckf.conditions import LcwConditions, exterior_derivative, lcw_conditions, differential_checks
from ckf.families import (
    FAMILY_ORBIT,
    LcwFamily,
    LcwPotential,
    exact_gradient,
    lcw_potential,
    orbit_class,
    potential_evaluate,
    psi_evaluate,
    reduce_to_family,
    verify_correspondence,
)
from ckf.fields import CkField, ck_defect_numeric, conformal_killing_selftest, evaluate, jacobian
from ckf.moves import (
    Dilation,
    Inversion,
    Rotation,
    Scalar,
    Translation,
    act,
    apply_chain,
    chain_inverse,
    move_inverse,
    rotation_from_skew,
    transported_value,
)
