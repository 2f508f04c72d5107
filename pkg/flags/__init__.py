from flags.cotton_york import (
    FlagCertificate,
    FlagSet,
    det_cy,
    eigenflag_check_3d,
    eigenflag_find_3d,
    flag_defect_3d,
    perp_basis_3d,
)
from flags.weyl import (
    DescentStats,
    PlaneCertificate,
    WeylType,
    eigenflag_check_4d,
    flag_defect_4d,
    run_descent,
    sphere_starts,
    wedge6,
    weyl_spectrum,
    weyl_type,
)
