from distributions.circle import AntipodeCheck, CircleFamily, antipode_check, circle_obstruction, constant_entry
from distributions.distribution import (
    Distribution,
    IntegrabilityResult,
    IntegrabilityWitness,
    UmbilicResult,
    UmbilicViolation,
    bracket_closure,
    from_direction,
    from_tangent,
    is_integrable,
    is_umbilical,
    plane,
    second_fundamental_form,
)
