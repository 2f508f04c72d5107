class LcwLabError(Exception):
    """Base exception class for lcwlab errors."""

    pass

class ValidationError(LcwLabError):
    """Raised when an input document or value is structurally invalid."""

    pass

class DecimalLiteralError(ValidationError):
    """Raised when a rational is written as a decimal literal."""

    pass

class NonSkewError(ValidationError):
    """Raised when a matrix that must be skew-symmetric is not."""

    pass

class NonSymmetricError(ValidationError):
    """Raised when a matrix that must be symmetric is not."""

    pass

class DimensionMismatchError(ValidationError):
    """Raised when vectors, matrices or tensors have incompatible sizes."""

    pass

class ZeroFieldError(ValidationError):
    """Raised when a vector or field that must be nonzero is zero."""

    pass

class NotLcwError(ValidationError):
    """Raised when a conformal Killing field fails the LCW conditions."""

    pass

class NotWeylError(ValidationError):
    """Raised when a rank-4 table lacks the algebraic symmetries of a Weyl tensor."""

    pass

class JacobiError(ValidationError):
    """Raised when structure constants fail the Jacobi identity."""

    def __init__(self, triple, defect):
        self.triple = tuple(triple)
        self.defect = tuple(defect)
        shown = ", ".join(str(x) for x in self.defect)
        super().__init__(f"Jacobi identity fails for (e{triple[0]}, e{triple[1]}, e{triple[2]}): defect ({shown})")

class DomainError(LcwLabError):
    """Raised when a weight is evaluated on its singular locus."""

    pass

class ReductionError(LcwLabError):
    """Raised when a reduction chain does not reproduce the canonical tuple."""

    pass

class GoldenMismatchError(LcwLabError):
    """Raised when a scenario disagrees with its golden table."""

    def __init__(self, scenario, diffs):
        self.scenario = scenario
        self.diffs = list(diffs)
        super().__init__(f"Scenario {scenario} failed with {len(self.diffs)} golden mismatch(es): "
                         + "; ".join(self.diffs))
