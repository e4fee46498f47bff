"""Exception hierarchy.

Every error carries a short ``tag`` (used in CLI output) and the process exit
code the CLI maps it to.
"""


class MSpecError(Exception):
    tag = "error"
    exit_code = 1


class ShapeMismatch(MSpecError):
    tag = "ShapeMismatch"


class DimensionMismatch(MSpecError):
    tag = "DimensionMismatch"


class SymmetryViolation(MSpecError):
    tag = "SymmetryViolation"

    def __init__(self, index, deviation, scale):
        self.index = index
        self.deviation = deviation
        self.scale = scale
        i, j, k, l = (v + 1 for v in index)
        super().__init__(
            f"partial symmetry violated at a[{i},{j},{k},{l}] "
            f"(deviation {deviation:.3e}, tensor scale {scale:.3e})"
        )


class NonFinite(MSpecError):
    tag = "NonFinite"
    exit_code = 4


class NotNonnegative(MSpecError):
    tag = "NotNonnegative"


class DegenerateDimension(MSpecError):
    tag = "DegenerateDimension"


class InvalidWitness(MSpecError):
    tag = "InvalidWitness"


class NotMember(MSpecError):
    tag = "NotMember"


class ShiftUnavailable(MSpecError):
    tag = "ShiftUnavailable"


class NotApplicable(MSpecError):
    tag = "NotApplicable"
    exit_code = 2


class NotZTensor(MSpecError):
    tag = "NotZTensor"


class EtaTooSmall(MSpecError):
    tag = "EtaTooSmall"


class DimensionTooLarge(MSpecError):
    tag = "DimensionTooLarge"


class NumericFailure(MSpecError):
    tag = "NumericFailure"
    exit_code = 4


class ParseError(MSpecError):
    tag = "ParseError"
