"""Exception hierarchy of the toolkit.

Invalid input raises a ``ValueError`` subclass, numerical breakdown an
``ArithmeticError`` subclass. Every message names the invariant that failed.
"""


class BoundsToolkitError(Exception):
    """Base class for all toolkit errors"""


class InputError(BoundsToolkitError, ValueError):
    """Input violates a documented invariant"""


class NumericalError(BoundsToolkitError, ArithmeticError):
    """A computation could not produce a trustworthy result"""


# --- linalg -----------------------------------------------------------------


class NonHermitian(InputError):
    def __init__(self, defect: float, tolerance: float):
        self.defect = defect
        self.tolerance = tolerance
        super().__init__(
            f"matrix is not Hermitian: max |A - A^H| entry {defect:.3e} "
            f"exceeds {tolerance:.1e}"
        )


class NotSquare(InputError):
    pass


class NotFinite(InputError):
    pass


class DimensionMismatch(InputError):
    def __init__(self, left: int | tuple, right: int | tuple, what: str = "operands"):
        self.left = left
        self.right = right
        super().__init__(f"dimension mismatch between {what}: {left} vs {right}")


class NoConvergence(NumericalError):
    pass


# --- quantum ----------------------------------------------------------------


class NotHermitian(InputError):
    def __init__(self, index: int, defect: float):
        self.index = index
        self.defect = defect
        super().__init__(
            f"POVM element {index} is not Hermitian (max defect {defect:.3e})"
        )


class NotPositive(InputError):
    def __init__(self, index: int | None, min_eigenvalue: float):
        self.index = index
        self.min_eigenvalue = min_eigenvalue
        where = "operator" if index is None else f"POVM element {index}"
        super().__init__(
            f"{where} is not positive: min eigenvalue {min_eigenvalue:.3e}"
        )


class Incomplete(InputError):
    def __init__(self, max_deviation: float, tolerance: float):
        self.max_deviation = max_deviation
        self.tolerance = tolerance
        super().__init__(
            f"POVM elements do not sum to identity: max entry deviation "
            f"{max_deviation:.3e} exceeds {tolerance:.1e}"
        )


class NotNormalized(InputError):
    pass


class InvalidDistribution(InputError):
    pass


class NumericalResidueError(NumericalError):
    """A quantity that must be real or bounded carries too much residue"""


# --- entropy ----------------------------------------------------------------


class InvalidOrder(InputError):
    def __init__(self, alpha: float):
        self.alpha = alpha
        super().__init__(f"Renyi order must be positive and finite, got {alpha!r}")


class OutOfRange(InputError):
    def __init__(self, alpha: float):
        self.alpha = alpha
        super().__init__(
            f"order {alpha!r} has no finite conjugate: 1/a + 1/b = 2 needs a > 1/2"
        )


# --- sampling ---------------------------------------------------------------


class DegenerateSample(NumericalError):
    pass


# --- instance files ---------------------------------------------------------


class ParseError(InputError):
    pass


class InstanceValidationError(InputError):
    pass
