class K3RefineError(Exception):
    """Base class for every domain error raised by k3refine."""


class ZeroDenominatorError(K3RefineError, ZeroDivisionError):
    def __init__(self, message="zero denominator"):
        super().__init__(message)


class NonUnitalFactorError(K3RefineError, ValueError):
    def __init__(self, message="non-unital factor"):
        super().__init__(message)


class BasisExtractionError(K3RefineError, ValueError):
    def __init__(self, message="basis extraction requires palindromic input"):
        super().__init__(message)


class DivisibilityError(K3RefineError, ValueError):
    """A divisor r of the divisibility does not have r^2 dividing the square data."""

    def __init__(self, divisor, value, what="d - 1"):
        self.divisor = divisor
        self.value = value
        super().__init__(
            f"divisibility incompatible with square: divisor {divisor} has "
            f"{divisor}^2 = {divisor * divisor} not dividing {what} = {value}"
        )


class InstantonCrossCheckError(K3RefineError, ArithmeticError):
    def __init__(self, message="instanton cross-check failed"):
        super().__init__(message)


class KKVIntegralityError(K3RefineError, ArithmeticError):
    def __init__(self, message="KKV integrality violated"):
        super().__init__(message)


class ProductShapeError(K3RefineError, ArithmeticError):
    """An expanded product broke its degree, symmetry or integrality shape."""
