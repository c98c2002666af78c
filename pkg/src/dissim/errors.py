"""Exception hierarchy shared by all modules."""


class DissimError(ValueError):
    """Base class for every error raised by this package."""


class EmptyDataset(DissimError):
    def __init__(self):
        super().__init__("dataset contains no streamlines")


class EmptyStreamline(DissimError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"streamline {index} has no points")


class NonFiniteCoordinate(DissimError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"streamline {index} has a non-finite coordinate")


class MixedDimension(DissimError):
    def __init__(self, index, expected=None, found=None):
        self.index = index
        detail = ""
        if expected is not None:
            detail = f" (expected D={expected}, found D={found})"
        super().__init__(f"streamline {index} has a different dimension{detail}")


class DimensionMismatch(DissimError):
    def __init__(self, left, right):
        super().__init__(f"dimension mismatch: {left} vs {right}")


class KernelError(DissimError):
    """A kernel was applied to objects it does not support."""


class TooManyPrototypes(DissimError):
    def __init__(self, p, n):
        self.p = p
        self.n = n
        super().__init__(f"cannot select p={p} prototypes from {n} objects")


class LengthMismatch(DissimError):
    def __init__(self, left, right):
        super().__init__(f"vector length mismatch: {left} vs {right}")


class ZeroVariance(DissimError):
    def __init__(self, which="input"):
        super().__init__(f"{which} has zero variance; correlation undefined")


class ParseError(DissimError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")
