"""Exception hierarchy shared by all modules."""


class AsymcompError(Exception):
    pass


class ParseError(AsymcompError, ValueError):
    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# number fields
class NotMonic(AsymcompError, ValueError):
    pass


class Reducible(AsymcompError, ValueError):
    def __init__(self, poly, factor):
        super().__init__(f"{poly} is reducible, factor {factor}")
        self.factor = factor


class NoRealRootAboveOne(AsymcompError, ValueError):
    pass


class FieldMismatch(AsymcompError, ValueError):
    pass


# rules
class UnknownLetter(ParseError):
    pass


class EmptyImage(ParseError):
    pass


class AlphabetMismatch(AsymcompError, ValueError):
    pass


class NotPrimitive(AsymcompError, ValueError):
    pass


class ReducibleSpectrum(AsymcompError, ValueError):
    pass


# composants
class KTooSmall(AsymcompError):
    def __init__(self, k: int, pair=None):
        super().__init__(f"patch size k={k} too small" + (f" for pair {pair}" if pair else ""))
        self.k = k
        self.pair = pair


class KExhausted(AsymcompError):
    def __init__(self, k: int):
        super().__init__(f"no stable seed set found up to k={k}")
        self.k = k


class NoSplit(AsymcompError):
    pass


class PositivePosition(AsymcompError):
    pass


class InconsistentPermutation(AsymcompError):
    pass


# enumeration
class DegreeUnsupported(AsymcompError, ValueError):
    pass
