"""Exception types shared across the package."""


class PrimeGraphError(Exception):
    pass


class FactorizationIncomplete(PrimeGraphError):
    """A cofactor resisted every configured factoring method.

    ``partial`` holds the prime powers found so far and ``cofactor`` the
    composite remainder, so ``partial.value * cofactor`` is the input.
    """

    def __init__(self, n, partial, cofactor):
        self.n = n
        self.partial = partial
        self.cofactor = cofactor
        super().__init__(
            f"could not finish factoring {n}: composite cofactor {cofactor} "
            f"({cofactor.bit_length()} bits) resisted trial division, rho and the factor table"
        )


class NotCoprime(PrimeGraphError, ValueError):
    pass


class UnsupportedGroup(PrimeGraphError, ValueError):
    pass


class CharacteristicUnsupported(UnsupportedGroup):
    pass


class InvalidGroup(PrimeGraphError, ValueError):
    pass


class UnknownGroupToken(PrimeGraphError, ValueError):
    def __init__(self, token, suggestions=(), reason=None):
        self.token = token
        self.suggestions = list(suggestions)
        self.reason = reason
        msg = f"cannot parse group {token!r}"
        if reason:
            msg += f": {reason}"
        if self.suggestions:
            msg += "; did you mean " + ", ".join(self.suggestions) + "?"
        super().__init__(msg)


class ParseError(PrimeGraphError, ValueError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        super().__init__(where + message)


class ValidationError(PrimeGraphError, ValueError):
    pass


class DatasetMissing(PrimeGraphError, FileNotFoundError):
    pass


class TooLarge(PrimeGraphError, ValueError):
    pass


class UnknownVertex(PrimeGraphError, KeyError):
    pass


class VertexMismatch(PrimeGraphError, ValueError):
    pass


class InvalidComplement(PrimeGraphError, ValueError):
    pass
