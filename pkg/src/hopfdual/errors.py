"""Exception hierarchy for hopfdual.

Everything raised deliberately by the library derives from ``HopfDualError``
so callers (and the CLI runner) can capture library failures without
swallowing programming errors.
"""


class HopfDualError(Exception):
    """Base class for all library errors."""


class UnsupportedRing(HopfDualError):
    pass


class ShapeMismatch(HopfDualError):
    pass


class RingMismatch(HopfDualError):
    pass


class NotInjective(HopfDualError):
    pass


class HypothesisFailed(HopfDualError):
    pass


class NotAssociative(HopfDualError):
    def __init__(self, witness, msg=None):
        self.witness = witness
        super().__init__(msg or f"associativity fails on basis triple {witness}")


class UnitLawFails(HopfDualError):
    def __init__(self, witness, msg=None):
        self.witness = witness
        super().__init__(msg or f"unit law fails on basis element {witness}")


class NotAGroup(HopfDualError):
    pass


class InvalidIdeal(HopfDualError):
    pass


class NotMonic(HopfDualError):
    pass


class NotReversible(HopfDualError):
    pass


class NotCofinite(HopfDualError):
    pass


class NotAutomorphism(HopfDualError):
    pass


class NotAction(HopfDualError):
    pass


class NotACoideal(HopfDualError):
    def __init__(self, witness, msg=None):
        self.witness = witness
        super().__init__(msg or f"ideal is not a coideal: {witness}")


class NoBialgebraFlavor(HopfDualError):
    pass


class NoAntipode(NoBialgebraFlavor):
    pass


class NotContained(HopfDualError):
    pass


class OwnerMismatch(HopfDualError):
    pass


class PrefixTooShort(HopfDualError):
    pass


class ProbeInsufficient(HopfDualError):
    pass


class NotRational(HopfDualError):
    def __init__(self, witness, msg=None):
        self.witness = witness
        super().__init__(msg or f"element {witness} has no rational parameters")


class AntipodeNotBijective(HopfDualError):
    pass


class NoIsomorphismFound(HopfDualError):
    pass


class InvariantFailure(HopfDualError):
    def __init__(self, witness, msg=None):
        self.witness = witness
        super().__init__(msg or f"invariant fails: {witness}")


class ParseError(HopfDualError):
    def __init__(self, line, col, msg):
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {msg}")


class UnknownReference(HopfDualError):
    def __init__(self, name, line=0, col=0):
        self.name = name
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: unknown reference {name!r}")
