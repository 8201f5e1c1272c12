"""Exception hierarchy. Exit-code mapping lives in the CLI."""


class TopoqdError(Exception):
    """Base class for all errors raised by this package."""


class InputError(TopoqdError):
    """Malformed user input (group files, specs, flags)."""


class NotAPermutation(InputError):
    pass


class GroupTooLarge(TopoqdError):
    """Closure exceeded the element cap."""


class NotClosed(InputError):
    pass


class NoIdentity(InputError):
    pass


class NoInverse(InputError):
    pass


class NotAssociative(InputError):
    """Carries a witness triple (a, b, c) with a(bc) != (ab)c."""

    def __init__(self, witness):
        self.witness = tuple(witness)
        a, b, c = self.witness
        super().__init__(f"not associative: witness triple ({a}, {b}, {c})")


class DegenerateSpectrum(TopoqdError):
    """Seeded class-matrix combinations failed to separate irreps."""


class NonIntegerMultiplicity(TopoqdError):
    pass


class NonIntegerResult(TopoqdError):
    pass


class EnumerationCapExceeded(TopoqdError):
    pass


class CapExceeded(TopoqdError):
    """Oracle-side cap (lower than the main-path cap)."""


class AllZeroMultiplicities(TopoqdError):
    pass


class NotAbelian(TopoqdError):
    pass


class UnknownRegion(InputError):
    pass


class UnitarityViolation(TopoqdError):
    pass
