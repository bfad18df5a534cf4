"""Exception hierarchy shared across the package.

``InputError`` subclasses signal bad inputs or violated hypotheses (CLI exit
code 2), ``CapError`` subclasses signal exhausted resource caps (exit code 3).
"""


class QuiverfoldError(Exception):
    """Base class for all package errors."""


class InputError(QuiverfoldError):
    """Invalid input data or violated precondition."""


class CapError(QuiverfoldError):
    """A configured resource cap was exceeded."""


# exact linear algebra
class FieldMismatch(InputError):
    pass


class DimensionMismatch(InputError):
    pass


# quivers, actions and Cartan triples
class NotAcyclic(InputError):
    pass


class ActionInvalid(InputError):
    pass


class NonIntegralFold(CapError):
    """Orbit arrow counts do not divide evenly; no Cartan matrix exists."""


class MixedOrientation(CapError):
    """Arrows run in both directions between two orbits."""


class InvalidTriple(InputError):
    pass


class InvalidCartan(InputError):
    pass


# presentations and the normal-form engine
class InvalidPresentation(InputError):
    pass


class DegreeCapExceeded(CapError):
    pass


class DimensionCapExceeded(CapError):
    pass


class RelationNotPreserved(InputError):
    pass


# ideals and monoids
class ParentMismatch(InputError):
    pass


class CapExceeded(CapError):
    pass


class UnknownLabel(InputError):
    pass


class NonCommutingFactors(InputError):
    pass


class NotInvariant(InputError):
    pass


# Weyl machinery
class NotReduced(InputError):
    pass
