"""Exception types shared across the toolkit."""


class GrntruError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(GrntruError, ValueError):
    """Operands have mismatched lengths or belong to different groups."""


class UnsupportedGroup(GrntruError, ValueError):
    """Operation requires a group kind that was not supplied."""


class UnsupportedModulus(GrntruError, ValueError):
    """Inversion is only supported modulo a prime or a power of two."""


class NotInvertible(GrntruError, ArithmeticError):
    """Element has no inverse modulo the requested modulus."""


class ParameterError(GrntruError, ValueError):
    """A scheme or experiment parameter violates its constraints."""


class MessageRangeError(GrntruError, ValueError):
    """Message coefficients fall outside the centered plaintext range."""


class KeygenExhausted(GrntruError, RuntimeError):
    """No invertible secret was found within the retry budget."""


class StructureError(GrntruError, ValueError):
    """Matrix does not have the expected dihedral block structure."""


class NotInLattice(GrntruError, ValueError):
    """Vector fails the lattice membership congruence."""


class ReductionError(GrntruError, RuntimeError):
    """Base class for basis-reduction failures."""


class RankError(ReductionError):
    """Basis rows are linearly dependent."""


class NotFound(ReductionError):
    """Enumeration found no nonzero vector within the given radius."""
