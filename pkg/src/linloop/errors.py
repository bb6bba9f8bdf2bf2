"""Exception hierarchy for the linloop library.

Every failure mode that callers may reasonably want to catch gets its own
class.  All of them derive from :class:`LinloopError` so that a blanket
``except LinloopError`` is available at CLI level.
"""


class LinloopError(Exception):
    """Base class for all linloop errors."""


class RingMismatch(LinloopError):
    """Two operands live over different coefficient rings."""


class NotInvertible(LinloopError):
    """An element has no inverse in its ring (or none we can construct)."""


class NoStarStructure(LinloopError):
    """The coefficient ring does not carry an involution."""


class BadInvolution(LinloopError):
    """A claimed involution Q does not satisfy Q**2 == 1."""


class DenominatorVanishes(LinloopError):
    """A rational function was evaluated at a pole."""


class SymbolicPoint(LinloopError):
    """A numeric-only operation was attempted at a symbolic circle point."""


class SingularFiniteBlock(LinloopError):
    """A finite linear system arising in an inverse computation is singular."""


class SingularMiddleBlock(SingularFiniteBlock):
    """The middle block of a stripe perturbation is not invertible."""


class HintMismatch(LinloopError):
    """A supplied inverse hint fails to verify."""


class NotBijective(LinloopError):
    """A relabeling map is not a bijection on the relevant index set."""


class BadPartition(LinloopError):
    """An index-set partition/bijection does not define a valid shift model."""


class EndpointMismatch(LinloopError):
    """Path concatenation was attempted with non-matching endpoints."""


class WrongKind(LinloopError):
    """An object of the wrong structural kind was supplied."""


class StripeClassViolation(LinloopError):
    """A perturbation does not belong to the declared L/R stripe class."""


class NotAPerturbation(LinloopError):
    """An operator is not a perturbation of the declared diagonal base."""


class WindowMismatch(LinloopError):
    """Dense windows are incompatible (size/offset) for the requested operation."""


class UnboundVariable(LinloopError):
    """A formal variable must be bound to a value for this operation."""


class NoInvertibleLeadingStructure(LinloopError):
    """A truncated series inverse could not find an invertible leading term."""
