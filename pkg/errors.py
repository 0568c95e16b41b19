"""Exceptions raised by the paramlat library.

Library code raises these; the CLI and the HTTP handlers translate them into
exit codes and status codes.
"""


class ParamLatError(Exception):
    """Base class for every error raised by this package."""


class DivByZero(ParamLatError, ZeroDivisionError):
    """Division by the zero polynomial or evaluation at a pole."""


class InvalidRefinement(ParamLatError, ValueError):
    """A branch refinement modulus is not a multiple of the leaf modulus."""


class DependentInput(ParamLatError, ValueError):
    """Vectors passed to Gram-Schmidt or LLL are linearly dependent."""


class DegreeOutOfRange(ParamLatError, ValueError):
    """Requested degree part lies outside 0..deg(f)."""


class RankDeficient(ParamLatError):
    """A parametric basis does not span a lattice of full rank n."""


class DependentPilots(ParamLatError):
    """Pilot vectors of a same-degree block are linearly dependent."""


class RankZero(ParamLatError):
    """Shortest vector requested for the zero lattice."""


class DimensionTooLarge(ParamLatError):
    """Rank exceeds the configured enumeration guard."""


class SingularGram(ParamLatError):
    """Gram matrix of the basis is singular over Q(t)."""


class EmptyBasis(ParamLatError):
    """Oracle called with no basis vectors."""


class ParseError(ParamLatError, ValueError):
    """Malformed problem file or coefficient string."""


class MissingTarget(ParamLatError):
    """A closest-vector command was run on a problem without a target."""


class CertificationError(ParamLatError):
    """A reduced leaf failed its eventual size-reduction or Lovasz certificate."""
