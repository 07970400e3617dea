"""Exception hierarchy for the verification laboratory."""


class BianchiLabError(Exception):
    """Base class for all package-specific errors."""


class StencilOutOfDomainError(BianchiLabError):
    """A finite-difference stencil left the chart domain.

    Carries the index of the offending coordinate so callers can report
    which direction hit the boundary.
    """

    def __init__(self, coord_index, point, message=None):
        self.coord_index = coord_index
        self.point = point
        super().__init__(
            message
            or f"stencil leaves chart domain along coordinate {coord_index} near {point}"
        )


class DegreeOverflowError(BianchiLabError):
    """Exterior derivative applied to a top-degree form."""


class SingularMetricError(BianchiLabError):
    """Metric (or 3-metric) degenerate / badly conditioned at a point."""


class RankDeficiencyError(BianchiLabError):
    """Jacobian of a coordinate map is singular; carries the computed rank."""

    def __init__(self, rank, message=None):
        self.rank = rank
        super().__init__(message or f"coordinate map Jacobian is rank-deficient (rank {rank})")


class FrameRankError(BianchiLabError):
    """Supplied vierbein is degenerate at the evaluation point."""


class NotWeylError(BianchiLabError):
    """Matrix passed to the Petrov classifier is not trace-free."""


class CatalogMissError(BianchiLabError):
    """Unknown catalog name; carries near matches."""

    def __init__(self, name, suggestions=()):
        self.name = name
        self.suggestions = list(suggestions)
        hint = f" (did you mean: {', '.join(self.suggestions)}?)" if self.suggestions else ""
        super().__init__(f"unknown catalog entry {name!r}{hint}")


class ParameterRangeError(BianchiLabError):
    """Catalog parameter outside its documented range."""


class MapDomainError(BianchiLabError):
    """Coordinate map evaluated outside its documented domain."""


class SignatureError(BianchiLabError):
    """Multi-Centre potential non-positive at a construction sample."""


class NotHarmonicError(BianchiLabError):
    """Multi-Centre potential fails the flat-Laplacian residual gate."""


class StepFailureError(BianchiLabError):
    """Implicit integrator step failed to converge; carries diagnostics."""

    def __init__(self, step_index, residual, message=None):
        self.step_index = step_index
        self.residual = residual
        super().__init__(
            message
            or f"implicit step {step_index} did not converge (residual {residual:.3e})"
        )


class RegistryError(BianchiLabError):
    """Observable / bracket-table name does not resolve."""


class FormError(BianchiLabError):
    """Metric not of the family an operation requires."""


class PreconditionError(BianchiLabError):
    """Documented operation precondition violated."""


class ConfigError(BianchiLabError):
    """Experiment configuration failed schema validation.

    ``pointer`` is a JSON-pointer-ish path to the offending field.
    """

    def __init__(self, message, pointer=""):
        self.pointer = pointer
        super().__init__(f"{message} (at {pointer or '/'})")
