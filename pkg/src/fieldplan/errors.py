"""Exception hierarchy shared by the planning stages and the CLI.

Every error carries a short machine-readable ``code`` so batch callers
(CSV status column, CLI exit handling) can classify failures without
parsing messages.
"""

from __future__ import annotations


class FieldPlanError(Exception):
    """Base class for all planner errors."""

    code = "E_INTERNAL"


class InvalidGeometryError(FieldPlanError):
    """Degenerate or otherwise unusable geometry (too few vertices, zero area)."""

    code = "E_GEOMETRY"


class NonConvexError(InvalidGeometryError):
    """The field boundary is not convex; only convex fields are supported."""

    code = "E_NONCONVEX"


class InvalidRouteError(FieldPlanError):
    """A custom swath order is not a permutation of the swath indices."""

    code = "E_ROUTE"


class EmptyMainlandError(FieldPlanError):
    """The headland erosion consumed the whole field.

    Carries the :class:`~fieldplan.headland.HeadlandResult` that produced
    the empty mainland so callers can still report the headland stage.
    """

    code = "E_EMPTY_MAINLAND"

    def __init__(self, message, headland=None):
        super().__init__(message)
        self.headland = headland


class TurnRadiusError(FieldPlanError):
    """Curved turn planning requested with a zero turning radius."""

    code = "E_RADIUS"


class FieldFileError(FieldPlanError):
    """A field file could not be parsed into a usable polygon."""

    code = "E_PARSE"


class GeographicCoordinateError(FieldFileError):
    """Coordinates look geographic (degrees) and no projection origin was given."""

    code = "E_GEOGRAPHIC"
