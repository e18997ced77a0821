"""Exception hierarchy for MTC-Engine
Every failure a caller can act on has its own class
"""


class MTCError(Exception):
    """Base class for all engine errors"""


class ParseError(MTCError):
    """Malformed or schema-violating data file"""


class ConsistencyError(MTCError):
    """Category data violates a named axiom"""

    def __init__(self, axiom, residual=None, detail=""):
        self.axiom = axiom
        self.residual = residual
        message = f"{axiom} check failed"
        if residual is not None:
            message += f" (residual {residual:.3e})"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class ShapeMismatch(MTCError):
    """Objects or block shapes do not fit together"""


class NotEndomorphism(MTCError):
    """A trace was requested of a morphism whose source and target differ"""


class UnknownRelation(MTCError):
    """Relation id outside R1..R32"""


class NotIdempotent(MTCError):
    """Splitting requested for a morphism with p∘p != p"""

    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"morphism is not idempotent (residual {residual:.3e})")


class RelationFailure(MTCError):
    """Correlators do not solve the sewing constraints"""

    def __init__(self, failing):
        self.failing = list(failing)
        super().__init__(f"sewing relations failed: {', '.join(self.failing)}")
