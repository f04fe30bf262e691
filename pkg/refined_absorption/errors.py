"""Exception hierarchy shared by every subpackage."""

from typing import Any, Dict, Optional, Tuple


class AbsorptionError(Exception):
    """Base class for all errors raised by refined_absorption."""


class VertexRangeError(AbsorptionError, ValueError):
    """A vertex label lies outside 0..n-1 or an edge is malformed."""


class PreconditionError(AbsorptionError, ValueError):
    """An operation was called outside its documented preconditions."""


class CapExceededError(AbsorptionError):
    """A configurable size cap was exceeded."""


class BudgetExhaustedError(AbsorptionError):
    """A search ran out of nodes before deciding the instance."""


class DivisibilityError(AbsorptionError):
    """A hypergraph or integral target fails the divisibility congruences."""


class NoIntegralSolutionError(AbsorptionError):
    """The clique-edge integer system has no integral solution."""


class CliqueOutsideGroundError(AbsorptionError):
    """A clique uses an r-set that is not an edge of the ground."""


class FieldConstructionError(AbsorptionError):
    """The finite field or Cauchy matrix of a booster could not be built."""


class MatchingError(AbsorptionError):
    """Negative and positive cliques at an r-set could not be matched."""


class GreedyEmbeddingError(AbsorptionError):
    """Greedy placement got stuck; an exhaustive count may still be positive."""

    def __init__(self, message: str, vertex: Optional[int] = None):
        super().__init__(message)
        self.vertex = vertex


class EmbeddingNotFoundError(AbsorptionError):
    """No system embedding was found with the given slot capacity."""


class FractionalInfeasibleError(AbsorptionError):
    """An exact LP is infeasible; ``certificate`` is a Farkas vector on edges."""

    def __init__(self, message: str, certificate: Optional[Dict[Tuple[int, ...], Any]] = None):
        super().__init__(message)
        self.certificate = certificate or {}


class LowWeightError(AbsorptionError):
    """Some edge lies in no usable s-set, or its averaging target is out of range."""

    def __init__(self, message: str, edge: Optional[Tuple[int, ...]] = None):
        super().__init__(message)
        self.edge = edge


class ReserveBoundError(AbsorptionError):
    """The sampled reserve graph exceeds the maximum codegree bound 2pn."""


class StageFailure(AbsorptionError):
    """A pipeline stage failed; carries its index and name."""

    def __init__(self, message: str, stage: int = 0, name: str = ''):
        super().__init__(message)
        self.stage = stage
        self.name = name
