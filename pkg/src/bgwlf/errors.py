"""Exception types and sentinel markers shared across the package."""


class BGWError(Exception):
    """Base class for all package errors."""


class InvalidParameters(BGWError):
    """Parameter values outside their admissible domain."""


class NonzeroConstantTerm(BGWError):
    """Plain series composition requested with inner constant term != 0."""


class SingularHomography(BGWError):
    """Homography with zero determinant cannot be powered or inverted."""


class DegenerateTau(BGWError):
    """Radical tangency formula degenerates (pi == pi0) and no fallback requested."""


class AffineMechanism(BGWError):
    """Operation undefined for affine generating functions (no tangency point)."""


class CriticalRegime(BGWError):
    """Operation defined only away from criticality was called at mu == 1."""


class AlreadyCritical(BGWError):
    """Criticality forcing requested on an already critical mechanism."""


class NotSupercritical(BGWError):
    """Conditioning transform requires mu > 1."""


class NoRoot(BGWError):
    """Bracketed root search found no sign change."""


class CriticalBoundary(BGWError):
    """Two-branch formula undefined on its boundary (pi0 == pibar)."""


class DomainError(BGWError):
    """Analytic continuation hit a pole of the closed form."""


class ZeroProbabilityCondition(BGWError):
    """Conditioning event has probability zero."""


class DegenerateFixedPoints(BGWError):
    """Homography fixed points coincide; parabolic branch required."""


class NonConvergence(BGWError):
    """Fixed-point iteration failed to reach tolerance within its budget."""


class ZeroDenominator(BGWError):
    """Series reciprocal of a function vanishing at the origin."""


class UnfinishedPath(BGWError):
    """Excursion truncated at the horizon cannot be decoded."""


class UnsupportedHoldings(BGWError):
    """Contour reconstruction is defined for hold-free walks only."""


class _Marker:
    """Singleton result markers (divergent sums, infinite means)."""

    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name

    def __reduce__(self):
        # keeps identity through pickling (multiprocessing result queues)
        return (_marker_by_name, (self._name,))


DIVERGENT = _Marker("Divergent")
INFINITE = _Marker("Infinite")

_MARKERS = {"Divergent": DIVERGENT, "Infinite": INFINITE}


def _marker_by_name(name: str) -> _Marker:
    return _MARKERS[name]
