"""Exception types shared across the pipeline."""


class LayoutFuseError(Exception):
    """Base class for all layoutfuse errors."""


class DegenerateVertical(LayoutFuseError):
    """Vertical vanishing point unusable (camera not tilted enough)."""


class IdenticalPoints(LayoutFuseError):
    """Two points expected to be distinct coincide within tolerance."""


class EmptyScan(LayoutFuseError):
    """LiDAR sweep has too few points to segment."""


class NoDominantDirections(LayoutFuseError):
    """No perpendicular pair of angle modes explains enough clusters."""


class ImageTooSmall(LayoutFuseError):
    """Image below the minimum size for edge detection."""


class InsufficientLines(LayoutFuseError):
    """Not enough line segments to run vanishing point clustering."""


class NoOrthogonalTriple(LayoutFuseError):
    """No cluster triple satisfies the orthogonality constraint."""


class DegeneratePair(LayoutFuseError):
    """Point pair degenerate (coincident) for the two-pair solver."""


class RankDeficient(LayoutFuseError):
    """Refinement problem unobservable (all constraint lines parallel)."""


class NoCorners(LayoutFuseError):
    """A side of the alignment problem has no corner candidates."""


class EmptyStore(LayoutFuseError):
    """Hypothesis store is empty."""


class GateRejected(LayoutFuseError):
    """EKF innovation failed the Mahalanobis gate."""


class DimensionMismatch(LayoutFuseError):
    """Two label images differ in size."""


class PoseOutsideScene(LayoutFuseError):
    """Requested sensor pose lies outside the scene polygon."""


class InputError(LayoutFuseError):
    """Bad input file, manifest, or configuration."""
