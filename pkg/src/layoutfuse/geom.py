"""Camera and Manhattan-world geometry.

Conventions used throughout:

  Image frame:   pixel origin at the top-left corner, x right, y down.
  Camera frame:  x right, y down, z forward (optical axis), right-handed.
  Normalized coordinates: pixel coordinates with the principal point
                 subtracted and divided by the focal length, so the
                 camera model reduces to f = 1.

A vanishing point is where projections of parallel 3D lines converge.  The
vertical vanishing point defines a rotation that renders the ground plane
as if seen from straight above (the top-down homography); the two
horizontal vanishing points span the horizon line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateVertical, IdenticalPoints

# |x_v| below this (normalized units) switches the first axis to its
# analytic limit; |y_v| below this means the camera is not usefully tilted.
X_LIMIT_EPS = 1e-6
Y_TILT_EPS = 1e-3

_IDEAL_EPS = 1e-12
_FOCAL_MATCH_TOL = 1e-6


@dataclass(frozen=True)
class CameraIntrinsics:
    """Pinhole intrinsics, all units in pixels."""

    fx: float
    fy: float
    cx: float
    cy: float
    width: int = 0
    height: int = 0

    def __post_init__(self):
        if self.fx <= 0 or self.fy <= 0:
            raise ValueError(f"focal lengths must be positive, got {self.fx}, {self.fy}")

    @property
    def f(self) -> float:
        """Single focal length; requires fx and fy to match closely."""
        if abs(self.fx - self.fy) / self.fx >= _FOCAL_MATCH_TOL:
            raise ValueError(f"fx={self.fx} and fy={self.fy} differ too much for a single f")
        return self.fx

    def as_matrix(self) -> np.ndarray:
        return np.array(
            [[self.fx, 0.0, self.cx], [0.0, self.fy, self.cy], [0.0, 0.0, 1.0]]
        )

    def inv_matrix(self) -> np.ndarray:
        return np.array(
            [
                [1.0 / self.fx, 0.0, -self.cx / self.fx],
                [0.0, 1.0 / self.fy, -self.cy / self.fy],
                [0.0, 0.0, 1.0],
            ]
        )

    def to_dict(self) -> dict:
        return {
            "fx": self.fx,
            "fy": self.fy,
            "cx": self.cx,
            "cy": self.cy,
            "width": self.width,
            "height": self.height,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CameraIntrinsics":
        return cls(
            fx=float(d["fx"]),
            fy=float(d["fy"]),
            cx=float(d["cx"]),
            cy=float(d["cy"]),
            width=int(d.get("width", 0)),
            height=int(d.get("height", 0)),
        )


@dataclass(frozen=True)
class VanishingPoint:
    """Image point (or ideal direction) where parallel lines converge.

    For a finite point, (x, y) are plane coordinates in the units given by
    `convention` ("normalized" or "pixel").  For an ideal point (parallel
    lines stay parallel in the image), (x, y) holds a unit direction.
    """

    x: float
    y: float
    ideal: bool = False
    convention: str = "normalized"

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("vanishing point coordinates must be finite")
        if self.ideal:
            n = math.hypot(self.x, self.y)
            if not math.isclose(n, 1.0, rel_tol=0, abs_tol=1e-9):
                raise ValueError("ideal vanishing point must carry a unit direction")

    def homogeneous(self) -> np.ndarray:
        """(x, y, 1) for a finite point, (dx, dy, 0) for an ideal one."""
        return np.array([self.x, self.y, 0.0 if self.ideal else 1.0])

    def to_pixel(self, intrinsics: CameraIntrinsics) -> "VanishingPoint":
        if self.convention == "pixel":
            return self
        if self.ideal:
            return VanishingPoint(self.x, self.y, ideal=True, convention="pixel")
        f = intrinsics.f
        return VanishingPoint(
            self.x * f + intrinsics.cx, self.y * f + intrinsics.cy, convention="pixel"
        )

    def to_normalized(self, intrinsics: CameraIntrinsics) -> "VanishingPoint":
        if self.convention == "normalized":
            return self
        if self.ideal:
            return VanishingPoint(self.x, self.y, ideal=True, convention="normalized")
        f = intrinsics.f
        return VanishingPoint(
            (self.x - intrinsics.cx) / f, (self.y - intrinsics.cy) / f,
            convention="normalized",
        )


@dataclass(frozen=True)
class ManhattanFrame:
    """Three mutually orthogonal unit axes expressed in the camera frame.

    e_x and e_y span the horizontal (floor) plane, e_z is the vertical
    axis; the triple is right-handed (e_x x e_y = e_z).
    """

    e_x: np.ndarray
    e_y: np.ndarray
    e_z: np.ndarray

    def __post_init__(self):
        for name, e in (("e_x", self.e_x), ("e_y", self.e_y), ("e_z", self.e_z)):
            if abs(np.linalg.norm(e) - 1.0) > 1e-9:
                raise ValueError(f"{name} is not unit-norm")
        if (
            abs(self.e_x @ self.e_y) > 1e-9
            or abs(self.e_x @ self.e_z) > 1e-9
            or abs(self.e_y @ self.e_z) > 1e-9
        ):
            raise ValueError("frame axes are not orthogonal")
        if np.linalg.norm(np.cross(self.e_x, self.e_y) - self.e_z) > 1e-9:
            raise ValueError("frame is not right-handed")

    def rotation(self) -> np.ndarray:
        """Rotation taking camera coordinates to frame coordinates (rows are the axes)."""
        return np.vstack([self.e_x, self.e_y, self.e_z])


@dataclass(frozen=True)
class Homography:
    """3x3 invertible map in canonical scale.

    Canonical scale: unit Frobenius norm, largest-magnitude entry positive,
    so equal homographies compare equal entrywise.
    """

    matrix: np.ndarray = field()

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "Homography":
        m = np.asarray(m, dtype=float)
        if m.shape != (3, 3):
            raise ValueError("homography must be 3x3")
        if np.linalg.cond(m) > 1e12:
            raise ValueError("homography is not invertible")
        m = m / np.linalg.norm(m)
        if m.flat[np.argmax(np.abs(m))] < 0:
            m = -m
        return cls(matrix=m)

    def inverse(self) -> "Homography":
        return Homography.from_matrix(np.linalg.inv(self.matrix))

    def __matmul__(self, p: np.ndarray) -> np.ndarray:
        return self.matrix @ p


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def vp_of_direction(n, f: float) -> VanishingPoint:
    """Vanishing point of the pencil of lines with unit direction n.

    Returns (f*n_x/n_z, f*n_y/n_z); when the direction is parallel to the
    image plane (n_z ~ 0) the result is an ideal point along (n_x, n_y).
    """
    n = np.asarray(n, dtype=float)
    if abs(np.linalg.norm(n) - 1.0) > 1e-9:
        raise ValueError("direction must be unit-norm")
    if abs(n[2]) < _IDEAL_EPS:
        d = _unit(n[:2])
        return VanishingPoint(d[0], d[1], ideal=True)
    return VanishingPoint(f * n[0] / n[2], f * n[1] / n[2])


def direction_of_vp(v: VanishingPoint, f: float) -> np.ndarray:
    """Unit 3-vector associated with a vanishing point (inverse of
    vp_of_direction up to sign)."""
    if v.ideal:
        return _unit(np.array([v.x, v.y, 0.0]))
    return _unit(np.array([v.x, v.y, f]))


def _pair_residual(a: VanishingPoint, b: VanishingPoint, f: float) -> float:
    # Scale-free orthogonality defect of one VP pair; ideal points enter
    # through the limit of the finite form.
    if a.ideal and b.ideal:
        return a.x * b.x + a.y * b.y
    if a.ideal or b.ideal:
        fin, ide = (b, a) if a.ideal else (a, b)
        return (fin.x * ide.x + fin.y * ide.y) / f
    return (a.x * b.x + a.y * b.y + f * f) / (f * f)


def orthogonality_residual(
    vq: VanishingPoint, vr: VanishingPoint, vs: VanishingPoint, f: float
) -> np.ndarray:
    """Orthogonality residuals of the three VP pairs (Q,R), (Q,S), (R,S).

    All three vanish exactly when the associated directions are mutually
    orthogonal.  Each residual is normalized by f^2 to be scale-free.
    """
    return np.array(
        [
            _pair_residual(vq, vr, f),
            _pair_residual(vq, vs, f),
            _pair_residual(vr, vs, f),
        ]
    )


def frame_from_vertical_vp(v: VanishingPoint, f: float) -> ManhattanFrame:
    """Build the Manhattan frame whose vertical axis maps to the given VP.

    The construction fixes the azimuth of the horizontal axes by requiring
    the first axis to have zero y-component (its VP lies on the image
    x-axis); any remaining global rotation is absorbed downstream by the
    alignment transform.  The sign of e_x is canonicalized (x-component
    <= 0) so the construction is continuous across x_v = 0.

    Raises DegenerateVertical when |y_v| is so small that the camera is
    effectively untilted and the top-down view is undefined.
    """
    if v.ideal:
        raise DegenerateVertical("vertical vanishing point at infinity (no tilt)")
    if abs(v.y) < Y_TILT_EPS * f:
        raise DegenerateVertical(f"|y_v|={abs(v.y):.3g} below tilt threshold")

    e_z = -_unit(np.array([v.x, v.y, f]))
    if abs(v.x) < X_LIMIT_EPS * f:
        e_x = np.array([-1.0, 0.0, 0.0])
    else:
        e_x = _unit(np.array([-f * f / v.x, 0.0, f]))
        if e_x[0] > 0:
            e_x = -e_x
    # e_x is orthogonal to e_z by construction; e_y completes the
    # right-handed triple (e_x x e_y = e_z).
    e_y = _unit(np.cross(e_z, e_x))
    return ManhattanFrame(e_x=e_x, e_y=e_y, e_z=_unit(np.cross(e_x, e_y)))


def topdown_homography(frame: ManhattanFrame, intrinsics: CameraIntrinsics) -> Homography:
    """Homography K R K^-1 warping the image to a straight-down view.

    Maps the vertical vanishing point (pixel coordinates) to the principal
    point and both horizontal vanishing points to ideal points.
    """
    k = intrinsics.as_matrix()
    return Homography.from_matrix(k @ frame.rotation() @ intrinsics.inv_matrix())


def apply_homography(h: Homography, p) -> np.ndarray:
    """Apply h to a homogeneous 2D point.  Callers dehomogenize with an
    explicit check for a near-zero third coordinate."""
    p = np.asarray(p, dtype=float)
    if np.linalg.norm(p) == 0:
        raise ValueError("cannot map the zero vector")
    return h.matrix @ p


def horizon_line(v1: VanishingPoint, v2: VanishingPoint) -> np.ndarray:
    """Homogeneous line through two horizontal vanishing points.

    Normalized so that ||(a, b)|| = 1 when the line is affine.  Raises
    IdenticalPoints when the two VPs coincide within tolerance.
    """
    p1, p2 = v1.homogeneous(), v2.homogeneous()
    line = np.cross(p1, p2)
    scale = np.linalg.norm(p1) * np.linalg.norm(p2)
    if np.linalg.norm(line) < 1e-9 * scale:
        raise IdenticalPoints("horizontal vanishing points coincide")
    ab = np.hypot(line[0], line[1])
    return line / (ab if ab > 1e-12 * abs(line[2]) else np.linalg.norm(line))
