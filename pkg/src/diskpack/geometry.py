"""Unit-radius disks in 3D: canonical normals, extents, overlap predicates
and the direction-dependent touching distance that makes them a metric space.

A disk is identified by its normal vector up to sign; placements add a
center.  All numerics are double precision with explicit tolerances
(:class:`ToleranceConfig`); there is no exact arithmetic.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import GeometryError, InvalidInputError

#: Half-angle of the axis caps: angle between a cube's diagonal and edge.
PHI0 = math.acos(1.0 / math.sqrt(3.0))

#: Disks whose normals are within this angle (radians) are the same disk.
IDENTITY_ANGLE = 1e-12


@dataclass(frozen=True)
class ToleranceConfig:
    predicate_eps: float = 1e-9
    overlap_eps: float = 1e-7
    convergence_eps: float = 1e-12
    max_iterations: int = 10000


DEFAULT_TOL = ToleranceConfig()


def unit_vector(v):
    """Validate and normalize a 3-vector, returning a float64 array."""
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise InvalidInputError(f"expected a 3-vector, got shape {a.shape}",
                                code="malformed")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("vector has non-finite components",
                                code="non-finite")
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        raise InvalidInputError("zero vector has no direction",
                                code="zero-vector")
    if abs(norm - 1.0) <= 1e-12:
        # already unit: dividing would dither the last bit and break
        # round-trip idempotence of canonical forms
        return a
    return a / norm


@dataclass(frozen=True)
class Disk:
    """A unit-radius disk, identified by its canonical unit normal.

    Construct through :func:`canonicalize_normal`; the canonical form has the
    first coordinate of magnitude above 1e-12 positive, so ``n`` and ``-n``
    map to equal Disks.
    """

    normal: tuple

    @property
    def n(self):
        return np.array(self.normal)


def canonicalize_normal(v):
    """Build the canonical Disk for any nonzero normal vector."""
    n = unit_vector(v)
    for comp in n:
        if abs(comp) > 1e-12:
            if comp < 0.0:
                n = -n
            break
    return Disk(normal=(float(n[0]), float(n[1]), float(n[2])))


def angle_between(d1, d2):
    """Angle between two disks in [0, pi/2] (normals are sign-free)."""
    n1 = d1.n
    n2 = d2.n
    dot = abs(float(n1 @ n2))
    cross = float(np.linalg.norm(np.cross(n1, n2)))
    return math.atan2(cross, dot)


def disks_identical(d1, d2):
    return angle_between(d1, d2) <= IDENTITY_ANGLE


def angle_to_axis(disk, axis):
    """Angle between the disk normal and coordinate axis 0/1/2, in [0, pi/2]."""
    n = disk.n
    c = abs(float(n[axis]))
    s = math.sqrt(max(0.0, 1.0 - c * c))
    return math.atan2(s, c)


def disk_extent(d):
    """Axis-parallel bounding dimensions of the disk centered anywhere.

    The support of the unit disk with normal n in axis direction i is
    sqrt(1 - n_i^2), so the box side is twice that.
    """
    n = d.n
    return 2.0 * np.sqrt(np.maximum(0.0, 1.0 - n * n))


@dataclass(frozen=True)
class PlacedDisk:
    disk: Disk
    center: tuple

    @property
    def c(self):
        return np.array(self.center)


def place(disk, center):
    c = np.asarray(center, dtype=float)
    return PlacedDisk(disk=disk, center=(float(c[0]), float(c[1]), float(c[2])))


@dataclass(frozen=True)
class Box3:
    min_corner: tuple
    dims: tuple

    def __post_init__(self):
        if any(d < 0 for d in self.dims):
            raise InvalidInputError("box dimensions must be nonnegative")

    @property
    def volume(self):
        return self.dims[0] * self.dims[1] * self.dims[2]

    @property
    def max_corner(self):
        return tuple(m + d for m, d in zip(self.min_corner, self.dims))


class OverlapStatus(enum.Enum):
    DISJOINT = "disjoint"
    TOUCHING = "touching"
    OVERLAPPING = "overlapping"


_STATUS_BY_CODE = {
    kernels.DISJOINT: OverlapStatus.DISJOINT,
    kernels.TOUCHING: OverlapStatus.TOUCHING,
    kernels.OVERLAPPING: OverlapStatus.OVERLAPPING,
}


def project_point_to_disk(p, pd):
    """Nearest point of the closed disk to p (plane projection, radial clamp)."""
    p = np.asarray(p, dtype=float)
    n = pd.disk.n
    c = pd.c
    q = kernels._project_to_disk(p[0], p[1], p[2], n[0], n[1], n[2],
                                 c[0], c[1], c[2])
    return np.array(q)


def min_distance(p1, p2, tol=DEFAULT_TOL):
    """Distance between two placed disks by alternating projection."""
    d, _ = min_distance_ex(p1, p2, tol)
    return d


def min_distance_ex(p1, p2, tol=DEFAULT_TOL):
    """Like :func:`min_distance` but also reports convergence."""
    d, conv = kernels.min_distance_kernel(
        p1.disk.n, p1.c, p2.disk.n, p2.c,
        tol.convergence_eps, tol.max_iterations)
    return float(d), bool(conv)


def overlap_status(p1, p2, tol=DEFAULT_TOL):
    """Classify two placed disks as Disjoint, Touching or Overlapping.

    Penetration deeper than ``overlap_eps`` counts as overlapping; contact or
    a gap of at most ``overlap_eps`` as touching.
    """
    code, _, _ = kernels.overlap_code_kernel(
        p1.disk.n, p1.c, p2.disk.n, p2.c,
        tol.overlap_eps, tol.convergence_eps, tol.max_iterations)
    return _STATUS_BY_CODE[int(code)]


def penetration_depth(p1, p2):
    """Signed contact measure: penetration depth when positive, radial
    deficit to contact when negative.

    Returns a large negative sentinel when the planes are parallel with an
    offset, so no such measure exists.
    """
    return float(kernels.penetration_kernel(p1.disk.n, p1.c, p2.disk.n, p2.c))


def s_distance(d1, d2, s, tol=DEFAULT_TOL):
    """Center distance of the two disks placed touching along direction s.

    Identical disks give 0.  Raises :class:`GeometryError` if no contact
    candidate validates within the configured tolerances.
    """
    if disks_identical(d1, d2):
        return 0.0
    sv = unit_vector(s)
    t = kernels.s_distance_kernel(
        d1.n, d2.n, sv, tol.predicate_eps, tol.overlap_eps,
        tol.convergence_eps, tol.max_iterations)
    if t < 0.0:
        raise GeometryError(
            "no touching configuration validated; predicate tolerance failure",
            details={"d1": d1.normal, "d2": d2.normal, "s": tuple(sv)})
    return float(t)


def s_distance_oracle(d1, d2, s, resolution=4096, tol=DEFAULT_TOL):
    """Brute-force touching distance: scan the separation and bisect.

    Independent of the constructive :func:`s_distance` path; test use only.
    Requires distinct disks.
    """
    if disks_identical(d1, d2):
        raise InvalidInputError("oracle requires distinct disks")
    sv = unit_vector(s)
    return float(kernels.oracle_kernel(
        d1.n, d2.n, sv, int(resolution), tol.overlap_eps,
        tol.convergence_eps, tol.max_iterations))


def support_box(pd):
    """Tight axis-parallel bounding box of one placed disk."""
    half = 0.5 * disk_extent(pd.disk)
    c = pd.c
    return Box3(min_corner=tuple(float(x) for x in (c - half)),
                dims=tuple(float(x) for x in (2.0 * half)))


def bounding_box(placed):
    """Tight bounding box of a collection of placed disks."""
    if not placed:
        raise InvalidInputError("cannot bound an empty collection")
    los = []
    his = []
    for pd in placed:
        half = 0.5 * disk_extent(pd.disk)
        c = pd.c
        los.append(c - half)
        his.append(c + half)
    lo = np.min(los, axis=0)
    hi = np.max(his, axis=0)
    return Box3(min_corner=tuple(float(x) for x in lo),
                dims=tuple(float(x) for x in (hi - lo)))


def ensure_distinct(disks):
    """Reject inputs containing identical disks (the metric needs them distinct)."""
    n = len(disks)
    for i in range(n):
        for j in range(i + 1, n):
            if disks_identical(disks[i], disks[j]):
                raise InvalidInputError(
                    f"disks {i} and {j} are identical", code="duplicate-disk")
