"""Container construction for packing unit disks into a small box.

Disks are grouped by the coordinate axis nearest to their normal, each group
is stabbed along its axis, the stabbings are cut into pieces and the pieces
stacked into three sub-assemblies that combine into one container.  The
emitted container is the tight bounding box of the actual placements; the
analytic piece pitch guarantees the certified dimension bounds.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError, InvalidInputError
from .geometry import (DEFAULT_TOL, Box3, Disk, PlacedDisk, bounding_box,
                       canonicalize_normal, disk_extent, ensure_distinct,
                       place)
from .stabbing import (build_distance_matrix, christofides_path,
                       held_karp_path, mst, realize_stabbing)

#: Certified worst-case ratio of emitted volume to optimal volume.
APPROX_FACTOR = 284.0

#: An optimal stabbing of an axis-aligned cap class is at most this factor
#: times the optimal packing volume; inverted it turns a spanning-tree weight
#: into a volume lower bound.
STAB_PER_OPT = 81.0 / 8.0

AXIS_VECTORS = (np.array([1.0, 0.0, 0.0]),
                np.array([0.0, 1.0, 0.0]),
                np.array([0.0, 0.0, 1.0]))


@dataclass(frozen=True)
class SolverConfig:
    """Routing between the exact and the approximate path solver."""

    exact_threshold: int = 12

    def __post_init__(self):
        if not 0 <= self.exact_threshold <= 20:
            raise InvalidInputError("exact_threshold must be in [0, 20]")


DEFAULT_SOLVER = SolverConfig()


def classify(disks):
    """Split disk indices by the axis with the largest |normal| coordinate.

    Ties go to the earlier axis (x before y before z).
    """
    classes = ([], [], [])
    for i, d in enumerate(disks):
        axis = int(np.argmax(np.abs(d.n)))
        classes[axis].append(i)
    return classes


def global_extent(disks):
    """Componentwise maximal bounding dimensions over all disks at the origin."""
    if not disks:
        raise InvalidInputError("extent of an empty disk set is undefined")
    return np.max([disk_extent(d) for d in disks], axis=0)


@dataclass(frozen=True)
class LowerBound:
    """Certified lower bound on the optimal container volume."""

    extent_bound: float
    stab_bound: float

    @property
    def value(self):
        return max(self.extent_bound, self.stab_bound)


def lower_bound(extent, class_mst_weights):
    """Combine the extent product with the best spanning-tree bound.

    Any packing of a cap class yields a stabbing of bounded length, and the
    class MST weighs no more than the optimal stabbing, so MST weight divided
    by that factor bounds the optimal volume from below.  So does the extent
    product, since the largest single-disk box must fit.
    """
    eb = float(extent[0] * extent[1] * extent[2])
    sb = max([w / STAB_PER_OPT for w in class_mst_weights], default=0.0)
    return LowerBound(extent_bound=eb, stab_bound=float(sb))


@dataclass(frozen=True)
class Piece:
    """One slice of a cut stabbing with its own tight box."""

    box: Box3
    indices: tuple
    placed: tuple


def cut_into_pieces(stabbing, placed, k):
    """Cut a realized stabbing into k offset intervals of equal length.

    Piece j owns the disks whose offset falls in [j*L/k, (j+1)*L/k), with the
    last interval closed; a zero-length stabbing puts everything into piece 0.
    Empty pieces carry box None.
    """
    if k < 1:
        raise InvalidInputError("piece count must be at least 1")
    length = stabbing.length
    buckets = [[] for _ in range(k)]
    for off, idx in zip(stabbing.offsets, stabbing.ordering):
        if length <= 0.0:
            j = 0
        else:
            j = min(int(off / length * k), k - 1)
        buckets[j].append(idx)
    pieces = []
    for bucket in buckets:
        if bucket:
            members = [placed[i] for i in bucket]
            pieces.append(Piece(box=bounding_box(members),
                                indices=tuple(bucket),
                                placed=tuple(members)))
        else:
            pieces.append(Piece(box=None, indices=(), placed=()))
    return pieces


@dataclass(frozen=True)
class PackingStats:
    n: int
    lengths: tuple
    solvers: tuple
    m: int
    piece_counts: tuple
    bound: LowerBound
    volume: float
    certified_ratio: float
    scale: float = 1.0


@dataclass(frozen=True)
class PackingSolution:
    container: Box3
    placements: list
    permutation: tuple
    stats: PackingStats


def _apply_perm(perm, v):
    return np.array([v[perm[0]], v[perm[1]], v[perm[2]]])


def _invert_perm(perm):
    inv = [0, 0, 0]
    for k in range(3):
        inv[perm[k]] = k
    return tuple(inv)


def _solve_class(disks, indices, axis, config, tol):
    """Stab one axis class along its axis; returns per-class solve data."""
    subset = [disks[i] for i in indices]
    matrix = build_distance_matrix(subset, AXIS_VECTORS[axis], tol)
    if len(subset) <= config.exact_threshold:
        ordering = held_karp_path(matrix, limit=max(config.exact_threshold, 1))
        solver = "held-karp"
    else:
        ordering = christofides_path(matrix)
        solver = "christofides"
    stab, placed = realize_stabbing(subset, ordering, AXIS_VECTORS[axis],
                                    tol, matrix=matrix)
    _, mst_weight = mst(matrix)
    return {
        "indices": indices,
        "subset": subset,
        "matrix": matrix,
        "ordering": ordering,
        "stabbing": stab,
        "placed": placed,
        "mst_weight": mst_weight,
        "solver": solver,
    }


def _certify(n, lengths, solvers, m, piece_counts, bound, container, scale=1.0):
    volume = container.volume
    if volume > APPROX_FACTOR * bound.value * (1.0 + 1e-9) + 1e-12:
        raise GeometryError(
            "certificate violated: volume exceeds the guaranteed ratio",
            details={"volume": volume, "lower_bound": bound.value})
    ratio = volume / bound.value if bound.value > 0.0 else 0.0
    return PackingStats(n=n, lengths=lengths, solvers=solvers, m=m,
                        piece_counts=piece_counts, bound=bound, volume=volume,
                        certified_ratio=ratio, scale=scale)


def pack_single_class(disks, axis, config=DEFAULT_SOLVER, tol=DEFAULT_TOL):
    """Pack disks whose normals all lie in one axis cap: a single stabbing.

    The container is the tight bounding box of the realized stabbing.
    """
    if not disks:
        raise InvalidInputError("cannot pack an empty disk set")
    ensure_distinct(disks)
    sol = _solve_class(disks, list(range(len(disks))), axis, config, tol)
    container = bounding_box(sol["placed"])
    lengths = [0.0, 0.0, 0.0]
    lengths[axis] = sol["stabbing"].length
    solvers = [None, None, None]
    solvers[axis] = sol["solver"]
    bound = lower_bound(global_extent(disks), [sol["mst_weight"]])
    stats = _certify(len(disks), tuple(lengths), tuple(solvers), 0,
                     (0, 0, 0), bound, container)
    return PackingSolution(container=container, placements=sol["placed"],
                           permutation=(0, 1, 2), stats=stats)


def _relabel_placed(pd, perm):
    n = _apply_perm(perm, pd.disk.n)
    c = _apply_perm(perm, pd.c)
    return place(canonicalize_normal(n), c)


def pack(disks, config=DEFAULT_SOLVER, tol=DEFAULT_TOL):
    """Full packing pipeline: classify, stab, cut, assemble, certify."""
    if not disks:
        raise InvalidInputError("cannot pack an empty disk set")
    ensure_distinct(disks)
    classes = classify(disks)
    nonempty = [a for a in range(3) if classes[a]]
    solved = {a: _solve_class(disks, classes[a], a, config, tol)
              for a in nonempty}
    if len(nonempty) == 1:
        axis = nonempty[0]
        sol = solved[axis]
        placements = [None] * len(disks)
        for i, pd in zip(classes[axis], sol["placed"]):
            placements[i] = pd
        container = bounding_box(placements)
        lengths = [0.0, 0.0, 0.0]
        lengths[axis] = sol["stabbing"].length
        solvers = [None, None, None]
        solvers[axis] = sol["solver"]
        bound = lower_bound(global_extent(disks), [sol["mst_weight"]])
        stats = _certify(len(disks), tuple(lengths), tuple(solvers), 0,
                         (0, 0, 0), bound, container)
        return PackingSolution(container=container, placements=placements,
                               permutation=(0, 1, 2), stats=stats)

    lengths = [solved[a]["stabbing"].length if a in solved else 0.0
               for a in range(3)]
    # the longest stabbing plays the y-role; prefer a nonempty class on ties
    astar = max(range(3), key=lambda a: (lengths[a], len(classes[a]), -a))
    perm = (0, 1, 2) if astar == 1 else tuple(
        {astar: 1, 1: astar}.get(k, k) for k in range(3))

    extent = global_extent(disks)
    ex, ey, ez = (float(x) for x in _apply_perm(perm, extent))
    ly = lengths[astar]
    m = int(math.floor((ly / 6.0 + ey) / ey))

    # role -> (class axis, piece count, target corner of piece j)
    roles = {
        "y": (perm[1], 6,
              lambda j: np.array([0.0, 0.0, j * ez])),
        "x": (perm[0], 3 * m,
              lambda j: np.array([ex, (j % m) * ey, (j // m) * ez])),
        "z": (perm[2], 3 * m,
              lambda j: np.array([ex + (j // m) * ex, (j % m) * ey,
                                  3.0 * ez])),
    }

    placements = [None] * len(disks)
    piece_counts = {"x": 0, "y": 0, "z": 0}
    for role, (axis, count, target) in roles.items():
        if axis not in solved:
            continue
        sol = solved[axis]
        relabeled = [_relabel_placed(pd, perm) for pd in sol["placed"]]
        pieces = cut_into_pieces(sol["stabbing"], relabeled, count)
        piece_counts[role] = count
        for j, piece in enumerate(pieces):
            if piece.box is None:
                continue
            shift = target(j) - np.array(piece.box.min_corner)
            for local_i, pd in zip(piece.indices, piece.placed):
                global_i = sol["indices"][local_i]
                center = _apply_perm(_invert_perm(perm), pd.c + shift)
                placements[global_i] = place(disks[global_i], center)

    container = bounding_box(placements)
    bound = lower_bound(extent, [solved[a]["mst_weight"] for a in nonempty])
    solvers = tuple(solved[a]["solver"] if a in solved else None
                    for a in range(3))
    stats = _certify(len(disks), tuple(lengths), solvers, m,
                     (piece_counts["x"], piece_counts["y"],
                      piece_counts["z"]), bound, container)
    return PackingSolution(container=container, placements=placements,
                           permutation=perm, stats=stats)


def shape_packing_factor(r):
    """Approximation factor for congruent planar shapes with radius ratio r.

    r is the circumradius over the inradius of the shape; the disk factor
    picks up a factor r^3.
    """
    if not np.isfinite(r) or r < 1.0:
        raise InvalidInputError("radius ratio must be >= 1")
    return APPROX_FACTOR * float(r) ** 3


def pack_congruent_shapes(normals, circumradius, config=DEFAULT_SOLVER,
                          tol=DEFAULT_TOL):
    """Pack congruent planar shapes via their enclosing disks.

    Scales the problem to unit radius, packs, and scales the result back.
    """
    if not np.isfinite(circumradius) or circumradius <= 0.0:
        raise InvalidInputError("circumradius must be positive")
    disks = [canonicalize_normal(n) for n in normals]
    unit = pack(disks, config, tol)
    r = float(circumradius)
    container = Box3(
        min_corner=tuple(r * x for x in unit.container.min_corner),
        dims=tuple(r * x for x in unit.container.dims))
    placements = [place(pd.disk, r * pd.c) for pd in unit.placements]
    s = unit.stats
    stats = PackingStats(
        n=s.n, lengths=tuple(r * x for x in s.lengths), solvers=s.solvers,
        m=s.m, piece_counts=s.piece_counts,
        bound=LowerBound(extent_bound=s.bound.extent_bound * r ** 3,
                         stab_bound=s.bound.stab_bound * r ** 3),
        volume=s.volume * r ** 3, certified_ratio=s.certified_ratio,
        scale=r)
    return PackingSolution(container=container, placements=placements,
                           permutation=unit.permutation, stats=stats)
