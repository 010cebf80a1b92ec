"""Instance generation, JSON serialization and mesh export.

Instance format: ``{"disks": [[x, y, z], ...], "meta": {...}}`` with disks in
canonical form, sorted lexicographically, so serialization is a canonical
byte form suitable for golden files.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError
from .geometry import (PHI0, Box3, angle_between, angle_to_axis,
                       canonicalize_normal, disk_extent, place)
from .packing import AXIS_VECTORS, PackingSolution, PackingStats, LowerBound


@dataclass(frozen=True)
class Instance:
    disks: tuple
    meta: dict = field(default_factory=dict)

    @property
    def n(self):
        return len(self.disks)


def _canonical_sort(disks):
    return tuple(sorted(disks, key=lambda d: d.normal))


def make_instance(normals, meta=None):
    """Canonicalize, sort and validate a set of normals into an Instance."""
    disks = [canonicalize_normal(v) for v in normals]
    disks = _canonical_sort(disks)
    for a, b in zip(disks, disks[1:]):
        if angle_between(a, b) <= 1e-12:
            raise InvalidInputError(
                f"duplicate disk with normal {a.normal}", code="duplicate-disk")
    return Instance(disks=disks, meta=dict(meta or {}))


def gen_sphere_grid(n, c):
    """Grid-on-sphere instance: a sqrt(n) x sqrt(n) grid of cell centers of a
    centered c x c square in the xy-plane, lifted vertically to the unit
    sphere.

    Any two grid points are at least the cell side apart, hence so are the
    normal angles.  Rejects parameters that push a normal out of the unit
    disk or outside the z-axis cap.
    """
    k = math.isqrt(int(n))
    if k * k != n or n < 1:
        raise InvalidInputError(f"n must be a perfect square, got {n}")
    if not (np.isfinite(c) and c > 0):
        raise InvalidInputError("c must be positive")
    eps = c / k
    normals = []
    for i in range(k):
        for j in range(k):
            x = -c / 2.0 + (i + 0.5) * eps
            y = -c / 2.0 + (j + 0.5) * eps
            r2 = x * x + y * y
            if r2 >= 1.0:
                raise InvalidInputError(
                    f"grid point ({x}, {y}) leaves the unit disk",
                    code="bad-parameter")
            z = math.sqrt(1.0 - r2)
            d = canonicalize_normal((x, y, z))
            if angle_to_axis(d, 2) >= PHI0:
                raise InvalidInputError(
                    f"normal {d.normal} leaves the z-axis cap",
                    code="bad-parameter")
            normals.append(d.normal)
    return make_instance(normals,
                         meta={"generator": "sphere-grid", "n": n, "c": c,
                               "epsilon": eps})


def gen_random_cap(n, axis, max_angle, seed):
    """Uniform random normals in the spherical cap around a coordinate axis."""
    if n < 1:
        raise InvalidInputError("n must be at least 1")
    if not 0 < max_angle <= PHI0:
        raise InvalidInputError(
            f"max_angle must be in (0, {PHI0:.6f}], got {max_angle}")
    if axis not in (0, 1, 2):
        raise InvalidInputError("axis must be 0, 1 or 2")
    rng = np.random.default_rng(seed)
    normals = []
    while len(normals) < n:
        # uniform area on the cap: cos(angle) uniform, azimuth uniform
        cos_t = rng.uniform(math.cos(max_angle), 1.0)
        sin_t = math.sqrt(max(0.0, 1.0 - cos_t * cos_t))
        phi = rng.uniform(0.0, 2.0 * math.pi)
        local = np.array([sin_t * math.cos(phi), sin_t * math.sin(phi), cos_t])
        v = np.roll(local, axis - 2)  # move the cap axis from z to `axis`
        d = canonicalize_normal(v)
        if any(angle_between(d, canonicalize_normal(p)) <= 1e-12
               for p in normals):
            continue
        normals.append(d.normal)
    return make_instance(normals,
                         meta={"generator": "random-cap", "n": n,
                               "axis": "xyz"[axis], "max_angle": max_angle,
                               "seed": seed})


def write_instance(instance):
    """Serialize an instance to canonical JSON bytes."""
    doc = {
        "disks": [list(d.normal) for d in _canonical_sort(instance.disks)],
        "meta": instance.meta,
    }
    return (json.dumps(doc, sort_keys=True, separators=(",", ":"))
            + "\n").encode()


def parse_instance(data):
    """Parse and strictly validate instance JSON bytes."""
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InvalidInputError(f"not valid JSON: {exc}", code="malformed")
    if not isinstance(doc, dict) or "disks" not in doc:
        raise InvalidInputError("missing top-level 'disks'", code="malformed")
    raw = doc["disks"]
    if (not isinstance(raw, list)
            or any(not isinstance(v, list) or len(v) != 3 for v in raw)):
        raise InvalidInputError("'disks' must be a list of 3-vectors",
                                code="malformed")
    for v in raw:
        if any(not isinstance(x, (int, float)) or isinstance(x, bool)
               for x in v):
            raise InvalidInputError(f"non-numeric component in {v}",
                                    code="malformed")
        if any(not math.isfinite(x) for x in v):
            raise InvalidInputError(f"non-finite component in {v}",
                                    code="non-finite")
    return make_instance(raw, meta=doc.get("meta", {}))


def write_solution(solution, verified=None):
    """Serialize a packing solution (container, placements, certificate)."""
    s = solution.stats
    doc = {
        "container": {"min_corner": list(solution.container.min_corner),
                      "dims": list(solution.container.dims)},
        "placements": [{"normal": list(pd.disk.normal),
                        "center": list(pd.center)}
                       for pd in solution.placements],
        "permutation": list(solution.permutation),
        "stats": {
            "n": s.n,
            "lengths": list(s.lengths),
            "solvers": list(s.solvers),
            "m": s.m,
            "piece_counts": list(s.piece_counts),
            "extent_bound": s.bound.extent_bound,
            "stab_bound": s.bound.stab_bound,
            "lower_bound": s.bound.value,
            "volume": s.volume,
            "certified_ratio": s.certified_ratio,
            "scale": s.scale,
        },
        "verified": verified,
    }
    return (json.dumps(doc, sort_keys=True, separators=(",", ":"))
            + "\n").encode()


def parse_solution(data):
    """Rebuild a PackingSolution from its JSON document."""
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InvalidInputError(f"not valid JSON: {exc}", code="malformed")
    try:
        container = Box3(min_corner=tuple(doc["container"]["min_corner"]),
                         dims=tuple(doc["container"]["dims"]))
        placements = [place(canonicalize_normal(p["normal"]), p["center"])
                      for p in doc["placements"]]
        st = doc["stats"]
        stats = PackingStats(
            n=st["n"], lengths=tuple(st["lengths"]),
            solvers=tuple(st["solvers"]), m=st["m"],
            piece_counts=tuple(st["piece_counts"]),
            bound=LowerBound(extent_bound=st["extent_bound"],
                             stab_bound=st["stab_bound"]),
            volume=st["volume"], certified_ratio=st["certified_ratio"],
            scale=st.get("scale", 1.0))
        return PackingSolution(container=container, placements=placements,
                               permutation=tuple(doc["permutation"]),
                               stats=stats)
    except (KeyError, TypeError, IndexError) as exc:
        raise InvalidInputError(f"malformed solution document: {exc}",
                                code="malformed")


def export_mesh(solution, segments=64):
    """OBJ export: every disk as a triangle fan, the container as line edges."""
    if segments < 3:
        raise InvalidInputError("need at least 3 segments per disk")
    lines = ["# diskpack solution mesh"]
    vert_count = 0
    for idx, pd in enumerate(solution.placements):
        n = pd.disk.n
        c = pd.c
        a = np.array([1.0, 0.0, 0.0])
        if abs(n[0]) > 0.9:
            a = np.array([0.0, 1.0, 0.0])
        e1 = np.cross(n, a)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(n, e1)
        lines.append(f"o disk_{idx}")
        base = vert_count
        lines.append(f"v {c[0]:.9f} {c[1]:.9f} {c[2]:.9f}")
        for k in range(segments):
            th = 2.0 * math.pi * k / segments
            p = c + math.cos(th) * e1 + math.sin(th) * e2
            lines.append(f"v {p[0]:.9f} {p[1]:.9f} {p[2]:.9f}")
        vert_count += segments + 1
        for k in range(segments):
            i = base + 2 + k
            j = base + 2 + (k + 1) % segments
            lines.append(f"f {base + 1} {i} {j}")
    lo = np.array(solution.container.min_corner)
    hi = np.array(solution.container.max_corner)
    lines.append("o container")
    corners = []
    for dz in (0, 1):
        for dy in (0, 1):
            for dx in (0, 1):
                p = np.array([hi[0] if dx else lo[0],
                              hi[1] if dy else lo[1],
                              hi[2] if dz else lo[2]])
                corners.append(p)
                lines.append(f"v {p[0]:.9f} {p[1]:.9f} {p[2]:.9f}")
    box_base = vert_count + 1
    edges = [(0, 1), (2, 3), (4, 5), (6, 7),
             (0, 2), (1, 3), (4, 6), (5, 7),
             (0, 4), (1, 5), (2, 6), (3, 7)]
    for a, b in edges:
        lines.append(f"l {box_base + a} {box_base + b}")
    return ("\n".join(lines) + "\n").encode()
