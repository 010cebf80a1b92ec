"""Low-level numeric kernels for disk geometry.

Everything in this module works on raw float64 scalars and arrays so that it
can be compiled by numba (see :mod:`diskpack._backend`).  The public,
object-level API lives in :mod:`diskpack.geometry`.

Conventions: disks have unit radius; a disk is the set
``{c + w : w perpendicular to n, |w| <= 1}`` for unit normal ``n`` and
center ``c``.
"""

import math

import numpy as np

from ._backend import njit

DISJOINT = 0
TOUCHING = 1
OVERLAPPING = 2

# Sentinel for "the disks cannot meet on the intersection line at all".
NO_CONTACT = -1.0e30

# Below this sine of the normal angle the plane intersection line is not
# computed; the disks are treated as (anti)parallel.
_PARALLEL_EPS = 1e-10

# Below this |s . n| the direction s is treated as parallel to the disk plane
# and the degenerate contact formulas apply.
_DEGENERATE_EPS = 1e-9

_CASE3_SCAN = 256


@njit(cache=True)
def _norm3(x, y, z):
    return math.sqrt(x * x + y * y + z * z)


@njit(cache=True)
def _project_to_disk(px, py, pz, nx, ny, nz, cx, cy, cz):
    """Nearest point of the closed unit disk (n, c) to the point p."""
    d = (px - cx) * nx + (py - cy) * ny + (pz - cz) * nz
    qx = px - d * nx
    qy = py - d * ny
    qz = pz - d * nz
    rx = qx - cx
    ry = qy - cy
    rz = qz - cz
    r2 = rx * rx + ry * ry + rz * rz
    if r2 > 1.0:
        inv = 1.0 / math.sqrt(r2)
        qx = cx + rx * inv
        qy = cy + ry * inv
        qz = cz + rz * inv
    return qx, qy, qz


@njit(cache=True)
def _closest_pair(n1x, n1y, n1z, c1x, c1y, c1z,
                  n2x, n2y, n2z, c2x, c2y, c2z,
                  x0x, x0y, x0z, conv_eps, max_iter):
    """Alternating projection between two disks from a given start point.

    Returns (gap, y on disk1, x on disk2, converged).  The iteration stops
    when one round trip moves the iterate by less than conv_eps.
    """
    xx, xy, xz = _project_to_disk(x0x, x0y, x0z, n2x, n2y, n2z, c2x, c2y, c2z)
    yx, yy, yz = _project_to_disk(xx, xy, xz, n1x, n1y, n1z, c1x, c1y, c1z)
    converged = False
    for _ in range(max_iter):
        tx, ty, tz = _project_to_disk(yx, yy, yz, n2x, n2y, n2z, c2x, c2y, c2z)
        step = _norm3(tx - xx, ty - xy, tz - xz)
        xx, xy, xz = tx, ty, tz
        yx, yy, yz = _project_to_disk(xx, xy, xz, n1x, n1y, n1z, c1x, c1y, c1z)
        if step < conv_eps:
            converged = True
            break
    gap = _norm3(xx - yx, xy - yy, xz - yz)
    return gap, yx, yy, yz, xx, xy, xz, converged


@njit(cache=True)
def min_distance_kernel(n1, c1, n2, c2, conv_eps, max_iter):
    """Euclidean distance between two placed disks (alternating projection)."""
    gap, _, _, _, _, _, _, conv = _closest_pair(
        n1[0], n1[1], n1[2], c1[0], c1[1], c1[2],
        n2[0], n2[1], n2[2], c2[0], c2[1], c2[2],
        c2[0], c2[1], c2[2], conv_eps, max_iter)
    return gap, conv


@njit(cache=True)
def penetration_kernel(n1, c1, n2, c2):
    """Signed contact measure between two placed unit disks.

    For non-parallel planes any intersection of the disks lies on the line
    where the planes meet.  Along that line, f(s) = min_i (1 - |p(s) - c_i|)
    (the smaller radial slack into either disk) is concave; its maximum is
    returned.  Positive values are the penetration depth, negative values the
    common radial deficit to contact; both live at the scale of the
    separating translation (a raw chord overlap/gap length would grow like
    the square root of that near rim contact and wildly overstate it).
    Returns NO_CONTACT only when the planes are parallel with an offset, so
    no translation-scale measure exists.

    For near-parallel normals the line offset is computed from the plane gap
    divided by sin(angle); this stays well conditioned down to angles around
    1e-10 where the cross product itself loses accuracy.
    """
    crx = n1[1] * n2[2] - n1[2] * n2[1]
    cry = n1[2] * n2[0] - n1[0] * n2[2]
    crz = n1[0] * n2[1] - n1[1] * n2[0]
    sxi = _norm3(crx, cry, crz)
    dx = c2[0] - c1[0]
    dy = c2[1] - c1[1]
    dz = c2[2] - c1[2]
    if sxi < _PARALLEL_EPS:
        off = abs(dx * n1[0] + dy * n1[1] + dz * n1[2])
        if off > 1e-9:
            return NO_CONTACT
        # coplanar unit circles: interiors overlap iff centers closer than 2
        return 2.0 - _norm3(dx, dy, dz)
    ux, uy, uz = crx / sxi, cry / sxi, crz / sxi
    # signed distance of each center from the line, via the plane gap over
    # sin(angle): (u x n1) . n2 = sin(angle), (u x n2) . n1 = -sin(angle).
    # This avoids solving for a point on the line, which is ill conditioned
    # for near-parallel planes.
    rho1 = (dx * n2[0] + dy * n2[1] + dz * n2[2]) / sxi
    rho2 = (dx * n1[0] + dy * n1[1] + dz * n1[2]) / sxi
    # feet of the perpendicular from the centers onto the line sit at
    # c_i + rho_i * (u x n_i), so along the line they differ by (c2 - c1) . u
    f2u = dx * ux + dy * uy + dz * uz
    # f(s) = min_i (1 - sqrt(rho_i^2 + (s - foot_i)^2)) is concave on the
    # whole line; ternary-search its maximum.  The maximizer lies between
    # the two feet (each branch decreases away from its own foot).
    r1sq = rho1 * rho1
    r2sq = rho2 * rho2
    a = min(0.0, f2u)
    b = max(0.0, f2u)
    for _ in range(80):
        m1 = a + (b - a) / 3.0
        m2 = b - (b - a) / 3.0
        g1 = min(1.0 - math.sqrt(r1sq + m1 * m1),
                 1.0 - math.sqrt(r2sq + (m1 - f2u) * (m1 - f2u)))
        g2 = min(1.0 - math.sqrt(r1sq + m2 * m2),
                 1.0 - math.sqrt(r2sq + (m2 - f2u) * (m2 - f2u)))
        if g1 < g2:
            a = m1
        else:
            b = m2
    s = 0.5 * (a + b)
    return min(1.0 - math.sqrt(r1sq + s * s),
               1.0 - math.sqrt(r2sq + (s - f2u) * (s - f2u)))


@njit(cache=True)
def overlap_code_kernel(n1, c1, n2, c2, overlap_eps, conv_eps, max_iter):
    """Classify two placed disks: (code, measure, converged).

    code is DISJOINT / TOUCHING / OVERLAPPING; measure is the penetration
    length for overlaps and minus the gap otherwise.
    """
    pen = penetration_kernel(n1, c1, n2, c2)
    if pen > NO_CONTACT:
        if pen > overlap_eps:
            return OVERLAPPING, pen, True
        if pen >= -overlap_eps:
            return TOUCHING, pen, True
        return DISJOINT, pen, True
    # parallel planes with an offset: fall back to the projection distance
    gap, conv = min_distance_kernel(n1, c1, n2, c2, conv_eps, max_iter)
    if gap <= overlap_eps:
        return TOUCHING, -gap, conv
    return DISJOINT, -gap, conv


@njit(cache=True)
def _case3_eval(theta, w2x, w2y, w2z, ux, uy, uz, n1, s, sn1):
    """Candidate second center on the unit circle of the second plane.

    Returns (f, c1x, c1y, c1z, t) where f = |c1|^2 - 1 measures whether the
    first center, obtained by sliding back along s into the first plane, lies
    on its own unit circle around the touch point.
    """
    ct = math.cos(theta)
    st = math.sin(theta)
    bx = ct * w2x + st * ux
    by = ct * w2y + st * uy
    bz = ct * w2z + st * uz
    t = (bx * n1[0] + by * n1[1] + bz * n1[2]) / sn1
    ax = bx - t * s[0]
    ay = by - t * s[1]
    az = bz - t * s[2]
    f = ax * ax + ay * ay + az * az - 1.0
    return f, ax, ay, az, t


@njit(cache=True)
def s_distance_kernel(n1, n2, s, pred_eps, overlap_eps, conv_eps, max_iter):
    """Center separation of two touching disks along direction s.

    The touch point is fixed at the origin.  Candidate contact configurations
    come from three constructions: the first disk tangent to the plane
    intersection line, the second disk tangent to it, or both centers at unit
    distance from the touch point (found by a 256-sample sweep of the unit
    circle in the second plane with bisection on sign changes).  Each
    candidate is validated by the overlap classifier; the largest validated
    separation is returned.  Returns 0 for identical disks and -1.0 if no
    candidate validates (a tolerance failure the caller must surface).
    """
    crx = n1[1] * n2[2] - n1[2] * n2[1]
    cry = n1[2] * n2[0] - n1[0] * n2[2]
    crz = n1[0] * n2[1] - n1[1] * n2[0]
    sxi = _norm3(crx, cry, crz)
    if sxi <= 1e-12:
        # angle below the identity threshold: same disk
        return 0.0
    ux, uy, uz = crx / sxi, cry / sxi, crz / sxi
    sn1 = s[0] * n1[0] + s[1] * n1[1] + s[2] * n1[2]
    sn2 = s[0] * n2[0] + s[1] * n2[1] + s[2] * n2[2]
    if abs(sn1) <= _DEGENERATE_EPS and abs(sn2) <= _DEGENERATE_EPS:
        # s lies in both planes, so the disks meet the contact line in unit
        # chords through their centers: two collinear unit half-lengths
        return 2.0
    max_cand = 48
    cand_c1 = np.empty((max_cand, 3))
    cand_t = np.empty(max_cand)
    ncand = 0
    w1x = uy * n1[2] - uz * n1[1]
    w1y = uz * n1[0] - ux * n1[2]
    w1z = ux * n1[1] - uy * n1[0]
    w2x = uy * n2[2] - uz * n2[1]
    w2y = uz * n2[0] - ux * n2[2]
    w2z = ux * n2[1] - uy * n2[0]

    # first disk tangent to the line at the touch point
    if abs(sn2) > _DEGENERATE_EPS:
        for k in range(2):
            sgn = 1.0 if k == 0 else -1.0
            ax, ay, az = sgn * w1x, sgn * w1y, sgn * w1z
            t = -(ax * n2[0] + ay * n2[1] + az * n2[2]) / sn2
            if t >= -pred_eps:
                bx = ax + t * s[0]
                by = ay + t * s[1]
                bz = az + t * s[2]
                if _norm3(bx, by, bz) <= 1.0 + pred_eps and ncand < max_cand:
                    cand_c1[ncand, 0] = ax
                    cand_c1[ncand, 1] = ay
                    cand_c1[ncand, 2] = az
                    cand_t[ncand] = t
                    ncand += 1

    # second disk tangent to the line at the touch point
    if abs(sn1) > _DEGENERATE_EPS:
        for k in range(2):
            sgn = 1.0 if k == 0 else -1.0
            bx, by, bz = sgn * w2x, sgn * w2y, sgn * w2z
            t = (bx * n1[0] + by * n1[1] + bz * n1[2]) / sn1
            if t >= -pred_eps:
                ax = bx - t * s[0]
                ay = by - t * s[1]
                az = bz - t * s[2]
                if _norm3(ax, ay, az) <= 1.0 + pred_eps and ncand < max_cand:
                    cand_c1[ncand, 0] = ax
                    cand_c1[ncand, 1] = ay
                    cand_c1[ncand, 2] = az
                    cand_t[ncand] = t
                    ncand += 1

    if abs(sn1) > _DEGENERATE_EPS and abs(sn2) > _DEGENERATE_EPS:
        # both centers at unit distance from the touch point
        fs = np.empty(_CASE3_SCAN + 1)
        for k in range(_CASE3_SCAN + 1):
            theta = 2.0 * math.pi * k / _CASE3_SCAN
            f, _, _, _, _ = _case3_eval(theta, w2x, w2y, w2z, ux, uy, uz,
                                        n1, s, sn1)
            fs[k] = f
        for k in range(_CASE3_SCAN):
            fa = fs[k]
            fb = fs[k + 1]
            tha = 2.0 * math.pi * k / _CASE3_SCAN
            thb = 2.0 * math.pi * (k + 1) / _CASE3_SCAN
            root_th = -1.0
            if fa == 0.0:
                root_th = tha
            elif fa * fb < 0.0:
                lo, hi = tha, thb
                flo = fa
                for _ in range(64):
                    mid = 0.5 * (lo + hi)
                    fm, _, _, _, _ = _case3_eval(mid, w2x, w2y, w2z,
                                                 ux, uy, uz, n1, s, sn1)
                    if fm == 0.0:
                        lo = mid
                        hi = mid
                        break
                    if flo * fm < 0.0:
                        hi = mid
                    else:
                        lo = mid
                        flo = fm
                    if hi - lo < 1e-14:
                        break
                root_th = 0.5 * (lo + hi)
            elif k > 0 and abs(fa) < 1e-4 and (
                    (fs[k - 1] > fa and fa < fb and fa > 0.0)
                    or (fs[k - 1] < fa and fa > fb and fa < 0.0)):
                # near-tangent double root: refine the local extremum of f
                # closest to zero and accept it if it actually reaches zero
                sense = 1.0 if fa > 0.0 else -1.0
                lo = 2.0 * math.pi * (k - 1) / _CASE3_SCAN
                hi = thb
                for _ in range(100):
                    m1 = lo + (hi - lo) / 3.0
                    m2 = hi - (hi - lo) / 3.0
                    f1, _, _, _, _ = _case3_eval(m1, w2x, w2y, w2z,
                                                 ux, uy, uz, n1, s, sn1)
                    f2, _, _, _, _ = _case3_eval(m2, w2x, w2y, w2z,
                                                 ux, uy, uz, n1, s, sn1)
                    if sense * f1 < sense * f2:
                        hi = m2
                    else:
                        lo = m1
                fext, _, _, _, _ = _case3_eval(0.5 * (lo + hi),
                                               w2x, w2y, w2z, ux, uy, uz,
                                               n1, s, sn1)
                if abs(fext) < 1e-9:
                    root_th = 0.5 * (lo + hi)
            if root_th >= 0.0:
                _, ax, ay, az, t = _case3_eval(root_th, w2x, w2y, w2z,
                                               ux, uy, uz, n1, s, sn1)
                if t >= -pred_eps and ncand < max_cand:
                    cand_c1[ncand, 0] = ax
                    cand_c1[ncand, 1] = ay
                    cand_c1[ncand, 2] = az
                    cand_t[ncand] = t
                    ncand += 1
    else:
        # s parallel to exactly one disk plane: that disk's center must lie
        # on the line itself, leaving two discrete configurations
        if abs(sn1) <= _DEGENERATE_EPS:
            for k in range(2):
                sgn = 1.0 if k == 0 else -1.0
                bx, by, bz = sgn * ux, sgn * uy, sgn * uz
                t = 2.0 * (bx * s[0] + by * s[1] + bz * s[2])
                if t >= -pred_eps and ncand < max_cand:
                    cand_c1[ncand, 0] = bx - t * s[0]
                    cand_c1[ncand, 1] = by - t * s[1]
                    cand_c1[ncand, 2] = bz - t * s[2]
                    cand_t[ncand] = t
                    ncand += 1
        if abs(sn2) <= _DEGENERATE_EPS:
            for k in range(2):
                sgn = 1.0 if k == 0 else -1.0
                ax, ay, az = sgn * ux, sgn * uy, sgn * uz
                t = -2.0 * (ax * s[0] + ay * s[1] + az * s[2])
                if t >= -pred_eps and ncand < max_cand:
                    cand_c1[ncand, 0] = ax
                    cand_c1[ncand, 1] = ay
                    cand_c1[ncand, 2] = az
                    cand_t[ncand] = t
                    ncand += 1

    best = -1.0
    c1 = np.empty(3)
    c2 = np.empty(3)
    for i in range(ncand):
        t = cand_t[i]
        if t <= best:
            continue
        c1[0] = cand_c1[i, 0]
        c1[1] = cand_c1[i, 1]
        c1[2] = cand_c1[i, 2]
        c2[0] = c1[0] + t * s[0]
        c2[1] = c1[1] + t * s[1]
        c2[2] = c1[2] + t * s[2]
        code, _, _ = overlap_code_kernel(n1, c1, n2, c2,
                                         overlap_eps, conv_eps, max_iter)
        if code != OVERLAPPING:
            best = t
    if best >= 0.0:
        return best
    return -1.0


@njit(cache=True)
def oracle_kernel(n1, n2, s, resolution, overlap_eps, conv_eps, max_iter):
    """Brute-force s-distance: scan the separation, then bisect.

    Places the first disk at the origin and the second at t*s.  The set of
    separations where the translates intersect is an interval in t (the
    Minkowski difference of convex sets is convex), so scanning up from 0
    until the overlap ends and bisecting the boundary is exhaustive.
    """
    c1 = np.zeros(3)
    c2 = np.empty(3)
    step = 4.0 / resolution
    last_overlap = 0.0
    hi = step
    for k in range(1, resolution + 1):
        t = k * step
        c2[0] = t * s[0]
        c2[1] = t * s[1]
        c2[2] = t * s[2]
        code, _, _ = overlap_code_kernel(n1, c1, n2, c2,
                                         overlap_eps, conv_eps, max_iter)
        if code == OVERLAPPING:
            last_overlap = t
        elif t > last_overlap + step:
            break
    lo = last_overlap
    hi = last_overlap + step
    while hi - lo > conv_eps:
        mid = 0.5 * (lo + hi)
        c2[0] = mid * s[0]
        c2[1] = mid * s[1]
        c2[2] = mid * s[2]
        code, _, _ = overlap_code_kernel(n1, c1, n2, c2,
                                         overlap_eps, conv_eps, max_iter)
        if code == OVERLAPPING:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@njit(cache=True)
def distance_matrix_kernel(normals, s, pred_eps, overlap_eps, conv_eps,
                           max_iter):
    """All pairwise s-distances; entries are -1.0 where computation failed."""
    n = normals.shape[0]
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d = s_distance_kernel(normals[i], normals[j], s,
                                  pred_eps, overlap_eps, conv_eps, max_iter)
            out[i, j] = d
            out[j, i] = d
    return out


@njit(cache=True)
def held_karp_kernel(dist):
    """Exact shortest Hamiltonian path with free endpoints (bitmask DP).

    Returns (path, length).  Ties are resolved by the first (smallest-index)
    state reaching the optimal value.
    """
    n = dist.shape[0]
    full = 1 << n
    dp = np.full((full, n), np.inf)
    parent = np.full((full, n), -1, np.int64)
    for i in range(n):
        dp[1 << i, i] = 0.0
    for mask in range(1, full):
        for last in range(n):
            if not (mask >> last) & 1:
                continue
            cur = dp[mask, last]
            if not np.isfinite(cur):
                continue
            for nxt in range(n):
                if (mask >> nxt) & 1:
                    continue
                nm = mask | (1 << nxt)
                cand = cur + dist[last, nxt]
                if cand < dp[nm, nxt]:
                    dp[nm, nxt] = cand
                    parent[nm, nxt] = last
    best = np.inf
    best_last = 0
    for last in range(n):
        if dp[full - 1, last] < best:
            best = dp[full - 1, last]
            best_last = last
    path = np.empty(n, np.int64)
    mask = full - 1
    last = best_last
    for k in range(n - 1, -1, -1):
        path[k] = last
        prev = parent[mask, last]
        mask ^= 1 << last
        last = prev
    return path, best
