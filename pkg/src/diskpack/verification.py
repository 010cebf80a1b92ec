"""Independent checks: packing validity, metric axioms, growth experiments.

Everything here re-derives its verdicts from first principles (pairwise
overlap predicates, axiom inequalities on sampled triples) rather than
trusting solver bookkeeping.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError
from .geometry import (DEFAULT_TOL, OverlapStatus, angle_between,
                       overlap_status, penetration_depth, s_distance,
                       support_box)
from .packing import APPROX_FACTOR, STAB_PER_OPT, pack
from .stabbing import build_distance_matrix, mst

#: Slack allowed on containment checks (placements are exact translations,
#: so only representation error can accumulate).
CONTAINMENT_SLACK = 1e-9


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    worst_penetration: float
    worst_containment_violation: float
    offending_pairs: tuple
    certified_ratio: float
    notes: tuple = ()

    @property
    def ok(self):
        return self.passed


def verify_packing(solution, disks=None, tol=DEFAULT_TOL):
    """Re-check a packing solution: containment, disjointness, certificate.

    Passes iff no pair penetrates deeper than ``overlap_eps`` and no disk
    leaves the container by more than 1e-9.  If the original disks are given,
    also checks that the placements carry exactly those disks.
    """
    notes = []
    placements = solution.placements
    box = solution.container

    if disks is not None:
        want = sorted(d.normal for d in disks)
        got = sorted(pd.disk.normal for pd in placements)
        same = len(want) == len(got) and all(
            math.isclose(a, b, abs_tol=1e-12)
            for va, vb in zip(want, got) for a, b in zip(va, vb))
        if not same:
            notes.append("placements do not carry the input disks")

    lo = np.array(box.min_corner)
    hi = np.array(box.max_corner)
    worst_violation = 0.0
    for i, pd in enumerate(placements):
        sb = support_box(pd)
        under = float(np.max(lo - np.array(sb.min_corner)))
        over = float(np.max(np.array(sb.max_corner) - hi))
        v = max(under, over, 0.0)
        if v > worst_violation:
            worst_violation = v
        if v > CONTAINMENT_SLACK:
            notes.append(f"disk {i} leaves the container by {v:.3e}")

    worst_pen = float("-inf")
    offending = []
    n = len(placements)
    for i in range(n):
        for j in range(i + 1, n):
            pen = penetration_depth(placements[i], placements[j])
            if pen > worst_pen:
                worst_pen = pen
            if pen > tol.overlap_eps or overlap_status(
                    placements[i], placements[j],
                    tol) is OverlapStatus.OVERLAPPING:
                offending.append((i, j))
    if n < 2:
        worst_pen = 0.0
    if offending:
        notes.append(f"overlapping pairs: {offending[:5]}")

    s = solution.stats
    scale3 = s.scale ** 3
    lb = s.bound.value * scale3
    ratio = box.volume / lb if lb > 0.0 else 0.0
    if box.volume > APPROX_FACTOR * lb * (1.0 + 1e-9) + 1e-12:
        notes.append(
            f"certificate violated: volume {box.volume} vs bound {lb}")
    if not math.isclose(box.volume, s.volume, rel_tol=1e-9, abs_tol=1e-12):
        notes.append(
            f"recorded volume {s.volume} disagrees with container "
            f"{box.volume}")

    passed = not offending and worst_violation <= CONTAINMENT_SLACK \
        and not notes
    return VerificationReport(
        passed=passed,
        worst_penetration=worst_pen,
        worst_containment_violation=worst_violation,
        offending_pairs=tuple(offending),
        certified_ratio=ratio,
        notes=tuple(notes))


def verify_metric(disks, s, trials, seed=0, tol=DEFAULT_TOL, axiom_eps=1e-9):
    """Metric axioms on random triples drawn from a disk sample.

    Per triple: symmetry of each leg, the chord bound (distance at least the
    sine of the dihedral angle), the ceiling of 2, and the triangle
    inequality, each within ``axiom_eps``.
    """
    n = len(disks)
    if n < 3:
        raise InvalidInputError("metric check needs at least 3 disks")
    if trials < 1:
        raise InvalidInputError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    cache = {}

    def dist(i, j):
        if (i, j) not in cache:
            cache[(i, j)] = s_distance(disks[i], disks[j], s, tol)
        return cache[(i, j)]

    notes = []
    offending = []
    for _ in range(trials):
        i, j, k = (int(x) for x in rng.choice(n, size=3, replace=False))
        dij, dji = dist(i, j), dist(j, i)
        djk = dist(j, k)
        dik = dist(i, k)
        if abs(dij - dji) > axiom_eps:
            offending.append((i, j, k))
            notes.append(f"asymmetry d({i},{j})={dij} vs d({j},{i})={dji}")
            continue
        bad = False
        for (a, b), dab in (((i, j), dij), ((j, k), djk), ((i, k), dik)):
            lo = math.sin(angle_between(disks[a], disks[b]))
            if not (lo - axiom_eps <= dab <= 2.0 + axiom_eps):
                notes.append(f"d({a},{b})={dab} outside [sin xi, 2]={lo}")
                bad = True
        if dik > dij + djk + axiom_eps:
            notes.append(
                f"triangle violation ({i},{j},{k}): {dik} > {dij}+{djk}")
            bad = True
        if bad:
            offending.append((i, j, k))
    return VerificationReport(
        passed=not offending,
        worst_penetration=0.0,
        worst_containment_violation=0.0,
        offending_pairs=tuple(offending[:10]),
        certified_ratio=0.0,
        notes=tuple(notes[:10]))


@dataclass(frozen=True)
class GrowthRow:
    n: int
    epsilon: float
    min_pair_distance: float
    mst_weight: float
    stab_bound: float
    volume: float


@dataclass(frozen=True)
class GrowthResult:
    rows: tuple
    slope: float


def growth_experiment(sizes, c, tol=DEFAULT_TOL):
    """Volume lower bound growth on grid-on-sphere families.

    For each instance size the spanning-tree stabbing bound is recorded; its
    fitted log-log slope against n is the experiment outcome (the bound grows
    like sqrt(n) because all pairwise touching distances are at least a fixed
    multiple of the grid spacing while the grid has ~n disks).
    """
    from .instances import gen_sphere_grid
    if not sizes:
        raise InvalidInputError("growth experiment needs at least one size")
    rows = []
    for n in sizes:
        inst = gen_sphere_grid(n, c)
        matrix = build_distance_matrix(list(inst.disks), (0.0, 0.0, 1.0), tol)
        _, weight = mst(matrix)
        ents = matrix.entries
        off_diag = ents[np.triu_indices(matrix.n, k=1)]
        min_pair = float(off_diag.min()) if off_diag.size else 0.0
        solution = pack(list(inst.disks), tol=tol)
        rows.append(GrowthRow(
            n=n, epsilon=float(inst.meta["epsilon"]),
            min_pair_distance=min_pair, mst_weight=float(weight),
            stab_bound=float(weight / STAB_PER_OPT),
            volume=float(solution.stats.volume)))
    if len(rows) >= 2:
        xs = np.log([r.n for r in rows])
        ys = np.log([max(r.stab_bound, 1e-300) for r in rows])
        slope = float(np.polyfit(xs, ys, 1)[0])
    else:
        slope = float("nan")
    return GrowthResult(rows=tuple(rows), slope=slope)
