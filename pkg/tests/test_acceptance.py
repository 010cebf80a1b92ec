"""Acceptance criteria, one pass/fail line each.

Every criterion re-derives its verdict from public API calls; the pass/fail
lines print even under pytest capture.
"""

import itertools
import math
import time

import numpy as np
import pytest

import diskpack as dp
from diskpack.packing import global_extent
from diskpack.stabbing import mst, path_length

Z = (0.0, 0.0, 1.0)


def report(capsys, num, ok, desc):
    with capsys.disabled():
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {desc}")
    assert ok, f"criterion {num}: {desc}"


# --- shared fuzz corpus (criteria 4 and 5) ---------------------------------

def _fuzz_instances():
    rng = np.random.default_rng(20240817)
    instances = []
    for k in range(200):
        kind = k % 4
        if kind == 0:
            n = int(rng.integers(1, 101))
            axis = int(rng.integers(0, 3))
            ang = float(rng.uniform(0.05, dp.PHI0))
            disks = list(dp.gen_random_cap(n, axis, ang, seed=1000 + k).disks)
        elif kind == 1:
            disks = []
            for axis in range(3):
                n = int(rng.integers(1, 34))
                ang = float(rng.uniform(0.05, dp.PHI0))
                disks += list(dp.gen_random_cap(n, axis, ang,
                                                seed=2000 + 3 * k + axis)
                              .disks)
        elif kind == 2:
            n = int(rng.choice([1, 4, 9, 16, 25, 36, 49, 64, 81, 100]))
            c = float(rng.uniform(0.2, 0.8))
            disks = list(dp.gen_sphere_grid(n, c).disks)
        else:
            n = int(rng.integers(2, 50))
            a, b = rng.integers(0, 3, size=2)
            half = max(n // 2, 1)
            disks = list(dp.gen_random_cap(half, int(a), 0.6,
                                           seed=3000 + k).disks)
            disks += list(dp.gen_random_cap(n - half if n - half else 1,
                                            int(b), 0.3,
                                            seed=4000 + k).disks)
            disks = list({d.normal: d for d in disks}.values())
        instances.append(disks)
    return instances


@pytest.fixture(scope="module")
def fuzz_results():
    results = []
    for disks in _fuzz_instances():
        sol = dp.pack(disks)
        rep = dp.verify_packing(sol, disks=disks)
        results.append((disks, sol, rep))
    return results


def test_criterion_1_metric_suite(capsys):
    t0 = time.perf_counter()
    disks = list(dp.gen_random_cap(150, 2, dp.PHI0, seed=101).disks)
    rep = dp.verify_metric(disks, Z, trials=10000, seed=202, axiom_eps=1e-9)
    elapsed = time.perf_counter() - t0
    ok = rep.ok and elapsed < 60.0
    report(capsys, 1, ok,
           f"metric axioms (symmetry, triangle, sin-xi lower bound, <=2) "
           f"on 10000 random cap triples at 1e-9 in {elapsed:.1f}s "
           f"(violations: {len(rep.offending_pairs)})")


def test_criterion_2_oracle_agreement(capsys):
    pool = list(dp.gen_random_cap(60, 2, dp.PHI0, seed=7).disks)
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(500):
        i, j = (int(x) for x in rng.choice(60, size=2, replace=False))
        a = dp.s_distance(pool[i], pool[j], Z)
        b = dp.s_distance_oracle(pool[i], pool[j], Z, resolution=4096)
        worst = max(worst, abs(a - b))
    dz = dp.canonicalize_normal(Z)
    tilt = dp.canonicalize_normal((math.sin(math.radians(30)), 0.0,
                                   math.cos(math.radians(30))))
    dx = dp.canonicalize_normal((1.0, 0.0, 0.0))
    dy = dp.canonicalize_normal((0.0, 1.0, 0.0))
    hand_ok = (abs(dp.s_distance(dz, tilt, Z) - 0.5) <= 1e-9
               and abs(dp.s_distance(dz, dx, Z) - 1.0) <= 1e-9
               and abs(dp.s_distance(dx, dy, Z) - 2.0) <= 1e-9)
    ok = worst <= 1e-6 and hand_ok
    report(capsys, 2, ok,
           f"constructive vs oracle on 500 pairs, worst |diff|="
           f"{worst:.2e} <= 1e-6; hand cases 0.5 / 1 / 2 "
           f"{'hit' if hand_ok else 'missed'}")


def test_criterion_3_stabbing_quality(capsys):
    t0 = time.perf_counter()
    worst_ratio = 0.0
    for seed in range(50):
        disks = list(dp.gen_random_cap(10, 2, dp.PHI0, seed=500 + seed).disks)
        m = dp.build_distance_matrix(disks, Z)
        approx = path_length(m, dp.christofides_path(m))
        exact = path_length(m, dp.held_karp_path(m))
        worst_ratio = max(worst_ratio, approx / exact)
    brute_ok = True
    for seed in range(5):
        n = 7 if seed % 2 else 8
        disks = list(dp.gen_random_cap(n, 1, dp.PHI0, seed=600 + seed).disks)
        m = dp.build_distance_matrix(disks, (0.0, 1.0, 0.0))
        hk = path_length(m, dp.held_karp_path(m))
        best = min(path_length(m, list(p))
                   for p in itertools.permutations(range(n))
                   if p[0] < p[-1])
        if abs(hk - best) > 1e-9:
            brute_ok = False
    elapsed = time.perf_counter() - t0
    ok = worst_ratio <= 1.5 + 1e-9 and brute_ok and elapsed < 120.0
    report(capsys, 3, ok,
           f"christofides/exact worst ratio {worst_ratio:.4f} <= 1.5 on 50 "
           f"n=10 instances; exact DP matches brute force (n<=8) in "
           f"{elapsed:.1f}s")


def test_criterion_4_packing_soundness(capsys, fuzz_results):
    bad = 0
    worst_pen = 0.0
    worst_violation = 0.0
    for _, _, rep in fuzz_results:
        if not rep.ok:
            bad += 1
        worst_pen = max(worst_pen, rep.worst_penetration)
        worst_violation = max(worst_violation,
                              rep.worst_containment_violation)
    ok = bad == 0 and worst_pen <= 1e-7 and worst_violation <= 1e-9
    report(capsys, 4, ok,
           f"verify_packing passed {len(fuzz_results) - bad}/"
           f"{len(fuzz_results)} fuzz instances; worst penetration "
           f"{worst_pen:.2e} <= 1e-7, worst containment violation "
           f"{worst_violation:.2e} <= 1e-9")


def test_criterion_5_certificate(capsys, fuzz_results):
    worst_ratio = 0.0
    ok = True
    for _, sol, _ in fuzz_results:
        s = sol.stats
        if s.volume > dp.APPROX_FACTOR * s.bound.value * (1 + 1e-9) + 1e-12:
            ok = False
        worst_ratio = max(worst_ratio, s.certified_ratio)
    report(capsys, 5, ok,
           f"container volume <= 284 x lower bound on every packed "
           f"instance; worst empirical ratio {worst_ratio:.2f}")


def test_criterion_6_container_formula(capsys):
    ok = True
    worst = ""
    for seed in range(20):
        disks = []
        for axis in range(3):
            disks += list(dp.gen_random_cap(5 + seed % 7, axis, 0.6,
                                            seed=700 + 3 * seed + axis).disks)
        sol = dp.pack(disks)
        perm = sol.permutation
        ext = global_extent(disks)
        ex, ey, ez = (float(ext[perm[k]]) for k in range(3))
        ly = max(sol.stats.lengths)
        dims = [sol.container.dims[perm[k]] for k in range(3)]
        bounds = (max(4 * ex, 2 * ex + 2 * ey), ly / 6.0 + ey,
                  max(6 * ez, 4 * ez + 2 * ey))
        if any(d > b + 1e-9 for d, b in zip(dims, bounds)):
            ok = False
            worst = f" (seed {seed}: dims {dims} vs bounds {bounds})"
    report(capsys, 6, ok,
           "emitted dims within max{4Ex,2Ex+2Ey} x (Ly/6+Ey) x "
           "max{6Ez,4Ez+2Ey} on 20 all-three-class instances" + worst)


def test_criterion_7_growth(capsys):
    t0 = time.perf_counter()
    res = dp.growth_experiment([16, 64, 256], 0.5)
    ok = True
    details = []
    for row in res.rows:
        eps = 0.5 / math.sqrt(row.n)
        if row.min_pair_distance < math.sin(eps) - 1e-9:
            ok = False
        if row.mst_weight < (row.n - 1) * eps / 2.0 * (1 - 1e-6):
            ok = False
        details.append(f"n={row.n}: bound {row.stab_bound:.3f}")
    for prev, cur in zip(res.rows, res.rows[1:]):
        if cur.stab_bound / prev.stab_bound < 1.5:
            ok = False
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 600.0
    report(capsys, 7, ok,
           f"sqrt-growth of the stabbing lower bound ({', '.join(details)}; "
           f"slope {res.slope:.3f}; each 4x step >= 1.5x) in {elapsed:.0f}s")


def test_criterion_8_shape_factors(capsys):
    f_sqrt2 = dp.shape_packing_factor(math.sqrt(2.0))
    f_2 = dp.shape_packing_factor(2.0)
    ok = (math.isclose(f_sqrt2, 284.0 * 2.0 * math.sqrt(2.0), rel_tol=1e-12)
          and f_2 == 2272.0)
    disks = []
    for axis in range(3):
        disks += list(dp.gen_random_cap(4, axis, 0.5,
                                        seed=900 + axis).disks)
    normals = [d.normal for d in disks]
    unit = dp.pack(disks)
    r = 1.75
    scaled = dp.pack_congruent_shapes(normals, r)
    equi = (np.allclose(np.array(scaled.container.dims),
                        r * np.array(unit.container.dims), atol=1e-9)
            and all(np.allclose(a.c, r * b.c, atol=1e-9)
                    for a, b in zip(scaled.placements, unit.placements)))
    ok = ok and equi
    report(capsys, 8, ok,
           f"shape factors 284*2*sqrt2={f_sqrt2:.6f} and 2272={f_2:.0f}; "
           f"scaling equivariance within 1e-9: {equi}")
