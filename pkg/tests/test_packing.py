import math

import numpy as np
import pytest

import diskpack as dp
from diskpack.errors import InvalidInputError
from diskpack.packing import (classify, cut_into_pieces, global_extent,
                              lower_bound)

from conftest import random_cap_disks

Z = (0.0, 0.0, 1.0)


def mixed_instance(per_class=6, seed0=1):
    disks = []
    for axis in range(3):
        disks += random_cap_disks(per_class, axis, 0.5, seed0 + axis)
    return disks


def test_classify_by_largest_component():
    disks = [dp.canonicalize_normal(v) for v in
             [(1, 0.1, 0.1), (0.1, 1, 0.1), (0.1, 0.1, 1)]]
    assert classify(disks) == ([0], [1], [2])


def test_extent_bound_example():
    # perpendicular pair: componentwise extents (2,2,2) -> volume 8
    disks = [dp.canonicalize_normal(Z), dp.canonicalize_normal((1, 0, 0))]
    extent = global_extent(disks)
    assert np.allclose(extent, [2.0, 2.0, 2.0])
    lb = lower_bound(extent, [0.0])
    assert math.isclose(lb.extent_bound, 8.0, abs_tol=1e-12)
    assert lb.value == 8.0


def test_lower_bound_uses_best_class():
    lb = lower_bound(np.array([1.0, 1.0, 1.0]), [2.0, 10.125, 5.0])
    assert math.isclose(lb.stab_bound, 1.0, abs_tol=1e-12)
    assert lb.value == max(1.0, lb.extent_bound)


def test_cut_into_pieces_buckets():
    disks = random_cap_disks(8, 2, 0.6, 3)
    m = dp.build_distance_matrix(disks, Z)
    ordering = dp.held_karp_path(m)
    stab, placed = dp.realize_stabbing(disks, ordering, Z, matrix=m)
    pieces = cut_into_pieces(stab, placed, 4)
    assert len(pieces) == 4
    got = sorted(i for p in pieces for i in p.indices)
    assert got == list(range(8))
    # piece intervals are disjoint along the stabbing axis
    for p in pieces:
        if p.box is not None:
            assert p.box.dims[2] <= stab.length / 4 + 2.0 + 1e-9


def test_cut_zero_length():
    d = [dp.canonicalize_normal((0.05, 0.0, 1.0))]
    stab, placed = dp.realize_stabbing(d, [0], Z)
    pieces = cut_into_pieces(stab, placed, 3)
    assert pieces[0].indices == (0,)
    assert pieces[1].indices == ()


def test_pack_single_class_tight():
    disks = random_cap_disks(7, 2, 0.6, 9)
    sol = dp.pack(disks)
    assert sol.permutation == (0, 1, 2)
    rep = dp.verify_packing(sol, disks=disks)
    assert rep.ok, rep.notes
    assert sol.stats.solvers[2] == "held-karp"
    assert sol.stats.lengths[2] > 0.0


def test_pack_mixed_classes_verified():
    disks = mixed_instance()
    sol = dp.pack(disks)
    rep = dp.verify_packing(sol, disks=disks)
    assert rep.ok, rep.notes
    assert sol.stats.m >= 1
    assert sol.stats.certified_ratio <= dp.APPROX_FACTOR


def test_pack_container_formula_conformance():
    # Theorem-4 style bounds on the emitted dims, in the relabeled frame
    for seed in (1, 5, 9):
        disks = mixed_instance(per_class=8, seed0=seed)
        sol = dp.pack(disks)
        perm = sol.permutation
        ex, ey, ez = (global_extent(disks)[perm[k]] for k in range(3))
        ly = max(sol.stats.lengths)
        dims = [sol.container.dims[perm[k]] for k in range(3)]
        assert dims[0] <= max(4 * ex, 2 * ex + 2 * ey) + 1e-9
        assert dims[1] <= ly / 6.0 + ey + 1e-9
        assert dims[2] <= max(6 * ez, 4 * ez + 2 * ey) + 1e-9


def test_pack_empty_and_duplicates():
    with pytest.raises(InvalidInputError):
        dp.pack([])
    d = dp.canonicalize_normal((0.2, 0.1, 1.0))
    with pytest.raises(InvalidInputError):
        dp.pack([d, d])


def test_pack_single_disk():
    d = dp.canonicalize_normal((0.1, 0.2, 1.0))
    sol = dp.pack([d])
    assert dp.verify_packing(sol, disks=[d]).ok
    assert math.isclose(sol.container.volume,
                        float(np.prod(dp.disk_extent(d))), rel_tol=1e-12)


def test_shape_packing_factor_values():
    assert math.isclose(dp.shape_packing_factor(math.sqrt(2.0)),
                        284.0 * 2.0 * math.sqrt(2.0), rel_tol=1e-12)
    assert dp.shape_packing_factor(2.0) == 2272.0
    assert dp.shape_packing_factor(1.0) == 284.0
    with pytest.raises(InvalidInputError):
        dp.shape_packing_factor(0.5)


def test_pack_congruent_shapes_scaling_equivariance():
    disks = mixed_instance(per_class=4, seed0=21)
    normals = [d.normal for d in disks]
    unit = dp.pack(disks)
    r = 2.5
    scaled = dp.pack_congruent_shapes(normals, r)
    assert np.allclose(np.array(scaled.container.dims),
                       r * np.array(unit.container.dims), atol=1e-9)
    for a, b in zip(scaled.placements, unit.placements):
        assert np.allclose(a.c, r * b.c, atol=1e-9)
        assert a.disk == b.disk
    assert math.isclose(scaled.stats.volume, unit.stats.volume * r ** 3,
                        rel_tol=1e-12)
    assert math.isclose(scaled.stats.certified_ratio,
                        unit.stats.certified_ratio, rel_tol=1e-12)


def test_pack_deterministic():
    disks = mixed_instance(per_class=5, seed0=31)
    a = dp.pack(disks)
    b = dp.pack(disks)
    assert a.container == b.container
    assert all(x == y for x, y in zip(a.placements, b.placements))
