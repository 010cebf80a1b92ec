import math

import numpy as np
import pytest

import diskpack as dp


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger JIT compilation once so timed tests measure math, not codegen."""
    d1 = dp.canonicalize_normal((0.0, 0.0, 1.0))
    d2 = dp.canonicalize_normal((0.3, 0.1, 0.9))
    dp.s_distance(d1, d2, (0.0, 0.0, 1.0))
    dp.s_distance_oracle(d1, d2, (0.0, 0.0, 1.0), resolution=64)
    dp.overlap_status(dp.place(d1, (0, 0, 0)), dp.place(d2, (0, 0, 1)))
    dp.min_distance(dp.place(d1, (0, 0, 0)), dp.place(d2, (0, 0, 1)))
    m = dp.build_distance_matrix([d1, d2], (0.0, 0.0, 1.0))
    dp.held_karp_path(m)


def tilt_disk(theta, azimuth=0.0):
    """Disk whose normal makes angle theta with the z axis."""
    return dp.canonicalize_normal((
        math.sin(theta) * math.cos(azimuth),
        math.sin(theta) * math.sin(azimuth),
        math.cos(theta)))


@pytest.fixture
def cap_disks():
    inst = dp.gen_random_cap(20, 2, 0.8, seed=11)
    return list(inst.disks)


def random_cap_disks(n, axis, max_angle, seed):
    return list(dp.gen_random_cap(n, axis, max_angle, seed).disks)
