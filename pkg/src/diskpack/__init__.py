"""diskpack: pack unit-radius disks in 3D into a small axis-parallel box.

Pipeline: group disks by the axis nearest their normal, order each group by
a shortest-Hamiltonian-path solver under the direction-dependent touching
metric, realize the orders as stabbings, cut and stack the stabbings into a
container whose volume is certified against a computable lower bound.
"""

from ._backend import BACKEND, USING_NUMBA
from .errors import (DiskpackError, GeometryError, InvalidInputError,
                     SizeExceededError)
from .geometry import (DEFAULT_TOL, IDENTITY_ANGLE, PHI0, Box3, Disk,
                       OverlapStatus, PlacedDisk, ToleranceConfig,
                       angle_between, angle_to_axis, bounding_box,
                       canonicalize_normal, disk_extent, disks_identical,
                       min_distance, overlap_status, penetration_depth,
                       place, project_point_to_disk, s_distance,
                       s_distance_oracle, support_box)
from .instances import (Instance, export_mesh, gen_random_cap,
                        gen_sphere_grid, make_instance, parse_instance,
                        parse_solution, write_instance, write_solution)
from .packing import (APPROX_FACTOR, STAB_PER_OPT, LowerBound, PackingSolution,
                      PackingStats, Piece, SolverConfig, classify,
                      cut_into_pieces, global_extent, lower_bound, pack,
                      pack_congruent_shapes, pack_single_class,
                      shape_packing_factor)
from .stabbing import (DistanceMatrix, Stabbing, build_distance_matrix,
                       christofides_path, held_karp_path, mst, path_length,
                       realize_stabbing)
from .verification import (GrowthResult, GrowthRow, VerificationReport,
                           growth_experiment, verify_metric, verify_packing)

__version__ = "0.1.0"
