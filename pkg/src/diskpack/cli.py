"""Command-line front end: pack, stab, dist, gen, verify, growth.

Exit codes: 0 success, 1 validation/input failure, 2 internal geometry error.
"""

import argparse
import sys

from .errors import DiskpackError, GeometryError, InvalidInputError
from .geometry import DEFAULT_TOL, canonicalize_normal, s_distance
from .instances import (export_mesh, gen_random_cap, gen_sphere_grid,
                        parse_instance, parse_solution, write_instance,
                        write_solution)
from .packing import SolverConfig, pack
from .stabbing import build_distance_matrix, held_karp_path, \
    christofides_path, realize_stabbing
from .verification import growth_experiment, verify_packing

_AXES = {"x": 0, "y": 1, "z": 2}


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise InvalidInputError(message, code="malformed")


def _build_parser():
    p = _Parser(prog="diskpack",
                description="Pack unit-radius disks into a small box.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pack", help="pack an instance into a container")
    sp.add_argument("--input", required=True)
    sp.add_argument("--output", required=True)
    sp.add_argument("--mesh")
    sp.add_argument("--exact-threshold", type=int, default=12)

    sp = sub.add_parser("stab", help="stab an instance along one axis")
    sp.add_argument("--input", required=True)
    sp.add_argument("--axis", required=True, choices=sorted(_AXES))

    sp = sub.add_parser("dist", help="touching distance of two disks")
    sp.add_argument("--n1", required=True)
    sp.add_argument("--n2", required=True)
    sp.add_argument("--s", required=True)

    sp = sub.add_parser("gen", help="generate an instance")
    gensub = sp.add_subparsers(dest="generator", required=True)
    sg = gensub.add_parser("sphere-grid")
    sg.add_argument("--n", type=int, required=True)
    sg.add_argument("--c", type=float, required=True)
    sg.add_argument("--output", required=True)
    rc = gensub.add_parser("random-cap")
    rc.add_argument("--n", type=int, required=True)
    rc.add_argument("--axis", required=True, choices=sorted(_AXES))
    rc.add_argument("--max-angle", type=float, required=True)
    rc.add_argument("--seed", type=int, required=True)
    rc.add_argument("--output", required=True)

    sp = sub.add_parser("verify", help="re-check a solution file")
    sp.add_argument("--solution", required=True)

    sp = sub.add_parser("growth", help="lower-bound growth experiment")
    sp.add_argument("--sizes", required=True)
    sp.add_argument("--c", type=float, required=True)
    return p


def _read(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}",
                                code="malformed")


def _write(path, data):
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise InvalidInputError(f"cannot write {path}: {exc}",
                                code="malformed")


def _vector(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise InvalidInputError(f"expected x,y,z got {text!r}",
                                code="malformed")
    try:
        return tuple(float(x) for x in parts)
    except ValueError:
        raise InvalidInputError(f"non-numeric component in {text!r}",
                                code="malformed")


def _cmd_pack(args, out):
    instance = parse_instance(_read(args.input))
    config = SolverConfig(exact_threshold=args.exact_threshold)
    solution = pack(list(instance.disks), config=config)
    report = verify_packing(solution, disks=list(instance.disks))
    _write(args.output, write_solution(solution, verified=report.ok))
    if args.mesh:
        _write(args.mesh, export_mesh(solution))
    s = solution.stats
    print(f"n={s.n} volume={s.volume:.9g} lower_bound={s.bound.value:.9g} "
          f"certified_ratio={s.certified_ratio:.9g}", file=out)
    return 0 if report.ok else 2


def _cmd_stab(args, out):
    instance = parse_instance(_read(args.input))
    axis = _AXES[args.axis]
    disks = list(instance.disks)
    s = [0.0, 0.0, 0.0]
    s[axis] = 1.0
    matrix = build_distance_matrix(disks, s)
    if len(disks) <= 12:
        ordering = held_karp_path(matrix)
        solver = "held-karp"
    else:
        ordering = christofides_path(matrix)
        solver = "christofides"
    stab, _ = realize_stabbing(disks, ordering, s, matrix=matrix)
    print(f"n={len(disks)} axis={args.axis} solver={solver} "
          f"length={stab.length:.9g}", file=out)
    print("ordering=" + ",".join(str(v) for v in stab.ordering), file=out)
    return 0


def _cmd_dist(args, out):
    d1 = canonicalize_normal(_vector(args.n1))
    d2 = canonicalize_normal(_vector(args.n2))
    print(f"{s_distance(d1, d2, _vector(args.s)):.9g}", file=out)
    return 0


def _cmd_gen(args, out):
    if args.generator == "sphere-grid":
        instance = gen_sphere_grid(args.n, args.c)
    else:
        instance = gen_random_cap(args.n, _AXES[args.axis],
                                  args.max_angle, args.seed)
    _write(args.output, write_instance(instance))
    print(f"wrote {instance.n} disks to {args.output}", file=out)
    return 0


def _cmd_verify(args, out):
    solution = parse_solution(_read(args.solution))
    report = verify_packing(solution)
    print(f"pass={report.ok} worst_penetration={report.worst_penetration:.3e}"
          f" worst_containment_violation="
          f"{report.worst_containment_violation:.3e}"
          f" certified_ratio={report.certified_ratio:.9g}", file=out)
    for note in report.notes:
        print(f"note: {note}", file=out)
    return 0 if report.ok else 1


def _cmd_growth(args, out):
    try:
        sizes = [int(x) for x in args.sizes.split(",") if x]
    except ValueError:
        raise InvalidInputError(f"bad --sizes {args.sizes!r}",
                                code="malformed")
    result = growth_experiment(sizes, args.c)
    print("n epsilon min_pair_d mst_weight stab_bound volume", file=out)
    for r in result.rows:
        print(f"{r.n} {r.epsilon:.9g} {r.min_pair_distance:.9g} "
              f"{r.mst_weight:.9g} {r.stab_bound:.9g} {r.volume:.9g}",
              file=out)
    print(f"loglog_slope={result.slope:.6g}", file=out)
    return 0


_COMMANDS = {"pack": _cmd_pack, "stab": _cmd_stab, "dist": _cmd_dist,
             "gen": _cmd_gen, "verify": _cmd_verify, "growth": _cmd_growth}


def run(argv=None, out=None):
    out = out if out is not None else sys.stdout
    try:
        args = _build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except InvalidInputError as exc:
        print(f"error ({exc.code}): {exc}", file=sys.stderr)
        return 1
    except GeometryError as exc:
        print(f"geometry error: {exc} {exc.details}", file=sys.stderr)
        return 2
    except DiskpackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
