import io
import json
import math
import os
import subprocess
import sys

import pytest

import diskpack as dp
from diskpack.cli import run


def invoke(argv):
    out = io.StringIO()
    code = run(argv, out=out)
    return code, out.getvalue()


def test_dist_tilt_example():
    code, out = invoke(["dist", "--n1", "0,0,1",
                        "--n2", f"{math.sin(math.radians(30))},0,"
                                f"{math.cos(math.radians(30))}",
                        "--s", "0,0,1"])
    assert code == 0
    assert math.isclose(float(out.strip()), 0.5, abs_tol=1e-9)


def test_pipeline_gen_pack_verify(tmp_path):
    inst = tmp_path / "inst.json"
    sol = tmp_path / "sol.json"
    mesh = tmp_path / "mesh.obj"
    code, _ = invoke(["gen", "sphere-grid", "--n", "16", "--c", "0.5",
                      "--output", str(inst)])
    assert code == 0
    code, out = invoke(["pack", "--input", str(inst), "--output", str(sol),
                        "--mesh", str(mesh)])
    assert code == 0
    assert "volume=" in out and "certified_ratio=" in out
    assert mesh.exists()
    code, out = invoke(["verify", "--solution", str(sol)])
    assert code == 0
    assert "pass=True" in out


def test_stab_single_disk(tmp_path):
    inst = tmp_path / "one.json"
    inst.write_bytes(dp.write_instance(dp.make_instance([(0.1, 0.0, 1.0)])))
    code, out = invoke(["stab", "--input", str(inst), "--axis", "z"])
    assert code == 0
    assert "length=0" in out


def test_gen_random_cap_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for path in (a, b):
        code, _ = invoke(["gen", "random-cap", "--n", "10", "--axis", "y",
                          "--max-angle", "0.4", "--seed", "5",
                          "--output", str(path)])
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_growth_command():
    code, out = invoke(["growth", "--sizes", "16,64", "--c", "0.5"])
    assert code == 0
    assert "loglog_slope=" in out


def test_exit_code_on_bad_input(tmp_path):
    missing = tmp_path / "missing.json"
    code, _ = invoke(["pack", "--input", str(missing),
                      "--output", str(tmp_path / "out.json")])
    assert code == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code, _ = invoke(["pack", "--input", str(bad),
                      "--output", str(tmp_path / "out.json")])
    assert code == 1


def test_exit_code_on_bad_flags():
    code, _ = invoke(["pack", "--no-such-flag"])
    assert code == 1
    code, _ = invoke(["dist", "--n1", "0,0", "--n2", "0,0,1", "--s", "0,0,1"])
    assert code == 1


def test_exit_code_on_failed_verification(tmp_path):
    disks = [dp.canonicalize_normal((0, 0, 1)),
             dp.canonicalize_normal((0.3, 0, 1))]
    sol = dp.pack(disks)
    bad = dp.PackingSolution(
        container=sol.container,
        placements=[sol.placements[0], sol.placements[0]],
        permutation=sol.permutation, stats=sol.stats)
    path = tmp_path / "bad_sol.json"
    path.write_bytes(dp.write_solution(bad, verified=False))
    code, out = invoke(["verify", "--solution", str(path)])
    assert code == 1
    assert "pass=False" in out


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "diskpack", "dist", "--n1", "0,0,1",
         "--n2", "1,0,0", "--s", "0,0,1"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert math.isclose(float(proc.stdout.strip()), 1.0, abs_tol=1e-9)


def test_determinism_full_outputs(tmp_path):
    outs = []
    for tag in ("x", "y"):
        inst = tmp_path / f"i{tag}.json"
        sol = tmp_path / f"s{tag}.json"
        invoke(["gen", "random-cap", "--n", "14", "--axis", "z",
                "--max-angle", "0.5", "--seed", "9", "--output", str(inst)])
        invoke(["pack", "--input", str(inst), "--output", str(sol)])
        outs.append(sol.read_bytes())
    assert outs[0] == outs[1]
