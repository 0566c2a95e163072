#!/usr/bin/env python3
# Field serialization and the command line surface: write fields to the
# stable text format, then drive the norm and pairing subcommands on them.

import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

from khessian.constructions import make_test_function, random_bump_field
from khessian.grid import Box, GridSpec, load_field, save_field

workdir = Path(tempfile.mkdtemp(prefix="khessian_demo_"))
g = GridSpec(Box.cube(0.0, 2 * np.pi, 2), (65, 65))
u = random_bump_field(g, seed=4)
phi = make_test_function("product_bumps", g)

u_path, phi_path = workdir / "u.field", workdir / "phi.field"
save_field(u, u_path)
save_field(phi, phi_path)

print("=== serialized field header (dimension; lower; upper; points; flags) ===")
print(u_path.read_text().splitlines()[0])
round_trip = load_field(u_path)
print(f"round trip exact: {np.array_equal(round_trip.values, u.values)}")
print()


def run(*args):
    cmd = [sys.executable, "-m", "khessian", *args]
    print("$ khessian " + " ".join(args))
    res = subprocess.run(cmd, capture_output=True, text=True)
    sys.stdout.write(res.stdout)
    print(f"(exit {res.returncode})")
    print()


run("norm", "--field", str(u_path), "--s", "1.3", "--p", "2", "--budget", "100000")
run("pairing", "--field", str(u_path), "--phi", str(phi_path), "--k", "2", "--method", "direct")
run("pairing", "--field", str(u_path), "--phi", str(phi_path), "--k", "2", "--method", "weak2")
run("lemma31", "--k", "2", "--n", "2")
