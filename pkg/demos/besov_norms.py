#!/usr/bin/env python3
# Two discretizations of the (s, p) norm: the Monte Carlo double-integral
# seminorm on closed grids and the dyadic frequency-block norm on the
# periodic cube.  Includes the dilation scaling law and a cross-method
# equivalence check on smooth bumps.

import numpy as np

from khessian.besov import BesovParams, besov_norm, dyadic_norm, gagliardo_seminorm, w1p_norm
from khessian.constructions import random_bump_field
from khessian.grid import Box, GridField, GridSpec, sample

params = BesovParams(1.4, 2.0)
n = 2

print("=== dilation scaling of the double-integral seminorm ===")
g1 = GridSpec(Box.cube(-1.0, 1.0, n), (65,) * n)
u1 = random_bump_field(g1, seed=3, nbumps=1, width_range=(0.2, 0.25))
g2 = GridSpec(Box.cube(-0.5, 0.5, n), (65,) * n)
u2 = GridField(g2, u1.values)  # same samples, halved coordinates: u2(x) = u1(2x)
s1 = gagliardo_seminorm(u1, params, budget=400_000, seed=9)
s2 = gagliardo_seminorm(u2, params, budget=400_000, seed=10)
print(f"seminorm of u        {s1:.6f}")
print(f"seminorm of u(2x)    {s2:.6f}")
print(f"ratio {s2 / s1:.4f}   predicted 2^(s - n/p) = {2 ** (params.s - n / params.p):.4f}")

print()
print("=== frequency-block norm on the periodic cube ===")
gp = GridSpec(Box.cube(0.0, 2 * np.pi, 1), (512,), periodic=True)
for J in (3, 5, 7):
    u = sample(lambda x: np.sin(2.0**J * x), gp)
    print(f"pure tone 2^{J}: dyadic norm {dyadic_norm(u, params):12.4f} "
          f"(block weight 2^(s j) concentrates on one block)")

print()
print("=== cross-method equivalence on smooth bumps ===")
print("the two estimators define equivalent norms; their ratio stays within")
print("a bounded factor under refinement (it need not converge to 1)")
from khessian.bumps import scaled_bump

fb = scaled_bump(np.pi, 1.6)
for npts in (32, 64, 128):
    bump_fn = lambda x, y: fb.f(x) * fb.f(y)  # noqa: E731
    u = sample(bump_fn, GridSpec(Box.cube(0.0, 2 * np.pi, 2), (npts + 1,) * 2))
    uper = sample(bump_fn, GridSpec(Box.cube(0.0, 2 * np.pi, 2), (npts,) * 2, periodic=True))
    dy = dyadic_norm(uper, params)
    ga = w1p_norm(u, params.p) + gagliardo_seminorm(u, params, budget=200_000, seed=1)
    print(f"N={npts:4d}  dyadic {dy:9.5f}   w1p+seminorm {ga:9.5f}   ratio {ga / dy:6.3f}")

print()
print("=== dispatching norm report ===")
rep = besov_norm(u1, params, budget=100_000, seed=0)
print(f"method={rep.method}  w1p={rep.w1p:.5f}  seminorm={rep.seminorm:.5f}  total={rep.total:.5f}")
