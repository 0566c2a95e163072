#!/usr/bin/env python3
# The shrinking radial bump family and its anchor identity: the
# quadratic-weighted ball integral of a principal Hessian minor of the
# radial antiderivative g equals -(2/n) * |S^(n-1)| * (power moment of h).
# A profile with a deliberately degenerate moment collapses both sides.

import numpy as np
from scipy.integrate import quad

from khessian.bumps import Func1D, scaled_bump
from khessian.constructions import RadialProfile, make_profile, radial_minor_identity

print("=== calibrated profiles: zero mean, nondegenerate moment ===")
for kind in ("two_bump", "odd"):
    prof = make_profile(3, 3, seed=1, kind=kind)
    print(f"{kind:9s}: mean {prof.mean:+.2e}   moment(k=3,n=3) {prof.moment:+.6f}   "
          f"support ({prof.support[0]:.3f}, {prof.support[1]:.3f})")

print()
print("=== identity check at desk-scale quadrature ===")
print("kind       (k,n)    lhs (ball quadrature)   rhs (closed form)     rel err")
for kind in ("two_bump", "odd"):
    for k, n in ((2, 2), (3, 3)):
        prof = make_profile(k, n, seed=1, kind=kind)
        lhs, rhs = radial_minor_identity(prof, k, n)
        print(f"{kind:9s}  ({k},{n})   {lhs:+.10f}        {rhs:+.10f}     "
              f"{abs(lhs - rhs) / abs(rhs):.2e}")

print()
print("=== degenerate moment: both sides vanish together ===")
b1, b2 = scaled_bump(0.30, 0.18), scaled_bump(0.72, 0.17)
m1 = quad(lambda r: float(b1.f(np.array([r]))[0]) ** 3 * r, 0.1, 0.5, limit=200)[0]
m2 = quad(lambda r: float(b2.f(np.array([r]))[0]) ** 3 * r, 0.5, 0.95, limit=200)[0]
c = (m1 / m2) ** (1 / 3)
func = Func1D(
    f=lambda t: b1.f(t) - c * b2.f(t),
    d1=lambda t: b1.d1(t) - c * b2.d1(t),
    d2=lambda t: b1.d2(t) - c * b2.d2(t),
)
moment = quad(lambda r: float(func.f(np.array([r]))[0]) ** 3 * r, 0.1, 0.95, limit=200)[0]
prof = RadialProfile(func, 0.0, moment, 3, 3, "degenerate", (0.10, 0.95),
                     np.linspace(0, 1, 101), np.zeros(101))
lhs, rhs = radial_minor_identity(prof, 3, 3, grid_points=121)
print(f"moment {moment:+.2e}   lhs {lhs:+.2e}   rhs {rhs:+.2e}")
