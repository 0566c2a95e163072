import math

import numpy as np
import pytest

from khessian.bumps import quintic_ramp_down_profile, ramp_down_profile, Func1D
from khessian.constructions import ConstructionSpec, oscillatory_terms, random_bump_field, make_test_function
from khessian.errors import DomainError
from khessian.grid import Box, GridSpec, integrate, sample, hessian_stack
from khessian.minors import det_small, k_trace
from khessian.multiindex import MultiIndex, indices
from khessian.operators import (
    cofactor_divergence,
    fd_hessian_at,
    fk_pointwise,
    pair_direct,
    pair_extension,
    pair_weak2,
    tensor_minor,
)


def quadratic_field(a, spec):
    def f(*coords):
        acc = np.zeros_like(coords[0])
        for i in range(len(coords)):
            for j in range(len(coords)):
                acc = acc + 0.5 * a[i, j] * coords[i] * coords[j]
        return acc

    return sample(f, spec)


def test_fk_of_isotropic_quadratic_is_binomial():
    spec = GridSpec(Box.cube(-1.0, 1.0, 3), (9,) * 3)
    u = sample(lambda x, y, z: 0.5 * (x * x + y * y + z * z), spec)
    for k in (1, 2, 3):
        fk = fk_pointwise(u, k)
        assert np.max(np.abs(fk.values - math.comb(3, k))) <= 1e-9


def test_fk_of_general_quadratic_is_k_trace():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((3, 3))
    a = a + a.T
    spec = GridSpec(Box.cube(-1.0, 1.0, 3), (9,) * 3)
    u = quadratic_field(a, spec)
    for k in (1, 2, 3):
        fk = fk_pointwise(u, k)
        assert np.max(np.abs(fk.values - k_trace(a, k))) <= 1e-8


def test_fk_k1_is_laplacian():
    spec = GridSpec(Box.cube(0.0, np.pi, 2), (65, 65))
    u = sample(lambda x, y: np.sin(x) * np.sin(y), spec)
    lap = fk_pointwise(u, 1).values
    x, y = spec.meshgrid()
    exact = -2.0 * np.sin(x) * np.sin(y)
    assert np.max(np.abs(lap[2:-2, 2:-2] - exact[2:-2, 2:-2])) <= 5e-3


def test_fk_rotation_equivariance_on_quadratics():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((3, 3))
    a = a + a.T
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    spec = GridSpec(Box.cube(-1.0, 1.0, 3), (9,) * 3)
    u_rot = quadratic_field(q.T @ a @ q, spec)
    for k in (1, 2, 3):
        fk = fk_pointwise(u_rot, k)
        assert np.max(np.abs(fk.values - k_trace(a, k))) <= 1e-8


def test_pair_direct_quadratic_and_zero_phi():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((2, 2))
    a = a + a.T
    spec = GridSpec(Box.cube(0.0, 2 * np.pi, 2), (33, 33))
    u = quadratic_field(a, spec)
    phi = make_test_function("product_bumps", spec)
    assert pair_direct(u, 2, phi).value == pytest.approx(k_trace(a, 2) * integrate(phi), rel=1e-9)
    zero = phi.with_values(np.zeros_like(phi.values))
    assert pair_direct(u, 2, zero).value == 0.0


def test_pair_direct_homogeneity_in_u():
    spec = GridSpec(Box.cube(0.0, 2 * np.pi, 2), (65, 65))
    u = random_bump_field(spec, seed=9)
    phi = make_test_function("product_bumps", spec)
    base = pair_direct(u, 2, phi).value
    scaled = pair_direct(u.with_values(3.0 * u.values), 2, phi).value
    assert scaled == pytest.approx(3.0**2 * base, rel=1e-10)


def test_pair_direct_grid_mismatch():
    s1 = GridSpec(Box.cube(0.0, 1.0, 2), (9, 9))
    s2 = GridSpec(Box.cube(0.0, 1.0, 2), (11, 11))
    with pytest.raises(DomainError):
        pair_direct(sample(lambda x, y: x, s1), 2, sample(lambda x, y: x, s2))


def test_weak2_equals_direct_on_quadratics():
    spec = GridSpec(Box.cube(0.0, 2 * np.pi, 2), (65, 65))
    u = sample(lambda x, y: 0.5 * (x * x + y * y), spec)
    phi = make_test_function("product_bumps", spec)
    assert pair_weak2(u, phi).value == pytest.approx(integrate(phi), rel=1e-9)
    # indefinite quadratic with mixed entries
    u2 = sample(lambda x, y: x * y, spec)
    assert pair_weak2(u2, phi).value == pytest.approx(-integrate(phi), rel=1e-9)


def test_weak2_vanishes_on_affine():
    spec = GridSpec(Box.cube(0.0, 2 * np.pi, 2), (65, 65))
    u = sample(lambda x, y: 1.3 * x - 0.4 * y + 2.0, spec)
    phi = make_test_function("product_bumps", spec)
    assert abs(pair_weak2(u, phi).value) <= 1e-10
    assert pair_direct(u, 2, phi).value == pytest.approx(0.0, abs=1e-10)


def test_weak2_requires_two_dimensions():
    spec = GridSpec(Box.cube(0.0, 1.0, 1), (9,))
    u = sample(lambda x: x * x, spec)
    with pytest.raises(DomainError):
        pair_weak2(u, u)


def test_weak2_converges_to_direct_at_second_order():
    diffs, hs = [], []
    for npts in (65, 129, 257):
        spec = GridSpec(Box.cube(0.0, 2 * np.pi, 2), (npts,) * 2)
        u = random_bump_field(spec, seed=3, nbumps=1, width_range=(0.28, 0.34))
        phi = make_test_function("product_bumps", spec)
        diffs.append(abs(pair_direct(u, 2, phi).value - pair_weak2(u, phi).value))
        hs.append(2 * np.pi / (npts - 1))
    order = np.polyfit(np.log(hs), np.log(diffs), 1)[0]
    assert order >= 1.9


def test_extension_zero_for_affine():
    spec = GridSpec(Box.cube(0.0, 2 * np.pi, 3), (17,) * 3)
    u = sample(lambda x, y, z: x - 2 * y + 0.5, spec)
    phi = make_test_function("product_bumps", spec)
    assert abs(pair_extension(u, 3, phi).value) <= 1e-10
    assert abs(pair_direct(u, 3, phi).value) <= 1e-10


def test_extension_matches_direct_on_bump():
    spec = GridSpec(Box.cube(0.0, 2 * np.pi, 3), (49,) * 3)
    u = random_bump_field(spec, seed=7, nbumps=1, width_range=(0.30, 0.36))
    phi = make_test_function("product_bumps", spec)
    pd = pair_direct(u, 3, phi).value
    pe = pair_extension(u, 3, phi, points_t=33).value
    assert pe == pytest.approx(pd, rel=5e-2)


def test_extension_forms_agree_and_eta_free():
    spec = GridSpec(Box.cube(0.0, 2 * np.pi, 3), (25,) * 3)
    u = random_bump_field(spec, seed=8, nbumps=1, width_range=(0.30, 0.36))
    phi = make_test_function("product_bumps", spec)
    a = pair_extension(u, 3, phi, points_t=33)
    b = pair_extension(u, 3, phi, points_t=33, form="proof")
    assert b.value == pytest.approx(a.value, rel=1e-12, abs=1e-14)
    c = pair_extension(u, 3, phi, eta=quintic_ramp_down_profile(), points_t=33)
    assert c.value == pytest.approx(a.value, rel=2e-2)
    d = pair_extension(u, 3, phi, eta=ramp_down_profile(0.1, 0.9), points_t=33)
    assert d.value == pytest.approx(a.value, rel=2e-2)


def test_extension_single_alpha_matches_minor_pairing():
    spec = GridSpec(Box.cube(0.0, 2 * np.pi, 3), (49,) * 3)
    u = random_bump_field(spec, seed=12, nbumps=1, width_range=(0.30, 0.36))
    phi = make_test_function("product_bumps", spec)
    al = MultiIndex((1, 3), 3)
    hu = hessian_stack(u)
    sel = np.array(al.entries) - 1
    minor_field = u.with_values(det_small(hu[..., sel[:, None], sel[None, :]]))
    direct = integrate(u.with_values(minor_field.values * phi.values))
    ext = pair_extension(u, 2, phi, points_t=33, alphas=[al]).value
    assert ext == pytest.approx(direct, rel=5e-2)


def test_extension_rejects_bad_profile():
    spec = GridSpec(Box.cube(0.0, 2 * np.pi, 3), (17,) * 3)
    u = random_bump_field(spec, seed=1)
    phi = make_test_function("product_bumps", spec)
    bad = Func1D(f=lambda t: 1.0 - np.asarray(t), d1=lambda t: -np.ones_like(t), d2=lambda t: np.zeros_like(t))
    with pytest.raises(DomainError):
        pair_extension(u, 3, phi, eta=bad)


def test_tensor_minor_of_pure_coordinates():
    # all factors equal to t: closed form checked against a local FD oracle
    fs = [
        Func1D(
            f=lambda t: np.asarray(t, dtype=float),
            d1=lambda t: np.ones_like(np.asarray(t, dtype=float)),
            d2=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        )
        for _ in range(3)
    ]
    al = MultiIndex((1, 2, 3), 3)
    rng = np.random.default_rng(4)
    for _ in range(10):
        x = rng.uniform(0.5, 2.0, size=3)
        closed = float(tensor_minor(fs, al, x))

        def fn(a, b, c):
            return a * b * c

        oracle = float(np.linalg.det(fd_hessian_at(fn, x, h=1e-3)))
        assert closed == pytest.approx(oracle, abs=5e-6)


def test_tensor_minor_vanishes_with_zero_complement_factor():
    zero = Func1D(
        f=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        d1=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        d2=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
    )
    lin = Func1D(
        f=lambda t: np.asarray(t, dtype=float),
        d1=lambda t: np.ones_like(np.asarray(t, dtype=float)),
        d2=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
    )
    fs = [lin, lin, zero]
    al = MultiIndex((1, 2), 3)  # complement {3} carries the zero factor
    x = np.array([0.7, 1.3, 2.0])
    assert float(tensor_minor(fs, al, x)) == 0.0


def test_tensor_minor_against_fd_on_oscillatory_products():
    spec = ConstructionSpec("oscillatory", 3, 3, 7.0 / 6.0, 3)
    coeff, fs = oscillatory_terms(spec)[0]
    al = MultiIndex((1, 2, 3), 3)
    rng = np.random.default_rng(6)
    for _ in range(20):
        x = rng.uniform(0.8, 2 * np.pi - 0.8, size=3)
        closed = coeff**3 * float(tensor_minor(fs, al, x))

        def fn(a, b, c):
            return coeff * fs[0].f(a) * fs[1].f(b) * fs[2].f(c)

        oracle = float(np.linalg.det(fd_hessian_at(fn, x)))
        assert abs(closed - oracle) <= 1e-4 * (abs(oracle) + 1e-12)


def test_cofactor_divergence_zero_for_quadratic():
    spec = GridSpec(Box.cube(-1.0, 1.0, 3), (17,) * 3)
    u = sample(lambda x, y, z: 0.5 * x * x + x * y + z * z, spec)
    al = MultiIndex((1, 2, 3), 3)
    assert np.max(np.abs(cofactor_divergence(u, al, 1).values)) == 0.0


def test_cofactor_divergence_zero_for_single_variable():
    spec = GridSpec(Box.cube(0.0, 2 * np.pi, 3), (17,) * 3)
    u = sample(lambda x, y, z: np.sin(x), spec)
    al = MultiIndex((1, 2, 3), 3)
    assert np.max(np.abs(cofactor_divergence(u, al, 2).values)) <= 1e-12


def test_cofactor_divergence_decays_under_refinement():
    al = MultiIndex((1, 2, 3), 3)
    sups = []
    for npts in (25, 49):
        spec = GridSpec(Box.cube(0.0, 2 * np.pi, 3), (npts,) * 3)
        u = random_bump_field(spec, seed=11, nbumps=1, width_range=(0.30, 0.36))
        sups.append(np.abs(cofactor_divergence(u, al, 2).values).max())
    assert np.log2(sups[0] / sups[1]) >= 0.9


def test_cofactor_divergence_membership_error():
    spec = GridSpec(Box.cube(0.0, 1.0, 3), (9,) * 3)
    u = sample(lambda x, y, z: x * y * z, spec)
    with pytest.raises(DomainError):
        cofactor_divergence(u, MultiIndex((1, 2), 3), 3)


def test_fd_hessian_at_matches_polynomial():
    def fn(x, y):
        return x**3 * y + 2 * y**2

    h = fd_hessian_at(fn, np.array([1.2, -0.7]), h=1e-2)
    exact = np.array([[6 * 1.2 * -0.7, 3 * 1.2**2], [3 * 1.2**2, 4.0]])
    assert np.max(np.abs(h - exact)) <= 1e-8
