import numpy as np
import pytest

from khessian.bumps import scaled_bump
from khessian.constructions import (
    ConstructionSpec,
    lacunary_field,
    lacunary_terms,
    oscillatory_field,
    oscillatory_terms,
    product_bump_callables,
    make_test_function,
)
from khessian.errors import DomainError
from khessian.grid import GridSpec
from khessian.multiindex import MultiIndex
from khessian.operators import pair_direct, tensor_minor
from khessian.separable import minor_separable, pair_separable


def test_single_product_pairing_matches_full_grid():
    # a smooth product of bumps, no oscillation: both routes converge fast
    f1 = scaled_bump(np.pi, 1.8)
    f2 = scaled_bump(np.pi, 1.5)
    terms = [(1.0, (f1, f2))]
    spec = ConstructionSpec("oscillatory", 2, 2, 0.1, 1)  # just for the box
    phis = product_bump_callables(spec.box)
    sep = pair_separable(terms, phis, 2, box=(spec.box.lower, spec.box.upper), points=4097)

    g = GridSpec(spec.box, (257, 257))
    u = g and None
    from khessian.grid import sample

    u = sample(lambda x, y: f1.f(x) * f2.f(y), g)
    phi = make_test_function("product_bumps", g)
    full = pair_direct(u, 2, phi).value
    assert sep == pytest.approx(full, rel=1e-2)


def test_oscillatory_pairing_matches_full_grid():
    spec = ConstructionSpec("oscillatory", 3, 3, 7.0 / 6.0, 2)
    phis = product_bump_callables(spec.box)
    sep = pair_separable(oscillatory_terms(spec), phis, 3, points=4097)
    g = GridSpec(spec.box, (161,) * 3)
    u = oscillatory_field(spec, g)
    phi = make_test_function("product_bumps", g)
    full = pair_direct(u, 3, phi).value
    assert sep == pytest.approx(full, rel=2e-2)


def test_lacunary_pairing_matches_full_grid():
    spec = ConstructionSpec("lacunary", 3, 3, 0.0, 2, lacunary_base=2.0)
    phis = product_bump_callables(spec.box)
    sep = pair_separable(lacunary_terms(spec), phis, 3, points=8193)
    g = GridSpec(spec.box, (161,) * 3)
    u = lacunary_field(spec, g)
    phi = make_test_function("product_bumps", g)
    full = pair_direct(u, 3, phi).value
    assert sep == pytest.approx(full, rel=4e-2)


def test_minor_separable_matches_closed_form_single_product():
    spec = ConstructionSpec("oscillatory", 3, 3, 7.0 / 6.0, 3)
    coeff, fs = oscillatory_terms(spec)[0]
    al = MultiIndex((1, 2, 3), 3)
    rng = np.random.default_rng(5)
    x = rng.uniform(0.7, 2 * np.pi - 0.7, size=(30, 3))
    lhs = minor_separable([(coeff, fs)], al, x)
    rhs = coeff**3 * tensor_minor(fs, al, x)
    assert np.max(np.abs(lhs - rhs)) <= 1e-10 * np.max(np.abs(rhs))


def test_engine_validates_inputs():
    spec = ConstructionSpec("oscillatory", 3, 3, 7.0 / 6.0, 2)
    phis = product_bump_callables(spec.box)
    with pytest.raises(DomainError):
        pair_separable([], phis, 3)
    with pytest.raises(DomainError):
        pair_separable(oscillatory_terms(spec), phis[:2], 3)
    with pytest.raises(DomainError):
        pair_separable(oscillatory_terms(spec), phis, 4)
