"""Explicit fields driving the blow-up and boundedness studies.

Three families, selected by ``ConstructionSpec.family``:

* ``bump``         u_m(x) = m^(-rho) g(m x) with g the radial
                   antiderivative of a mean-zero compactly supported 1-d
                   profile h; support shrinks to the origin like 1/m.
* ``oscillatory``  u_m = m^(-rho) chi(x) prod_{i<k} sin^2(m x_i)
                   prod_{i>=k} x_i, a tensor product on the region where
                   the cutoff equals one.
* ``lacunary``     a rapidly-growing-frequency sum of such products with
                   critically tuned coefficients.  The geometric frequency
                   ladder ceil(base^l) replaces the astronomically large
                   ladder of the underlying theory, so boundedness and
                   logarithmic growth are verified as trends, not with the
                   original constants.

Also here: smooth cutoffs, the standard test functions, random smooth
fields for property sweeps, and the radial minor integral identity with
its closed-form right-hand side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_trapezoid, quad

from .besov import BesovParams
from .bumps import Func1D, scaled_bump, window_1d
from .errors import ConstructionError, DomainError
from .grid import Box, GridField, GridSpec, sample, _integrate_values
from .minors import det_small
from .multiindex import MultiIndex, indices
from .separable import ProductTerm

__all__ = [
    "RadialProfile",
    "ConstructionSpec",
    "make_profile",
    "radial_g",
    "bump_field",
    "oscillatory_field",
    "lacunary_field",
    "lacunary_frequencies",
    "lacunary_coefficients",
    "oscillatory_terms",
    "lacunary_terms",
    "oscillatory_class_minor",
    "sin2_func",
    "coordinate_func",
    "cutoff",
    "make_test_function",
    "product_bump_callables",
    "random_bump_field",
    "radial_minor_identity",
    "wallis_sine_integral",
    "required_points",
    "FAMILIES",
]

FAMILIES = ("bump", "oscillatory", "lacunary")

# phi and cutoff geometry on the default oscillation box [0, 2*pi]
_CHI_MARGIN = 0.40
_PHI_MARGIN = 0.62


@dataclass(frozen=True)
class RadialProfile:
    """Smooth 1-d profile h supported in (0, 1) with zero mean.

    ``moment`` is the weighted power moment of h for the (k, n) the
    profile was built for; the radial minor identity degenerates when it
    vanishes, so construction enforces a floor on its magnitude.
    """

    func: Func1D
    mean: float
    moment: float
    k: int
    n: int
    kind: str
    support: tuple[float, float]
    r_table: np.ndarray = field(repr=False)
    g_table: np.ndarray = field(repr=False)

    def moment_for(self, k: int, n: int) -> float:
        val, _ = quad(
            lambda r: self.func.f(np.array([r]))[0] ** k * r ** (n + 1 - k),
            self.support[0],
            self.support[1],
            limit=200,
        )
        return val


def _profile_quad(fn, lo, hi):
    val, _ = quad(lambda t: float(fn(np.array([t]))[0]), lo, hi, limit=200)
    return val


def make_profile(k: int, n: int, seed: int = 0, kind: str = "two_bump") -> RadialProfile:
    """Build a mean-zero profile with a nondegenerate (k, n) moment.

    ``two_bump``: difference of two disjoint bumps, the second scaled so
    the mean vanishes (calibrated by adaptive quadrature).
    ``odd``: a bump minus its reflection about the support midpoint; the
    mean vanishes by symmetry without calibration.
    """
    if not 2 <= k <= n:
        raise DomainError(f"need 2 <= k <= n, got k={k}, n={n}")
    rng = np.random.default_rng(seed)
    if kind == "two_bump":
        c1 = 0.28 + 0.04 * rng.random()
        w1 = 0.17 + 0.03 * rng.random()
        c2 = 0.72 + 0.04 * rng.random()
        w2 = 0.16 + 0.03 * rng.random()
        b1 = scaled_bump(c1, w1)
        b2 = scaled_bump(c2, w2)
        ratio = _profile_quad(b1.f, c1 - w1, c1 + w1) / _profile_quad(b2.f, c2 - w2, c2 + w2)
        func = Func1D(
            f=lambda t: b1.f(t) - ratio * b2.f(t),
            d1=lambda t: b1.d1(t) - ratio * b2.d1(t),
            d2=lambda t: b1.d2(t) - ratio * b2.d2(t),
        )
        support = (c1 - w1, c2 + w2)
    elif kind == "odd":
        mid = 0.5
        cl = 0.30 + 0.02 * rng.random()
        wl = 0.16 + 0.02 * rng.random()
        b = scaled_bump(cl, wl)
        func = Func1D(
            f=lambda t: b.f(t) - b.f(2.0 * mid - np.asarray(t, dtype=float)),
            d1=lambda t: b.d1(t) + b.d1(2.0 * mid - np.asarray(t, dtype=float)),
            d2=lambda t: b.d2(t) - b.d2(2.0 * mid - np.asarray(t, dtype=float)),
        )
        support = (cl - wl, 2.0 * mid - (cl - wl))
    else:
        raise DomainError(f"unknown profile kind {kind!r}")

    lo, hi = support
    if not 0.0 < lo < hi < 1.0:
        raise ConstructionError(f"profile support {support} escapes (0, 1)")
    mean = _profile_quad(func.f, lo, hi)
    if abs(mean) > 1e-10:
        raise ConstructionError(f"profile mean {mean:.3e} failed calibration")
    moment, _ = quad(
        lambda r: float(func.f(np.array([r]))[0]) ** k * r ** (n + 1 - k), lo, hi, limit=200
    )
    if abs(moment) < 1e-3:
        raise ConstructionError(
            f"profile moment {moment:.3e} is degenerate for (k, n)=({k}, {n}); "
            "pick different bump centers"
        )
    r_table = np.linspace(0.0, 1.0, 20001)
    g_table = cumulative_trapezoid(func.f(r_table), r_table, initial=0.0)
    return RadialProfile(func, mean, moment, k, n, kind, support, r_table, g_table)


def radial_g(profile: RadialProfile, *coords) -> np.ndarray:
    """g(x) = integral of h from 0 to |x|; compactly supported in the unit ball."""
    r = np.sqrt(sum(np.asarray(c, dtype=float) ** 2 for c in coords))
    vals = np.interp(r, profile.r_table, profile.g_table)
    return np.where(r >= 1.0, 0.0, vals)


@dataclass(frozen=True)
class ConstructionSpec:
    """Parameters selecting one member of one family."""

    family: str
    n: int
    k: int
    rho: float
    m: int
    lacunary_base: float = 4.0
    box: Box | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if not 2 <= self.k <= self.n:
            raise DomainError(f"need 2 <= k <= n, got k={self.k}, n={self.n}")
        if self.m < 1:
            raise DomainError(f"need m >= 1, got m={self.m}")
        if self.family == "lacunary" and self.lacunary_base < 2.0:
            raise DomainError(f"need lacunary base >= 2, got {self.lacunary_base}")
        if self.box is None:
            object.__setattr__(self, "box", self.default_box())

    def default_box(self) -> Box:
        if self.family == "bump":
            return Box.cube(-1.05 / self.m, 1.05 / self.m, self.n)
        return Box.cube(0.0, 2.0 * math.pi, self.n)

    def validate_rho(self, params: BesovParams) -> None:
        """Check rho lies in the family's admissible window for (s, p)."""
        s, p = params.s, params.p
        if self.family == "bump":
            lo, hi = s - self.n / p, 2.0 - self.n / self.k - 2.0 / self.k
        elif self.family == "oscillatory":
            lo, hi = max(s, 2.0 - 4.0 / self.k), 2.0 - 2.0 / self.k
        else:
            return
        if not lo < self.rho < hi:
            raise DomainError(
                f"rho={self.rho} outside the admissible window ({lo:.6g}, {hi:.6g}) "
                f"for family {self.family!r} with s={s}, p={p}"
            )

    def gamma(self) -> MultiIndex:
        return MultiIndex(tuple(range(1, self.k)), self.n)


def required_points(m: int, length: float) -> int:
    """Resolution rule: at least 10 nodes per oscillation period pi/m."""
    return math.ceil(10.0 * m * length / math.pi)


def _check_resolution(spec: ConstructionSpec, grid: GridSpec, top_freq: int):
    for length, pts in zip(grid.box.lengths, grid.points):
        need = required_points(top_freq, length)
        if pts < need:
            raise DomainError(
                f"grid too coarse for frequency {top_freq}: need >= {need} points per axis "
                f"of length {length:.6g}, got {pts}"
            )


def sin2_func(freq: float) -> Func1D:
    """sin^2(freq * t) with exact derivatives."""
    q = float(freq)
    return Func1D(
        f=lambda t: np.sin(q * np.asarray(t, dtype=float)) ** 2,
        d1=lambda t: q * np.sin(2.0 * q * np.asarray(t, dtype=float)),
        d2=lambda t: 2.0 * q * q * np.cos(2.0 * q * np.asarray(t, dtype=float)),
    )


def coordinate_func() -> Func1D:
    """The identity map t with exact derivatives."""
    return Func1D(
        f=lambda t: np.asarray(t, dtype=float),
        d1=lambda t: np.ones_like(np.asarray(t, dtype=float)),
        d2=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
    )


def _axis_functions(spec: ConstructionSpec, freq: float) -> tuple[Func1D, ...]:
    gam = set(spec.gamma().entries)
    return tuple(sin2_func(freq) if i in gam else coordinate_func() for i in range(1, spec.n + 1))


def oscillatory_terms(spec: ConstructionSpec) -> list[ProductTerm]:
    """Tensor-product representation on the region where the cutoff is one."""
    if spec.family != "oscillatory":
        raise DomainError("oscillatory_terms needs an oscillatory-family spec")
    return [(spec.m ** (-spec.rho), _axis_functions(spec, spec.m))]


def lacunary_frequencies(spec: ConstructionSpec) -> list[int]:
    return [int(math.ceil(spec.lacunary_base**l)) for l in range(1, spec.m + 1)]


def lacunary_coefficients(spec: ConstructionSpec) -> list[float]:
    k = spec.k
    return [
        nl ** -(2.0 - 2.0 / k) * l ** (-1.0 / k)
        for l, nl in enumerate(lacunary_frequencies(spec), start=1)
    ]


def lacunary_terms(spec: ConstructionSpec) -> list[ProductTerm]:
    if spec.family != "lacunary":
        raise DomainError("lacunary_terms needs a lacunary-family spec")
    return [
        (c, _axis_functions(spec, nl))
        for c, nl in zip(lacunary_coefficients(spec), lacunary_frequencies(spec))
    ]


def _chi_windows(box: Box, margin: float) -> list[Func1D]:
    out = []
    for lo, hi in zip(box.lower, box.upper):
        if hi - lo <= 2.0 * margin:
            raise DomainError("box too small for the cutoff margin")
        out.append(window_1d(lo, lo + margin, hi - margin, hi))
    return out


def cutoff(box_inner: Box, box_outer: Box, grid: GridSpec) -> GridField:
    """Smooth tensor cutoff: 1 on the inner box, 0 outside the outer box."""
    if box_inner.dimension != box_outer.dimension:
        raise DomainError("inner and outer boxes must share a dimension")
    for li, ui, lo, uo in zip(box_inner.lower, box_inner.upper, box_outer.lower, box_outer.upper):
        if not (lo < li <= ui < uo):
            raise DomainError("inner box must lie strictly inside the outer box")
    wins = [
        window_1d(lo, li, ui, uo)
        for li, ui, lo, uo in zip(box_inner.lower, box_inner.upper, box_outer.lower, box_outer.upper)
    ]

    def f(*coords):
        out = np.ones_like(np.asarray(coords[0], dtype=float))
        for w, c in zip(wins, coords):
            out = out * w.f(c)
        return out

    return sample(f, grid)


def bump_field(spec: ConstructionSpec, profile: RadialProfile, grid: GridSpec) -> GridField:
    """u_m(x) = m^(-rho) g(m x); support is the ball of radius 1/m."""
    if spec.family != "bump":
        raise DomainError("bump_field needs a bump-family spec")
    m = spec.m
    if any(hi < 1.0 / m or lo > -1.0 / m for lo, hi in zip(grid.box.lower, grid.box.upper)):
        raise DomainError("grid box does not contain the support ball of radius 1/m")
    scale = float(m) ** (-spec.rho)

    def f(*coords):
        return scale * radial_g(profile, *(m * np.asarray(c, dtype=float) for c in coords))

    return sample(f, grid)


def _chi_field(spec: ConstructionSpec, grid: GridSpec) -> GridField:
    wins = _chi_windows(spec.box, _CHI_MARGIN)

    def f(*coords):
        out = np.ones_like(np.asarray(coords[0], dtype=float))
        for w, c in zip(wins, coords):
            out = out * w.f(c)
        return out

    return sample(f, grid)


def oscillatory_field(spec: ConstructionSpec, grid: GridSpec) -> GridField:
    """Cutoff times the sin^2 x coordinate tensor product, scaled by m^(-rho)."""
    if spec.family != "oscillatory":
        raise DomainError("oscillatory_field needs an oscillatory-family spec")
    _check_resolution(spec, grid, spec.m)
    chi = _chi_field(spec, grid)
    axes_f = _axis_functions(spec, spec.m)

    def f(*coords):
        out = np.full_like(np.asarray(coords[0], dtype=float), spec.m ** (-spec.rho))
        for fn, c in zip(axes_f, coords):
            out = out * fn.f(c)
        return out

    raw = sample(f, grid)
    return raw.with_values(chi.values * raw.values)


def lacunary_field(spec: ConstructionSpec, grid: GridSpec) -> GridField:
    """Cutoff times the lacunary sum of sin^2 products."""
    if spec.family != "lacunary":
        raise DomainError("lacunary_field needs a lacunary-family spec")
    nls = lacunary_frequencies(spec)
    _check_resolution(spec, grid, max(nls))
    chi = _chi_field(spec, grid)
    terms = lacunary_terms(spec)

    def f(*coords):
        out = np.zeros_like(np.asarray(coords[0], dtype=float))
        for coeff, fns in terms:
            piece = np.full_like(out, coeff)
            for fn, c in zip(fns, coords):
                piece = piece * fn.f(c)
            out = out + piece
        return out

    raw = sample(f, grid)
    return raw.with_values(chi.values * raw.values)


def oscillatory_class_minor(spec: ConstructionSpec, alpha: MultiIndex, x: np.ndarray) -> np.ndarray:
    """Closed-form principal minor of the oscillatory field on the plateau.

    For alpha splitting into c oscillating axes (inside gamma) and k - c
    coordinate axes:

        (-1)^(k-1) 2^c m^(2c - rho k)
        * (prod of sin^2 over gamma minus alpha' times prod of x over the
           remaining coordinate axes)^k
        * (prod of sin^2 over alpha')^(k-1) (prod of x over alpha'')^(k-2)
        * (k - c - 1 + 2 sum over alpha' of cos^2(m x_i))
    """
    if spec.family != "oscillatory":
        raise DomainError("oscillatory_class_minor needs an oscillatory-family spec")
    x = np.asarray(x, dtype=float)
    n, k, m = spec.n, spec.k, spec.m
    if x.shape[-1] != n:
        raise DomainError(f"points must have last dimension {n}")
    gam = set(spec.gamma().entries)
    a_osc = [i for i in alpha.entries if i in gam]
    a_coord = [i for i in alpha.entries if i not in gam]
    c = len(a_osc)

    def sin2(i):
        return np.sin(m * x[..., i - 1]) ** 2

    def cos2(i):
        return np.cos(m * x[..., i - 1]) ** 2

    shape = x.shape[:-1]
    outer = np.ones(shape)
    for i in sorted(gam - set(a_osc)):
        outer = outer * sin2(i)
    for i in range(k, n + 1):
        if i not in a_coord:
            outer = outer * x[..., i - 1]
    outer = outer**k

    posc = np.ones(shape)
    for i in a_osc:
        posc = posc * sin2(i)
    qcoord = np.ones(shape)
    for i in a_coord:
        qcoord = qcoord * x[..., i - 1]

    bracket = np.full(shape, float(k - c - 1))
    for i in a_osc:
        bracket = bracket + 2.0 * cos2(i)

    lead = (-1.0) ** (k - 1) * 2.0**c * float(m) ** (2 * c - spec.rho * k)
    return lead * outer * posc ** (k - 1) * qcoord ** (k - 2) * bracket


def product_bump_callables(box: Box, margin: float = _PHI_MARGIN):
    """Per-axis nonnegative bumps supported strictly inside the box."""
    out = []
    for lo, hi in zip(box.lower, box.upper):
        if hi - lo <= 2.0 * margin:
            raise DomainError("box too small for the test-bump margin")
        center = 0.5 * (lo + hi)
        halfwidth = 0.5 * (hi - lo) - margin
        out.append(scaled_bump(center, halfwidth).f)
    return out


def make_test_function(kind: str, grid: GridSpec) -> GridField:
    """Standard test functions.

    ``quadratic_origin``: |x|^2 times a cutoff identically one on the inner
    half of the box (exactly |x|^2 near the origin).
    ``product_bumps``: a product of nonnegative per-axis bumps supported
    strictly inside the box.
    """
    box = grid.box
    if kind == "quadratic_origin":
        wins = [
            window_1d(lo, lo + 0.2 * (hi - lo), hi - 0.2 * (hi - lo), hi)
            for lo, hi in zip(box.lower, box.upper)
        ]

        def f(*coords):
            r2 = sum(np.asarray(c, dtype=float) ** 2 for c in coords)
            chi = np.ones_like(np.asarray(coords[0], dtype=float))
            for w, c in zip(wins, coords):
                chi = chi * w.f(c)
            return r2 * chi

        return sample(f, grid)
    if kind == "product_bumps":
        factors = product_bump_callables(box)

        def f(*coords):
            out = np.ones_like(np.asarray(coords[0], dtype=float))
            for fac, c in zip(factors, coords):
                out = out * fac(c)
            return out

        return sample(f, grid)
    raise DomainError(f"unknown test function kind {kind!r}")


def random_bump_field(
    grid: GridSpec,
    seed: int,
    nbumps: int = 3,
    amplitude: float = 1.0,
    width_range: tuple[float, float] = (0.14, 0.26),
) -> GridField:
    """Random smooth compactly supported field: a sum of product bumps.

    Widths are drawn as fractions of the axis length from ``width_range``;
    wider bumps are better resolved on coarse grids.
    """
    rng = np.random.default_rng(seed)
    box = grid.box
    pieces = []
    for _ in range(nbumps):
        amp = amplitude * rng.uniform(0.4, 1.0) * rng.choice((-1.0, 1.0))
        factors = []
        for lo, hi in zip(box.lower, box.upper):
            length = hi - lo
            w = rng.uniform(*width_range) * length
            c = rng.uniform(lo + w + 0.05 * length, hi - w - 0.05 * length)
            factors.append(scaled_bump(c, w).f)
        pieces.append((amp, factors))

    def f(*coords):
        out = np.zeros_like(np.asarray(coords[0], dtype=float))
        for amp, factors in pieces:
            piece = np.full_like(out, amp)
            for fac, c in zip(factors, coords):
                piece = piece * fac(c)
            out = out + piece
        return out

    return sample(f, grid)


def wallis_sine_integral(s: int) -> float:
    """Integral of sin^s over [0, pi]: sqrt(pi) Gamma((s+1)/2) / Gamma(s/2 + 1)."""
    if s < 0:
        raise DomainError("need s >= 0")
    return math.sqrt(math.pi) * math.gamma((s + 1) / 2.0) / math.gamma(s / 2.0 + 1.0)


def radial_minor_identity(
    profile: RadialProfile,
    k: int,
    n: int,
    grid_points: int | None = None,
):
    """Both sides of the radial minor integral identity.

    lhs: the quadratic-weighted integral over the unit ball of one
    principal Hessian minor of g (any index set; radial symmetry makes
    them equal), by full n-dimensional quadrature of the analytic radial
    Hessian.

    rhs: -(2/n) * 2 pi * prod_{i=1}^{n-2} W(i) * integral of h^k r^(n+1-k),
    with W the Wallis sine integrals.  The prefactor collects three polar
    integrals with weights 1, -k/n and (k-n-2)/n.
    """
    if not 2 <= k <= n <= 4:
        raise DomainError(f"need 2 <= k <= n <= 4, got k={k}, n={n}")
    if grid_points is None:
        grid_points = {2: 641, 3: 161, 4: 61}[n]
    spec = GridSpec(Box.cube(-1.0, 1.0, n), (grid_points,) * n)
    mesh = spec.meshgrid()
    r2 = sum(c**2 for c in mesh)
    r = np.sqrt(r2)
    safe_r = np.where(r > 1e-12, r, 1.0)
    inside = (r > profile.support[0] * 0.5) & (r < 1.0)
    hv = np.where(inside, profile.func.f(safe_r), 0.0)
    hd = np.where(inside, profile.func.d1(safe_r), 0.0)

    hess = np.zeros(spec.shape + (n, n))
    for a in range(n):
        for b in range(n):
            term = hd * mesh[a] * mesh[b] / safe_r**2
            if a == b:
                term = term + hv * (safe_r**2 - mesh[a] * mesh[b]) / safe_r**3
            else:
                term = term - hv * mesh[a] * mesh[b] / safe_r**3
            hess[..., a, b] = term

    sel = np.arange(k)
    minor_vals = det_small(hess[..., sel[:, None], sel[None, :]])
    lhs = _integrate_values(minor_vals * r2, spec)

    moment = profile.moment if (profile.k, profile.n) == (k, n) else profile.moment_for(k, n)
    sphere = 2.0 * math.pi
    for i in range(1, n - 1):
        sphere *= wallis_sine_integral(i)
    rhs = -(2.0 / n) * sphere * moment
    return float(lhs), float(rhs)
