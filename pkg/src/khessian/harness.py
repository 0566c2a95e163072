"""Orchestration: identity suites, scaling studies, fits, reports.

Everything here is deterministic given (config, seed): reports render to
identical bytes across runs, which the test suite asserts.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .besov import BesovParams, dyadic_norm_sin2_products, embedding_case, gagliardo_seminorm, w1p_norm
from .constructions import (
    ConstructionSpec,
    bump_field,
    lacunary_coefficients,
    lacunary_frequencies,
    lacunary_terms,
    make_profile,
    oscillatory_terms,
    product_bump_callables,
    random_bump_field,
    radial_minor_identity,
    required_points,
)
from .errors import ConfigError, DomainError
from .grid import Box, GridSpec, sample
from .minors import (
    adj_entry,
    binet_sum,
    k_trace,
    minor,
    minor_lipschitz_ratio,
    sym_func,
)
from .multiindex import MultiIndex, indices
from .operators import (
    cofactor_divergence,
    fd_hessian_at,
    pair_direct,
    pair_extension,
    tensor_minor,
)
from .separable import pair_separable

__all__ = [
    "FitResult",
    "fit_linear",
    "fit_loglog",
    "IdentityCheck",
    "IdentityReport",
    "run_identities",
    "render_identity_report",
    "ScalingRow",
    "ScalingReport",
    "run_scaling",
    "write_scaling_csv",
    "write_manifest",
    "run_embedding_table",
    "write_embedding_csv",
    "theorem_ratio_sweep",
    "parse_config",
    "scaling_inputs_from_config",
    "CONFIG_KEYS",
    "FAMILY_ALIASES",
]


# ---------------------------------------------------------------------------
# fitting


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r2: float


def fit_linear(x, y) -> FitResult:
    """Ordinary least squares y = slope * x + intercept with r^2.

    A perfect fit of constant data reports r^2 = 1 (no evidence against
    the model), matching the convention used by the scaling reports.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size != y.size or x.size < 3:
        raise DomainError("need at least three points to fit")
    a = np.vstack([x, np.ones_like(x)]).T
    (slope, intercept), *_ = np.linalg.lstsq(a, y, rcond=None)
    resid = y - (slope * x + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res < 1e-24 else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return FitResult(float(slope), float(intercept), float(r2))


def fit_loglog(points) -> FitResult:
    """OLS fit of log|y| against log x; points are (x, y) pairs, x ascending."""
    pts = list(points)
    if len(pts) < 3:
        raise DomainError("need at least three points to fit")
    x = np.array([p[0] for p in pts], dtype=float)
    y = np.array([p[1] for p in pts], dtype=float)
    if np.any(x <= 0):
        raise DomainError("abscissae must be positive")
    if np.any(np.diff(x) <= 0):
        raise DomainError("abscissae must be strictly increasing")
    if np.any(y == 0):
        raise DomainError("ordinates must be nonzero")
    return fit_linear(np.log(x), np.log(np.abs(y)))


# ---------------------------------------------------------------------------
# identity suite


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    max_residual: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class IdentityReport:
    seed: int
    trials: int
    checks: tuple[IdentityCheck, ...]
    lipschitz_constant: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _random_index_pair(rng, k, d):
    sel = lambda: tuple(sorted(rng.choice(d, size=k, replace=False) + 1))  # noqa: E731
    return MultiIndex(sel(), d), MultiIndex(sel(), d)


def run_identities(seed: int, trials: int) -> IdentityReport:
    """Randomized identity suite over the minor algebra and the pairings.

    Pure-algebra checks run ``trials`` times each at dimensions up to 6 and
    must hit 1e-9 relative; FD-backed checks run on fixed seeded fields at
    their own stated tolerances.
    """
    if trials < 1:
        raise DomainError(f"need trials >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    checks = []

    def record(name, residual, tol):
        checks.append(IdentityCheck(name, float(residual), tol, bool(residual <= tol)))

    # additive minor expansion vs direct determinant of the sum
    worst = 0.0
    for _ in range(trials):
        d = int(rng.integers(2, 7))
        k = int(rng.integers(1, d + 1))
        a = rng.standard_normal((d, d))
        b = rng.standard_normal((d, d))
        al, be = _random_index_pair(rng, k, d)
        lhs = binet_sum(a, b, al, be)
        rhs = minor(a + b, al, be)
        worst = max(worst, abs(lhs - rhs) / (1.0 + abs(rhs)))
    record("binet_vs_direct", worst, 1e-9)

    # full adjugate identity: expansion along column i' with cofactors of
    # column i gives minor * delta_{i i'}
    worst = 0.0
    for _ in range(trials):
        d = int(rng.integers(2, 7))
        k = int(rng.integers(1, d + 1))
        a = rng.standard_normal((d, d))
        al, be = _random_index_pair(rng, k, d)
        mv = minor(a, al, be)
        i = int(rng.choice(be.entries))
        ip = int(rng.choice(be.entries))
        acc = sum(a[j - 1, ip - 1] * adj_entry(a, al, be, i, j) for j in al)
        target = mv if i == ip else 0.0
        worst = max(worst, abs(acc - target) / (1.0 + abs(mv)))
    record("laplace_adjugate", worst, 1e-9)

    # spectral route: elementary symmetric functions of eigenvalues
    worst = 0.0
    for _ in range(trials):
        d = int(rng.integers(2, 7))
        k = int(rng.integers(1, d + 1))
        a = rng.standard_normal((d, d))
        a = a + a.T
        lam = np.linalg.eigvalsh(a)
        lhs = sym_func(lam, k)
        rhs = k_trace(a, k)
        worst = max(worst, abs(lhs - rhs) / (1.0 + abs(rhs)))
    record("symfunc_vs_ktrace", worst, 1e-8)

    # adjoint round trips: 1x1 adjoint is 1; insert/remove round trip
    worst = 0.0
    for _ in range(trials):
        d = int(rng.integers(2, 7))
        a = rng.standard_normal((d, d))
        r = int(rng.integers(1, d + 1))
        one = MultiIndex((r,), d)
        worst = max(worst, abs(adj_entry(a, one, one, r, r) - 1.0))
        k = int(rng.integers(1, d + 1))
        al, _ = _random_index_pair(rng, k, d)
        i = int(rng.choice(al.entries))
        if al.remove(i).insert(i) != al:
            worst = max(worst, 1.0)
    record("adjoint_round_trip", worst, 1e-12)

    # closed-form tensor minor vs local high-order FD Hessian minors
    fs_spec = ConstructionSpec("oscillatory", 3, 3, 7.0 / 6.0, 3)
    coeff, fs = oscillatory_terms(fs_spec)[0]
    al3 = MultiIndex((1, 2, 3), 3)
    worst = 0.0
    for _ in range(min(trials, 20)):
        x = rng.uniform(0.8, 2.0 * math.pi - 0.8, size=3)
        closed = coeff**3 * float(tensor_minor(fs, al3, x))

        def fn(a, b, c):
            return coeff * fs[0].f(a) * fs[1].f(b) * fs[2].f(c)

        direct = float(np.linalg.det(fd_hessian_at(fn, x)))
        worst = max(worst, abs(closed - direct) / (1e-30 + abs(direct)))
    record("tensor_minor_vs_fd", worst, 1e-4)

    # cofactor rows are divergence free: sup norm decays at order >= 0.9
    sups = []
    for npts in (25, 49):
        g = GridSpec(Box.cube(0.0, 2.0 * math.pi, 3), (npts,) * 3)
        u = random_bump_field(g, seed=seed + 17, nbumps=1, width_range=(0.30, 0.36))
        sups.append(float(np.abs(cofactor_divergence(u, al3, 2).values).max()))
    order = math.log2(sups[0] / sups[1])
    record("cofactor_divergence_order", 0.9 - min(order, 0.9), 0.0)

    # extension pairing matches the direct pairing within 5 percent
    g = GridSpec(Box.cube(0.0, 2.0 * math.pi, 3), (49,) * 3)
    u = random_bump_field(g, seed=seed + 29, nbumps=1, width_range=(0.30, 0.36))
    phi = sample_quadratic_free_phi(g)
    pd = pair_direct(u, 3, phi).value
    pe = pair_extension(u, 3, phi, points_t=33).value
    record("extension_vs_direct", abs(pd - pe) / (1e-30 + abs(pd)), 0.05)

    lip = minor_lipschitz_ratio(rng, 5, 3, min(trials, 50))
    return IdentityReport(seed, trials, tuple(checks), lip)


def sample_quadratic_free_phi(grid: GridSpec):
    """Product-bump test function used by the FD identity checks."""
    from .constructions import make_test_function

    return make_test_function("product_bumps", grid)


def render_identity_report(report: IdentityReport) -> str:
    buf = io.StringIO()
    buf.write(f"identity suite  seed={report.seed}  trials={report.trials}\n")
    for c in report.checks:
        status = "pass" if c.passed else "FAIL"
        buf.write(f"{status}  {c.name:28s}  max_residual={c.max_residual:.6e}  tol={c.tolerance:.1e}\n")
    buf.write(f"info  minor_lipschitz_constant      value={report.lipschitz_constant:.6e}\n")
    buf.write("result " + ("pass" if report.passed else "FAIL") + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# scaling studies


@dataclass(frozen=True)
class ScalingRow:
    m: int
    grid_points: int
    norm_sp: float
    norm_method: str
    pairing_value: float
    pairing_method: str


@dataclass(frozen=True)
class ScalingReport:
    family: str
    spec_base: ConstructionSpec
    params: BesovParams
    seed: int
    budget: int
    rows: tuple[ScalingRow, ...]
    fitted_norm_slope: float
    fitted_pairing_slope: float
    predicted_norm_exponent: float
    predicted_pairing_exponent: float
    r_squared: tuple[float, float]
    degraded: bool
    pairing_sign: int


def _bump_rows(spec_base, m_list, params, seed, budget, grid_points, base_box):
    profile = make_profile(spec_base.k, spec_base.n, seed=seed)
    npts = grid_points or 129
    if base_box is None:
        base_box = Box.cube(-1.7, 1.7, spec_base.n)
    rows = []
    for m in m_list:
        box = base_box.scaled(1.0 / m)
        for length in box.lengths:
            if npts < required_points(m, length):
                raise DomainError(f"resolution rule violated at m={m}")
        spec_m = ConstructionSpec("bump", spec_base.n, spec_base.k, spec_base.rho, m, box=box)
        g = GridSpec(box, (npts,) * spec_base.n)
        u = bump_field(spec_m, profile, g)
        # the fixed global test function equals |x|^2 on every sampled box
        phi = sample(lambda *cs: sum(np.asarray(c) ** 2 for c in cs), g)
        pv = pair_direct(u, spec_base.k, phi).value
        nv = w1p_norm(u, params.p) + gagliardo_seminorm(u, params, budget=budget, seed=seed)
        rows.append(ScalingRow(m, npts**spec_base.n, nv, "gagliardo", pv, "direct"))
    return rows


def _oscillatory_rows(spec_base, m_list, params, grid_points, base_box):
    rows = []
    d = spec_base.k - 1
    for m in m_list:
        spec_m = ConstructionSpec(
            "oscillatory", spec_base.n, spec_base.k, spec_base.rho, m, box=base_box
        )
        npts = grid_points or max(8193, 2 * required_points(spec_base.k * m, 2.0 * math.pi) + 1)
        phis = product_bump_callables(spec_m.box)
        pv = pair_separable(oscillatory_terms(spec_m), phis, spec_base.k, box=(spec_m.box.lower, spec_m.box.upper), points=npts)
        nv = dyadic_norm_sin2_products(
            [float(m) ** (-spec_base.rho)], [m], d, params, extra_axes=spec_base.n - d
        )[0]
        rows.append(ScalingRow(m, npts, nv, "dyadic", pv, "separable"))
    return rows


def _lacunary_rows(spec_base, m_list, params, grid_points, base_box):
    rows = []
    d = spec_base.k - 1
    for m in m_list:
        spec_m = ConstructionSpec(
            "lacunary",
            spec_base.n,
            spec_base.k,
            spec_base.rho,
            m,
            lacunary_base=spec_base.lacunary_base,
            box=base_box,
        )
        top = max(lacunary_frequencies(spec_m))
        npts = grid_points or int(2 ** math.ceil(math.log2(8 * spec_base.k * top + 8192))) + 1
        if npts < required_points(top, 2.0 * math.pi):
            raise DomainError(f"resolution rule violated at m={m}: top frequency {top}")
        phis = product_bump_callables(spec_m.box)
        pv = pair_separable(lacunary_terms(spec_m), phis, spec_base.k, box=(spec_m.box.lower, spec_m.box.upper), points=npts)
        nv = dyadic_norm_sin2_products(
            lacunary_coefficients(spec_m),
            lacunary_frequencies(spec_m),
            d,
            params,
            extra_axes=spec_base.n - d,
        )[0]
        rows.append(ScalingRow(m, npts, nv, "dyadic", pv, "separable"))
    return rows


def run_scaling(
    spec_base: ConstructionSpec,
    m_list,
    params: BesovParams,
    *,
    seed: int = 0,
    budget: int = 200_000,
    grid_points: int | None = None,
    base_box: Box | None = None,
) -> ScalingReport:
    """Norms and pairings across a frequency sweep, with fitted rates.

    ``grid_points`` means points per axis of the full grid for the bump
    family and 1-d quadrature points for the separable families.  For the
    bump family ``base_box`` is the box at m = 1, rescaled by 1/m per row;
    the periodic families use it as-is (default: the period cube).

    Norm estimator per family: W^{1,p} + double-integral seminorm for the
    shrinking-bump family (1 < s < 2 there); dyadic block norm of the
    oscillating factor for the two periodic families (for the oscillatory
    family the target s may be <= 1, where the double-integral form does
    not apply).  Pairings: full-grid quadrature for the bump family,
    separable 1-d quadratures for the periodic ones.

    The pairing fit is log|value| against log m, except for the lacunary
    family where value is fitted against log m directly (the expected
    growth is c log m - K0).  A pairing fit with r^2 < 0.8 marks the
    report degraded; it is still returned.
    """
    m_list = [int(m) for m in m_list]
    if len(m_list) < 3:
        raise DomainError("need at least three frequencies for a fit")
    if any(b <= a for a, b in zip(m_list, m_list[1:])):
        raise DomainError("frequency list must be strictly ascending")
    spec_base.validate_rho(params)

    fam = spec_base.family
    if fam == "bump":
        rows = _bump_rows(spec_base, m_list, params, seed, budget, grid_points, base_box)
    elif fam == "oscillatory":
        rows = _oscillatory_rows(spec_base, m_list, params, grid_points, base_box)
    else:
        rows = _lacunary_rows(spec_base, m_list, params, grid_points, base_box)

    ms = [r.m for r in rows]
    norm_fit = fit_loglog(list(zip(ms, [r.norm_sp for r in rows])))
    if fam == "lacunary":
        pairing_fit = fit_linear(np.log(ms), [r.pairing_value for r in rows])
    else:
        pairing_fit = fit_loglog(list(zip(ms, [r.pairing_value for r in rows])))

    n, k, rho, s, p = spec_base.n, spec_base.k, spec_base.rho, params.s, params.p
    if fam == "bump":
        pred_norm = s - rho - n / p
        pred_pair = 2 * k - rho * k - n - 2
    elif fam == "oscillatory":
        pred_norm = s - rho
        pred_pair = 2 * k - 2 - rho * k
    else:
        pred_norm = 0.0
        pred_pair = math.nan  # growth is c * log m with unconstrained c > 0

    signs = {int(np.sign(r.pairing_value)) for r in rows}
    pairing_sign = signs.pop() if len(signs) == 1 else 0

    return ScalingReport(
        family=fam,
        spec_base=spec_base,
        params=params,
        seed=seed,
        budget=budget,
        rows=tuple(rows),
        fitted_norm_slope=norm_fit.slope,
        fitted_pairing_slope=pairing_fit.slope,
        predicted_norm_exponent=pred_norm,
        predicted_pairing_exponent=pred_pair,
        r_squared=(norm_fit.r2, pairing_fit.r2),
        degraded=pairing_fit.r2 < 0.8,
        pairing_sign=pairing_sign,
    )


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def write_scaling_csv(report: ScalingReport, path) -> None:
    cols = [
        "family", "m", "grid_points", "norm_sp", "norm_method",
        "pairing_value", "pairing_method", "s", "p", "k", "n", "rho",
        "seed", "budget", "fitted_norm_slope", "fitted_pairing_slope",
        "predicted_norm_exponent", "predicted_pairing_exponent",
        "r2_norm", "r2_pairing", "degraded", "pairing_sign",
    ]
    sb, pr = report.spec_base, report.params
    with open(path, "w", newline="") as fh:
        fh.write(",".join(cols) + "\n")
        for r in report.rows:
            vals = [
                report.family, r.m, r.grid_points, _fmt(r.norm_sp), r.norm_method,
                _fmt(r.pairing_value), r.pairing_method, _fmt(pr.s), _fmt(pr.p),
                sb.k, sb.n, _fmt(sb.rho), report.seed, report.budget,
                _fmt(report.fitted_norm_slope), _fmt(report.fitted_pairing_slope),
                _fmt(report.predicted_norm_exponent), _fmt(report.predicted_pairing_exponent),
                _fmt(report.r_squared[0]), _fmt(report.r_squared[1]),
                int(report.degraded), report.pairing_sign,
            ]
            fh.write(",".join(str(v) for v in vals) + "\n")


def write_manifest(config: dict, path, *, seed: int) -> None:
    from . import __version__

    with open(path, "w") as fh:
        fh.write(f"khessian version = {__version__}\n")
        fh.write(f"seed = {seed}\n")
        for key in sorted(config):
            fh.write(f"{key} = {config[key]}\n")


def write_plots(report: ScalingReport, outdir) -> list[str]:
    """Optional vector plots of the norm and pairing sweeps; needs matplotlib."""
    import os

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ms = np.array([r.m for r in report.rows], dtype=float)
    written = []
    for which, vals, slope in (
        ("norm", np.array([r.norm_sp for r in report.rows]), report.fitted_norm_slope),
        ("pairing", np.abs([r.pairing_value for r in report.rows]), report.fitted_pairing_slope),
    ):
        fig, ax = plt.subplots(figsize=(5, 4))
        if report.family == "lacunary" and which == "pairing":
            ax.semilogx(ms, vals, "ko", label="measured")
            fit = report.fitted_pairing_slope * np.log(ms) + (
                vals[-1] - report.fitted_pairing_slope * np.log(ms[-1])
            )
            ax.semilogx(ms, fit, "k--", label=f"fit c={slope:.2f} per log m")
        else:
            ax.loglog(ms, vals, "ko", label="measured")
            anchor = vals[0] / ms[0] ** slope
            ax.loglog(ms, anchor * ms**slope, "k--", label=f"fit slope {slope:.3f}")
        ax.set_xlabel("m")
        ax.set_ylabel(which)
        ax.legend()
        ax.grid(True, which="both", alpha=0.4)
        name = os.path.join(outdir, f"{report.family}_{which}.svg")
        fig.savefig(name, bbox_inches="tight")
        plt.close(fig)
        written.append(name)
    return written


# ---------------------------------------------------------------------------
# embedding table


_REGION_NONE = ""


def _theorem_region(s, p, k, n) -> str:
    if 1.0 < p <= k and s + 2.0 / k < 2.0 + n / p - n / k:
        return "I"
    if p > k and 0.0 < s < 2.0 - 2.0 / k:
        return "II"
    if p > k and math.isclose(s, 2.0 - 2.0 / k, rel_tol=1e-12, abs_tol=1e-12):
        return "III"
    return _REGION_NONE


def run_embedding_table(s_values, p_values, k: int, n: int):
    """Classification of the (s, p) grid plus counterexample-region tags."""
    rows = []
    for s in s_values:
        for p in p_values:
            rows.append((float(s), float(p), embedding_case(s, p, k, n), _theorem_region(s, p, k, n)))
    return rows


def write_embedding_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("s,p,case,region\n")
        for s, p, case, region in rows:
            fh.write(f"{_fmt(s)},{_fmt(p)},{case},{region}\n")


# ---------------------------------------------------------------------------
# continuity-estimate ratio sweep


def theorem_ratio_sweep(
    *,
    samples: int = 50,
    seed: int = 0,
    n: int = 3,
    k: int = 3,
    grid_points: int = 33,
    budget: int = 100_000,
):
    """Empirical constants in the continuity estimate for the pairing.

    For random smooth pairs (u1, u2) computes

        |<F_k[u1] - F_k[u2], phi>| /
            ( ||u1-u2|| (||u1||^(k-1) + ||u2||^(k-1)) ||D2 phi||_inf )

    with the (2 - 2/k, k) norm, and returns the list of ratios.  The
    estimate promises this is bounded; the sweep reports the empirical
    max, it never asserts a particular constant.
    """
    from .grid import hessian_stack

    params = BesovParams(2.0 - 2.0 / k, float(k))
    g = GridSpec(Box.cube(0.0, 2.0 * math.pi, n), (grid_points,) * n)
    phi = sample_quadratic_free_phi(g)
    d2phi_inf = float(np.abs(hessian_stack(phi)).max())

    def norm_of(u):
        return w1p_norm(u, params.p) + gagliardo_seminorm(u, params, budget=budget, seed=seed)

    ratios = []
    for i in range(samples):
        u1 = random_bump_field(g, seed=seed + 1000 + 2 * i, nbumps=2, width_range=(0.24, 0.34))
        u2 = random_bump_field(g, seed=seed + 1001 + 2 * i, nbumps=2, width_range=(0.24, 0.34))
        num = abs(pair_direct(u1, k, phi).value - pair_direct(u2, k, phi).value)
        diff = u1.with_values(u1.values - u2.values)
        n1, n2, nd = norm_of(u1), norm_of(u2), norm_of(diff)
        den = nd * (n1 ** (k - 1) + n2 ** (k - 1)) * d2phi_inf
        ratios.append(num / den)
    return ratios


# ---------------------------------------------------------------------------
# run configuration

CONFIG_KEYS = (
    "family", "n", "k", "p", "s", "rho", "m_list", "base",
    "grid_points", "box", "seed", "budget",
)

FAMILY_ALIASES = {"sect3": "bump", "sect4": "oscillatory", "sect5": "lacunary"}


def _parse_number(text: str) -> float:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return float(num) / float(den)
    return float(text)


def parse_config(text: str) -> dict:
    """Parse ``key = value`` lines; unknown keys are rejected."""
    cfg: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in cfg:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        cfg[key] = value
    return cfg


def scaling_inputs_from_config(cfg: dict):
    """Build (spec_base, m_list, params, seed, budget, grid_points, base_box).

    The optional ``box`` entry is the base box: the m = 1 box for the bump
    family (rescaled by 1/m per row) and the literal box for the periodic
    families.
    """
    try:
        family = cfg["family"].strip()
        family = FAMILY_ALIASES.get(family, family)
        n = int(cfg.get("n", 3))
        k = int(cfg.get("k", 3))
        p = _parse_number(cfg.get("p", "2"))
        s = _parse_number(cfg.get("s", "1.1"))
        rho = _parse_number(cfg.get("rho", "0"))
        m_list = [int(tok) for tok in cfg["m_list"].replace(",", " ").split()]
        base = _parse_number(cfg.get("base", "4"))
        seed = int(cfg.get("seed", 0))
        budget = int(cfg.get("budget", 200_000))
        grid_points = int(cfg["grid_points"]) if "grid_points" in cfg else None
        box = None
        if "box" in cfg:
            nums = [float(tok) for tok in cfg["box"].replace(",", " ").split()]
            if len(nums) == 2:
                box = Box.cube(nums[0], nums[1], n)
            elif len(nums) == 2 * n:
                box = Box(tuple(nums[:n]), tuple(nums[n:]))
            else:
                raise ConfigError("box needs 2 or 2n numbers")
    except KeyError as exc:
        raise ConfigError(f"missing required key {exc.args[0]!r}") from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if not m_list:
        raise ConfigError("m_list must not be empty")
    params = BesovParams(s, p)
    spec = ConstructionSpec(family, n, k, rho, m_list[-1], lacunary_base=base)
    return spec, m_list, params, seed, budget, grid_points, box
