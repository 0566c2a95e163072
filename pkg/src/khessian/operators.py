"""The k-Hessian operator on grid fields and its distributional pairings.

Three routes to the pairing <F_k[u], phi> are provided and must agree on
smooth compactly supported data:

* ``pair_direct``    quadrature of the pointwise k-trace of the FD Hessian;
* ``pair_weak2``     the first-order weak form (k = 2 only), which moves
                     all second derivatives onto the test function;
* ``pair_extension`` the auxiliary-variable identity: the pairing equals an
                     (n+2)-dimensional integral of signed Hessian minors of
                     product extensions U(x,t1,t2) = u(x) e(t1) e(t2)
                     against second derivatives of the extended test
                     function.

Also here: the closed-form Hessian minor of tensor-product functions, the
divergence-free property of cofactor rows, and a local high-order FD
Hessian used as an independent oracle in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product

import numpy as np

from .bumps import Func1D, ramp_down_profile
from .errors import DomainError
from .grid import GridField, GridSpec, gradient_stack, hessian_stack, integrate, _axis_d1, _integrate_values
from .minors import det_small, k_trace_stack
from .multiindex import MultiIndex, indices, sign

__all__ = [
    "PairingResult",
    "fk_pointwise",
    "pair_direct",
    "pair_weak2",
    "pair_extension",
    "tensor_minor",
    "cofactor_divergence",
    "fd_hessian_at",
]


@dataclass(frozen=True)
class PairingResult:
    value: float
    method: str
    grid: str
    k: int


def fk_pointwise(u: GridField, k: int) -> GridField:
    """Sum of k-by-k principal minors of the FD Hessian at every node."""
    n = u.spec.dimension
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= {n}, got {k}")
    return u.with_values(k_trace_stack(hessian_stack(u), k))


def _require_same_grid(u: GridField, phi: GridField):
    if u.spec != phi.spec:
        raise DomainError("field and test function must live on the same grid")


def pair_direct(u: GridField, k: int, phi: GridField) -> PairingResult:
    """Quadrature of F_k[u] * phi over the box."""
    _require_same_grid(u, phi)
    fk = fk_pointwise(u, k)
    value = integrate(u.with_values(fk.values * phi.values))
    return PairingResult(value, "direct", u.spec.summary(), k)


def pair_weak2(u: GridField, phi: GridField) -> PairingResult:
    """First-order weak form of the 2-Hessian pairing.

    Over unordered axis pairs i < j:

        integral of  du_i du_j d2phi_ij
                   - (du_i)^2 d2phi_jj / 2 - (du_j)^2 d2phi_ii / 2

    which needs only first derivatives of u.  Converges to
    ``pair_direct(u, 2, phi)`` at second order under grid refinement.
    """
    _require_same_grid(u, phi)
    n = u.spec.dimension
    if n < 2:
        raise DomainError("the weak 2-Hessian form needs dimension >= 2")
    du = gradient_stack(u)
    hphi = hessian_stack(phi)
    acc = np.zeros(u.spec.shape)
    for i in range(n):
        for j in range(i + 1, n):
            acc += du[i] * du[j] * hphi[..., i, j]
            acc -= 0.5 * du[i] ** 2 * hphi[..., j, j]
            acc -= 0.5 * du[j] ** 2 * hphi[..., i, i]
    value = _integrate_values(acc, u.spec)
    return PairingResult(value, "weak2", u.spec.summary(), 2)


def _check_extension_profile(eta: Func1D):
    t = np.array([0.0, 1.0])
    vals = eta.f(t)
    d1 = eta.d1(t)
    d2 = eta.d2(t)
    ok = (
        abs(vals[0] - 1.0) < 1e-12
        and abs(vals[1]) < 1e-12
        and np.all(np.abs(d1) < 1e-12)
        and np.all(np.abs(d2) < 1e-12)
    )
    if not ok:
        raise DomainError(
            "extension profile must be identically 1 near 0 and 0 near 1 with flat derivatives"
        )


def _xpart_matrix(u: GridField) -> np.ndarray:
    """x-dependent factors of the product-extension Hessian.

    Entry (a, b) of D^2[u(x) e(t1) e(t2)] factors as (x part) * (t parts);
    this returns the (grid, n+2, n+2) stack of x parts: Hessian block,
    gradient border rows/columns, and u itself in the auxiliary corner.
    """
    n = u.spec.dimension
    hu = hessian_stack(u)
    du = gradient_stack(u)
    x = np.empty(u.spec.shape + (n + 2, n + 2))
    x[..., :n, :n] = hu
    for a in range(n):
        x[..., a, n] = x[..., n, a] = du[a]
        x[..., a, n + 1] = x[..., n + 1, a] = du[a]
    x[..., n, n] = x[..., n + 1, n + 1] = x[..., n, n + 1] = x[..., n + 1, n] = u.values
    return x


def pair_extension(
    u: GridField,
    k: int,
    phi: GridField,
    eta: Func1D | None = None,
    *,
    points_t: int = 17,
    form: str = "statement",
    alphas: list[MultiIndex] | None = None,
) -> PairingResult:
    """Pairing through Hessian minors of product extensions.

    For each order-k index alpha, sums over i in alpha+(n+1) and
    j in alpha+(n+2) the signed complementary minors of the extended
    Hessian against second derivatives of the extended test function,
    integrated over box x (0,1)^2.  The auxiliary-axis quadrature uses
    ``points_t`` trapezoid nodes; with product extensions the tensor
    quadrature factorizes exactly, so this evaluates the full
    (n+2)-dimensional rule at n-dimensional cost.

    ``form`` selects between the double-sum arrangement ("statement") and
    its rearrangement with an explicit auxiliary-derivative term ("proof");
    the two are algebraically identical and tested as such.
    """
    _require_same_grid(u, phi)
    n = u.spec.dimension
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= {n}, got {k}")
    if form not in ("statement", "proof"):
        raise DomainError(f"unknown form {form!r}")
    if eta is None:
        eta = ramp_down_profile()
    _check_extension_profile(eta)

    # one auxiliary-axis trapezoid integral serves every (i, j) pair: the
    # minor contributes e' e^(k-1) on the axis the removed index misses and
    # e^k on the other, the test factor supplies the complementary e or e',
    # so the integrand is e' e^k on both axes in all cases
    t = np.linspace(0.0, 1.0, points_t)
    t_int = float(np.trapezoid(eta.d1(t) * eta.f(t) ** k, t))

    xmat = _xpart_matrix(u)
    hphi = hessian_stack(phi)
    dphi = gradient_stack(phi)

    def phi_xpart(i: int, j: int) -> np.ndarray:
        # i in alpha+(n+1), j in alpha+(n+2), 1-based; x part of d2 Phi_{i,j}
        if i <= n and j <= n:
            return hphi[..., i - 1, j - 1]
        if i <= n and j == n + 2:
            return dphi[i - 1]
        if i == n + 1 and j <= n:
            return dphi[j - 1]
        if i == n + 1 and j == n + 2:
            return phi.values
        raise DomainError(f"invalid extended index pair ({i}, {j})")

    def x_integral(rows: MultiIndex, cols: MultiIndex, i: int, j: int) -> float:
        rsel = np.array(rows.entries, dtype=int) - 1
        csel = np.array(cols.entries, dtype=int) - 1
        minor_vals = det_small(xmat[..., rsel[:, None], csel[None, :]])
        return _integrate_values(minor_vals * phi_xpart(i, j), u.spec)

    if alphas is None:
        alphas = indices(k, n)
    ambient = n + 2
    total = 0.0
    for alpha in alphas:
        if len(alpha) != k:
            raise DomainError("alpha order must equal k")
        a_ext = MultiIndex(alpha.entries, ambient)
        rows_full = a_ext.insert(n + 2)
        cols_full = a_ext.insert(n + 1)
        if form == "statement":
            for i in cols_full:
                si = sign(MultiIndex((i,), ambient), cols_full.remove(i))
                for j in rows_full:
                    sj = sign(MultiIndex((j,), ambient), rows_full.remove(j))
                    total += si * sj * x_integral(rows_full.remove(j), cols_full.remove(i), i, j)
        else:
            for i in cols_full:
                beta = cols_full.remove(i)
                s_out = sign(beta, MultiIndex((i,), ambient))
                inner = 0.0
                for j in alpha.entries:
                    sj = sign(a_ext.remove(j), MultiIndex((j,), ambient))
                    inner -= sj * x_integral(a_ext.remove(j).insert(n + 2), beta, i, j)
                inner += x_integral(a_ext, beta, i, n + 2)
                total += s_out * inner
    value = total * t_int * t_int
    return PairingResult(value, "extension", u.spec.summary(), k)


def tensor_minor(fs: list[Func1D], alpha: MultiIndex, x: np.ndarray) -> np.ndarray:
    """Closed-form principal Hessian minor of F(x) = prod_i f_i(x_i).

    With g_i = f_i'' f_i - (f_i')^2,

        M = (prod over the complement of f_i)^k * (prod over alpha of f_i)^(k-2)
            * ( prod_{i in alpha} g_i
                + sum_{j in alpha} (prod_{i in alpha-j} g_i) (f_j')^2 ).

    Vectorized over points x of shape (..., n).
    """
    x = np.asarray(x, dtype=float)
    n = len(fs)
    if x.shape[-1] != n:
        raise DomainError(f"points must have last dimension {n}")
    k = len(alpha)
    if k < 2:
        raise DomainError("closed form requires minor order >= 2")
    if alpha.ambient != n:
        raise DomainError("alpha ambient must match the axis count")

    fvals = [fs[i].f(x[..., i]) for i in range(n)]
    d1 = {i: fs[i].d1(x[..., i]) for i in range(n)}
    d2 = {i: fs[i].d2(x[..., i]) for i in range(n)}
    g = {i: d2[i] * fvals[i] - d1[i] ** 2 for i in range(n)}

    sel = [e - 1 for e in alpha.entries]
    comp = [i for i in range(n) if i not in sel]

    outer = np.ones(x.shape[:-1])
    for i in comp:
        outer = outer * fvals[i]
    outer = outer**k

    inner_pref = np.ones(x.shape[:-1])
    for i in sel:
        inner_pref = inner_pref * fvals[i]
    if k != 2:
        inner_pref = inner_pref ** (k - 2)
    else:
        inner_pref = np.ones(x.shape[:-1])

    bracket = np.ones(x.shape[:-1])
    for i in sel:
        bracket = bracket * g[i]
    for j in sel:
        term = d1[j] ** 2
        for i in sel:
            if i != j:
                term = term * g[i]
        bracket = bracket + term
    return outer * inner_pref * bracket


def cofactor_divergence(u: GridField, alpha: MultiIndex, j: int) -> GridField:
    """FD divergence of one cofactor row of the principal Hessian submatrix.

    Sums d/dx_i of the signed complementary minors (adj (D^2 u)_alpha^alpha)_j^i
    over i in alpha.  Identically zero in the continuum for C^3 functions;
    the discrete sup-norm decays at first order or better under refinement.
    """
    if j not in alpha:
        raise DomainError(f"{j} not a member of {alpha.entries}")
    n = u.spec.dimension
    if alpha.ambient != n:
        raise DomainError("alpha ambient must match the grid dimension")
    hu = hessian_stack(u)
    h = u.spec.spacings()
    aj = alpha.remove(j)
    rsel = np.array(aj.entries, dtype=int) - 1
    acc = np.zeros(u.spec.shape)
    for i in alpha:
        ai = alpha.remove(i)
        csel = np.array(ai.entries, dtype=int) - 1
        s = sign(MultiIndex((i,), n), ai) * sign(MultiIndex((j,), n), aj)
        entry = s * det_small(hu[..., rsel[:, None], csel[None, :]])
        acc += _axis_d1(entry, h[i - 1], i - 1)
    return u.with_values(acc)


def fd_hessian_at(fn, x: np.ndarray, h: float = 2e-3) -> np.ndarray:
    """Fourth-order local finite-difference Hessian of fn at a single point.

    ``fn`` takes n coordinate arguments (broadcastable).  Independent of the
    grid machinery; used as a pointwise oracle for closed-form minors.
    """
    x = np.asarray(x, dtype=float)
    n = x.size

    def ev(shift):
        pt = x + shift
        return float(fn(*pt))

    out = np.empty((n, n))
    for a in range(n):
        ea = np.zeros(n)
        ea[a] = h
        out[a, a] = (
            -ev(2 * ea) + 16 * ev(ea) - 30 * ev(0 * ea) + 16 * ev(-ea) - ev(-2 * ea)
        ) / (12 * h**2)
        for b in range(a + 1, n):
            eb = np.zeros(n)
            eb[b] = h
            acc = 0.0
            for ca, wa in ((2, -1), (1, 8), (-1, -8), (-2, 1)):
                for cb, wb in ((2, -1), (1, 8), (-1, -8), (-2, 1)):
                    acc += wa * wb * ev(ca * ea + cb * eb)
            out[a, b] = out[b, a] = acc / (144 * h**2)
    return out
