"""Separable fast path for pairings of sums of tensor-product fields.

A field u(x) = sum_l c_l * prod_i f_{l,i}(x_i) paired against a product
test function prod_i phi_i(x_i) has

    integral of M_alpha^alpha(D^2 u) * phi

expandable by multilinearity of the determinant in its rows: every row of
the Hessian submatrix picks one summand l, and every Leibniz permutation
term is itself a tensor product, so the n-dimensional integral collapses
to a product of 1-d quadratures.  This is the only route to high
oscillation frequencies at desk scale; full-grid quadrature validates it
at small frequency.
"""

from __future__ import annotations

from itertools import permutations, product

import numpy as np

from .bumps import Func1D
from .errors import DomainError
from .multiindex import MultiIndex, indices

__all__ = ["ProductTerm", "pair_separable", "minor_separable"]

ProductTerm = tuple[float, tuple[Func1D, ...]]


def _perm_parity(perm: tuple[int, ...]) -> int:
    inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inv % 2 else 1


class _AxisQuadrature:
    """Per-axis sampled factors and cached 1-d integrals."""

    def __init__(self, terms, phis, lo, hi, points):
        self.terms = terms
        self.grids = [np.linspace(lo[i], hi[i], points[i]) for i in range(len(phis))]
        self.phi_vals = [np.asarray(phi(g), dtype=float) for phi, g in zip(phis, self.grids)]
        self._factors: dict[tuple[int, int, int], np.ndarray] = {}
        self._integrals: dict[tuple[int, tuple], float] = {}

    def factor(self, axis, term, order):
        key = (axis, term, order)
        if key not in self._factors:
            fn = self.terms[term][1][axis].deriv(order)
            self._factors[key] = np.asarray(fn(self.grids[axis]), dtype=float)
        return self._factors[key]

    def integral(self, axis, spec):
        """Integral over one axis of phi times the multiset of factors.

        spec is a sorted tuple of (term_index, derivative_order) pairs, one
        per determinant row.
        """
        key = (axis, spec)
        if key not in self._integrals:
            vals = self.phi_vals[axis].copy()
            for term, order in spec:
                vals *= self.factor(axis, term, order)
            self._integrals[key] = float(np.trapezoid(vals, self.grids[axis]))
        return self._integrals[key]


def pair_separable(
    terms: list[ProductTerm],
    phis,
    k: int,
    *,
    box=None,
    points: int | tuple[int, ...] = 8193,
    alphas: list[MultiIndex] | None = None,
) -> float:
    """Pairing of the order-k Hessian operator of a tensor-product sum.

    terms      list of (coefficient, per-axis Func1D tuple); all terms must
               share the axis count n.
    phis       per-axis test-function callables, compactly supported in the
               open box.
    k          minor order; the result sums principal minors over all of
               I(k, n) unless ``alphas`` restricts the set.
    box        (lower_tuple, upper_tuple); defaults to [0, 2*pi]^n.
    points     1-d quadrature points per axis (int or per-axis tuple).
    """
    if not terms:
        raise DomainError("need at least one product term")
    n = len(terms[0][1])
    if any(len(fs) != n for _, fs in terms):
        raise DomainError("all product terms must have the same axis count")
    if len(phis) != n:
        raise DomainError("need one test factor per axis")
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= {n}, got {k}")
    if box is None:
        lo, hi = (0.0,) * n, (2.0 * np.pi,) * n
    else:
        lo, hi = tuple(box[0]), tuple(box[1])
    if isinstance(points, int):
        points = (points,) * n

    quad = _AxisQuadrature(terms, phis, lo, hi, points)
    if alphas is None:
        alphas = indices(k, n)

    coeffs = [c for c, _ in terms]
    nterms = len(terms)
    total = 0.0
    for alpha in alphas:
        if len(alpha) != k:
            raise DomainError("alpha order must equal k")
        axes = [e - 1 for e in alpha.entries]
        perms = [(p, _perm_parity(p)) for p in permutations(range(k))]
        for assign in product(range(nterms), repeat=k):
            cprod = 1.0
            for t in assign:
                cprod *= coeffs[t]
            if cprod == 0.0:
                continue
            for perm, parity in perms:
                # row r of the submatrix differentiates its term at the
                # axes (axes[r], axes[perm[r]]); tally per-axis orders
                value = parity * cprod
                for ax in range(n):
                    spec = tuple(
                        sorted(
                            (assign[r], (axes[r] == ax) + (axes[perm[r]] == ax))
                            for r in range(k)
                        )
                    )
                    value *= quad.integral(ax, spec)
                    if value == 0.0:
                        break
                total += value
    return total


def minor_separable(terms: list[ProductTerm], alpha: MultiIndex, x: np.ndarray) -> np.ndarray:
    """Pointwise principal minor of the Hessian of a tensor-product sum.

    Direct multilinear expansion evaluated at points x of shape (..., n);
    an oracle for the closed-form single-product route and for grid fields.
    """
    x = np.asarray(x, dtype=float)
    n = len(terms[0][1])
    if x.shape[-1] != n:
        raise DomainError(f"points must have last dimension {n}")
    k = len(alpha)
    axes = [e - 1 for e in alpha.entries]
    out = np.zeros(x.shape[:-1])
    for assign in product(range(len(terms)), repeat=k):
        cprod = 1.0
        for t in assign:
            cprod *= terms[t][0]
        if cprod == 0.0:
            continue
        for perm in permutations(range(k)):
            parity = _perm_parity(perm)
            piece = np.full(x.shape[:-1], parity * cprod)
            for ax in range(n):
                for r in range(k):
                    order = (axes[r] == ax) + (axes[perm[r]] == ax)
                    fn = terms[assign[r]][1][ax].deriv(order)
                    piece = piece * fn(x[..., ax])
            out += piece
    return out
