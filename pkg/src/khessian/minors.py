"""Determinantal minor algebra.

Minors, signed adjoint entries, the additive minor expansion (minors of
A + B as sums over complementary index splittings), k-traces (sums of
principal minors) and elementary symmetric functions.

Determinants of order <= 4 are evaluated by closed-form expansion and
accept arbitrary leading batch dimensions, which keeps the node-wise hot
paths vectorized; larger orders fall back to LAPACK's pivoted LU.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .multiindex import MultiIndex, indices, sign, splittings

__all__ = [
    "det_small",
    "minor",
    "adj_entry",
    "laplace_expand",
    "binet_sum",
    "k_trace",
    "k_trace_stack",
    "sym_func",
    "minor_lipschitz_ratio",
]


def det_small(a: np.ndarray) -> np.ndarray:
    """Determinant of a (..., d, d) stack; closed form for d <= 4."""
    a = np.asarray(a, dtype=float)
    d = a.shape[-1]
    if a.shape[-2] != d:
        raise DomainError(f"matrix stack must be square, got {a.shape[-2:]}")
    if d == 0:
        return np.ones(a.shape[:-2])
    if d == 1:
        return a[..., 0, 0]
    if d == 2:
        return a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]
    if d == 3:
        return (
            a[..., 0, 0] * (a[..., 1, 1] * a[..., 2, 2] - a[..., 1, 2] * a[..., 2, 1])
            - a[..., 0, 1] * (a[..., 1, 0] * a[..., 2, 2] - a[..., 1, 2] * a[..., 2, 0])
            + a[..., 0, 2] * (a[..., 1, 0] * a[..., 2, 1] - a[..., 1, 1] * a[..., 2, 0])
        )
    if d == 4:
        out = np.zeros(a.shape[:-2])
        rows = [1, 2, 3]
        for c in range(4):
            cols = [j for j in range(4) if j != c]
            sub = a[..., rows, :][..., :, cols]
            out += (-1.0) ** c * a[..., 0, c] * det_small(sub)
        return out
    return np.linalg.det(a)


def _check_matrix(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix entries must be finite")
    return a


def _rows_cols(a, alpha: MultiIndex, beta: MultiIndex):
    d = a.shape[0]
    if len(alpha) != len(beta):
        raise DomainError(f"row and column indices must have equal order, got {len(alpha)} and {len(beta)}")
    if alpha.ambient > d or beta.ambient > d:
        raise DomainError("multi-index ambient exceeds matrix dimension")
    r = np.array(alpha.entries, dtype=int) - 1
    c = np.array(beta.entries, dtype=int) - 1
    return r, c


def minor(a: np.ndarray, alpha: MultiIndex, beta: MultiIndex) -> float:
    """Determinant of the submatrix with rows alpha and columns beta.

    The empty minor is 1 by convention.
    """
    a = _check_matrix(a)
    r, c = _rows_cols(a, alpha, beta)
    if len(r) == 0:
        return 1.0
    return float(det_small(a[np.ix_(r, c)]))


def adj_entry(a: np.ndarray, alpha: MultiIndex, beta: MultiIndex, i: int, j: int) -> float:
    """Signed complementary minor of the (alpha, beta) submatrix.

    For i in beta and j in alpha this is the cofactor that multiplies the
    matrix entry at row j, column i in the expansion of the minor along
    the column of i:

        sign(i, beta - i) * sign(j, alpha - j) * minor(A, alpha - j, beta - i)
    """
    a = _check_matrix(a)
    if i not in beta:
        raise DomainError(f"column index {i} not in {beta.entries}")
    if j not in alpha:
        raise DomainError(f"row index {j} not in {alpha.entries}")
    bi = beta.remove(i)
    aj = alpha.remove(j)
    s = sign(MultiIndex((i,), beta.ambient), bi) * sign(MultiIndex((j,), alpha.ambient), aj)
    return s * minor(a, aj, bi)


def laplace_expand(a: np.ndarray, alpha: MultiIndex, beta: MultiIndex, i: int) -> float:
    """Expansion of minor(a, alpha, beta) along the column indexed by i in beta.

    Note the matrix entry is taken at (row j, column i); for symmetric
    matrices the transposed reading gives the same value.
    """
    a = _check_matrix(a)
    if i not in beta:
        raise DomainError(f"{i} not in {beta.entries}")
    return sum(a[j - 1, i - 1] * adj_entry(a, alpha, beta, i, j) for j in alpha)


def binet_sum(a: np.ndarray, b: np.ndarray, alpha: MultiIndex, beta: MultiIndex) -> float:
    """Minor of A + B expanded over complementary splittings of (alpha, beta).

    Sums sign(a', a'') sign(b', b'') minor(A, a', b') minor(B, a'', b'')
    over all splittings alpha = a' + a'', beta = b' + b'' with
    |a'| = |b'|.  Equals minor(A + B, alpha, beta).
    """
    a = _check_matrix(a)
    b = _check_matrix(b)
    if a.shape != b.shape:
        raise DomainError("summand matrices must share a shape")
    if len(alpha) != len(beta):
        raise DomainError("row and column indices must have equal order")
    k = len(alpha)
    total = 0.0
    for c in range(k + 1):
        for a1, a2 in splittings(alpha, c):
            sa = sign(a1, a2)
            for b1, b2 in splittings(beta, c):
                total += sa * sign(b1, b2) * minor(a, a1, b1) * minor(b, a2, b2)
    return total


def k_trace(a: np.ndarray, k: int) -> float:
    """Sum of all k-by-k principal minors."""
    a = _check_matrix(a)
    d = a.shape[0]
    if not 1 <= k <= d:
        raise DomainError(f"need 1 <= k <= {d}, got {k}")
    return sum(minor(a, al, al) for al in indices(k, d))


def k_trace_stack(a: np.ndarray, k: int) -> np.ndarray:
    """Vectorized k-trace over a (..., n, n) stack of matrices."""
    a = np.asarray(a, dtype=float)
    n = a.shape[-1]
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= {n}, got {k}")
    out = np.zeros(a.shape[:-2])
    for al in indices(k, n):
        sel = np.array(al.entries, dtype=int) - 1
        out += det_small(a[..., sel[:, None], sel[None, :]])
    return out


def sym_func(lam: np.ndarray, k: int) -> float:
    """k-th elementary symmetric function of a vector.

    Computed by the product recurrence for prod_i (1 + lam_i t): O(len * k)
    and numerically stable for the desk-scale sizes used here.
    """
    lam = np.asarray(lam, dtype=float).ravel()
    if not 1 <= k <= lam.size:
        raise DomainError(f"need 1 <= k <= {lam.size}, got {k}")
    e = np.zeros(k + 1)
    e[0] = 1.0
    for x in lam:
        e[1 : k + 1] = e[1 : k + 1] + x * e[0:k]
    return float(e[k])


def minor_lipschitz_ratio(rng: np.random.Generator, dim: int, k: int, trials: int) -> float:
    """Empirical constant in |M(A) - M(B)| <= C (|A|+|B|)^(k-1) |A-B|.

    Frobenius norms; the supremum of the observed ratio over random pairs
    and all principal index pairs of order k.  Reported, never asserted
    against a target: only finiteness and stability are meaningful.
    """
    if not 1 <= k <= dim:
        raise DomainError(f"need 1 <= k <= {dim}")
    worst = 0.0
    alphas = indices(k, dim)
    for _ in range(trials):
        a = rng.standard_normal((dim, dim))
        b = rng.standard_normal((dim, dim))
        na, nb = np.linalg.norm(a), np.linalg.norm(b)
        nd = np.linalg.norm(a - b)
        if nd < 1e-12:
            continue
        bound = (na + nb) ** (k - 1) * nd
        for al in alphas:
            for be in alphas:
                diff = abs(minor(a, al, be) - minor(b, al, be))
                worst = max(worst, diff / bound)
    return worst
