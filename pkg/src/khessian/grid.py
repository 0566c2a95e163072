"""Scalar fields sampled on uniform tensor grids.

The grid is the numerical carrier for every function in the library:
fields are sampled on a closed box (endpoints included) or on a periodic
cube (endpoint dropped), differentiated by second-order finite differences
and integrated by the tensor-product trapezoidal rule.  The trapezoidal
rule is spectrally accurate for period-aligned oscillatory integrands,
which is what the blow-up studies lean on.

Serialization format (text, stable):

    n; lower_1 ... lower_n; upper_1 ... upper_n; points_1 ... points_n; flags
    v_0
    v_1
    ...

with flags either ``closed`` or ``periodic`` and samples flattened in
row-major (C) order, one value per line.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, EvaluationError

__all__ = [
    "Box",
    "GridSpec",
    "GridField",
    "sample",
    "gradient",
    "hessian",
    "gradient_stack",
    "hessian_stack",
    "integrate",
    "lp_norm",
    "save_field",
    "load_field",
]


@dataclass(frozen=True)
class Box:
    """Axis-aligned box with per-axis bounds."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        lo = tuple(float(x) for x in self.lower)
        hi = tuple(float(x) for x in self.upper)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        if len(lo) != len(hi) or not lo:
            raise DomainError("lower and upper must be nonempty and of equal length")
        if any(a >= b for a, b in zip(lo, hi)):
            raise DomainError(f"need lower < upper per axis, got {lo} vs {hi}")

    @property
    def dimension(self) -> int:
        return len(self.lower)

    @property
    def lengths(self) -> tuple[float, ...]:
        return tuple(b - a for a, b in zip(self.lower, self.upper))

    def scaled(self, factor: float) -> "Box":
        return Box(tuple(a * factor for a in self.lower), tuple(b * factor for b in self.upper))

    @staticmethod
    def cube(lo: float, hi: float, n: int) -> "Box":
        return Box((lo,) * n, (hi,) * n)


@dataclass(frozen=True)
class GridSpec:
    """Uniform tensor grid on a box.

    ``periodic`` grids drop the upper endpoint on every axis (the sample at
    ``upper`` would duplicate the one at ``lower``); they are required by
    the dyadic-block norm and integrate with uniform weights.
    """

    box: Box
    points: tuple[int, ...]
    periodic: bool = field(default=False)

    def __post_init__(self):
        pts = tuple(int(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) != self.box.dimension:
            raise DomainError("points_per_axis length must match box dimension")
        if any(p < 4 for p in pts):
            raise DomainError(f"need at least 4 points per axis, got {pts}")

    @property
    def dimension(self) -> int:
        return self.box.dimension

    @property
    def shape(self) -> tuple[int, ...]:
        return self.points

    def axes(self) -> list[np.ndarray]:
        out = []
        for lo, hi, p in zip(self.box.lower, self.box.upper, self.points):
            out.append(np.linspace(lo, hi, p, endpoint=not self.periodic))
        return out

    def spacings(self) -> tuple[float, ...]:
        out = []
        for lo, hi, p in zip(self.box.lower, self.box.upper, self.points):
            out.append((hi - lo) / (p if self.periodic else p - 1))
        return tuple(out)

    def meshgrid(self) -> list[np.ndarray]:
        return list(np.meshgrid(*self.axes(), indexing="ij"))

    def summary(self) -> str:
        pts = "x".join(str(p) for p in self.points)
        box = " ".join(f"[{a:g},{b:g}]" for a, b in zip(self.box.lower, self.box.upper))
        tag = "periodic" if self.periodic else "closed"
        return f"{pts} {tag} {box}"


@dataclass(frozen=True)
class GridField:
    """Scalar samples on a grid; immutable after construction."""

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != self.spec.shape:
            raise DomainError(f"sample shape {v.shape} does not match grid {self.spec.shape}")
        if not np.all(np.isfinite(v)):
            raise DomainError("field samples must be finite")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def with_values(self, values: np.ndarray) -> "GridField":
        return GridField(self.spec, values)


def sample(f, spec: GridSpec) -> GridField:
    """Evaluate ``f(x_1, ..., x_n)`` at every grid node.

    ``f`` must accept broadcast coordinate arrays.  Non-finite values abort
    with the offending coordinates.
    """
    mesh = spec.meshgrid()
    vals = np.asarray(f(*mesh), dtype=float)
    if vals.shape != spec.shape:
        vals = np.broadcast_to(vals, spec.shape).copy()
    bad = ~np.isfinite(vals)
    if bad.any():
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        coords = tuple(float(m[idx]) for m in mesh)
        raise EvaluationError(f"non-finite sample at grid node {idx}, coordinates {coords}")
    return GridField(spec, vals)


def _axis_d1(v: np.ndarray, h: float, axis: int) -> np.ndarray:
    """Second-order first derivative: central interior, one-sided ends."""
    return np.gradient(v, h, axis=axis, edge_order=2)


def _axis_d2(v: np.ndarray, h: float, axis: int) -> np.ndarray:
    """Second-order pure second derivative along one axis.

    Three-point central stencil in the interior, four-point one-sided
    second-order stencils at the two boundary nodes (hence >= 4 points).
    """
    v = np.moveaxis(v, axis, 0)
    out = np.empty_like(v)
    out[1:-1] = v[2:] - 2.0 * v[1:-1] + v[:-2]
    out[0] = 2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]
    out[-1] = 2.0 * v[-1] - 5.0 * v[-2] + 4.0 * v[-3] - v[-4]
    return np.moveaxis(out, 0, axis) / h**2


def gradient_stack(u: GridField) -> np.ndarray:
    """All first derivatives, shape (n, *grid_shape)."""
    h = u.spec.spacings()
    return np.stack([_axis_d1(u.values, h[a], a) for a in range(u.spec.dimension)])


def hessian_stack(u: GridField) -> np.ndarray:
    """All second derivatives, shape (*grid_shape, n, n), exactly symmetric.

    Pure second derivatives use the dedicated stencil; mixed ones apply the
    first-derivative operator twice and average the two orders.
    """
    n = u.spec.dimension
    h = u.spec.spacings()
    firsts = [_axis_d1(u.values, h[a], a) for a in range(n)]
    out = np.empty(u.spec.shape + (n, n))
    for a in range(n):
        out[..., a, a] = _axis_d2(u.values, h[a], a)
        for b in range(a + 1, n):
            mixed = 0.5 * (_axis_d1(firsts[a], h[b], b) + _axis_d1(firsts[b], h[a], a))
            out[..., a, b] = mixed
            out[..., b, a] = mixed
    return out


def gradient(u: GridField) -> list[GridField]:
    """First-derivative fields along every axis."""
    return [u.with_values(g) for g in gradient_stack(u)]


def hessian(u: GridField) -> list[list[GridField]]:
    """Second-derivative fields as a symmetric n-by-n nested list."""
    stack = hessian_stack(u)
    n = u.spec.dimension
    rows = []
    for a in range(n):
        rows.append([u.with_values(stack[..., a, b]) for b in range(n)])
    return rows


def _integrate_values(values: np.ndarray, spec: GridSpec) -> float:
    h = spec.spacings()
    acc = values
    for a in range(spec.dimension - 1, -1, -1):
        if spec.periodic:
            acc = acc.sum(axis=a) * h[a]
        else:
            acc = np.trapezoid(acc, dx=h[a], axis=a)
    return float(acc)


def integrate(u: GridField) -> float:
    """Tensor-product trapezoidal quadrature over the box."""
    return _integrate_values(u.values, u.spec)


def lp_norm(u: GridField, p: float) -> float:
    """(integral of |u|^p)^(1/p)."""
    if p < 1:
        raise DomainError(f"need p >= 1, got {p}")
    return _integrate_values(np.abs(u.values) ** p, u.spec) ** (1.0 / p)


def save_field(u: GridField, path) -> None:
    """Write a field in the documented header + flat-samples text format."""
    spec = u.spec
    head = "; ".join(
        [
            str(spec.dimension),
            " ".join(f"{x:.17g}" for x in spec.box.lower),
            " ".join(f"{x:.17g}" for x in spec.box.upper),
            " ".join(str(p) for p in spec.points),
            "periodic" if spec.periodic else "closed",
        ]
    )
    with open(path, "w") as fh:
        fh.write(head + "\n")
        for v in u.values.ravel(order="C"):
            fh.write(f"{v:.17g}\n")


def load_field(path) -> GridField:
    """Read a field written by :func:`save_field`."""
    with open(path) as fh:
        header = fh.readline().strip()
        parts = [p.strip() for p in header.split(";")]
        if len(parts) != 5:
            raise DomainError(f"malformed field header: {header!r}")
        n = int(parts[0])
        lower = tuple(float(x) for x in parts[1].split())
        upper = tuple(float(x) for x in parts[2].split())
        points = tuple(int(x) for x in parts[3].split())
        flags = parts[4]
        if len(lower) != n or len(upper) != n or len(points) != n:
            raise DomainError("field header group lengths disagree with dimension")
        if flags not in ("closed", "periodic"):
            raise DomainError(f"unknown field flags {flags!r}")
        data = np.loadtxt(fh, dtype=float, ndmin=1)
    spec = GridSpec(Box(lower, upper), points, periodic=(flags == "periodic"))
    expected = int(np.prod(points))
    if data.size != expected:
        raise DomainError(f"expected {expected} samples, found {data.size}")
    return GridField(spec, data.reshape(points))
