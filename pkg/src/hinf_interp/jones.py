"""The generalized Jones interpolation operator.

For data ``w`` on ``Z`` and an admissible weight ``g``,

    f(z) = sum_j w_j B_j(z)/B_j(z_j) g_j(z) exp(-a (G_j(z) - G_j(z_j)))

interpolates ``w`` and satisfies ``|f| <= |w|_inf exp(a c)/a`` with
``c = c_J(Z, g)``; the choice ``a = 1/c`` gives the bound ``e c |w|_inf``.
The operator is linear in ``w``, so it is evaluated through its basis
functions ``phi_j`` (the images of the unit vectors).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .characteristics import WeightFamily, c_J_given_g, completion_sums
from .errors import NonPositive
from .halfplane import PointSequence, blaschke_partials


def optimal_a(c: float) -> float:
    """Minimiser ``1/c`` of ``a -> exp(a c)/a``."""
    if not c > 0:
        raise NonPositive(f"c must be positive, got {c!r}")
    return 1.0 / c


def norm_bound(c: float, a: float, w_sup: float = 1.0) -> float:
    return w_sup * math.exp(a * c) / a


@dataclass
class InterpolantSpec:
    Z: PointSequence
    w: np.ndarray
    g: WeightFamily
    a: float | str = "auto"
    c: float = field(init=False)

    def __post_init__(self):
        self.w = np.asarray(self.w, dtype=complex).ravel()
        if self.w.size != self.Z.n:
            raise ValueError(f"expected {self.Z.n} target values, got {self.w.size}")
        if not np.all(np.isfinite(self.w)):
            raise ValueError("target values must be finite")
        self.c = c_J_given_g(self.Z, self.g)[0]
        if self.a == "auto":
            self.a = optimal_a(self.c)
        elif not float(self.a) > 0:
            raise NonPositive("a must be positive")
        self.a = float(self.a)

    @property
    def bound(self) -> float:
        return norm_bound(self.c, self.a, float(np.max(np.abs(self.w))))


def analytic_completion_G(Z: PointSequence, g: WeightFamily, k: int, z):
    """``G_k(z) = sum_{y_j <= y_k} G((z - x_j)/y_j)/|B_j(z_j)|``, ``Im G(i) = 0`` per term."""
    out = completion_sums(Z, g, z)[..., k]
    return complex(out) if np.ndim(out) == 0 else out


def interpolation_basis(Z: PointSequence, g: WeightFamily, a: float, z, gauge=None) -> np.ndarray:
    """Basis functions ``phi_j(z)``, shape ``z.shape + (n,)``.

    ``gauge`` optionally adds a constant ``i * gauge[j]`` to each ``G_j``; the
    basis does not depend on it.
    """
    z = np.asarray(z, dtype=complex)
    nodes = Z.z
    Bz = blaschke_partials(Z, z)
    Bn = np.diagonal(blaschke_partials(Z, nodes)).copy()
    Gz = completion_sums(Z, g, z)
    Gn = np.diagonal(completion_sums(Z, g, nodes)).copy()
    if gauge is not None:
        Gz = Gz + 1j * np.asarray(gauge)
        Gn = Gn + 1j * np.asarray(gauge)
    gz = g.g((z[..., None] - Z.x) / Z.y)
    return Bz / Bn * gz * np.exp(-a * (Gz - Gn))


def evaluate_interpolant(spec: InterpolantSpec, z):
    out = interpolation_basis(spec.Z, spec.g, spec.a, z) @ spec.w
    return complex(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class GridSpec:
    """Sampling grid for sup-norm estimates.

    Uniform in x over the node span widened by ``x_pad`` half-widths, log-spaced
    in y from ``y_lo * min(y_j)`` to ``y_hi * max(y_j)``, plus a row at every
    node height.  A grid maximum is a lower estimate of the true sup.
    """

    nx: int = 61
    ny: int = 40
    x_pad: float = 10.0
    y_lo: float = 1e-3
    y_hi: float = 10.0

    def points(self, Z: PointSequence) -> np.ndarray:
        half = max(0.5 * (Z.x.max() - Z.x.min()), Z.y.max())
        xc = 0.5 * (Z.x.max() + Z.x.min())
        xs = np.linspace(xc - (1 + self.x_pad) * half, xc + (1 + self.x_pad) * half, self.nx)
        xs = np.union1d(xs, Z.x)
        ys = np.geomspace(self.y_lo * Z.y.min(), self.y_hi * Z.y.max(), self.ny)
        ys = np.union1d(ys, Z.y)
        X, Y = np.meshgrid(xs, ys)
        return (X + 1j * Y).ravel()


@dataclass
class NormCertificate:
    empirical_sup: float
    bound: float
    margin: float
    residuals: np.ndarray
    argmax: complex


def norm_certificate(spec: InterpolantSpec, grid: GridSpec | np.ndarray | None = None) -> NormCertificate:
    """Grid sup of ``|f|`` against the theoretical bound ``|w| exp(a c)/a``."""
    if grid is None:
        grid = GridSpec()
    pts = grid.points(spec.Z) if isinstance(grid, GridSpec) else np.asarray(grid, dtype=complex).ravel()
    vals = np.abs(evaluate_interpolant(spec, pts))
    i = int(np.argmax(vals))
    residuals = np.abs(evaluate_interpolant(spec, spec.Z.z) - spec.w)
    return NormCertificate(float(vals[i]), spec.bound, spec.bound - float(vals[i]), residuals, complex(pts[i]))
