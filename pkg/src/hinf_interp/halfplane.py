"""Point sequences in the upper half-plane and their Blaschke products.

Products are accumulated as (sum of log-moduli, sum of arguments) so that long
products keep their relative accuracy.  The log-modulus of a factor is
``log1p(-rho)/2`` with ``rho = 4 y yk / |z - conj zk|^2`` when ``rho`` is small,
and ``log(|z - zk|^2 / |z - conj zk|^2)/2`` when the points are close, so both
regimes keep full relative accuracy.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import BadIndex, PoleHit, ZeroHit


class SignConvention(enum.Enum):
    PLAIN = "plain"
    # factor (z - zk)/(z - conj zk) for label k <= 0 and its negative for k > 0
    GAMMA_NORMALIZED = "gamma_normalized"


@dataclass(frozen=True, eq=False)
class PointSequence:
    """A finite sequence of distinct points ``z_j = x_j + i y_j`` with ``y_j > 0``.

    User order is preserved.  ``height_order`` gives the stable sort by
    ``(y, x, input index)`` used by every formula that sums over ``y_j <= y_k``.
    """

    z: np.ndarray
    labels: tuple | None = None

    def __post_init__(self):
        z = np.array(self.z, dtype=complex).ravel()
        if z.size == 0:
            raise ValueError("point sequence must be nonempty")
        if not np.all(np.isfinite(z)):
            raise ValueError("point coordinates must be finite")
        if np.any(z.imag <= 0):
            raise ValueError("points must lie in the upper half-plane (y > 0)")
        if np.unique(z).size != z.size:
            raise ValueError("points must be distinct")
        if self.labels is not None and len(self.labels) != z.size:
            raise ValueError("labels must match the number of points")
        z.flags.writeable = False
        object.__setattr__(self, "z", z)
        order = np.lexsort((np.arange(z.size), z.real, z.imag))
        order.flags.writeable = False
        object.__setattr__(self, "height_order", order)

    @classmethod
    def from_xy(cls, x, y, labels=None) -> "PointSequence":
        return cls(np.asarray(x, float) + 1j * np.asarray(y, float), labels)

    @property
    def x(self) -> np.ndarray:
        return self.z.real

    @property
    def y(self) -> np.ndarray:
        return self.z.imag

    @property
    def n(self) -> int:
        return self.z.size

    def __len__(self):
        return self.z.size

    def signs(self, sign: SignConvention = SignConvention.PLAIN) -> np.ndarray:
        if sign is SignConvention.PLAIN:
            return np.ones(self.n)
        if self.labels is None:
            raise ValueError("gamma_normalized signs need integer labels k")
        return np.where(np.asarray(self.labels) > 0, -1.0, 1.0)


def _as_eval_points(Z: PointSequence, z):
    z = np.asarray(z, dtype=complex)
    if np.any(z[..., None] == Z.z.conj()):
        raise PoleHit("evaluation point equals the reflection of a zero")
    if np.any(z.imag < 0):
        raise ValueError("evaluation points must lie in the closed upper half-plane")
    return z


def _factor_logs(Z: PointSequence, z: np.ndarray):
    """Log-modulus and argument of each factor ``(z - zk)/(z - conj zk)``.

    Shapes are ``z.shape + (n,)``.  A factor that vanishes has log-modulus -inf.
    """
    d = z[..., None] - Z.z
    dbar = z[..., None] - Z.z.conj()
    if np.any(dbar == 0):
        raise PoleHit("evaluation point equals the reflection of a zero")
    logmod = _log_factor_modulus(d, dbar, z.imag[..., None], Z.y)
    arg = np.angle(d) - np.angle(dbar)
    return logmod, arg


def _log_factor_modulus(d, dbar, y, yk):
    """``log|d/dbar|`` where ``|dbar|^2 - |d|^2 = 4 y yk``."""
    dd = d.real ** 2 + d.imag ** 2
    bb = dbar.real ** 2 + dbar.imag ** 2
    rho = 4.0 * y * yk / bb
    with np.errstate(divide="ignore", invalid="ignore"):
        far = 0.5 * np.log1p(-np.minimum(rho, 0.5))
        near = 0.5 * np.log(dd / bb)
    return np.where(rho < 0.5, far, near)


def blaschke_eval(Z: PointSequence, z, exclude: int | None = None,
                  sign: SignConvention = SignConvention.PLAIN):
    """Evaluate ``prod_{k != exclude} s_k (z - z_k)/(z - conj z_k)``.

    ``z`` may be a scalar or array in the closed upper half-plane.
    """
    if exclude is not None and not 0 <= exclude < Z.n:
        raise BadIndex(f"exclude={exclude} out of range for n={Z.n}")
    z = _as_eval_points(Z, z)
    logmod, arg = _factor_logs(Z, z)
    s = Z.signs(sign)
    arg = arg + np.where(s < 0, np.pi, 0.0)
    keep = np.ones(Z.n, dtype=bool)
    if exclude is not None:
        keep[exclude] = False
    L = np.sum(logmod[..., keep], axis=-1)
    A = np.sum(arg[..., keep], axis=-1)
    out = np.exp(L) * np.exp(1j * A)
    return complex(out) if out.ndim == 0 else out


def blaschke_partials(Z: PointSequence, z, sign: SignConvention = SignConvention.PLAIN) -> np.ndarray:
    """All partial products ``B_j(z)`` at once, shape ``z.shape + (n,)``."""
    z = _as_eval_points(Z, z)
    logmod, arg = _factor_logs(Z, z)
    arg = arg + np.where(Z.signs(sign) < 0, np.pi, 0.0)
    zero = np.isneginf(logmod)
    finite = np.where(zero, 0.0, logmod)
    L = np.sum(finite, axis=-1, keepdims=True) - finite
    A = np.sum(arg, axis=-1, keepdims=True) - arg
    out = np.exp(L) * np.exp(1j * A)
    # at a zero z = z_m every B_j with j != m vanishes
    nz = np.sum(zero, axis=-1, keepdims=True)
    out = np.where((nz - zero) > 0, 0.0, out)
    return out


def pseudohyperbolic_logs(Z: PointSequence) -> np.ndarray:
    """Matrix of ``log |(z_j - z_k)/(z_j - conj z_k)|`` with zero diagonal."""
    d = Z.z[:, None] - Z.z[None, :]
    dbar = Z.z[:, None] - Z.z.conj()[None, :]
    out = _log_factor_modulus(d, dbar, Z.y[:, None], Z.y[None, :])
    np.fill_diagonal(out, 0.0)
    return out


def b_all(Z: PointSequence) -> np.ndarray:
    """``|B_j(z_j)|`` for every j."""
    return np.exp(np.sum(pseudohyperbolic_logs(Z), axis=1))


def b_j_at_zj(Z: PointSequence, j: int) -> float:
    if not 0 <= j < Z.n:
        raise BadIndex(f"j={j} out of range for n={Z.n}")
    return float(b_all(Z)[j])


def delta(Z: PointSequence) -> float:
    """Carleson's separation constant ``min_j |B_j(z_j)|``."""
    return float(np.min(b_all(Z)))


def blaschke_log_derivative(Z: PointSequence, z) -> complex:
    """``B'(z)/B(z)``; independent of the sign convention."""
    z = np.asarray(z, dtype=complex)
    if np.any(z[..., None] == Z.z):
        raise ZeroHit("z is a zero of B; use derivative_at_zero")
    if np.any(z[..., None] == Z.z.conj()):
        raise PoleHit("evaluation point equals the reflection of a zero")
    out = np.sum(1.0 / (z[..., None] - Z.z) - 1.0 / (z[..., None] - Z.z.conj()), axis=-1)
    return complex(out) if out.ndim == 0 else out


def blaschke_derivative(Z: PointSequence, z, sign: SignConvention = SignConvention.PLAIN):
    """``B'(z)`` away from the zeros."""
    return blaschke_eval(Z, z, sign=sign) * blaschke_log_derivative(Z, z)


def derivative_at_zero(Z: PointSequence, j: int, sign: SignConvention = SignConvention.PLAIN) -> complex:
    """``B'(z_j) = s_j B_j(z_j) / (z_j - conj z_j)``."""
    if not 0 <= j < Z.n:
        raise BadIndex(f"j={j} out of range for n={Z.n}")
    s = Z.signs(sign)[j]
    return s * blaschke_eval(Z, Z.z[j], exclude=j, sign=sign) / (2j * Z.y[j])
