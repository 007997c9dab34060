"""Shared numerical kernels: real-line quadrature, Poisson/conjugate-Poisson
integrals over the upper half-plane, and Hermitian PSD tests.

All routines are deterministic.  Real-line integrals use the substitution
``t = tan(theta)`` so that Poisson-weighted integrands become proper integrals
over ``(-pi/2, pi/2)``.  Half-plane integrals use the substitution
``t = x + y T`` centred at the evaluation point ``z = x + iy``, under which the
analytic completion kernel becomes ``dT / (pi (1 + iT))``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import NonConvergent, NotHermitian

DECAY_CLASSES = ("poisson_weighted", "log_growth", "compact_support")


@dataclass(frozen=True)
class RealLineFunction:
    """A real function on the line with quadrature hints.

    ``evaluator`` must accept and return numpy arrays.  ``singular_points`` are
    abscissae where the integrand is non-smooth (integrable singularities,
    support edges); they become breakpoints for every quadrature.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    decay_class: str = "poisson_weighted"
    singular_points: tuple[float, ...] = ()
    even: bool = False

    def __post_init__(self):
        if self.decay_class not in DECAY_CLASSES:
            raise ValueError(f"unknown decay class {self.decay_class!r}")

    def __call__(self, t):
        return np.asarray(self.evaluator(np.asarray(t, dtype=float)), dtype=float)


def integrate_real_line(f: RealLineFunction, abs_tol: float = 1e-10, limit: int = 500) -> float:
    """Integrate ``f`` over the whole real line.

    Raises
    ------
    NonConvergent
        If the adaptive refinement budget runs out before ``abs_tol``.
    """
    if abs_tol <= 0:
        raise ValueError("abs_tol must be positive")

    def integrand(theta):
        t = np.tan(theta)
        return float(f(np.array([t]))[0]) / np.cos(theta) ** 2

    pts = sorted({float(np.arctan(p)) for p in f.singular_points} | {0.0})
    pts = [p for p in pts if -np.pi / 2 < p < np.pi / 2]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, err, info, *rest = integrate.quad(
            integrand, -np.pi / 2, np.pi / 2, points=pts or None,
            epsabs=abs_tol, epsrel=0.0, limit=limit, full_output=1)
    if not np.isfinite(value) or err > abs_tol:
        raise NonConvergent(f"real-line quadrature: error estimate {err:.3g} > {abs_tol:.3g}")
    return float(value)


# Graded panel rule for the half-plane integrals, in the variable
# T = (t - x)/y, where the completion kernel is dT / (pi (1 + iT)).  Kernel
# breakpoints grade geometrically towards T = +-inf (the boundary point at
# infinity as seen from z); feature breakpoints are the images of t in
# {0, +-4^k}, which resolve the scale-one structure of the boundary data near
# the origin.  The omitted tails |T| > 2^60 carry Poisson measure below 1e-18.
_T_MAX = 2.0 ** 60
_KERNEL_T = np.concatenate([[0.0], 4.0 ** np.arange(-1, 31), -(4.0 ** np.arange(-1, 31))])
_FEATURE_T = np.concatenate([[0.0], 4.0 ** np.arange(-2, 31), -(4.0 ** np.arange(-2, 31))])
_GL_HI = np.polynomial.legendre.leggauss(24)
_GL_LO = np.polynomial.legendre.leggauss(12)
_CHUNK = 128


def _panel_breaks(x, y, feature_t):
    feat = np.clip((feature_t[None, :] - x[:, None]) / y[:, None], -_T_MAX, _T_MAX)
    inner = np.concatenate([np.broadcast_to(_KERNEL_T, (x.size, _KERNEL_T.size)), feat], axis=1)
    inner.sort(axis=1)
    ends = np.full((x.size, 1), _T_MAX)
    return np.concatenate([-ends, inner, ends], axis=1)


def _panel_sums(f, x, y, breaks, nodes, weights, kernel):
    a, b = breaks[:, :-1], breaks[:, 1:]
    half, mid = 0.5 * (b - a), 0.5 * (b + a)
    T = mid[..., None] + half[..., None] * nodes
    t = x[:, None, None] + y[:, None, None] * T
    return np.sum(f(t) * kernel(T) * (half[..., None] * weights), axis=(1, 2)) / np.pi


def _centred_completion(f, x, y, feature_t):
    breaks = _panel_breaks(x, y, feature_t)
    kernel = lambda T: 1.0 / (1.0 + 1j * T)
    hi = _panel_sums(f, x, y, breaks, *_GL_HI, kernel)
    lo = _panel_sums(f, x, y, breaks, *_GL_LO, kernel)
    return hi, np.abs(hi - lo)


def _normalising_constant(f, feature_t):
    """``(1/pi) int f(t) t/(1+t^2) dt``, the conjugate-kernel shift fixing V(i) = 0."""
    if f.even:
        return 0.0, 0.0
    x, y = np.zeros(1), np.ones(1)
    breaks = _panel_breaks(x, y, feature_t)
    kernel = lambda T: T / (1.0 + T * T)
    hi = _panel_sums(f, x, y, breaks, *_GL_HI, kernel)
    lo = _panel_sums(f, x, y, breaks, *_GL_LO, kernel)
    return float(hi[0]), float(abs(hi[0] - lo[0]))


def poisson_completion_with_error(f: RealLineFunction, z):
    """Like :func:`poisson_completion`, also returning the worst scaled error estimate.

    The estimate is ``|hi - lo| / max(1, |value|)`` for the 24- and 12-point
    Gauss-Legendre panel sums, maximised over the evaluation points.
    """
    z = np.asarray(z, dtype=complex)
    shape = z.shape
    zf = z.ravel()
    if np.any(zf.imag <= 0) or not np.all(np.isfinite(zf)):
        raise ValueError("evaluation points must lie strictly inside the upper half-plane")
    feature_t = np.concatenate([_FEATURE_T, np.asarray(f.singular_points, dtype=float)])
    shift, worst = _normalising_constant(f, feature_t)
    worst /= max(1.0, abs(shift))
    out = np.empty(zf.shape, dtype=complex)
    for start in range(0, zf.size, _CHUNK):
        zc = zf[start:start + _CHUNK]
        val, err = _centred_completion(f, zc.real, zc.imag, feature_t)
        if not np.all(np.isfinite(val)):
            raise NonConvergent("non-finite boundary data in Poisson integral")
        val = val + 1j * shift
        worst = max(worst, float(np.max(err / np.maximum(1.0, np.abs(val)))))
        out[start:start + _CHUNK] = val
    return (out.reshape(shape) if shape else complex(out[0])), worst


def poisson_completion(f: RealLineFunction, z, abs_tol: float = 1e-9):
    """Analytic completion ``U + iV`` of the Poisson integral of ``f``.

    Computes ``(i/pi) * int [1/(z - t) + t/(1 + t^2)] f(t) dt``.  The real part
    is the Poisson integral of ``f``; the imaginary part is the conjugate
    Poisson integral, normalised so that it vanishes at ``z = i``.

    Raises
    ------
    NonConvergent
        If the two-order error estimate exceeds ``abs_tol * max(1, |value|)``
        at any point.
    """
    value, worst = poisson_completion_with_error(f, z)
    if worst > abs_tol:
        raise NonConvergent(f"Poisson quadrature: scaled error estimate {worst:.3g} > {abs_tol:.3g}")
    return value


def poisson_integral(f: RealLineFunction, z, abs_tol: float = 1e-9):
    """Poisson integral (harmonic extension) of ``f`` at ``z``."""
    return np.real(poisson_completion(f, z, abs_tol))


def conjugate_kernel_integral(f: RealLineFunction, z, abs_tol: float = 1e-9):
    """Harmonic conjugate of the Poisson integral of ``f``, zero at ``z = i``."""
    return np.imag(poisson_completion(f, z, abs_tol))


def _check_hermitian(M: np.ndarray, rtol: float = 1e-12) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {M.shape}")
    scale = max(1.0, float(np.max(np.abs(M)))) if M.size else 1.0
    if np.max(np.abs(M - M.conj().T), initial=0.0) > rtol * scale:
        raise NotHermitian("matrix is not Hermitian to 1e-12 relative")
    return M


def min_eigen_hermitian(M) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    M = _check_hermitian(M)
    return float(np.linalg.eigvalsh(M)[0])


def is_psd(M, rel_tol: float = 1e-10) -> bool:
    """``True`` iff ``lambda_min(M) >= -rel_tol * max|diag(M)|``."""
    M = _check_hermitian(M)
    scale = float(np.max(np.abs(np.diag(M)))) if M.size else 0.0
    return min_eigen_hermitian(M) >= -rel_tol * scale
