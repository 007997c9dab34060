"""Outer functions from a prescribed boundary modulus.

The outer function with boundary modulus ``m`` is ``exp(Q(z))`` where ``Q`` is
the analytic completion of the Poisson integral of ``log m`` (imaginary part
zero at ``i``).  ``psi`` is the outer function with modulus ``t / arctan t``,
carrying an explicit prefactor ``i``; ``g0`` is the extremal weight built from it.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .numerics import RealLineFunction, integrate_real_line, poisson_completion, poisson_completion_with_error


@dataclass(frozen=True)
class BoundaryModulus:
    log_modulus: RealLineFunction
    even: bool = False


def outer_eval(m: BoundaryModulus, z, abs_tol: float = 1e-10):
    """``exp(Q(z))`` with ``Re Q`` the Poisson integral of ``log m`` and ``Im Q(i) = 0``."""
    return np.exp(poisson_completion(m.log_modulus, z, abs_tol))


def outer_eval_with_error(m: BoundaryModulus, z) -> tuple:
    """Outer function value and the scaled quadrature error estimate of its exponent."""
    q, err = poisson_completion_with_error(m.log_modulus, z)
    return np.exp(q), err


_TAILS = ("inverse_square", "constant")


def tabulated_log_modulus(t, modulus, tail: str = "inverse_square") -> RealLineFunction:
    """Piecewise-linear ``log|g|`` through a table, extended beyond its ends.

    ``tail="inverse_square"`` continues the modulus as ``C/t^2`` (so it stays
    Poisson-integrable); ``"constant"`` holds the end values.  Table abscissae
    become quadrature breakpoints.
    """
    t = np.asarray(t, dtype=float)
    m = np.asarray(modulus, dtype=float)
    if t.ndim != 1 or t.size < 2 or t.shape != m.shape:
        raise ValueError("modulus table needs matching 1-d arrays of length >= 2")
    if not np.all(np.diff(t) > 0):
        raise ValueError("table abscissae must be strictly increasing")
    if not (np.all(np.isfinite(m)) and np.all(m > 0)):
        raise ValueError("tabulated modulus must be finite and positive")
    if tail not in _TAILS:
        raise ValueError(f"tail must be one of {_TAILS}")
    if tail == "inverse_square" and (t[0] >= 0 or t[-1] <= 0):
        raise ValueError("an inverse-square tail needs a table spanning t = 0")
    logm = np.log(m)

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        out = np.interp(x, t, logm)
        if tail == "inverse_square":
            with np.errstate(divide="ignore"):
                lo, hi = x < t[0], x > t[-1]
                out = np.where(lo, logm[0] + 2.0 * np.log(np.abs(t[0] / np.where(lo, x, t[0]))), out)
                out = np.where(hi, logm[-1] + 2.0 * np.log(np.abs(t[-1] / np.where(hi, x, t[-1]))), out)
        return out

    span = float(np.max(np.abs(t)))
    even = bool(np.allclose(t, -t[::-1], rtol=0, atol=1e-12 * span)
                and np.allclose(logm, logm[::-1], rtol=0, atol=1e-12 * max(1.0, float(np.max(np.abs(logm))))))
    return RealLineFunction(evaluate, "log_growth", tuple(float(v) for v in t), even)


def tabulated_modulus(t, modulus, tail: str = "inverse_square") -> RealLineFunction:
    """The modulus itself (not its log) from :func:`tabulated_log_modulus`."""
    logm = tabulated_log_modulus(t, modulus, tail)
    decay = "poisson_weighted" if tail == "inverse_square" else "log_growth"
    return RealLineFunction(lambda x: np.exp(logm(x)), decay, logm.singular_points, logm.even)


def log_t_over_arctan(t):
    """``log(t / arctan t)`` with the removable singularity at 0 filled in."""
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    small = np.abs(t) < 1e-4
    ts = t[small]
    out[small] = ts * ts / 3.0 - 13.0 * ts ** 4 / 90.0
    tl = t[~small]
    out[~small] = np.log(tl / np.arctan(tl))
    return out


def t_over_arctan(t):
    return np.exp(log_t_over_arctan(t))


PSI_MODULUS = BoundaryModulus(RealLineFunction(log_t_over_arctan, "log_growth", even=True), even=True)


def psi(z, abs_tol: float = 1e-10):
    """The outer function with ``|psi(t)| = t / arctan t``, times ``i``."""
    return 1j * outer_eval(PSI_MODULUS, z, abs_tol)


@functools.cache
def psi_at_i() -> complex:
    return complex(psi(1j))


def g0_eval(z, abs_tol: float = 1e-10):
    """``g0(z) = (2i/(z+i))^2 psi(z)/psi(i)``; ``g0(i) = 1``."""
    z = np.asarray(z, dtype=complex)
    out = (2j / (z + 1j)) ** 2 * psi(z, abs_tol) / psi_at_i()
    return complex(out) if out.ndim == 0 else out


def g0_boundary_modulus(t):
    """``|g0(t)| = 4/(1+t^2) * (t/arctan t) / |psi(i)|`` on the real line."""
    t = np.asarray(t, dtype=float)
    return 4.0 / (1.0 + t * t) * t_over_arctan(t) / abs(psi_at_i())


def arctan_weight(t):
    """The weight ``arctan(t)/t`` (equal to 1 at t = 0)."""
    return np.exp(-log_t_over_arctan(t))


def weighted_integral(boundary_modulus, abs_tol: float = 1e-10) -> float:
    """``int |g(t)| arctan(t)/t dt`` for a boundary modulus ``t -> |g(t)|``."""
    f = RealLineFunction(lambda t: boundary_modulus(t) * arctan_weight(t))
    return integrate_real_line(f, abs_tol)


@dataclass
class ExtremalCheck:
    candidate: float
    rivals: dict = field(default_factory=dict)
    tol: float = 1e-9

    @property
    def minimal(self) -> bool:
        return all(self.candidate <= v + self.tol for v in self.rivals.values())


def weighted_hardy_extremal_check(candidate=g0_boundary_modulus, rivals=None, tol: float = 1e-9) -> ExtremalCheck:
    """Compare ``int |g| arctan(t)/t dt`` for a candidate against rival weights.

    All boundary moduli must come from functions normalised by ``g(i) = 1``.
    """
    if rivals is None:
        rivals = {"standard": lambda t: 4.0 / (1.0 + np.asarray(t, float) ** 2)}
    report = ExtremalCheck(weighted_integral(candidate), tol=tol)
    for name, r in rivals.items():
        report.rivals[name] = weighted_integral(r)
    return report
