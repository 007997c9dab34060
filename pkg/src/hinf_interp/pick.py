"""Nevanlinna-Pick side: Pick matrices, minimal interpolation norms and
sampled lower estimates of the constant of interpolation.

The Hermitian Pick matrix for data ``w`` at norm level ``rho`` is

    Q_jk = (rho^2 - w_j conj(w_k)) / (-i (z_j - conj z_k)),

and ``w`` admits an interpolant with sup-norm at most ``rho`` iff ``Q >= 0``.
Feasibility is monotone in ``rho`` since the ``rho^2`` part is a positive
multiple of the (PSD) Szego Gram matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.optimize

from .characteristics import c_H, c_HJ, delta_bound
from .errors import BracketFailure
from .halfplane import PointSequence, delta
from .numerics import is_psd, min_eigen_hermitian

E = math.e
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _as_targets(Z: PointSequence, w) -> np.ndarray:
    w = np.asarray(w, dtype=complex).ravel()
    if w.size != Z.n:
        raise ValueError(f"expected {Z.n} target values, got {w.size}")
    if not np.all(np.isfinite(w)):
        raise ValueError("target values must be finite")
    return w


def szego_gram(Z: PointSequence, scaled: bool = False) -> np.ndarray:
    """``1/(-i (z_j - conj z_k))``; with ``scaled`` the congruence by ``sqrt(2 y)``."""
    K = 1.0 / (-1j * (Z.z[:, None] - Z.z.conj()[None, :]))
    if scaled:
        d = np.sqrt(2.0 * Z.y)
        K = d[:, None] * K * d[None, :]
    return K


def pick_matrix(Z: PointSequence, w, rho: float, scaled: bool = False) -> np.ndarray:
    w = _as_targets(Z, w)
    K = szego_gram(Z, scaled)
    Q = (rho * rho - w[:, None] * w.conj()[None, :]) * K
    # exact Hermitian symmetry and a real diagonal
    return 0.5 * (Q + Q.conj().T)


@dataclass
class PickResult:
    rho_star: float
    iterations: int
    certificate: tuple[float, float]  # lambda_min below and at rho_star


def minimal_norm(Z: PointSequence, w, tol: float = 1e-8, psd_tol: float = 1e-10,
                 max_iter: int = 200) -> PickResult:
    """Smallest ``rho`` with a PSD Pick matrix, by bisection.

    The bracket is ``[|w|_inf, |w|_inf * min(e c_HJ, delta_bound)]``; the upper end
    is feasible by the proven upper bounds on ``M(Z)``.
    """
    w = _as_targets(Z, w)
    lo = float(np.max(np.abs(w)))

    def feasible(rho):
        return is_psd(pick_matrix(Z, w, rho, scaled=True), psd_tol)

    def lam(rho):
        return min_eigen_hermitian(pick_matrix(Z, w, rho, scaled=True))

    if lo == 0.0 or feasible(lo):
        return PickResult(lo, 0, (lam(lo), lam(lo)))
    hi = lo * min(E * c_HJ(Z)[0], delta_bound(delta(Z)))
    if not feasible(hi):
        raise BracketFailure(f"Pick matrix not PSD at the proven upper bound rho = {hi!r}")
    it = 0
    while hi - lo > tol * hi and it < max_iter:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
        it += 1
    return PickResult(hi, it, (lam(lo), lam(hi)))


class _PencilNorm:
    """``rho*(w)`` as ``sqrt(lambda_max)`` of the pencil ``(W K W*, K)``.

    Used to rank candidate data quickly; reported values come from
    :func:`minimal_norm`.
    """

    def __init__(self, Z: PointSequence):
        self.K = szego_gram(Z, scaled=True)
        self.K = 0.5 * (self.K + self.K.conj().T)
        self.L = scipy.linalg.cholesky(self.K, lower=True)

    def _reduced(self, w: np.ndarray) -> np.ndarray:
        A = w[:, None] * self.K * w.conj()[None, :]
        X = scipy.linalg.solve_triangular(self.L, A, lower=True)
        X = scipy.linalg.solve_triangular(self.L, X.conj().T, lower=True)
        return 0.5 * (X + X.conj().T)

    def __call__(self, w: np.ndarray) -> float:
        lam = np.linalg.eigvalsh(self._reduced(w))[-1]
        return math.sqrt(max(lam, 0.0))

    def phase_objective(self, phases: np.ndarray) -> tuple[float, np.ndarray]:
        """``-rho*^2`` for ``w = exp(i (0, phases))`` and its gradient.

        With ``x`` the K-normalised top generalised eigenvector and
        ``u = w * conj(x)``, ``rho*^2 = u^T K conj(u)`` and
        ``d rho*^2 / d theta_j = -2 Im(u_j (K conj u)_j)``.
        """
        theta = np.concatenate([[0.0], phases])
        w = np.exp(1j * theta)
        lam, vec = np.linalg.eigh(self._reduced(w))
        x = scipy.linalg.solve_triangular(self.L.conj().T, vec[:, -1], lower=False)
        u = w * x.conj()
        grad_rho2 = -2.0 * np.imag(u * (self.K @ u.conj()))
        return -float(lam[-1]), -grad_rho2[1:]


def _golden_max(f, a: float, b: float, iters: int = 40) -> tuple[float, float]:
    c, d = b - _GOLDEN * (b - a), a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


@dataclass
class MEstimate:
    m_hat: float
    argmax_w: np.ndarray
    seed: int
    samples: int


def _coordinate_ascent(norm: _PencilNorm, theta: np.ndarray, steps: int, scan: int) -> tuple[np.ndarray, float]:
    best = theta.copy()
    best_val = norm(np.exp(1j * best))
    grid = np.linspace(-np.pi, np.pi, scan, endpoint=False)
    step = grid[1] - grid[0]
    for _ in range(steps):
        for j in range(1, best.size):
            def obj(t, j=j):
                th = best.copy()
                th[j] = t
                return norm(np.exp(1j * th))
            coarse = [obj(best[j] + g) for g in grid]
            i = int(np.argmax(coarse))
            t, v = _golden_max(obj, best[j] + grid[i] - step, best[j] + grid[i] + step)
            if v > best_val:
                best[j], best_val = t, v
    return best, best_val


def _gradient_polish(norm: _PencilNorm, theta: np.ndarray) -> tuple[np.ndarray, float]:
    res = scipy.optimize.minimize(norm.phase_objective, theta[1:], jac=True, method="L-BFGS-B",
                                  options={"maxiter": 500, "gtol": 1e-12, "ftol": 1e-15})
    th = np.concatenate([[0.0], res.x])
    return th, norm(np.exp(1j * th))


def estimate_M(Z: PointSequence, samples: int = 200, seed: int = 0, ascent_steps: int = 3,
               scan: int = 16, starts: int = 4) -> MEstimate:
    """Lower estimate of ``M_n(Z)``: max of ``rho*(w)`` over unimodular ``w``.

    Phases are drawn uniformly with the given seed.  The ``starts`` best draws
    are refined by coordinate-wise phase ascent (coarse scan, then
    golden-section search) followed by a gradient polish of the top pencil
    eigenvalue, and the winner is re-solved with :func:`minimal_norm`.
    Restricting to unimodular data loses nothing: ``rho*`` is a norm of the
    data, so its maximum over the polydisc sits on the torus.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = Z.n
    if n == 1:
        return MEstimate(minimal_norm(Z, [1.0]).rho_star, np.ones(1, complex), seed, samples)
    rng = np.random.default_rng(seed)
    norm = _PencilNorm(Z)
    thetas = rng.uniform(0.0, 2 * np.pi, size=(samples, n))
    thetas[:, 0] = 0.0  # common phase is irrelevant
    vals = np.array([norm(np.exp(1j * th)) for th in thetas])
    best, best_val = thetas[int(np.argmax(vals))].copy(), float(np.max(vals))
    for idx in np.argsort(-vals, kind="stable")[:max(1, starts)]:
        th, v = _coordinate_ascent(norm, thetas[idx], ascent_steps, scan)
        th2, v2 = _gradient_polish(norm, th)
        if v2 > v:
            th, v = th2, v2
        if v > best_val:
            best, best_val = th, v
    w = np.exp(1j * best)
    return MEstimate(minimal_norm(Z, w).rho_star, w, seed, samples)


def duality_lower_bound(Z: PointSequence) -> float:
    """``M(Z) >= c_H(Z)``, from the duality test functions ``y_k/(z - conj z_k)^2``."""
    return c_H(Z)[0]
