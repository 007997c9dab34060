"""The geometric sequence Z_gamma = (i e^{k/gamma}) and its sharpness ratios.

The Blaschke product of the full sequence (with the factor negated for
``k > 0``) satisfies ``B(e^{1/gamma} z) = -B(z)``, is real on the imaginary
axis, and is compared against

    F(z) = 2 exp(-pi^2 gamma / 2) sin(pi gamma log(-i z)),

which has the same zeros.  Every quantity here is computed on the truncation
``k = -K..K``; the tail indicator ``tau`` bounds what the omitted factors
contribute to ``log|B(i)|``.

Ratios reported by :func:`sharpness_report` are normalised by the leading
asymptotics in ``gamma`` and tend to 1 only as ``gamma`` grows.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .characteristics import WeightFamily, c_HJ, c_J_given_g, outer_extremal, standard_jones
from .errors import BranchPoint, InvariantViolation, TruncationWarning
from .halfplane import PointSequence, SignConvention, blaschke_eval, derivative_at_zero
from .pick import minimal_norm

GN = SignConvention.GAMMA_NORMALIZED
MAX_K_OVER_GAMMA = 600.0
MAX_PICK_POINTS = 41
MAX_PICK_GAMMA = 1.2


def log_scale(gamma: float) -> float:
    """``pi^2 gamma / 2``, the exponent governing every Z_gamma asymptotic."""
    return math.pi ** 2 * gamma / 2.0


def tail_indicator(gamma: float, K: int) -> float:
    """``tau = sum_{|k| > K} -log|factor_k(i)| = 2 sum_{k > K} -log tanh(k / (2 gamma))``."""
    total = 0.0
    k = K + 1
    while True:
        term = -math.log(math.tanh(k / (2.0 * gamma)))
        total += term
        if term < 1e-18 * max(total, 1e-300) or term == 0.0:
            break
        k += 1
    return 2.0 * total


@dataclass(frozen=True)
class GammaConfig:
    gamma: float
    K: int

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError(f"gamma must be positive, got {self.gamma!r}")
        if int(self.K) != self.K or self.K < 1:
            raise ValueError(f"K must be an integer >= 1, got {self.K!r}")
        if self.K / self.gamma > MAX_K_OVER_GAMMA:
            raise OverflowError(f"K/gamma = {self.K / self.gamma:g} exceeds {MAX_K_OVER_GAMMA:g}")

    @property
    def n(self) -> int:
        return 2 * self.K + 1

    @property
    def tau(self) -> float:
        return tail_indicator(self.gamma, self.K)

    @property
    def truncation_flag(self) -> bool:
        return self.tau > 0.01 * log_scale(self.gamma)


def _warn_truncation(cfg: GammaConfig) -> None:
    if cfg.truncation_flag:
        warnings.warn(f"truncation tail tau = {cfg.tau:.3g} exceeds 1% of pi^2 gamma/2 "
                      f"(gamma={cfg.gamma}, K={cfg.K})", TruncationWarning, stacklevel=3)


def _sequence(gamma: float, kmin: int, kmax: int) -> PointSequence:
    k = np.arange(kmin, kmax + 1)
    return PointSequence(1j * np.exp(k / gamma), tuple(int(v) for v in k))


def generate_Zgamma(cfg: GammaConfig) -> tuple[PointSequence, SignConvention]:
    """Points ``i e^{k/gamma}``, ``k = -K..K``, in increasing height; labels are the k."""
    return _sequence(cfg.gamma, -cfg.K, cfg.K), GN


def center_index(Z: PointSequence) -> int:
    return int(list(Z.labels).index(0))


def F_eval(gamma: float, z):
    """``2 exp(-pi^2 gamma/2) sin(pi gamma log(-i z))`` on the principal branch."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise BranchPoint("F is not defined at z = 0")
    out = 2.0 * math.exp(-log_scale(gamma)) * np.sin(math.pi * gamma * np.log(-1j * z))
    return complex(out) if out.ndim == 0 else out


def _tail_extent(gamma: float, z: np.ndarray, tol: float = 1e-14) -> int:
    """Smallest k such that every factor with ``|label| > k`` is within ``tol`` of 1 at ``z``.

    For ``k > 0`` the signed factor is ``1 - 2 z/(z + i y_k) ~ 2|z|/y_k``; for
    ``k < 0`` it is ``1 - 2 i y_k/(z + i y_k) ~ 2 y_k/|z|``.
    """
    r = np.abs(z[np.abs(z) > 0])
    spread = max(float(np.max(r)), 1.0 / float(np.min(r))) if r.size else 1.0
    return int(math.ceil(gamma * math.log(2.0 * spread / tol))) + 1


def blaschke_infinite(gamma: float, z, tol: float = 1e-14):
    """The full product over ``k in Z``, with the tail appended until factors are ``tol``-close to 1."""
    z = np.asarray(z, dtype=complex)
    kext = _tail_extent(gamma, np.atleast_1d(z), tol)
    if kext / gamma > MAX_K_OVER_GAMMA:
        raise OverflowError("evaluation point too far from the unit scale for the tail product")
    return blaschke_eval(_sequence(gamma, -kext, kext), z, sign=GN)


def blaschke_truncated(cfg: GammaConfig, z):
    Z, sign = generate_Zgamma(cfg)
    return blaschke_eval(Z, z, sign=sign)


def peak_values(cfg: GammaConfig, m=None, tail_compensated: bool = False) -> np.ndarray:
    """``B(i e^{(m+1/2)/gamma}) e^{pi^2 gamma/2} / 2`` for the peak indices ``m``.

    The default ``m`` are the interior peaks ``-M..M-1`` with ``M = max(1, K//2)``.
    The values alternate in sign as ``(-1)^m``.
    """
    if m is None:
        M = max(1, cfg.K // 2)
        m = np.arange(-M, M)
    m = np.asarray(m, dtype=float)
    z = 1j * np.exp((m + 0.5) / cfg.gamma)
    B = blaschke_infinite(cfg.gamma, z) if tail_compensated else blaschke_truncated(cfg, z)
    return np.real(B) * math.exp(log_scale(cfg.gamma)) / 2.0


def peak_ratio(cfg: GammaConfig) -> float:
    return float(peak_values(cfg, [0])[0])


def bprime_at_i(cfg: GammaConfig) -> complex:
    Z, sign = generate_Zgamma(cfg)
    return derivative_at_zero(Z, center_index(Z), sign)


def bprime_ratio(cfg: GammaConfig) -> float:
    """``i B'(i) e^{pi^2 gamma/2} / (2 pi gamma)`` (real by symmetry)."""
    v = 1j * bprime_at_i(cfg) * math.exp(log_scale(cfg.gamma)) / (2 * math.pi * cfg.gamma)
    return float(v.real)


def fb_log_modulus_boundary(gamma: float, x) -> np.ndarray:
    """``log|F(x)|`` on the real line in closed form.

    With ``eps = exp(-pi^2 gamma)`` and ``s = pi gamma log|x|``,
    ``|F(x)|^2 = (1 - eps)^2 + 4 eps sin^2 s``.
    """
    x = np.asarray(x, dtype=float)
    eps = math.exp(-2.0 * log_scale(gamma))
    s = np.sin(math.pi * gamma * np.log(np.abs(x)))
    return 0.5 * np.log1p(-2.0 * eps + eps * eps + 4.0 * eps * s * s)


@dataclass
class FBStudy:
    fb_log_sup: float
    argmax_x: float
    symmetry_defect: float
    closed_form_defect: float
    tau: float
    samples: int


def fb_ratio_study(cfg: GammaConfig, sample_count: int = 4001) -> FBStudy:
    """Sampled ``sup |log(|F(x)|/|B(x)|)|`` over ``x`` in ``±[e^{-K/(2 gamma)}, e^{K/(2 gamma)}]``.

    ``B`` is the full product with the tail appended.  On the real line every
    factor is unimodular, so ``|B(x)| = 1`` up to roundoff and the ratio is
    governed by ``|F|``; the quadrature-free closed form of ``log|F|`` is used
    as an independent cross-check (``closed_form_defect``).
    """
    if sample_count < 2:
        raise ValueError("sample_count must be >= 2")
    half = cfg.K / (2.0 * cfg.gamma)
    r = np.exp(np.linspace(-half, half, sample_count))
    x = np.concatenate([r, -r])
    logF = np.log(np.abs(F_eval(cfg.gamma, x.astype(complex))))
    logB = np.log(np.abs(blaschke_infinite(cfg.gamma, x.astype(complex))))
    ratio = logF - logB
    i = int(np.argmax(np.abs(ratio)))
    n = r.size
    return FBStudy(
        fb_log_sup=float(np.abs(ratio[i])),
        argmax_x=float(x[i]),
        symmetry_defect=float(np.max(np.abs(ratio[:n] - ratio[n:]))),
        closed_form_defect=float(np.max(np.abs(logF - fb_log_modulus_boundary(cfg.gamma, x)))),
        tau=cfg.tau,
        samples=x.size,
    )


@dataclass
class AlternatingResult:
    rho_star: float
    candidate_norm: float
    rho_ratio: float
    candidate_ratio: float
    iterations: int


def alternating_data(Z: PointSequence) -> np.ndarray:
    return np.array([(-1.0) ** k for k in Z.labels])


def alternating_problem(cfg: GammaConfig, tol: float = 1e-8) -> AlternatingResult:
    """Minimal norm of the data ``(-1)^k`` against the explicit solution ``c B(e^{1/(2 gamma)} z)``.

    ``c = 1/|B(i e^{1/(2 gamma)})|`` for the full product, so the candidate has
    values exactly ``(-1)^k`` on all of Z_gamma and norm ``c``; it is feasible
    for every truncation, so ``rho_star <= c``.
    """
    if cfg.n > MAX_PICK_POINTS:
        raise ValueError(f"alternating problem limited to n <= {MAX_PICK_POINTS}, got {cfg.n}")
    _warn_truncation(cfg)
    Z, _ = generate_Zgamma(cfg)
    res = minimal_norm(Z, alternating_data(Z), tol=tol)
    cand = 1.0 / abs(complex(blaschke_infinite(cfg.gamma, 1j * math.exp(0.5 / cfg.gamma))))
    if res.rho_star > cand * (1 + 10 * tol):
        raise InvariantViolation(f"minimal norm {res.rho_star!r} exceeds the explicit solution's norm {cand!r}")
    scale = 2.0 * math.exp(-log_scale(cfg.gamma))
    return AlternatingResult(res.rho_star, cand, res.rho_star * scale, cand * scale, res.iterations)


@dataclass
class GammaAsymptoticsReport:
    gamma: float
    K: int
    n: int
    tau: float
    truncation_warning: bool
    peak_ratio: float
    bprime_ratio: float
    fb_log_sup: float
    fb_log_sup_scaled: float
    chj_ratio: float
    cj_ratio: float
    cj_standard_over_outer: float
    rho_star: float | None = None
    candidate_norm: float | None = None
    rho_ratio: float | None = None
    e_cj_over_rho: float | None = None
    e_chj_over_rho: float | None = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def sharpness_report(cfg: GammaConfig, outer: WeightFamily | None = None,
                     with_pick: bool | None = None, fb_samples: int = 4001) -> GammaAsymptoticsReport:
    """Assemble all Z_gamma ratios.

    ``with_pick`` defaults to running the alternating problem only when
    ``n <= 41`` and ``gamma <= 1.2``, the range where the scaled Pick matrices
    stay well conditioned.
    """
    _warn_truncation(cfg)
    Z, _ = generate_Zgamma(cfg)
    L = log_scale(cfg.gamma)
    if outer is None:
        outer = outer_extremal()
    if with_pick is None:
        with_pick = cfg.n <= MAX_PICK_POINTS and cfg.gamma <= MAX_PICK_GAMMA
    with ThreadPoolExecutor(max_workers=4) as pool:
        f_cj = pool.submit(c_J_given_g, Z, outer)
        f_fb = pool.submit(fb_ratio_study, cfg, fb_samples)
        f_alt = pool.submit(alternating_problem, cfg) if with_pick else None
        chj = c_HJ(Z)[0]
        cj_std = c_J_given_g(Z, standard_jones())[0]
        cj = f_cj.result()[0]
        fb = f_fb.result()
        alt = f_alt.result() if f_alt is not None else None
    notes = []
    if not with_pick:
        notes.append("alternating Pick problem skipped (n > 41 or gamma > 1.2)")
    rep = GammaAsymptoticsReport(
        gamma=cfg.gamma, K=cfg.K, n=cfg.n, tau=cfg.tau, truncation_warning=cfg.truncation_flag,
        peak_ratio=peak_ratio(cfg), bprime_ratio=bprime_ratio(cfg),
        fb_log_sup=fb.fb_log_sup, fb_log_sup_scaled=fb.fb_log_sup * math.exp(2 * L),
        chj_ratio=chj * math.pi / (math.log(2.0) * math.exp(L)),
        cj_ratio=cj * 2 * math.e * math.exp(-L),
        cj_standard_over_outer=cj_std / cj,
        notes=notes,
    )
    if alt is not None:
        rep.rho_star = alt.rho_star
        rep.candidate_norm = alt.candidate_norm
        rep.rho_ratio = alt.rho_ratio
        rep.e_cj_over_rho = math.e * cj / alt.rho_star
        rep.e_chj_over_rho = math.e * chj / alt.rho_star
    return rep
