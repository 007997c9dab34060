"""The characteristics c_H, c_HJ, c_J(Z, g) and the bounds they give for M(Z).

A weight ``g`` is analytic in the upper half-plane with ``g(i) = 1``; ``u`` is the
least harmonic majorant of ``|g|`` (the Poisson integral of the boundary
modulus) and ``G = u + iv`` its analytic completion.  For a sequence ``Z`` the
shifted copies are ``g_j(z) = g((z - x_j)/y_j)`` and

    U_k(z) = sum_{y_j <= y_k} u_j(z) / |B_j(z_j)|,    c_J(Z, g) = max_k U_k(z_k).

Every sum over ``y_j <= y_k`` runs in the stable height order of ``Z`` and
includes ties and ``j = k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import outer
from .halfplane import PointSequence, b_all, delta
from .numerics import RealLineFunction, poisson_completion

E = math.e


@dataclass(frozen=True, eq=False)
class WeightFamily:
    """An admissible weight ``g`` together with its harmonic majorant.

    ``boundary`` gives ``|g(t)|`` on the real line.  ``g`` evaluates the weight in
    the half-plane.  ``completion`` (optional) is a closed form of ``u + iv``;
    when absent it is computed by Poisson and conjugate-Poisson quadrature.
    """

    name: str
    variant: str
    boundary: RealLineFunction
    g: Callable
    completion_closed: Callable | None = None
    abs_tol: float = 1e-9
    normalization: complex = field(init=False)

    def __post_init__(self):
        if self.variant not in ("standard_jones", "outer_extremal", "tabulated"):
            raise ValueError(f"unknown weight variant {self.variant!r}")
        gi = complex(self.g(np.array([1j]))[0])
        if abs(gi - 1.0) > 1e-9:
            raise ValueError(f"weight must satisfy g(i) = 1, got {gi}")
        ui = float(np.real(self.completion(np.array([1j]))[0]))
        if not np.isfinite(ui):
            raise ValueError("|g| has no harmonic majorant (Poisson integral at i diverges)")
        object.__setattr__(self, "normalization", gi)

    def completion(self, z) -> np.ndarray:
        """Analytic completion ``u + iv`` with ``v(i) = 0``."""
        z = np.asarray(z, dtype=complex)
        if self.completion_closed is not None:
            G = np.asarray(self.completion_closed(z), dtype=complex)
            return G - 1j * np.imag(self.completion_closed(np.array(1j)))
        return poisson_completion(self.boundary, z, self.abs_tol)

    def u(self, z) -> np.ndarray:
        return np.real(self.completion(z))


def standard_jones() -> WeightFamily:
    """``g(z) = -4/(z+i)^2`` with ``u(z) = 4(y+1)/|z+i|^2 = Re(4i/(z+i))``."""
    return WeightFamily(
        name="standard",
        variant="standard_jones",
        boundary=RealLineFunction(lambda t: 4.0 / (1.0 + t * t), even=True),
        g=lambda z: -4.0 / (np.asarray(z) + 1j) ** 2,
        completion_closed=lambda z: 4j / (np.asarray(z) + 1j),
    )


def outer_extremal() -> WeightFamily:
    """The extremal weight ``g0 = (2i/(z+i))^2 psi(z)/psi(i)``."""
    return WeightFamily(
        name="outer",
        variant="outer_extremal",
        boundary=RealLineFunction(outer.g0_boundary_modulus, even=True),
        g=outer.g0_eval,
        abs_tol=1e-9,
    )


def tabulated(boundary: RealLineFunction, g: Callable | None = None, name: str = "tabulated",
              abs_tol: float = 1e-9) -> WeightFamily:
    """A user weight given by its boundary modulus.

    If ``g`` is omitted the weight is taken to be the outer function with that
    modulus, normalised by ``g(i) = 1``.
    """
    if g is None:
        logm = RealLineFunction(lambda t: np.log(boundary(t)), "log_growth",
                                boundary.singular_points, boundary.even)
        q_i = float(np.real(poisson_completion(logm, 1j, abs_tol)))

        def g(z):
            return np.exp(poisson_completion(logm, np.asarray(z, dtype=complex), abs_tol) - q_i)
    return WeightFamily(name=name, variant="tabulated", boundary=boundary, g=g, abs_tol=abs_tol)


def constant_one() -> WeightFamily:
    """``g = 1``; its least harmonic majorant is ``u = 1``."""
    return WeightFamily(
        name="one",
        variant="tabulated",
        boundary=RealLineFunction(lambda t: np.ones_like(t), "compact_support", even=True),
        g=lambda z: np.ones_like(np.asarray(z, dtype=complex)),
        completion_closed=lambda z: np.ones_like(np.asarray(z, dtype=complex)),
    )


def harmonic_majorant_u(g: WeightFamily, z):
    out = g.u(z)
    return float(out) if np.ndim(out) == 0 else out


def _scaled_points(Z: PointSequence, z: np.ndarray) -> np.ndarray:
    return (z[..., None] - Z.x) / Z.y


def height_cumsum(Z: PointSequence, terms: np.ndarray) -> np.ndarray:
    """``S[..., k] = sum_{j: y_j <= y_k} terms[..., j]`` in height order."""
    order = Z.height_order
    ys = Z.y[order]
    cs = np.cumsum(terms[..., order], axis=-1)
    # the last sorted position with height <= y_k closes each tie group
    last = np.searchsorted(ys, ys, side="right") - 1
    out = np.empty_like(cs)
    out[..., order] = cs[..., last]
    return out


def completion_sums(Z: PointSequence, g: WeightFamily, z) -> np.ndarray:
    """``G_k(z)`` for every k, shape ``z.shape + (n,)``."""
    z = np.asarray(z, dtype=complex)
    terms = g.completion(_scaled_points(Z, z)) / b_all(Z)
    return height_cumsum(Z, terms)


def big_U(Z: PointSequence, g: WeightFamily, k: int, z):
    out = np.real(completion_sums(Z, g, z))[..., k]
    return float(out) if np.ndim(out) == 0 else out


def _sorted_argmax(Z: PointSequence, values: np.ndarray) -> tuple[float, int]:
    order = Z.height_order
    pos = int(np.argmax(values[order]))
    return float(values[order][pos]), int(order[pos])


def havin_sums(Z: PointSequence) -> np.ndarray:
    """Row sums ``sum_j 4 y_k y_j / |z_k - conj z_j|^2 / |B_j(z_j)|``."""
    order = Z.height_order
    dx = Z.x[:, None] - Z.x[None, :]
    sy = Z.y[:, None] + Z.y[None, :]
    P = 4.0 * Z.y[:, None] * Z.y[None, :] / (dx * dx + sy * sy) / b_all(Z)[None, :]
    return np.sum(P[:, order], axis=1)


def c_H(Z: PointSequence) -> tuple[float, int]:
    """Havin's characteristic and the index attaining it."""
    return _sorted_argmax(Z, havin_sums(Z))


def havin_jones_sums(Z: PointSequence) -> np.ndarray:
    order = Z.height_order
    dx = Z.x[:, None] - Z.x[None, :]
    sy = Z.y[:, None] + Z.y[None, :]
    # row n, column j: 4 y_j (y_j + y_n) / |z_j - conj z_n|^2, kept for y_j <= y_n
    Q = 4.0 * Z.y[None, :] * sy / (dx * dx + sy * sy) / b_all(Z)[None, :]
    Q = np.where(Z.y[None, :] <= Z.y[:, None], Q, 0.0)
    return np.sum(Q[:, order], axis=1)


def c_HJ(Z: PointSequence) -> tuple[float, int]:
    return _sorted_argmax(Z, havin_jones_sums(Z))


def c_J_given_g(Z: PointSequence, g: WeightFamily) -> tuple[float, int]:
    """``c_J(Z, g) = max_j U_j(z_j)`` and its argmax."""
    terms = g.u(_scaled_points(Z, Z.z))
    U = height_cumsum(Z, terms / b_all(Z))
    return _sorted_argmax(Z, np.diagonal(U).copy())


def c_J_estimate(Z: PointSequence, families) -> tuple[float, str]:
    """Minimum of ``c_J(Z, g)`` over the supplied weights (an upper bound for c_J(Z))."""
    families = list(families)
    if not families:
        raise ValueError("need at least one weight family")
    best = min(((c_J_given_g(Z, g)[0], g.name) for g in families), key=lambda p: p[0])
    return best


def delta_bound(d: float) -> float:
    """``(2e + 4e log(1/delta)) / delta``."""
    return (2 * E + 4 * E * math.log(1.0 / d)) / d


@dataclass
class CharacteristicsReport:
    delta: float
    c_H: float
    c_HJ: float
    c_J_by_family: dict
    m_lower: float
    m_upper_candidates: dict
    argmax: dict

    def violations(self, rtol: float = 1e-12) -> list[str]:
        out = []
        if self.c_HJ > 2 * self.c_H * (1 + rtol):
            out.append(f"c_HJ <= 2 c_H violated: {self.c_HJ!r} > 2*{self.c_H!r}")
        for name, v in self.m_upper_candidates.items():
            if v < self.m_lower * (1 - 1e-9):
                out.append(f"c_H <= {name} violated: {self.m_lower!r} > {v!r}")
        return out

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "c_H": self.c_H,
            "c_HJ": self.c_HJ,
            "c_J_by_family": dict(self.c_J_by_family),
            "m_lower": self.m_lower,
            "m_upper_candidates": dict(self.m_upper_candidates),
            "argmax": dict(self.argmax),
        }


def m_bounds(Z: PointSequence, families=None) -> CharacteristicsReport:
    """Assemble the two-sided bounds ``c_H <= M(Z) <= e c_J(Z, g)`` and friends."""
    if families is None:
        families = [standard_jones(), outer_extremal()]
    d = delta(Z)
    ch, kh = c_H(Z)
    chj, khj = c_HJ(Z)
    cj, argmax = {}, {"c_H": kh, "c_HJ": khj}
    for g in families:
        cj[g.name], argmax[f"c_J[{g.name}]"] = c_J_given_g(Z, g)
    upper = {f"e*c_J[{name}]": E * v for name, v in cj.items()}
    upper["e*c_HJ"] = E * chj
    upper["2e*c_H"] = 2 * E * ch
    upper["delta_bound"] = delta_bound(d)
    return CharacteristicsReport(d, ch, chj, cj, ch, upper, argmax)
