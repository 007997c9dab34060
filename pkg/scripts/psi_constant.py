"""Compute |psi(i)| three ways and the weighted extremal integral of g0 against rivals.

    python3 scripts/psi_constant.py
"""
import math

import numpy as np
from scipy import integrate

from hinf_interp.outer import (PSI_MODULUS, g0_boundary_modulus, log_t_over_arctan, outer_eval_with_error,
                               weighted_hardy_extremal_check)


def main():
    exact = 2 * math.e / math.pi
    value, err = outer_eval_with_error(PSI_MODULUS, 1j)

    f = lambda th: log_t_over_arctan(np.array([math.tan(th)]))[0] / math.pi
    direct, _ = integrate.quad(f, -math.pi / 2, math.pi / 2, points=[0.0], epsabs=1e-14, limit=200)

    mean, _ = integrate.quad(lambda th: math.log(abs(th)) / (2 * math.pi), -math.pi, math.pi, points=[0.0])

    print(f"2e/pi                          {exact:.15f}")
    print(f"graded Gauss-Legendre          {abs(value):.15f}  (error estimate {err:.1e})")
    print(f"adaptive quadrature in theta   {math.exp(direct):.15f}")
    print(f"circle form 2 exp(-mean log|t|) {2 * math.exp(-mean):.15f}")

    a = 0.5 + 2j
    b_at_i = abs((1j - a) / (1j - np.conj(a)))
    rivals = {
        "standard 4/(1+t^2)": lambda t: 4.0 / (1.0 + np.asarray(t, float) ** 2),
        "g0 * outer perturbation": lambda t: g0_boundary_modulus(t) * np.exp(0.2 * (1 - t * t) / (1 + t * t)),
        "g0 * Blaschke factor": lambda t: g0_boundary_modulus(t) / b_at_i,
    }
    check = weighted_hardy_extremal_check(rivals=rivals)
    print()
    print(f"int |g0| arctan(t)/t dt        {check.candidate:.12f}  (2 pi^2/e = {2 * math.pi ** 2 / math.e:.12f})")
    for name, v in check.rivals.items():
        print(f"  rival {name:<25}{v:.12f}")
    print(f"g0 minimal among these: {check.minimal}")


if __name__ == "__main__":
    main()
