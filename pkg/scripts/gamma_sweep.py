"""Sweep Z_gamma over gamma and K and tabulate the normalised sharpness ratios.

The columns ``gamma*(chj-1)`` and ``gamma*(cj-1)`` expose the first-order
corrections, which approach 1/(4 log 2) = 0.36067 and 0.29474 respectively.

    python3 scripts/gamma_sweep.py --gammas 0.5 1 2 4 --k-per-gamma 14
"""
import argparse
import math
import warnings

from hinf_interp.errors import TruncationWarning
from hinf_interp.gamma_example import GammaConfig, sharpness_report


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--gammas", type=float, nargs="+", default=[0.5, 1.0, 2.0, 4.0])
    p.add_argument("--k-per-gamma", type=float, default=14.0, help="K = round(k_per_gamma * gamma)")
    p.add_argument("--fb-samples", type=int, default=2001)
    args = p.parse_args()

    cols = ("gamma", "K", "tau", "peak", "bprime", "fb*e^(pi^2 g)", "chj", "gamma*(chj-1)", "cj",
            "gamma*(cj-1)", "rho_ratio", "e*cJ/rho*")
    print("  ".join(f"{c:>13}" for c in cols))
    for gamma in args.gammas:
        K = max(1, round(args.k_per_gamma * gamma))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            r = sharpness_report(GammaConfig(gamma, K), fb_samples=args.fb_samples)
        row = (gamma, K, r.tau, r.peak_ratio, r.bprime_ratio, r.fb_log_sup_scaled, r.chj_ratio,
               gamma * (r.chj_ratio - 1), r.cj_ratio, gamma * (r.cj_ratio - 1),
               r.rho_ratio if r.rho_ratio is not None else math.nan,
               r.e_cj_over_rho if r.e_cj_over_rho is not None else math.nan)
        print("  ".join(f"{v:>13.6g}" for v in row))


if __name__ == "__main__":
    main()
