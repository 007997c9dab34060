"""Run the chain of inequalities on random sequences for each geometry and size.

    python3 scripts/chain_check_demo.py --sizes 2 3 4 --count 50 --seed 0
"""
import argparse

from hinf_interp.chain import GEOMETRIES, ChainConfig, chain_check


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--sizes", type=int, nargs="+", default=[2, 3, 4])
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--geometries", nargs="+", choices=GEOMETRIES, default=list(GEOMETRIES))
    args = p.parse_args()

    print(f"{'geometry':>10} {'n':>3} {'passed':>7} {'soft':>5} "
          f"{'M/cH min':>9} {'median':>9} {'max':>9} {'e cJ/M min':>11} {'median':>9} {'max':>9}")
    for geometry in args.geometries:
        for n in args.sizes:
            s = chain_check(ChainConfig(n=n, count=args.count, seed=args.seed, geometry=geometry,
                                        samples=args.samples))
            lo, hi = s.gaps["m_hat/c_H"], s.gaps["e*c_J/m_hat"]
            print(f"{geometry:>10} {n:>3} {str(s.passed):>7} {len(s.soft_misses):>5} "
                  f"{lo['min']:>9.4f} {lo['median']:>9.4f} {lo['max']:>9.4f} "
                  f"{hi['min']:>11.4f} {hi['median']:>9.4f} {hi['max']:>9.4f}")
            for f in s.failures:
                print(f"    failure: {f['check']} on sequence {f['index']}")


if __name__ == "__main__":
    main()
