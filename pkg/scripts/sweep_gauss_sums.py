"""Sweep the combined Gauss-sum identity over every n <= N and feasible Delta.

Reports residual failures of the branch-corrected coefficient and, separately,
how often the coefficient without the (-1)^floor(q/2) factor has the wrong sign.

    python scripts/sweep_gauss_sums.py --n-max 360
"""
import argparse
import time
from collections import Counter

from cayley_spectra.gauss_sum import sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=360)
    ap.add_argument("--show", type=int, default=10, help="print this many sign failures")
    args = ap.parse_args()

    t0 = time.perf_counter()
    checks = list(sweep(args.n_max))
    elapsed = time.perf_counter() - t0
    bad = [c for c in checks if not c.ok]
    sign_bad = [c for c in checks if not c.printed_ok]
    print(f"checked {len(checks)} (n, Delta) pairs for n <= {args.n_max} in {elapsed:.1f}s")
    print(f"closed-form residual failures: {len(bad)}")
    print(f"uncorrected-sign failures: {len(sign_bad)}")
    by_regime = Counter((c.n % 8 == 0, c.n % 4 == 0) for c in sign_bad)
    print(f"  by (8|n, 4|n): {dict(by_regime)}")
    worst = max(checks, key=lambda c: c.residual / max(1, abs(c.a)))
    print(f"worst relative residual {worst.residual / max(1, abs(worst.a)):.2e} at n={worst.n}, Delta={worst.delta}")
    for c in sign_bad[: args.show]:
        print(f"  n={c.n:4d} Delta={c.delta:6d} a={c.a:6d} uncorrected={c.printed_a:6d}")


if __name__ == "__main__":
    main()
