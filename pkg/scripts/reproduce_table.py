"""Print the analytic work factors for the five benchmark parameter sets."""
import argparse
import time

from rankdec import analysis

ROWS = [(24, 24, 16, 6), (64, 64, 32, 19), (80, 80, 40, 23), (96, 96, 48, 27), (82, 82, 48, 20)]
COLUMNS = ["W_RD", "W_RD_lower", "W_RD_upper", "W_Comb_over_N", "W_Alg", "W_Key"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--no-poly-factor", action="store_true")
    args = ap.parse_args()
    t0 = time.perf_counter()
    print(f"{'m':>3} {'n':>3} {'k':>3} {'w':>3} {'d*':>3} " + " ".join(f"{c:>14}" for c in COLUMNS))
    for m, n, k, w in ROWS:
        rep = analysis.report(analysis.ParamSet(2, m, n, k, w), poly_factor=not args.no_poly_factor)
        vals = " ".join(f"{getattr(rep, c):>14.2f}" for c in COLUMNS)
        print(f"{m:>3} {n:>3} {k:>3} {w:>3} {rep.delta_star:>3} {vals}")
    print(f"({time.perf_counter() - t0:.2f}s, all values log2)")


if __name__ == "__main__":
    main()
