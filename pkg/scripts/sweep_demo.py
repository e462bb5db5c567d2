"""Walk the smoothness vector across a facet of the admissible region.

Default: m = 2, s = (2, 1), r = (3/2, 0), moving s_1 down by t. The subset
{0} constraint becomes tight at t = 1; the table shows the flags flipping
and the observed ratio growing as the smoothness budget shrinks.
"""

import argparse

from multilinear_multipliers.probes import ProbeConfig, facet_crossing, sharpness_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--N", type=int, default=32)
    ap.add_argument("--emit", choices=["text", "csv", "json"], default="text")
    args = ap.parse_args()

    config = ProbeConfig(
        m=2, N=args.N, symbol="mikhlin_component", s=("2", "1"), reciprocals=("3/2", "0"),
        trials=args.trials, seed=args.seed, sweep_facet=(0,), sweep_direction=("-1", "0"),
        sweep_t=("0", "1/4", "1/2", "3/4", "7/8", "1", "9/8", "5/4"),
    )
    report = sharpness_sweep(config)
    if args.emit == "csv":
        print(report.to_csv(), end="")
    elif args.emit == "json":
        print(report.to_json(), end="")
    else:
        print(f"facet crossing at t = {facet_crossing(config)}")
        print(f"{'t':>5}  {'s':>12}  {'inside':>6}  {'strict':>6}  {'slack':>6}  {'A':>10}  max_ratio")
        for row in report.rows:
            s = " ".join(str(v) for v in row["s"])
            print(f"{str(row['t']):>5}  {s:>12}  {str(row['inside']):>6}  {str(row['strict_inside']):>6}  "
                  f"{str(row['slack']):>6}  {row['A']:>10.6g}  {row['max_ratio']:.6g}")


if __name__ == "__main__":
    main()
