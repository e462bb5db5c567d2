"""Run the default probe corpus and write one summary row per config.

Each config's full report goes to <out>/<hash>.json; the summary table
(config hash, m, N, exponents, A, max and median ratio) is printed as CSV.
"""

import argparse
import csv
import sys
import time
from pathlib import Path

from multilinear_multipliers.geometry import check_admissible
from multilinear_multipliers.probes import default_corpus, ratio_probe


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=32)
    ap.add_argument("--out", type=Path, help="directory for per-config JSON reports")
    args = ap.parse_args()
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["hash", "m", "N", "reciprocals", "admissible", "A", "max_ratio", "median_ratio", "seconds"])
    for config in default_corpus(seed=args.seed, trials=args.trials):
        t0 = time.perf_counter()
        report = ratio_probe(config)
        elapsed = time.perf_counter() - t0
        summary = report.summary
        if args.out:
            (args.out / f"{config.hash()[:16]}.json").write_text(report.to_json())
        writer.writerow([
            config.hash()[:16], config.m, config.N, " ".join(str(r) for r in config.reciprocals),
            check_admissible(config.profile, config.exponents), f"{report.A:.12g}",
            f"{summary['max_ratio']:.12g}", f"{summary['median_ratio']:.12g}", f"{elapsed:.2f}",
        ])


if __name__ == "__main__":
    main()
