"""Rewrite the archived probe reports under tests/data from their configs.

Only run this after an intentional change to report contents; the test
suite replays these files byte for byte.
"""

import argparse
from pathlib import Path

from multilinear_multipliers.probes import load_config, ratio_probe, sharpness_sweep

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def render(path: Path) -> str:
    config = load_config(path)
    report = sharpness_sweep(config) if config.sweep_facet else ratio_probe(config)
    return report.to_json()


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true", help="compare instead of writing")
    args = ap.parse_args()
    stale = 0
    for cfg in sorted(DATA.glob("*.ini")):
        out = cfg.with_suffix(".json")
        text = render(cfg)
        if args.check:
            same = out.exists() and out.read_text() == text
            stale += not same
            print(f"{'ok   ' if same else 'STALE'} {out.name}")
        else:
            out.write_text(text)
            print(f"wrote {out.name}")
    raise SystemExit(1 if stale else 0)


if __name__ == "__main__":
    main()
