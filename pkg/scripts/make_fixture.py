"""Regenerate the bundled synthetic section-year observations.

    python scripts/make_fixture.py [--seed 7]
"""

import argparse
from pathlib import Path

from pavemetrics import dataio, synthetic

OUT = Path(__file__).resolve().parents[1] / "src" / "pavemetrics" / "data" / "observations_synthetic.csv"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args()
    obs = synthetic.panel_observations(synthetic.bundled_sections(), seed=args.seed)
    dataio.write_observations(args.out, obs)
    print(f"wrote {len(obs)} observations to {args.out}")


if __name__ == "__main__":
    main()
