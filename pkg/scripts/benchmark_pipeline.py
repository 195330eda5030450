"""Time fit, diagnose and validate on a synthetic dataset of a given size."""

import argparse
import contextlib
import io
import tempfile
import time
from pathlib import Path

from pavemetrics import dataio, synthetic
from pavemetrics.cli import main as cli


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rows", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "obs.csv"
        dataio.write_observations(path, synthetic.random_observations(args.rows, seed=args.seed))
        for command in ("fit", "diagnose", "validate"):
            times = []
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
                    code = cli([command, "--observations", str(path), "--format", "csv"])
                times.append(time.perf_counter() - t0)
            print(f"{command:<9} exit {code}  best {min(times):.3f}s  of {args.repeat}")


if __name__ == "__main__":
    main()
