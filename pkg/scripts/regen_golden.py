"""Rewrite tests/golden/ from the current build.

Run after an intentional change to report content, then review the diff.
"""

import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from tests.golden_cases import CASES, run_case, write_pipeline_dataset  # noqa: E402

GOLDEN = ROOT / "tests" / "golden"


def main() -> None:
    GOLDEN.mkdir(exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        pipeline = write_pipeline_dataset(Path(tmp) / "pipeline.csv")
        for name in CASES:
            code, out = run_case(name, pipeline)
            if code != 0:
                raise SystemExit(f"{name}: exit code {code}")
            (GOLDEN / name).write_text(out, encoding="utf-8")
            print(f"wrote {name}")


if __name__ == "__main__":
    main()
