#!/usr/bin/env python3
"""
Materialize the corpus: one CSV per manifest map under corpus/maps/, and the
golden comparison summaries under corpus/golden/<name>/summary.json.

Examples:
    python scripts/build_corpus.py
    python scripts/build_corpus.py --maps-only
"""

from __future__ import annotations

import argparse
import logging
from pathlib import Path
import shutil
import sys
import tempfile

PROJECT_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(PROJECT_ROOT))

from src.data import load_experiment_config  # noqa: E402
from src.experiments import run_experiment  # noqa: E402
from src.world import CORPUS_DIR, load_corpus_manifest, materialize_corpus_map  # noqa: E402

CONFIG_DIR = PROJECT_ROOT / "corpus" / "configs"
GOLDEN_DIR = PROJECT_ROOT / "corpus" / "golden"
GOLDEN_RUNS = ("three_blobs", "five_blobs")


def build_golden_summary(name: str, workers: int) -> Path:
    out = GOLDEN_DIR / name / "summary.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        config = load_experiment_config(CONFIG_DIR / f"{name}.cfg", out_dir=tmp)
        run_experiment(config, workers=workers)
        shutil.copyfile(Path(tmp) / "summary.json", out)
    return out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("--maps-only", action="store_true", help="skip the golden experiment runs")
    parser.add_argument("--workers", type=int, default=1, help="process pool size for the golden runs")
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")

    for name in load_corpus_manifest(CORPUS_DIR)["name"]:
        print(f"Wrote: {materialize_corpus_map(name)}")
    if not args.maps_only:
        for name in GOLDEN_RUNS:
            print(f"Wrote: {build_golden_summary(name, args.workers)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
