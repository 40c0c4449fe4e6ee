#!/usr/bin/env python3
"""
Run robustness-driven exploration experiments.

Examples:
    python scripts/rde.py run --config corpus/configs/three_blobs.cfg
    python scripts/rde.py compare --config corpus/configs/five_blobs.cfg --workers 4
    python scripts/rde.py gen-map --corpus three_blobs --out corpus/maps/three_blobs.csv
"""

from __future__ import annotations

from pathlib import Path
import sys

PROJECT_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(PROJECT_ROOT))

from src.experiments import main  # noqa: E402


if __name__ == "__main__":
    raise SystemExit(main())
