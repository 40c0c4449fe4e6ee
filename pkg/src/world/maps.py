"""
Likelihood map I/O and synthetic map generation.

Supported file formats:
- CSV: reals in [0, 1], comma separated, one grid row per line (row 0 = y 0).
- PGM: P2 (ASCII) or P5 (binary) grayscale, scaled linearly by maxval.

Synthetic maps place Gaussian-falloff blobs on a flat background. The golden
corpus lists named maps with their generator parameters in
`corpus/maps/manifest.csv`.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Dict, Optional, Union

import numpy as np
import pandas as pd

from .grid import DEFAULT_CELL_SIZE_M, DEFAULT_TRUTH_THRESHOLD, Blob, GridWorld

LOGGER = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parents[2]
CORPUS_DIR = PROJECT_ROOT / "corpus" / "maps"
MANIFEST_COLUMNS = ["name", "width", "height", "blobs", "radius_min", "radius_max", "background", "seed"]
SYNTHETIC_PREFIX = "synthetic:"

# short keys accepted in ad-hoc synthetic specs
_SPEC_KEYS = {
    "w": "width",
    "h": "height",
    "blobs": "blobs",
    "seed": "seed",
    "rmin": "radius_min",
    "rmax": "radius_max",
    "bg": "background",
}

PathLike = Union[str, Path]


class MapFormatError(ValueError):
    """Raised for unknown map formats, out-of-range values and ragged grids."""


def _check_range(grid: np.ndarray, source: str) -> np.ndarray:
    if grid.ndim != 2 or grid.size == 0:
        raise MapFormatError(f"{source}: map must be a non-empty rectangular grid")
    if not np.isfinite(grid).all():
        raise MapFormatError(f"{source}: map contains non-finite values")
    bad = (grid < 0.0) | (grid > 1.0)
    if bad.any():
        y, x = (int(v) for v in np.argwhere(bad)[0])
        raise MapFormatError(
            f"{source}: likelihood {grid[y, x]} at (x={x}, y={y}) is outside [0, 1]"
        )
    return grid


def _load_csv(path: Path) -> np.ndarray:
    try:
        df = pd.read_csv(path, header=None, skip_blank_lines=True, dtype=str)
    except pd.errors.EmptyDataError:
        raise MapFormatError(f"{path}: empty map file") from None
    except pd.errors.ParserError as exc:
        raise MapFormatError(f"{path}: non-rectangular data ({exc})") from None

    if df.isna().any().any():
        raise MapFormatError(f"{path}: non-rectangular data (rows have differing lengths)")
    try:
        values = df.apply(lambda col: col.str.strip()).to_numpy().astype(float)
    except ValueError as exc:
        raise MapFormatError(f"{path}: non-numeric value ({exc})") from None
    return values


def _pgm_header(data: bytes, path: Path):
    """Return (magic, width, height, maxval, offset of the first pixel byte)."""
    tokens = []
    pos = 0
    while len(tokens) < 4:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos >= len(data):
            raise MapFormatError(f"{path}: truncated PGM header")
        if data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        tokens.append(data[start:pos].decode("ascii", errors="replace"))

    magic = tokens[0]
    if magic not in ("P2", "P5"):
        raise MapFormatError(f"{path}: unsupported PGM magic {magic!r} (expected P2 or P5)")
    try:
        width, height, maxval = (int(tok) for tok in tokens[1:4])
    except ValueError:
        raise MapFormatError(f"{path}: malformed PGM header {tokens!r}") from None
    if width < 1 or height < 1 or not 0 < maxval < 65536:
        raise MapFormatError(f"{path}: invalid PGM dimensions or maxval {tokens[1:4]!r}")
    # exactly one whitespace byte separates maxval from the raster
    return magic, width, height, maxval, pos + 1


def _load_pgm(path: Path) -> np.ndarray:
    data = path.read_bytes()
    magic, width, height, maxval, offset = _pgm_header(data, path)
    count = width * height

    if magic == "P2":
        try:
            pixels = np.array(data[offset:].split(), dtype=np.int64)
        except ValueError:
            raise MapFormatError(f"{path}: non-integer pixel value") from None
    else:
        dtype = np.dtype(np.uint8) if maxval < 256 else np.dtype(">u2")
        raw = data[offset : offset + count * dtype.itemsize]
        if len(raw) < count * dtype.itemsize:
            raise MapFormatError(f"{path}: truncated P5 raster")
        pixels = np.frombuffer(raw, dtype=dtype).astype(np.int64)

    if pixels.size != count:
        raise MapFormatError(
            f"{path}: expected {count} pixels for {width}x{height}, found {pixels.size}"
        )
    if pixels.min() < 0 or pixels.max() > maxval:
        raise MapFormatError(f"{path}: pixel value outside [0, {maxval}]")
    return pixels.reshape(height, width).astype(float) / float(maxval)


def load_map(
    source: PathLike,
    cell_size: float = DEFAULT_CELL_SIZE_M,
    aoi_threshold_truth: float = DEFAULT_TRUTH_THRESHOLD,
) -> GridWorld:
    """Load a likelihood map from a CSV or PGM file. Home defaults to (0, 0)."""
    path = Path(source)
    if not path.exists():
        raise FileNotFoundError(f"Map file not found: {path}")

    suffix = path.suffix.lower()
    if suffix == ".csv":
        grid = _load_csv(path)
    elif suffix == ".pgm":
        grid = _load_pgm(path)
    else:
        raise MapFormatError(f"{path}: unknown map format {suffix!r} (expected .csv or .pgm)")

    grid = _check_range(grid, str(path))
    LOGGER.info("Loaded %s map %sx%s from %s", suffix[1:], grid.shape[1], grid.shape[0], path)
    return GridWorld(
        likelihood=grid,
        cell_size=cell_size,
        aoi_threshold_truth=aoi_threshold_truth,
        name=path.stem,
    )


def save_map(world: GridWorld, path: PathLike, fmt: Optional[str] = None) -> Path:
    """Write the likelihood grid as CSV or PGM (P2, maxval 255)."""
    out = Path(path)
    fmt = (fmt or out.suffix.lstrip(".") or "csv").lower()
    out.parent.mkdir(parents=True, exist_ok=True)

    if fmt == "csv":
        pd.DataFrame(world.likelihood).to_csv(out, header=False, index=False)
    elif fmt == "pgm":
        pixels = np.rint(world.likelihood * 255).astype(int)
        lines = ["P2", f"# {world.name or 'likelihood map'}", f"{world.width} {world.height}", "255"]
        lines.extend(" ".join(str(v) for v in row) for row in pixels)
        out.write_text("\n".join(lines) + "\n", encoding="ascii")
    else:
        raise MapFormatError(f"Unknown map format {fmt!r} (expected csv or pgm)")
    return out


def generate_synthetic_map(
    width: int = 40,
    height: int = 40,
    blobs: int = 3,
    radius_min: float = 3.0,
    radius_max: float = 5.0,
    background: float = 0.05,
    seed: int = 0,
    cell_size: float = DEFAULT_CELL_SIZE_M,
    aoi_threshold_truth: float = DEFAULT_TRUTH_THRESHOLD,
    name: str = "",
) -> GridWorld:
    """
    Place `blobs` Gaussian-falloff regions on a flat background.

    Each blob draws a radius uniformly from [radius_min, radius_max] and a
    centre so the whole radius lies inside the grid. Cell value is
    max(background, exp(-d^2 / (2 sigma^2))) with sigma = 0.6 * radius,
    so every blob centre has likelihood 1.0.
    """
    if width < 1 or height < 1:
        raise ValueError(f"Degenerate map dimensions {width}x{height}")
    if blobs < 0:
        raise ValueError(f"Blob count must be >= 0, got {blobs}")
    if not 0 < radius_min <= radius_max:
        raise ValueError(f"Blob radius range must satisfy 0 < min <= max, got [{radius_min}, {radius_max}]")
    if not 0.0 <= background <= 1.0:
        raise ValueError(f"Background level must be in [0, 1], got {background}")

    margin = int(math.ceil(radius_max))
    if blobs and (width < 2 * margin + 1 or height < 2 * margin + 1):
        raise ValueError(
            f"Blobs of radius up to {radius_max} do not fit a {width}x{height} grid"
        )

    rng = np.random.default_rng(seed)
    grid = np.full((height, width), float(background))
    ys, xs = np.mgrid[0:height, 0:width]
    placed = []
    for _ in range(blobs):
        radius = float(rng.uniform(radius_min, radius_max))
        cx = int(rng.integers(margin, width - margin))
        cy = int(rng.integers(margin, height - margin))
        sigma = 0.6 * radius
        bump = np.exp(-((xs - cx) ** 2 + (ys - cy) ** 2) / (2.0 * sigma * sigma))
        grid = np.maximum(grid, bump)
        placed.append(Blob(cx, cy, radius))

    grid = np.clip(grid, 0.0, 1.0)
    LOGGER.debug("Generated %sx%s map with %d blobs (seed=%s)", width, height, blobs, seed)
    return GridWorld(
        likelihood=grid,
        cell_size=cell_size,
        aoi_threshold_truth=aoi_threshold_truth,
        blobs=tuple(placed),
        name=name,
    )


def load_corpus_manifest(corpus_dir: PathLike = CORPUS_DIR) -> pd.DataFrame:
    path = Path(corpus_dir) / "manifest.csv"
    if not path.exists():
        raise FileNotFoundError(f"Corpus manifest not found: {path}")
    df = pd.read_csv(path)
    missing = [c for c in MANIFEST_COLUMNS if c not in df.columns]
    if missing:
        raise ValueError(f"Corpus manifest {path} is missing columns: {missing}")
    return df[MANIFEST_COLUMNS]


def corpus_map_params(name: str, corpus_dir: PathLike = CORPUS_DIR) -> Dict[str, object]:
    """Generator keyword arguments of a named corpus map."""
    manifest = load_corpus_manifest(corpus_dir)
    rows = manifest[manifest["name"] == name]
    if rows.empty:
        known = ", ".join(manifest["name"].tolist())
        raise ValueError(f"Unknown corpus map {name!r}; known maps: {known}")
    row = rows.iloc[0]
    return {
        "width": int(row["width"]),
        "height": int(row["height"]),
        "blobs": int(row["blobs"]),
        "radius_min": float(row["radius_min"]),
        "radius_max": float(row["radius_max"]),
        "background": float(row["background"]),
        "seed": int(row["seed"]),
        "name": str(row["name"]),
    }


def materialize_corpus_map(name: str, corpus_dir: PathLike = CORPUS_DIR) -> Path:
    """Write `<corpus_dir>/<name>.csv` from the manifest seed and return its path."""
    world = generate_synthetic_map(**corpus_map_params(name, corpus_dir))
    path = save_map(world, Path(corpus_dir) / f"{name}.csv")
    LOGGER.info("Materialized corpus map %s -> %s", name, path)
    return path


def parse_synthetic_spec(spec: str, corpus_dir: PathLike = CORPUS_DIR) -> Dict[str, object]:
    """
    Generator arguments for `synthetic:<name>` or
    `synthetic:w=..,h=..,blobs=..,seed=..[,rmin=..,rmax=..,bg=..]`.
    """
    body = spec[len(SYNTHETIC_PREFIX):] if spec.startswith(SYNTHETIC_PREFIX) else spec
    body = body.strip()
    if not body:
        raise ValueError(f"Empty synthetic map spec: {spec!r}")
    if "=" not in body:
        return corpus_map_params(body, corpus_dir)

    params: Dict[str, object] = {}
    for part in body.split(","):
        if "=" not in part:
            raise ValueError(f"Malformed synthetic map field {part!r} in {spec!r}")
        key, value = (s.strip() for s in part.split("=", 1))
        if key not in _SPEC_KEYS:
            raise ValueError(f"Unknown synthetic map key {key!r}; expected one of {sorted(_SPEC_KEYS)}")
        target = _SPEC_KEYS[key]
        try:
            params[target] = float(value) if target in ("radius_min", "radius_max", "background") else int(value)
        except ValueError:
            raise ValueError(f"Invalid value {value!r} for synthetic map key {key!r}") from None
    params["name"] = "synthetic"
    return params


def resolve_map(
    source: str,
    aoi_threshold_truth: float = DEFAULT_TRUTH_THRESHOLD,
    corpus_dir: PathLike = CORPUS_DIR,
) -> GridWorld:
    """Load a map file or generate the synthetic map a `synthetic:` source names."""
    if source.startswith(SYNTHETIC_PREFIX):
        params = parse_synthetic_spec(source, corpus_dir)
        return generate_synthetic_map(aoi_threshold_truth=aoi_threshold_truth, **params)
    return load_map(source, aoi_threshold_truth=aoi_threshold_truth)
