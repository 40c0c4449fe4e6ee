"""Grid world, simulated sensor, mission state and likelihood map I/O."""

from .grid import Blob, Cell, GridWorld, euclidean_distance, octile_distance, row_major_key
from .maps import (
    CORPUS_DIR,
    MapFormatError,
    corpus_map_params,
    generate_synthetic_map,
    load_corpus_manifest,
    load_map,
    materialize_corpus_map,
    parse_synthetic_spec,
    resolve_map,
    save_map,
)
from .sensor import MissionState, SensorModel, sense

__all__ = [
    "Blob",
    "Cell",
    "GridWorld",
    "euclidean_distance",
    "octile_distance",
    "row_major_key",
    "CORPUS_DIR",
    "MapFormatError",
    "corpus_map_params",
    "generate_synthetic_map",
    "load_corpus_manifest",
    "load_map",
    "materialize_corpus_map",
    "parse_synthetic_spec",
    "resolve_map",
    "save_map",
    "MissionState",
    "SensorModel",
    "sense",
]
