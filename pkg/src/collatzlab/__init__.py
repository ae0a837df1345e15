"""Generalized Collatz-type maps: orbits, cycles, range scans and claim checks."""

from .catalog import (
    CatalogError,
    Cycle,
    CycleCatalog,
    CycleError,
    Provenance,
    canonicalize,
    fixture_catalog,
)
from .claims import (
    ClaimResult,
    verify_10_pow2_entry,
    verify_correspondence,
    verify_multiples_of_5,
    verify_odd_digit_pattern,
    verify_pow2_same_cycle,
)
from .maps import PRESETS, MapError, MapSpec, make_map, preset, step
from .orbit import (
    DEFAULT_BOUNDS,
    Bounds,
    BoundsError,
    Classification,
    Orbit,
    classify_orbit,
    detect_cycle,
)
from .scanner import Memo, MemoError, ScanRecord, ScanReport, memoized_classify, scan_range

__version__ = "0.1.0"
