"""Range scans: classify every seed in ``[lo, hi]`` and grow a cycle catalog."""

from __future__ import annotations

import dataclasses
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .catalog import CatalogError, Cycle, CycleCatalog, Provenance
from .maps import MapSpec
from .orbit import MAX_STEPS, DEFAULT_BOUNDS, Bounds, Classification, Orbit, Retain, _iterate

__all__ = ["Memo", "MemoError", "memoized_classify", "ScanRecord", "ScanReport", "scan_range"]


class MemoError(ValueError):
    """A memo used with a different map or with bounds it cannot answer for."""


class Memo:
    """Cache of classified seeds for one map under fixed bounds.

    Only seeds are cached, never the intermediate values of their orbits
    (those can be arbitrarily large).  The cycles referenced by cached
    entries are kept alongside so a lookup can tell whether a trajectory has
    already reached one of them.
    """

    def __init__(self, map: MapSpec, bounds: Bounds = DEFAULT_BOUNDS) -> None:
        self.map = map
        self.bounds = bounds
        self.entries: dict[int, Orbit] = {}
        self.cycles = CycleCatalog(map)
        self.max_key = 0

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, seed: object) -> bool:
        return seed in self.entries

    def get(self, seed: int) -> Orbit | None:
        return self.entries.get(seed)

    def add(self, orbit: Orbit) -> None:
        if orbit.cycle is not None and orbit.cycle not in self.cycles:
            self.cycles.register(orbit.cycle)
        self.entries[orbit.seed] = dataclasses.replace(orbit, prefix=())
        if orbit.seed > self.max_key:
            self.max_key = orbit.seed

    def absorb(self, orbit: Orbit, lo: int, hi: int) -> int:
        """Cache the orbits of the values in ``[lo, hi]`` that ``orbit`` visits.

        The orbit of a visited value is a suffix of ``orbit``, so its result
        follows exactly, except after a step-cap stop (its own budget would
        reach further).  ``orbit.prefix`` must be fully retained.
        Returns the number of new entries.
        """
        p = orbit.prefix
        if len(p) < 2 or orbit.bound == MAX_STEPS:
            return 0
        t = orbit.steps_to_termination
        mu = orbit.entry_steps
        stop = len(p) if mu is None else mu
        running = 0
        if orbit.short_circuited:
            # prefix stops at the shortcut; a memo seed there carries the rest
            tail = self.entries.get(p[-1])
            if tail is not None:
                running = tail.peak
        added = 0
        for j in range(len(p) - 1, 0, -1):
            x = p[j]
            if x > running:
                running = x
            if j < stop and lo <= x <= hi and x not in self.entries:
                self.entries[x] = Orbit(
                    x, orbit.classification, t - j, running, orbit.cycle,
                    None if mu is None else mu - j, orbit.bound, (), True,
                )
                if x > self.max_key:
                    self.max_key = x
                added += 1
        return added


def memoized_classify(
    map: MapSpec,
    seed: int,
    bounds: Bounds,
    memo: Memo,
    catalog: CycleCatalog | None = None,
    *,
    retain: Retain = "none",
    store: bool = True,
) -> Orbit:
    """Classify ``seed``, short-circuiting through ``memo`` and ``catalog``.

    The answer is identical to :func:`~collatzlab.orbit.classify_orbit` on the
    same inputs, including step counts, entry steps and peak: a cached seed
    is only spliced in when doing so is exact under ``bounds``, otherwise
    iteration simply continues.  ``Orbit.short_circuited`` records whether a
    shortcut was taken.

    Raises:
        MemoError: if the memo belongs to another map, or was filled under
            bounds that are smaller than ``bounds`` (or use a different
            stop-at-one convention).
    """
    if memo.map != map:
        raise MemoError(f"memo for {memo.map.name} used with map {map.name}")
    if not memo.bounds.covers(bounds):
        raise MemoError(f"memo bounds {memo.bounds} cannot answer for {bounds}")
    if memo.bounds == bounds:
        hit = memo.entries.get(seed)
        if hit is not None:
            return hit
    known = [memo.cycles]
    if catalog is not None:
        known.insert(0, catalog)
    orbit = _iterate(map, seed, bounds, known, memo, retain)
    if store and memo.bounds == bounds:
        memo.add(orbit)
    return orbit


@dataclass(frozen=True)
class ScanRecord:
    """One row of a scan report."""

    seed: int
    classification: str
    cycle_min: int | None
    cycle_len: int | None
    entry_steps: int | None
    steps: int
    peak: int

    @classmethod
    def from_orbit(cls, orbit: Orbit) -> "ScanRecord":
        return cls(
            orbit.seed,
            orbit.classification.value,
            orbit.cycle_ref,
            None if orbit.cycle is None else orbit.cycle.length,
            orbit.entry_steps,
            orbit.steps_to_termination,
            orbit.peak,
        )


@dataclass
class ScanReport:
    map: MapSpec
    lo: int
    hi: int
    bounds: Bounds
    records: list[ScanRecord]
    summary: dict
    catalog_delta: list[tuple[Cycle, Provenance]] = field(default_factory=list)

    @property
    def range(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def cycles_found(self) -> set[int]:
        return {r.cycle_min for r in self.records if r.cycle_min is not None}

    def undetermined_seeds(self) -> list[int]:
        return [u["seed"] for u in self.summary["undetermined"]]


def _summarize(records: list[ScanRecord], undetermined: list[dict]) -> dict:
    by_class = Counter(r.classification for r in records)
    by_cycle = Counter(r.cycle_min for r in records if r.cycle_min is not None)
    return {
        "total": len(records),
        "classification_counts": {c.value: by_class.get(c.value, 0) for c in Classification},
        "cycle_counts": {k: by_cycle[k] for k in sorted(by_cycle)},
        "undetermined": undetermined,
    }


def _scan_block(args):
    map, lo, hi, bounds, catalog = args
    catalog = catalog.copy()
    memo = Memo(map, bounds)
    records = []
    undetermined = []
    for seed in range(lo, hi + 1):
        orbit = memoized_classify(map, seed, bounds, memo, catalog, retain="full")
        memo.absorb(orbit, lo, hi)
        if orbit.cycle is not None and catalog.lookup(orbit.cycle.min_element) is None:
            catalog.register(orbit.cycle, Provenance("discovered", seed))
        if orbit.classification is Classification.UNDETERMINED:
            undetermined.append({"seed": seed, "bound": orbit.bound})
        records.append(ScanRecord.from_orbit(orbit))
    return records, undetermined, catalog


def _blocks(lo: int, hi: int, n: int) -> list[tuple[int, int]]:
    total = hi - lo + 1
    n = max(1, min(n, total))
    size, extra = divmod(total, n)
    out, start = [], lo
    for k in range(n):
        end = start + size + (1 if k < extra else 0) - 1
        out.append((start, end))
        start = end + 1
    return out


def scan_range(
    map: MapSpec,
    lo: int,
    hi: int,
    bounds: Bounds = DEFAULT_BOUNDS,
    catalog: CycleCatalog | None = None,
    workers: int = 1,
) -> tuple[ScanReport, CycleCatalog]:
    """Classify every seed in ``[lo, hi]``.

    The range is cut into ``workers`` contiguous blocks, each scanned with its
    own memo and a private copy of ``catalog``; records are concatenated in
    seed order and the catalogs merged by set union.  Because memoized
    results are exact, the output does not depend on ``workers``.

    Returns:
        The report and the updated catalog (``catalog`` itself is untouched).
    """
    for name, v in (("lo", lo), ("hi", hi), ("workers", workers)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise TypeError(f"{name} must be an int")
    if not 1 <= lo <= hi:
        raise ValueError(f"need 1 <= lo <= hi, got lo={lo}, hi={hi}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if catalog is None:
        catalog = CycleCatalog(map)
    elif catalog.map != map:
        raise CatalogError(f"catalog is for {catalog.map.name}, scan is for {map.name}")

    jobs = [(map, blo, bhi, bounds, catalog) for blo, bhi in _blocks(lo, hi, workers)]
    if len(jobs) == 1:
        results = [_scan_block(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
            results = list(pool.map(_scan_block, jobs))

    records: list[ScanRecord] = []
    undetermined: list[dict] = []
    merged = catalog.copy()
    for recs, und, cat in results:
        records.extend(recs)
        undetermined.extend(und)
        merged = merged.merge(cat)

    before = {c.min_element for c in catalog.cycles}
    delta = [(c, merged.provenance(c.min_element)) for c in merged.cycles if c.min_element not in before]
    report = ScanReport(map, lo, hi, bounds, records, _summarize(records, undetermined), delta)
    return report, merged
