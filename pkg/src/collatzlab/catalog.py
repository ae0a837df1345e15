"""Canonical cycles and per-map cycle catalogs.

A cycle is stored in trajectory order, rotated so that it starts at its
smallest element.  Rotating (rather than sorting) keeps the order in which
the map visits the values while still giving every cycle a unique key.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .maps import MapSpec, preset, step

__all__ = [
    "Cycle",
    "CycleError",
    "CatalogError",
    "Provenance",
    "CycleCatalog",
    "canonicalize",
    "fixture_catalog",
]


class CycleError(ValueError):
    """A list of values that is not a valid cycle of the map."""


class CatalogError(ValueError):
    """Catalog corruption: overlapping cycles, wrong map, or a bad file."""


@dataclass(frozen=True)
class Cycle:
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        if not elements:
            raise CycleError("a cycle needs at least one element")
        if len(set(elements)) != len(elements):
            raise CycleError(f"cycle elements are not distinct: {list(elements)}")
        if elements[0] != min(elements):
            raise CycleError(f"cycle must start at its minimum: {list(elements)}")

    @property
    def length(self) -> int:
        return len(self.elements)

    @property
    def min_element(self) -> int:
        return self.elements[0]

    @property
    def max_element(self) -> int:
        return max(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, value: object) -> bool:
        return value in self.elements

    def check_closure(self, map: MapSpec) -> None:
        """Raise CycleError unless ``map`` sends each element to the next one."""
        n = len(self.elements)
        for i, x in enumerate(self.elements):
            nxt = self.elements[(i + 1) % n]
            if step(map, x) != nxt:
                raise CycleError(
                    f"{map.name}: step({x}) = {step(map, x)}, expected {nxt} "
                    f"in cycle starting at {self.min_element}"
                )

    def rotated_to(self, value: int) -> list[int]:
        """The cycle in trajectory order starting from ``value``."""
        i = self.elements.index(value)
        return list(self.elements[i:] + self.elements[:i])


def canonicalize(map: MapSpec, loop_elements: Sequence[int]) -> Cycle:
    """Rotate a loop of ``map`` to start at its minimum element.

    The input must already be a closed loop in trajectory order; any rotation
    is accepted and all rotations give the same result.
    """
    loop = [int(x) for x in loop_elements]
    if not loop:
        raise CycleError("empty loop")
    if len(set(loop)) != len(loop):
        raise CycleError(f"loop contains duplicates: {loop}")
    i = loop.index(min(loop))
    cycle = Cycle(tuple(loop[i:] + loop[:i]))
    cycle.check_closure(map)
    return cycle


@dataclass(frozen=True)
class Provenance:
    """Where a catalog entry came from.

    ``source`` is ``"fixture"`` for the hard-coded published cycles and
    ``"discovered"`` for cycles found by iteration; ``seed`` is the smallest
    known seed whose orbit led to the discovery.
    """

    source: str = "discovered"
    seed: int | None = None
    note: str = ""

    def _rank(self) -> tuple:
        return (0 if self.source == "fixture" else 1, -1 if self.seed is None else self.seed, self.note)

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "seed": None if self.seed is None else str(self.seed),
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Provenance":
        seed = d.get("seed")
        return cls(str(d.get("source", "discovered")), None if seed is None else int(seed), str(d.get("note", "")))


class CycleCatalog:
    """Deduplicated cycles of a single map, keyed by minimum element.

    Cycles of a deterministic map are pairwise disjoint, so inserting a cycle
    that shares only some of its elements with a stored one means one of the
    two is corrupt; that raises CatalogError.  Writes take an internal lock;
    reads are lock-free.
    """

    def __init__(
        self,
        map: MapSpec,
        cycles: Iterable[Cycle] = (),
        provenance: Iterable[Provenance] | None = None,
    ) -> None:
        self.map = map
        self._cycles: dict[int, Cycle] = {}
        self._provenance: dict[int, Provenance] = {}
        self._index: dict[int, tuple[int, int]] = {}
        self._max = 0
        self._lock = threading.RLock()
        cycles = list(cycles)
        provs = list(provenance) if provenance is not None else [Provenance()] * len(cycles)
        if len(provs) != len(cycles):
            raise CatalogError("provenance list must match the cycle list")
        for cycle, prov in zip(cycles, provs):
            self.register(cycle, prov)

    def __getstate__(self) -> dict:
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state: dict) -> None:
        self.__dict__.update(state)
        self._lock = threading.RLock()

    # -- reading ---------------------------------------------------------

    @property
    def cycles(self) -> list[Cycle]:
        return [self._cycles[k] for k in sorted(self._cycles)]

    @property
    def max_element(self) -> int:
        return self._max

    def __len__(self) -> int:
        return len(self._cycles)

    def __iter__(self) -> Iterator[Cycle]:
        return iter(self.cycles)

    def __contains__(self, cycle: object) -> bool:
        return isinstance(cycle, Cycle) and self._cycles.get(cycle.min_element) == cycle

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycleCatalog):
            return NotImplemented
        return (
            self.map == other.map
            and self._cycles == other._cycles
            and self._provenance == other._provenance
        )

    def __repr__(self) -> str:
        mins = ", ".join(str(k) for k in sorted(self._cycles))
        return f"CycleCatalog({self.map.name}: [{mins}])"

    def get(self, min_element: int) -> Cycle:
        return self._cycles[min_element]

    def provenance(self, min_element: int) -> Provenance:
        return self._provenance[min_element]

    def lookup(self, value: int) -> int | None:
        """Minimum element of the cycle containing ``value``, or None."""
        hit = self._index.get(value) if value <= self._max else None
        return None if hit is None else hit[0]

    def locate(self, value: int) -> tuple[Cycle, int] | None:
        """The cycle containing ``value`` and the value's position in it."""
        hit = self._index.get(value) if value <= self._max else None
        if hit is None:
            return None
        return self._cycles[hit[0]], hit[1]

    # -- writing ---------------------------------------------------------

    def register(self, cycle: Cycle, provenance: Provenance | None = None) -> bool:
        """Insert ``cycle``; return False if it was already present.

        A cycle already present keeps whichever provenance ranks first
        (fixtures before discoveries, then smaller discovering seed), which
        makes repeated merges order-independent.
        """
        if provenance is None:
            provenance = Provenance()
        cycle.check_closure(self.map)
        with self._lock:
            owners = {self._index[x][0] for x in cycle.elements if x in self._index}
            if owners:
                existing = self._cycles.get(cycle.min_element)
                if owners != {cycle.min_element} or existing != cycle:
                    raise CatalogError(
                        f"cycle starting at {cycle.min_element} overlaps catalog "
                        f"cycle(s) {sorted(owners)} without matching them"
                    )
                if provenance._rank() < self._provenance[cycle.min_element]._rank():
                    self._provenance[cycle.min_element] = provenance
                return False
            self._cycles[cycle.min_element] = cycle
            self._provenance[cycle.min_element] = provenance
            for pos, x in enumerate(cycle.elements):
                self._index[x] = (cycle.min_element, pos)
            self._max = max(self._max, cycle.max_element)
            return True

    def copy(self) -> "CycleCatalog":
        return CycleCatalog(self.map, self.cycles, [self._provenance[c.min_element] for c in self.cycles])

    def merge(self, other: "CycleCatalog") -> "CycleCatalog":
        """Set union of two catalogs for the same map (a new catalog)."""
        if other.map != self.map:
            raise CatalogError(f"cannot merge catalogs for {self.map.name} and {other.map.name}")
        merged = self.copy()
        for cycle in other.cycles:
            merged.register(cycle, other.provenance(cycle.min_element))
        return merged

    # -- persistence -----------------------------------------------------

    def to_dict(self) -> dict:
        cycles = self.cycles
        return {
            "map": {"a": str(self.map.a), "b": str(self.map.b), "name": self.map.name},
            "cycles": [[str(x) for x in c.elements] for c in cycles],
            "provenance": [self._provenance[c.min_element].to_dict() for c in cycles],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "CycleCatalog":
        try:
            m = d["map"]
            map = MapSpec(int(m["a"]), int(m["b"]), str(m["name"]))
            raw_cycles = [[int(x) for x in c] for c in d["cycles"]]
            raw_prov = d.get("provenance") or [{}] * len(raw_cycles)
        except (KeyError, TypeError, ValueError) as exc:
            raise CatalogError(f"malformed catalog document: {exc}") from exc
        if len(raw_prov) != len(raw_cycles):
            raise CatalogError("catalog provenance list does not match cycles")
        catalog = cls(map)
        for raw, prov in zip(raw_cycles, raw_prov):
            try:
                cycle = Cycle(tuple(raw))
                catalog.register(cycle, Provenance.from_dict(prov))
            except CycleError as exc:
                first = raw[0] if raw else None
                raise CatalogError(f"invalid cycle starting at {first}: {exc}") from exc
        return catalog

    def save(self, path: str | os.PathLike) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    @classmethod
    def load(cls, path: str | os.PathLike) -> "CycleCatalog":
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CatalogError(f"{path}: not valid JSON: {exc}") from exc
        return cls.from_dict(doc)


_FIXTURES: dict[str, list[list[int]]] = {
    "5n+1": [
        [26, 13, 66, 33, 166, 83, 416, 208, 104, 52],
        [86, 43, 216, 108, 54, 27, 136, 68, 34, 17],
    ],
    "3n+5": [
        [8, 4, 2, 1],
        [38, 19, 62, 31, 98, 49, 152, 76],
        [20, 10, 5],
        [37, 116, 58, 29, 92, 46, 23, 74],
    ],
    # the trivial cycle, visible only with stop_at_one disabled
    "3n+1": [[1, 4, 2]],
}


def fixture_catalog(map_name: str) -> CycleCatalog:
    """Catalog of the published cycles for one of the preset maps.

    Each loop is listed as originally tabulated and canonicalized (with a
    closure check) on every call.
    """
    if map_name not in _FIXTURES:
        raise KeyError(f"no fixture cycles for map {map_name!r}")
    map = preset(map_name)
    catalog = CycleCatalog(map)
    for loop in _FIXTURES[map_name]:
        catalog.register(canonicalize(map, loop), Provenance("fixture", None, "published table"))
    return catalog
