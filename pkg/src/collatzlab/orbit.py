"""Orbit classification with bounded, constant-memory cycle detection.

An orbit ends in exactly one of three ways: it reaches 1 (when stopping at
one), it provably repeats a value, or it exhausts a step or magnitude bound.
The last case is reported as ``Undetermined`` together with the bound that
tripped; nothing here ever labels an orbit divergent.

Repetition is found with Brent's algorithm, so memory does not grow with the
orbit length unless the caller asks for the trajectory to be retained.  The
results are defined to match a full-history iterator that checks, at every
index ``i``: ``x == 1`` (when stopping at one), then ``x`` seen before, then
``x`` too large, then ``i == max_steps``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Sequence, Union

from .catalog import Cycle, CycleCatalog, canonicalize
from .maps import MapError, MapSpec, step

if TYPE_CHECKING:
    from .scanner import Memo

__all__ = [
    "Classification",
    "Bounds",
    "BoundsError",
    "DEFAULT_BOUNDS",
    "Orbit",
    "classify_orbit",
    "detect_cycle",
]

MAX_STEPS = "max_steps"
MAX_VALUE_BITS = "max_value_bits"

Retain = Union[str, int]


class Classification(str, Enum):
    REACHES_ONE = "ReachesOne"
    ENTERS_CYCLE = "EntersCycle"
    UNDETERMINED = "Undetermined"

    def __str__(self) -> str:
        return self.value


class BoundsError(ValueError):
    pass


@dataclass(frozen=True)
class Bounds:
    """Iteration limits.

    ``max_steps`` caps the number of map applications; ``max_value_bits`` caps
    the bit length of any visited value.  With ``stop_at_one`` the value 1 is
    terminal even though it lies on a cycle of every map.
    """

    max_steps: int = 100_000
    max_value_bits: int = 4096
    stop_at_one: bool = True

    def __post_init__(self) -> None:
        if not isinstance(self.max_steps, int) or self.max_steps < 1:
            raise BoundsError(f"max_steps must be >= 1, got {self.max_steps!r}")
        if not isinstance(self.max_value_bits, int) or self.max_value_bits < 8:
            raise BoundsError(f"max_value_bits must be >= 8, got {self.max_value_bits!r}")

    def covers(self, other: "Bounds") -> bool:
        """True if results computed under ``self`` can answer queries under ``other``."""
        return (
            self.stop_at_one == other.stop_at_one
            and self.max_steps >= other.max_steps
            and self.max_value_bits >= other.max_value_bits
        )


DEFAULT_BOUNDS = Bounds()


@dataclass(frozen=True)
class Orbit:
    """Classified trajectory of one seed.

    ``steps_to_termination`` is the index at which iteration stopped: the
    index of the first 1, of the first repeated value, or of the bound hit.
    ``entry_steps`` is the index of the first value lying on the cycle.
    ``prefix`` holds the retained part of ``seed, step(seed), ...``.
    ``short_circuited`` marks results finished from a known cycle or a memo
    entry instead of by full iteration; the numbers are exact either way but
    ``prefix`` then stops at the point of the shortcut.
    """

    seed: int
    classification: Classification
    steps_to_termination: int
    peak: int
    cycle: Cycle | None = None
    entry_steps: int | None = None
    bound: str | None = None
    prefix: tuple[int, ...] = field(default=(), repr=False)
    short_circuited: bool = False

    @property
    def cycle_ref(self) -> int | None:
        return None if self.cycle is None else self.cycle.min_element

    @property
    def reaches_one(self) -> bool:
        return self.classification is Classification.REACHES_ONE

    @property
    def enters_cycle(self) -> bool:
        return self.classification is Classification.ENTERS_CYCLE


def _retention_limit(retain: Retain) -> int | None:
    if retain == "full":
        return None
    if retain == "none":
        return 0
    if isinstance(retain, int) and not isinstance(retain, bool) and retain >= 0:
        return retain
    raise ValueError(f"retain must be 'full', 'none' or a non-negative int, got {retain!r}")


def _iterate(
    map: MapSpec,
    seed: int,
    bounds: Bounds,
    known: Sequence[CycleCatalog] = (),
    memo: "Memo | None" = None,
    retain: Retain = "full",
) -> Orbit:
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise TypeError(f"seed must be an int, got {type(seed).__name__}")
    if seed < 1:
        raise MapError(f"seed must be positive, got {seed}")
    if not isinstance(bounds, Bounds):
        raise BoundsError(f"expected Bounds, got {type(bounds).__name__}")
    for cat in known:
        if cat.map != map:
            raise ValueError(f"catalog for {cat.map.name} used with map {map.name}")

    a, b = map.a, map.b
    max_steps, max_bits, stop = bounds.max_steps, bounds.max_value_bits, bounds.stop_at_one
    keep = _retention_limit(retain)
    known = [c for c in known if len(c)]
    entries = memo.entries if memo is not None and memo.entries else None
    memo_max = memo.max_key if entries else 0

    prefix: list[int] = []
    peak = seed

    def done(cls, steps, *, cycle=None, entry=None, bound=None, short=False, upto=None):
        kept = prefix if upto is None else prefix[:upto]
        return Orbit(seed, cls, steps, peak, cycle, entry, bound, tuple(kept), short)

    def undetermined_steps():
        return done(Classification.UNDETERMINED, max_steps, bound=MAX_STEPS, upto=max_steps + 1)

    # Brent: tortoise sits at a fixed index, hare walks the trajectory.
    tortoise, power, lam = seed, 1, 1
    overshoot_cap = 4 * max_steps + 4
    x, i = seed, 0
    while True:
        inside = i <= max_steps
        if inside:
            if keep is None or len(prefix) < keep:
                prefix.append(x)
            if x > peak:
                peak = x

        if stop and x == 1:
            return done(Classification.REACHES_ONE, i) if inside else undetermined_steps()

        for cat in known:
            hit = cat.locate(x)
            if hit is not None:
                if not inside:
                    return undetermined_steps()
                cycle, pos = hit
                return _walk_known_cycle(i, cycle, pos, bounds, prefix, keep, peak, seed)

        if inside and entries is not None and x <= memo_max:
            e = entries.get(x)
            if e is not None:
                res = _compose(i, e, memo, bounds, peak, seed, prefix)
                if res is not None:
                    return res

        if x.bit_length() > max_bits:
            if inside:
                return done(Classification.UNDETERMINED, i, bound=MAX_VALUE_BITS)
            return undetermined_steps()

        if i >= 1:
            if x == tortoise:
                break
            if lam == power:
                tortoise, power, lam = x, power * 2, 0
            lam += 1
        if i >= overshoot_cap:
            return undetermined_steps()
        x = a * x + b if x & 1 else x >> 1
        i += 1

    # lam is the cycle length; find the index of the first in-cycle value.
    hare = seed
    for _ in range(lam):
        hare = step(map, hare)
    first, mu = seed, 0
    while first != hare:
        first, hare, mu = step(map, first), step(map, hare), mu + 1
    if mu + lam > max_steps:
        return undetermined_steps()
    loop = [first]
    for _ in range(lam - 1):
        loop.append(step(map, loop[-1]))
    cycle = canonicalize(map, loop)
    return done(Classification.ENTERS_CYCLE, mu + lam, cycle=cycle, entry=mu, upto=mu + lam + 1)


def _walk_known_cycle(i, cycle, pos, bounds, prefix, keep, peak, seed) -> Orbit:
    # x_i is the first visited value on a known cycle; the rest of the
    # trajectory is read off the cycle, checked against the same bounds.
    elems = cycle.elements
    n = len(elems)
    for o in range(n + 1):
        idx = i + o
        v = elems[(pos + o) % n]
        if idx > bounds.max_steps:
            return Orbit(seed, Classification.UNDETERMINED, bounds.max_steps, peak, None, None,
                         MAX_STEPS, tuple(prefix), True)
        if o > 0:
            if keep is None or len(prefix) < keep:
                prefix.append(v)
            if v > peak:
                peak = v
            if bounds.stop_at_one and v == 1:
                return Orbit(seed, Classification.REACHES_ONE, idx, peak, None, None, None,
                             tuple(prefix), True)
        if o == n:
            return Orbit(seed, Classification.ENTERS_CYCLE, idx, peak, cycle, i, None,
                         tuple(prefix), True)
        if v.bit_length() > bounds.max_value_bits:
            return Orbit(seed, Classification.UNDETERMINED, idx, peak, None, None,
                         MAX_VALUE_BITS, tuple(prefix), True)
    raise AssertionError("unreachable")


def _compose(i, e: Orbit, memo, bounds, peak, seed, prefix) -> Orbit | None:
    # x_i == e.seed; splice its cached result onto the first i steps when
    # that gives exactly what full iteration would.
    total = i + e.steps_to_termination
    if total > bounds.max_steps:
        return None
    if e.classification is Classification.UNDETERMINED:
        if e.bound != MAX_VALUE_BITS or memo.bounds.max_value_bits != bounds.max_value_bits:
            return None
    elif e.peak.bit_length() > bounds.max_value_bits:
        return None
    entry = None if e.entry_steps is None else i + e.entry_steps
    return Orbit(seed, e.classification, total, max(peak, e.peak), e.cycle, entry, e.bound,
                 tuple(prefix), True)


def classify_orbit(
    map: MapSpec,
    seed: int,
    bounds: Bounds = DEFAULT_BOUNDS,
    *,
    catalog: CycleCatalog | None = None,
    retain: Retain = "full",
) -> Orbit:
    """Classify the orbit of ``seed`` under ``map``.

    Args:
        map: The map to iterate.
        seed: Starting value, >= 1.
        bounds: Step/magnitude limits and the stop-at-one convention.
        catalog: Optional known cycles of ``map``; the first visited value on
            one of them settles the result without further arithmetic.
        retain: ``"full"``, ``"none"``, or the number of leading trajectory
            values to keep in ``Orbit.prefix``.

    Returns:
        The classified Orbit.
    """
    known = [catalog] if catalog is not None else []
    return _iterate(map, seed, bounds, known, None, retain)


def detect_cycle(
    map: MapSpec, start: int, bounds: Bounds = DEFAULT_BOUNDS
) -> tuple[list[int], int] | None:
    """Find the loop the trajectory of ``start`` falls into.

    Returns the loop in trajectory order, beginning with the first in-cycle
    value, and the number of steps from ``start`` to that value.  Returns
    None if the orbit stops at 1 or exhausts ``bounds`` first.
    """
    orbit = _iterate(map, start, bounds, (), None, "none")
    if orbit.cycle is None:
        return None
    first = start
    for _ in range(orbit.entry_steps):
        first = step(map, first)
    return orbit.cycle.rotated_to(first), orbit.entry_steps
