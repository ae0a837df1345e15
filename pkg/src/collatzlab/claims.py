"""Executable checks of the published observations about these maps.

Each verifier returns a :class:`ClaimResult`; counterexamples are data, not
exceptions.  The conjecture checks are bounded searches and count as
evidence only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .catalog import Cycle, CycleCatalog, fixture_catalog
from .maps import MapSpec, preset
from .orbit import DEFAULT_BOUNDS, Bounds, classify_orbit

__all__ = [
    "ClaimResult",
    "verify_pow2_same_cycle",
    "verify_10_pow2_entry",
    "verify_odd_digit_pattern",
    "verify_multiples_of_5",
    "verify_correspondence",
    "SAMPLE_MULTIPLES_OF_5",
]

SAMPLE_MULTIPLES_OF_5 = (225, 17585, 3698450)


@dataclass
class ClaimResult:
    claim_id: str
    tested_instances: int = 0
    failures: list[dict] = field(default_factory=list)
    measured_constants: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed


def verify_pow2_same_cycle(
    m: int,
    r_max: int,
    map: MapSpec | None = None,
    catalog: CycleCatalog | None = None,
    bounds: Bounds = DEFAULT_BOUNDS,
) -> ClaimResult:
    """Check that ``m * 2**r`` falls into the cycle of ``m`` for ``r = 0..r_max``.

    Besides the cycle identity, the first ``r`` steps from ``m * 2**r`` must
    be plain halvings landing exactly on ``m``.  Orbits are classified from
    scratch, without consulting the catalog.
    """
    map = map or preset("5n+1")
    catalog = catalog or fixture_catalog(map.name)
    expected = catalog.lookup(m)
    if expected is None:
        raise ValueError(f"{m} is not on a cataloged cycle of {map.name}")
    result = ClaimResult("pow2")
    for r in range(r_max + 1):
        n = m << r
        orbit = classify_orbit(map, n, bounds, retain=r + 1)
        result.tested_instances += 1
        if orbit.cycle_ref != expected:
            result.failures.append(
                {"m": m, "r": r, "n": n, "observed": orbit.cycle_ref, "expected": expected}
            )
            continue
        halvings = [m << (r - j) for j in range(r + 1)]
        if list(orbit.prefix[: r + 1]) != halvings:
            result.failures.append(
                {"m": m, "r": r, "n": n, "observed": list(orbit.prefix[: r + 1]), "expected": halvings}
            )
    return result


def verify_10_pow2_entry(r_max: int, bounds: Bounds = DEFAULT_BOUNDS) -> ClaimResult:
    """Measure when ``10 * 2**r`` enters the 13-cycle of 5n+1.

    Fits ``entry_steps = r + c``; ``c`` goes to ``measured_constants["offset"]``
    and the claim fails only if the cycle is wrong or ``c`` varies with ``r``.
    """
    map = preset("5n+1")
    target = fixture_catalog("5n+1").get(13)
    result = ClaimResult("entry")
    offsets = []
    for r in range(r_max + 1):
        n = 10 << r
        orbit = classify_orbit(map, n, bounds, retain="none")
        result.tested_instances += 1
        if orbit.cycle != target:
            result.failures.append({"r": r, "n": n, "observed": orbit.cycle_ref, "expected": 13})
            continue
        offsets.append((r, orbit.entry_steps - r))
    result.measured_constants["entry_steps"] = {r: c + r for r, c in offsets}
    distinct = sorted({c for _, c in offsets})
    if len(distinct) == 1:
        result.measured_constants["offset"] = distinct[0]
    elif distinct:
        c0 = offsets[0][1]
        for r, c in offsets:
            if c != c0:
                result.failures.append({"r": r, "n": 10 << r, "observed": c, "expected": c0})
    return result


def verify_odd_digit_pattern(catalog: CycleCatalog | Iterable[Cycle] | None = None) -> ClaimResult:
    """Every odd cycle element ends in the digit 3 or 7."""
    cycles = fixture_catalog("5n+1") if catalog is None else catalog
    result = ClaimResult("digits")
    for cycle in cycles:
        for x in cycle.elements:
            if x % 2 == 0:
                continue
            result.tested_instances += 1
            if x % 10 not in (3, 7):
                result.failures.append(
                    {"cycle_min": cycle.min_element, "element": x, "last_digit": x % 10}
                )
    return result


def verify_multiples_of_5(
    limit: int, extras: Iterable[int] = SAMPLE_MULTIPLES_OF_5, bounds: Bounds = DEFAULT_BOUNDS
) -> ClaimResult:
    """Bounded search for a multiple of 5 that misses the cycle [5, 20, 10] under 3n+5."""
    if limit < 5:
        raise ValueError(f"limit must be >= 5, got {limit}")
    map = preset("3n+5")
    target = (5, 20, 10)
    result = ClaimResult("mult5")
    seeds = list(range(5, limit + 1, 5)) + [s for s in extras if s > limit or s % 5]
    for seed in seeds:
        orbit = classify_orbit(map, seed, bounds, retain="none")
        result.tested_instances += 1
        if orbit.cycle is None or orbit.cycle.elements != target:
            result.failures.append(
                {
                    "seed": seed,
                    "classification": orbit.classification.value,
                    "observed": None if orbit.cycle is None else list(orbit.cycle.elements),
                    "expected": list(target),
                }
            )
    return result


def verify_correspondence(k_max: int, steps: int) -> ClaimResult:
    """Check ``T5(5k)[i] == 5 * T1(k)[i]`` pointwise for ``i = 0..steps``.

    ``T1`` is the 3n+1 trajectory and ``T5`` the 3n+5 trajectory, both
    iterated straight through 1.  Equality is exact integer equality.
    """
    if k_max < 1 or steps < 1:
        raise ValueError("k_max and steps must be >= 1")
    x_map, y_map = preset("3n+1"), preset("3n+5")
    xa, xb, ya, yb = x_map.a, x_map.b, y_map.a, y_map.b
    result = ClaimResult("correspondence")
    for k in range(1, k_max + 1):
        x, y = k, 5 * k
        result.tested_instances += 1
        for i in range(steps + 1):
            if y != 5 * x:
                result.failures.append({"k": k, "i": i, "x": x, "y": y, "expected": 5 * x})
                break
            x = xa * x + xb if x & 1 else x >> 1
            y = ya * y + yb if y & 1 else y >> 1
    return result
