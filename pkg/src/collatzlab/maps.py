"""Halve-if-even, ``a*n + b``-if-odd integer maps."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["MapSpec", "make_map", "preset", "step", "PRESETS", "MapError"]


class MapError(ValueError):
    """Invalid map parameters or a value outside a map's domain."""


@dataclass(frozen=True)
class MapSpec:
    """An odd branch ``a*n + b`` paired with the shared even branch ``n // 2``.

    Both ``a`` and ``b`` must be positive and odd, so every odd step lands on
    an even number and is followed by at least one halving.
    """

    a: int
    b: int
    name: str

    def __post_init__(self) -> None:
        for field, value in (("a", self.a), ("b", self.b)):
            if isinstance(value, bool) or not isinstance(value, int):
                raise MapError(f"{field} must be an integer, got {value!r}")
            if value < 1:
                raise MapError(f"{field} must be positive, got {value}")
            if value % 2 == 0:
                raise MapError(f"{field} must be odd, got {value}")
        if not self.name:
            raise MapError("name must be nonempty")

    def __call__(self, n: int) -> int:
        return step(self, n)

    def __str__(self) -> str:
        return self.name


def make_map(a: int, b: int, name: str | None = None) -> MapSpec:
    """Build a validated map; ``name`` defaults to ``"{a}n+{b}"``."""
    return MapSpec(a, b, name if name is not None else f"{a}n+{b}")


PRESETS: dict[str, MapSpec] = {
    "3n+1": MapSpec(3, 1, "3n+1"),
    "5n+1": MapSpec(5, 1, "5n+1"),
    "3n+5": MapSpec(3, 5, "3n+5"),
}


def preset(name: str) -> MapSpec:
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(PRESETS)
        raise MapError(f"unknown map preset {name!r} (known: {known})") from None


def step(map: MapSpec, n: int) -> int:
    """Apply the map once. ``n`` must be a positive integer."""
    if n < 1:
        raise MapError(f"map is defined on positive integers, got {n}")
    if n & 1:
        return map.a * n + map.b
    return n >> 1
