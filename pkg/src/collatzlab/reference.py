"""Naive full-history iterator, kept as an independent oracle.

This is the straightforward "append every value to a list until it hits 1
or the list gets too long" loop, extended with a dictionary of visited
values so that a repeat can be recognized.  It shares no code with
:mod:`collatzlab.orbit` beyond the definition of the map parameters.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class NaiveResult:
    classification: str  # "ReachesOne" | "EntersCycle" | "Undetermined"
    steps: int
    peak: int
    cycle: tuple[int, ...] | None  # rotated to the minimum
    entry_steps: int | None
    bound: str | None
    trajectory: list


def naive_orbit(
    a: int,
    b: int,
    seed: int,
    max_steps: int = 100_000,
    max_value_bits: int = 4096,
    stop_at_one: bool = True,
) -> NaiveResult:
    history: list[int] = []
    seen: dict[int, int] = {}
    x = seed
    while True:
        i = len(history)
        history.append(x)
        if stop_at_one and x == 1:
            return NaiveResult("ReachesOne", i, max(history), None, None, None, history)
        if x in seen:
            mu = seen[x]
            loop = history[mu:i]
            k = loop.index(min(loop))
            cycle = tuple(loop[k:] + loop[:k])
            return NaiveResult("EntersCycle", i, max(history), cycle, mu, None, history)
        if x.bit_length() > max_value_bits:
            return NaiveResult("Undetermined", i, max(history), None, None, "max_value_bits", history)
        if i == max_steps:
            return NaiveResult("Undetermined", i, max(history), None, None, "max_steps", history)
        seen[x] = i
        if x % 2 == 0:
            x = x // 2
        else:
            x = a * x + b
