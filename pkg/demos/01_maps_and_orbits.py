# %% [markdown]
# # Maps and orbits
#
# Three maps share the even branch n -> n/2 and differ in the odd branch:
# 3n+1, 5n+1 and 3n+5.  Every orbit ends one of three ways.

# %%
from collatzlab import Bounds, classify_orbit, detect_cycle, make_map, preset

collatz, five, three_five = preset("3n+1"), preset("5n+1"), preset("3n+5")

# %% 3n+1 from 7 reaches 1 after 16 steps
o = classify_orbit(collatz, 7)
print(o.classification, o.steps_to_termination, list(o.prefix))

# %% 5n+1 from 5 falls into a ten-element loop after one step
o = classify_orbit(five, 5)
print(o.classification, "entry", o.entry_steps, "cycle", o.cycle.elements)

# %% 5n+1 from 7 keeps growing; the bound that stopped it is recorded
o = classify_orbit(five, 7, retain="none")
print(o.classification, o.bound, "after", o.steps_to_termination, "steps;",
      "peak has", o.peak.bit_length(), "bits")

# %% stopping at 1 is a convention; switch it off to see the cycle through 1
for m in (collatz, five, three_five):
    loop, entry = detect_cycle(m, 1, Bounds(stop_at_one=False))
    print(m.name, loop)

# %% any odd (a, b) pair works
seven_three = make_map(7, 3)
print(classify_orbit(seven_three, 9, Bounds(max_steps=500), retain="none"))
