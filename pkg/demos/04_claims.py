# %% [markdown]
# # Checking the observations
#
# Each check returns a ClaimResult with the number of tested instances and
# any counterexamples.  The conjecture checks are bounded searches.

# %%
from collatzlab import (
    fixture_catalog,
    verify_10_pow2_entry,
    verify_correspondence,
    verify_multiples_of_5,
    verify_odd_digit_pattern,
    verify_pow2_same_cycle,
)

# %% m * 2^r lands on the cycle of m after r halvings
for m in (13, 17, 416):
    r = verify_pow2_same_cycle(m, 20)
    print(m, r.passed, r.tested_instances)

# %% when does 10 * 2^r reach the cycle?  the offset is measured, not assumed
r = verify_10_pow2_entry(10)
print(r.passed, r.measured_constants)

# %% odd cycle elements end in 3 or 7
print(verify_odd_digit_pattern(fixture_catalog("5n+1")))

# %% multiples of 5 under 3n+5
r = verify_multiples_of_5(10_000)
print(r.passed, r.tested_instances)

# %% 3n+5 on 5k shadows 3n+1 on k, step for step
r = verify_correspondence(2000, 500)
print(r.passed, r.tested_instances)
