# %% [markdown]
# # Scanning a range of seeds
#
# The spreadsheet workflow: classify every seed in a range, count outcomes
# per cycle, list undetermined seeds, and note any new cycles.

# %%
from collatzlab import Bounds, fixture_catalog, preset, scan_range
from collatzlab.reporting import records_to_csv, summary_text

# %% 3n+5 on 1..100, iterating through 1 so its cycle shows up too
report, catalog = scan_range(preset("3n+5"), 1, 100, Bounds(stop_at_one=False))
print(summary_text(report))

# %% widening the range turns up cycles beyond the four listed ones
report, catalog = scan_range(preset("3n+5"), 1, 1000, Bounds(stop_at_one=False),
                             fixture_catalog("3n+5"))
for cycle, prov in report.catalog_delta:
    print("new:", cycle.min_element, "length", cycle.length, "first seed", prov.seed)

# %% 5n+1: a mix of all three outcomes
report, _ = scan_range(preset("5n+1"), 1, 100, workers=2)
print(summary_text(report))

# %% plot-ready columns
print(records_to_csv(report.records[:10]))
