# %% [markdown]
# # Cycle catalogs
#
# A loop is stored rotated to its smallest element, keeping trajectory
# order.  Catalogs are per map, disjoint, and persist as JSON with all
# integers written as decimal strings.

# %%
import tempfile
from pathlib import Path

from collatzlab import CycleCatalog, canonicalize, fixture_catalog, preset

five = preset("5n+1")

# %% the same loop listed from different starting points canonicalizes once
a = canonicalize(five, [26, 13, 66, 33, 166, 83, 416, 208, 104, 52])
b = canonicalize(five, [166, 83, 416, 208, 104, 52, 26, 13, 66, 33])
print(a == b, a.elements)

# %% published cycles, each checked for closure on load
for name in ("5n+1", "3n+5", "3n+1"):
    cat = fixture_catalog(name)
    print(name, [(c.min_element, c.length) for c in cat])

# %% lookups answer "which cycle is this value on?"
cat = fixture_catalog("5n+1")
print(cat.lookup(416), cat.lookup(100))

# %% round trip through a file
with tempfile.TemporaryDirectory() as d:
    path = Path(d) / "5n1.json"
    cat.save(path)
    print(path.read_text()[:200], "...")
    print(CycleCatalog.load(path) == cat)
