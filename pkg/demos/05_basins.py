# Basins of attraction of the first zeros on a coarse grid.
# Run: python demos/05_basins.py   (ZETAFLOW_THREADS caps the worker count)

from zetaflow import flow

grid = flow.basin_grid((0.05, 0.95, 10.0, 32.0), 12, 22)
for i, z in enumerate(grid.zeros_registry):
    print(f"zero {i}: {z:.12g}")

# %%
# One text row per Im value, top row first; digits are registry indices.
for iy in reversed(range(grid.ny)):
    im = grid.cell_center(0, iy).imag
    row = "".join(str(lab) if lab >= 0 else "." for lab in grid.labels[:, iy])
    print(f"{im:6.2f}  {row}")
