"""Window sets and largeness scales, from the ground up.

Builds a handful of 1D sets, shows how the shifted union turns structured
gaps into long runs, and reads off the scale each set achieves.
"""

from syndetic import (
    Scale,
    WindowSet1D,
    contains_interval,
    is_ps_at_scale,
    periodic_set,
    ps_scale_1d,
    shifted_union_1d,
    striped_set,
    thick_blocks_set,
)

# Even numbers: gaps of two, so two shifts flatten them into a full run.
evens = periodic_set((0, 100), 2, [0])
union = shifted_union_1d(evens, 2)
print("evens:", evens)
print("  union of two shifts:", union)
print("  longest run:", ps_scale_1d(evens, 2))
print("  witness at (radius=2, length=50):", is_ps_at_scale(evens, Scale(2, 50)))

# One shift is not enough: the union keeps every other integer.
print("  longest run with one shift:", ps_scale_1d(evens, 1))

# A striped set: blocks of five members, then a jump of two.
stripes = striped_set((0, 100), 5, 2)
print("\nstripes:", stripes)
for radius in (1, 2, 3):
    print(f"  radius {radius}: longest run {ps_scale_1d(stripes, radius)}")

# Thick-but-not-syndetic: runs keep growing, and so do the gaps between
# them, so no fixed radius ever flattens the whole window.
blocks = thick_blocks_set((0, 2000), 2, 3)
print("\nthick blocks:", blocks)
print("  a 12-run starts at:", contains_interval(blocks, 12))
for radius in (3, 6, 12):
    print(f"  radius {radius}: longest run {ps_scale_1d(blocks, radius)}")

# Out-of-window queries are errors, never silently false.
s = WindowSet1D.from_members(0, 10, [3, 4])
try:
    s.contains(10)
except Exception as exc:
    print("\nboundary policy:", exc)
