"""Van der Waerden numbers by exhaustive depth-first search.

Prints the classic small numbers together with their extremal colorings
(the longest colorings with no monochromatic progression), then shows
what a budget-limited search reports.
"""

import time

from syndetic import dump_vdw_result, find_mono_ap, vdw_number, vdw_span

for colors, terms in [(1, 4), (2, 2), (2, 3), (2, 4), (3, 3)]:
    t0 = time.perf_counter()
    res = vdw_number(colors, terms)
    elapsed = time.perf_counter() - t0
    print(
        f"W({colors},{terms}) = {res.n}   "
        f"nodes={res.budget_spent}  time={elapsed:.3f}s"
    )
    print("  extremal:", " ".join(map(str, res.extremal.values)) or "(empty)")
    assert find_mono_ap(res.extremal, terms) is None

# The span used by the pair pipeline: indices 0..span force a progression
# one term longer than the requested step count.
for colors, steps in [(1, 1), (2, 1), (2, 2), (2, 3)]:
    sw = vdw_span(colors, steps)
    print(f"span(colors={colors}, steps={steps}) = {sw.span}")

# A tiny budget cannot finish; the result is flagged and the reported
# number is only the lower bound witnessed by the coloring found so far.
res = vdw_number(3, 4, budget=100_000)
print("\nbudget-limited W(3,4) attempt:")
print(dump_vdw_result(res), end="")
