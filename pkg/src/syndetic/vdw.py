"""Exhaustive search for van der Waerden numbers and monochromatic APs.

W(colors, terms) is the least N such that every coloring of positions
0..N-1 with that many colors contains a monochromatic arithmetic
progression of the given number of terms.  The search is a depth-first
walk over the tree of progression-free prefixes: validity is closed under
truncation, so W equals one plus the deepest valid prefix, and the first
coloring found at that depth (children in ascending color order, first
position pinned to color 1) is the lexicographically least extremal one.

Budgets are node counts -- one node per attempted color placement.  A
result with ``exhaustive=False`` only certifies the lower bound given by
its extremal coloring; no literature value is ever substituted.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExhaustedError",
    "APIndex",
    "MonoAP",
    "Coloring",
    "VdwResult",
    "SpanResult",
    "find_mono_ap",
    "vdw_number",
    "vdw_span",
]

DEFAULT_BUDGET = 1_000_000_000


class BudgetExhaustedError(RuntimeError):
    """An operation that needs an exhaustive search ran out of nodes."""


@dataclass(frozen=True)
class APIndex:
    """Index-space arithmetic progression: start + i*step for i < terms."""

    start: int
    step: int
    terms: int

    def __post_init__(self) -> None:
        if self.start < 0:
            raise ValueError(f"start must be >= 0, got {self.start}")
        if self.step < 1:
            raise ValueError(f"step must be >= 1, got {self.step}")
        if self.terms < 1:
            raise ValueError(f"terms must be >= 1, got {self.terms}")

    def indices(self) -> tuple[int, ...]:
        return tuple(self.start + i * self.step for i in range(self.terms))


@dataclass(frozen=True)
class MonoAP:
    ap: APIndex
    color: int


@dataclass(frozen=True)
class Coloring:
    """Coloring of positions 0..n-1 with colors 1..num_colors."""

    values: tuple[int, ...]
    num_colors: int

    def __post_init__(self) -> None:
        if self.num_colors < 1:
            raise ValueError(f"num_colors must be >= 1, got {self.num_colors}")
        if any(v < 1 or v > self.num_colors for v in self.values):
            raise ValueError("color values must lie in 1..num_colors")

    @property
    def n(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class VdwResult:
    """Outcome of a van der Waerden search.

    With exhaustive=True, n is the exact number; otherwise n is only the
    lower bound witnessed by ``extremal`` (a progression-free coloring of
    n-1 positions, verified before being returned).
    """

    n: int
    extremal: Coloring
    exhaustive: bool
    budget_spent: int


@dataclass(frozen=True)
class SpanResult:
    """Index span 0..span whose colorings all force a long progression."""

    span: int
    exhaustive: bool
    budget_spent: int


def find_mono_ap(coloring: Coloring, terms: int) -> MonoAP | None:
    """Least (step, start) monochromatic progression with ``terms`` terms.

    Returns None when no such progression exists (in particular whenever
    terms exceeds n).  The hit is re-read from the coloring before being
    returned.
    """
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    vals = coloring.values
    n = len(vals)
    if terms == 1:
        if n == 0:
            return None
        return MonoAP(APIndex(0, 1, 1), vals[0])
    span = (terms - 1)
    max_step = (n - 1) // span if n else 0
    for step in range(1, max_step + 1):
        reach = span * step
        for start in range(0, n - reach):
            c = vals[start]
            if all(vals[start + j * step] == c for j in range(1, terms)):
                hit = APIndex(start, step, terms)
                assert all(vals[i] == c for i in hit.indices())
                return MonoAP(hit, c)
    return None


# tails[i] = one bitmask per step d: positions i-d, ..., i-(terms-1)d.
# Placing color c at position i closes a progression iff some tail is
# entirely inside c's mask.  Tails depend only on (terms, i), so they are
# shared across searches.
_TAILS_CACHE: dict[int, list[tuple[int, ...]]] = {}

_EXHAUSTIVE_CACHE: dict[tuple[int, int], VdwResult] = {}


def _tails(terms: int, upto: int) -> list[tuple[int, ...]]:
    tails = _TAILS_CACHE.setdefault(terms, [])
    while len(tails) <= upto:
        i = len(tails)
        if terms == 1:
            tails.append((0,))
            continue
        ts = []
        d = 1
        while (terms - 1) * d <= i:
            t = 0
            for a in range(1, terms):
                t |= 1 << (i - a * d)
            ts.append(t)
            d += 1
        tails.append(tuple(ts))
    return tails


def vdw_number(colors: int, terms: int, budget: int = DEFAULT_BUDGET) -> VdwResult:
    """Exhaustive van der Waerden number with extremal coloring.

    Exhaustive results are memoized on (colors, terms); a memoized result
    is reused only when the caller's budget would have covered the
    original search, so budget semantics are unchanged.
    """
    if colors < 1:
        raise ValueError(f"colors must be >= 1, got {colors}")
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")

    cached = _EXHAUSTIVE_CACHE.get((colors, terms))
    if cached is not None and cached.budget_spent <= budget:
        return cached

    tails = _tails(terms, 0)
    masks = [0] * (colors + 1)
    seq: list[int] = []
    best: list[int] = []
    pending = [1]
    nodes = 0
    exhausted = False

    while pending:
        i = len(seq)
        c = pending[-1]
        limit = 1 if i == 0 else colors
        if c > limit:
            pending.pop()
            if not seq:
                break
            prev = seq.pop()
            masks[prev] ^= 1 << len(seq)
            pending[-1] = prev + 1
            continue
        if nodes >= budget:
            exhausted = True
            break
        nodes += 1
        if i >= len(tails):
            tails = _tails(terms, i)
        m = masks[c]
        closed = False
        for t in tails[i]:
            if m & t == t:
                closed = True
                break
        if closed:
            pending[-1] = c + 1
        else:
            masks[c] |= 1 << i
            seq.append(c)
            if len(seq) > len(best):
                best = seq.copy()
            pending.append(1)

    extremal = Coloring(tuple(best), colors)
    hit = find_mono_ap(extremal, terms)
    assert hit is None, "extremal coloring fails its own verification"
    result = VdwResult(
        n=len(best) + 1,
        extremal=extremal,
        exhaustive=not exhausted,
        budget_spent=nodes,
    )
    if result.exhaustive:
        _EXHAUSTIVE_CACHE[(colors, terms)] = result
    return result


def vdw_span(colors: int, steps: int, budget: int = DEFAULT_BUDGET) -> SpanResult:
    """Span such that any coloring of indices 0..span contains a
    monochromatic progression with steps+1 terms: W(colors, steps+1) - 1."""
    res = vdw_number(colors, steps + 1, budget)
    return SpanResult(
        span=res.n - 1, exhaustive=res.exhaustive, budget_spent=res.budget_spent
    )
