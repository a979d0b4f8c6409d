"""Constructive pipeline from a 1D piecewise syndetic set to a 2D set of
arithmetic-progression pairs, with a re-checkable certificate.

The chain is: pick the shift radius's union and its longest run; compute
the index span forced by the van der Waerden number; collect all (start,
step) pairs whose whole probe progression lands in the union; label every
pair with the first (shift, stride, offset) triple whose sub-progression
verifies inside the input set; keep the label class with the best 2D
scale; push it through the affine map (start, step) -> (start +
offset*step + shift, stride*step).  Every pair (a, d) of the image then
satisfies a + i*d in S for i = 0..steps, which the certificate module
re-derives from scratch.

All stages are pure functions on immutable values; per-class scoring may
fan out over threads without changing any output.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .certificate import VERSION_TAG, FgCertificate, set_digest
from .vdw import (
    DEFAULT_BUDGET,
    BudgetExhaustedError,
    Coloring,
    find_mono_ap,
    vdw_number,
    vdw_span,
)
from .windows import (
    Scale,
    WindowSet1D,
    WindowSet2D,
    contains_interval,
    is_ps_at_scale,
    max_run_length,
    ps_scale_1d,
    ps_scale_2d,
    shifted_union_1d,
)

__all__ = [
    "ConstructionError",
    "ScalePreconditionError",
    "PhiSearchError",
    "PartitionError",
    "ColorTriple",
    "AffineMap2D",
    "APPair",
    "PairSet",
    "PartitionWitness",
    "progression_pairs",
    "verified_triple",
    "color_classes",
    "pigeonhole_extract",
    "affine_image",
    "fg_construct",
    "find_nontrivial_ap",
    "partition_extract",
]


class ConstructionError(RuntimeError):
    """The pipeline cannot proceed on this input."""


class ScalePreconditionError(ConstructionError):
    """Input set misses the required largeness scale; names the shortfall."""

    def __init__(self, radius: int, required: int, achieved: int):
        super().__init__(
            f"input is not piecewise syndetic at radius {radius} with run "
            f"length >= {required} (achieved {achieved})"
        )
        self.radius = radius
        self.required = required
        self.achieved = achieved


class PhiSearchError(ConstructionError):
    """No verified triple exists for a pair: the span was not a valid
    van der Waerden witness for this input."""


class PartitionError(ValueError):
    """The given cells do not partition the input set."""


@dataclass(frozen=True)
class ColorTriple:
    """Label of a pair: probe start + (offset + i*stride)*step + shift
    must be a member of the input set for i = 0..steps."""

    offset: int
    stride: int
    shift: int

    def sort_key(self) -> tuple[int, int, int]:
        # label assignment scans shift-major, so "least triple" means this
        return (self.shift, self.stride, self.offset)


@dataclass(frozen=True)
class AffineMap2D:
    """(first, second) -> (first + shear*second + shift, scale*second)."""

    shear: int
    shift: int
    scale: int

    def __post_init__(self) -> None:
        if self.scale == 0:
            raise ValueError("scale must be nonzero")


@dataclass(frozen=True)
class APPair:
    """Value-space progression start and step; consumers verify membership."""

    start: int
    step: int


@dataclass(frozen=True)
class PairSet:
    """Pairs whose whole probe progression lies in the shifted union.

    ``boundary_excluded`` counts box pairs that were dropped because some
    probe left the union's window; near the boundary the set is therefore
    conservative, never optimistic.
    """

    pairs: WindowSet2D
    boundary_excluded: int


@dataclass(frozen=True)
class PartitionWitness:
    """Cell index plus the re-verified scale it achieves."""

    index: int
    scale: Scale
    start: int
    scores: tuple[int, ...]


def _triples(radius: int, span: int, steps: int):
    """All candidate triples, least first: shift-major, then stride, then
    offset.  Only strides and offsets whose progression fits in 0..span."""
    for shift in range(1, radius + 1):
        for stride in range(1, span // steps + 1):
            for offset in range(0, span - steps * stride + 1):
                yield ColorTriple(offset, stride, shift)


def progression_pairs(
    s: WindowSet1D, radius: int, span: int, box: tuple[int, int, int, int]
) -> PairSet:
    """All (start, step) pairs in the box whose probes start + i*step for
    i = 0..span are members of the shifted union at this radius."""
    if span < 1:
        raise ValueError(f"span must be >= 1, got {span}")
    x_lo, x_hi, y_lo, y_hi = (int(v) for v in box)
    u = shifted_union_1d(s, radius)
    starts = np.arange(x_lo, x_hi, dtype=np.int64)[:, None]
    steps_ax = np.arange(y_lo, y_hi, dtype=np.int64)[None, :]
    feasible = np.ones((x_hi - x_lo, y_hi - y_lo), dtype=bool)
    member = np.ones_like(feasible)
    for i in range(span + 1):
        probes = starts + i * steps_ax
        inside = (probes >= u.lo) & (probes < u.hi)
        feasible &= inside
        member &= u.members_at(probes, outside="false")
    if not feasible.any():
        raise ConstructionError(
            f"box {box} lies entirely outside the feasible probing range of "
            f"window [{u.lo}, {u.hi}) at span {span}"
        )
    pairs = WindowSet2D(x_lo, x_hi, y_lo, y_hi, member)
    return PairSet(pairs=pairs, boundary_excluded=int((~feasible).sum()))


def verified_triple(
    s: WindowSet1D,
    start: int,
    step: int,
    *,
    radius: int,
    span: int,
    steps: int,
    union: WindowSet1D | None = None,
) -> ColorTriple:
    """Reference per-pair labeling: the least triple whose sub-progression
    verifies by direct membership in s.

    Candidates with any probe outside s's window are rejected, so the
    returned triple is always fully verified.  Raises PhiSearchError when
    nothing verifies, which means the span was not a valid witness.
    """
    u = union if union is not None else shifted_union_1d(s, radius)
    for i in range(span + 1):
        p = start + i * step
        if not (u.covers(p) and u.contains(p)):
            raise ValueError(
                f"pair ({start}, {step}) is not a progression pair: probe {p} "
                f"misses the shifted union"
            )
    for triple in _triples(radius, span, steps):
        ok = True
        for i in range(steps + 1):
            p = start + (triple.offset + i * triple.stride) * step + triple.shift
            if not (s.covers(p) and s.contains(p)):
                ok = False
                break
        if ok:
            return triple
    raise PhiSearchError(
        f"no verified triple for pair ({start}, {step}); span {span} is not a "
        f"valid van der Waerden witness here"
    )


def color_classes(
    s: WindowSet1D,
    pairs: WindowSet2D,
    *,
    radius: int,
    span: int,
    steps: int,
) -> dict[ColorTriple, WindowSet2D]:
    """Partition the pair set by its least verified triple.

    Vectorized over pairs; agrees point for point with verified_triple.
    Only nonempty classes appear as keys, so the values partition the
    input and their cardinalities sum to its count.
    """
    pts = pairs.points()
    out: dict[ColorTriple, WindowSet2D] = {}
    if pts.shape[0] == 0:
        return out
    starts = pts[:, 0]
    steps_col = pts[:, 1]
    remaining = np.arange(pts.shape[0])
    groups: list[tuple[ColorTriple, np.ndarray]] = []
    for triple in _triples(radius, span, steps):
        if remaining.size == 0:
            break
        a = starts[remaining]
        d = steps_col[remaining]
        ok = np.ones(remaining.size, dtype=bool)
        for i in range(steps + 1):
            probes = a + (triple.offset + i * triple.stride) * d + triple.shift
            ok &= s.members_at(probes, outside="false")
            if not ok.any():
                break
        if ok.any():
            groups.append((triple, remaining[ok]))
            remaining = remaining[~ok]
    if remaining.size:
        a = int(starts[remaining[0]])
        d = int(steps_col[remaining[0]])
        raise PhiSearchError(
            f"no verified triple for pair ({a}, {d}); span {span} is not a "
            f"valid van der Waerden witness here"
        )
    for triple, idx in groups:
        out[triple] = WindowSet2D.from_arrays(
            *pairs.box, starts[idx], steps_col[idx]
        )
    return out


def pigeonhole_extract(
    classes: dict[ColorTriple, WindowSet2D],
    radius_2d: int,
    workers: int = 1,
) -> tuple[ColorTriple, WindowSet2D, int]:
    """Class with the best 2D scale at radius_2d; ties go to the least
    triple.  Returns (triple, class, achieved scale)."""
    if not classes:
        raise ValueError("no classes to extract from")
    items = sorted(classes.items(), key=lambda kv: kv[0].sort_key())
    sets = [cls for _, cls in items]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            scores = list(pool.map(lambda c: ps_scale_2d(c, radius_2d), sets))
    else:
        scores = [ps_scale_2d(c, radius_2d) for c in sets]
    if max(scores) == 0 and all(c.is_empty() for c in sets):
        raise ValueError("all classes are empty")
    best = max(range(len(items)), key=lambda i: (scores[i], -i))
    # max with -i keeps the first (least) triple among tied scores
    triple, chosen = items[best]
    return triple, chosen, scores[best]


def affine_image(m: WindowSet2D, amap: AffineMap2D) -> WindowSet2D:
    """Image of the set under the map, on the bounding box of the images.

    The map is injective for nonzero scale, so the image count equals the
    preimage count.
    """
    pts = m.points()
    if pts.shape[0] == 0:
        corners_x = np.array([m.x_lo, m.x_lo, m.x_hi - 1, m.x_hi - 1], dtype=np.int64)
        corners_y = np.array([m.y_lo, m.y_hi - 1, m.y_lo, m.y_hi - 1], dtype=np.int64)
        u = corners_x + amap.shear * corners_y + amap.shift
        v = amap.scale * corners_y
        return WindowSet2D.empty(
            int(u.min()), int(u.max()) + 1, int(v.min()), int(v.max()) + 1
        )
    u = pts[:, 0] + amap.shear * pts[:, 1] + amap.shift
    v = amap.scale * pts[:, 1]
    return WindowSet2D.from_arrays(
        int(u.min()), int(u.max()) + 1, int(v.min()), int(v.max()) + 1, u, v
    )


def _auto_box(
    run_start: int, run_len: int, span: int, box_area: int, step_cap: int
) -> tuple[int, int, int, int]:
    half = max(1, min(step_cap, (run_len - 1) // (2 * max(span, 1))))
    rows = 2 * half + 1
    width = max(1, min(run_len, box_area // rows))
    return (run_start, run_start + width, -half, half + 1)


def fg_construct(
    s: WindowSet1D,
    radius: int,
    steps: int,
    radius_2d: int | None = None,
    budget: int = DEFAULT_BUDGET,
    *,
    min_length: int = 1,
    box: tuple[int, int, int, int] | None = None,
    box_area: int = 200_000,
    step_cap: int = 16,
    workers: int = 1,
) -> FgCertificate:
    """Run the whole construction and return its certificate.

    radius_2d defaults to the computed span, which bounds how far the
    affine map distorts shifts.  The box defaults to a window over the
    longest run of the shifted union, capped at box_area cells with step
    rows limited to +-step_cap.
    """
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if min_length < 1:
        raise ValueError(f"min_length must be >= 1, got {min_length}")
    u = shifted_union_1d(s, radius)
    length_in = max_run_length(u)
    if length_in < min_length:
        raise ScalePreconditionError(radius, min_length, length_in)
    sw = vdw_span(radius, steps, budget)
    if not sw.exhaustive:
        raise BudgetExhaustedError(
            f"van der Waerden search for {radius} colors and {steps + 1} terms "
            f"exhausted its budget of {budget} nodes"
        )
    span = sw.span
    if radius_2d is None:
        radius_2d = span
    if radius_2d < 1:
        raise ValueError(f"radius_2d must be >= 1, got {radius_2d}")
    if box is None:
        run_start = contains_interval(u, length_in)
        box = _auto_box(run_start, length_in, span, box_area, step_cap)
    ps = progression_pairs(s, radius, span, box)
    if ps.pairs.count == 0:
        raise ConstructionError(f"no progression pairs inside box {box}")
    classes = color_classes(s, ps.pairs, radius=radius, span=span, steps=steps)
    triple, chosen, _ = pigeonhole_extract(classes, radius_2d, workers=workers)
    image = affine_image(
        chosen,
        AffineMap2D(shear=triple.offset, shift=triple.shift, scale=triple.stride),
    )
    pts = image.points()
    verified = np.ones(pts.shape[0], dtype=bool)
    for i in range(steps + 1):
        verified &= s.members_at(pts[:, 0] + i * pts[:, 1], outside="false")
    if not verified.all():
        raise PhiSearchError("constructed pair fails its membership re-check")
    length_out = ps_scale_2d(image, radius_2d)
    return FgCertificate(
        lo=s.lo,
        hi=s.hi,
        digest=set_digest(s),
        radius=radius,
        steps=steps,
        radius_2d=radius_2d,
        version=VERSION_TAG,
        span=span,
        span_exhaustive=True,
        offset=triple.offset,
        stride=triple.stride,
        shift=triple.shift,
        pair_box=box,
        pair_count=ps.pairs.count,
        class_count=chosen.count,
        ap_pairs=image,
        length_in=length_in,
        length_out=length_out,
    )


def find_nontrivial_ap(
    s: WindowSet1D, radius: int, steps: int, budget: int = DEFAULT_BUDGET
) -> APPair:
    """A verified progression start, start+d, ..., start+steps*d in s with
    d != 0.

    Requires the shifted union at this radius to contain a run at least as
    long as W(radius, steps+1); the error names the required length.
    """
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    res = vdw_number(radius, steps + 1, budget)
    if not res.exhaustive:
        raise BudgetExhaustedError(
            f"van der Waerden search for {radius} colors and {steps + 1} terms "
            f"exhausted its budget of {budget} nodes"
        )
    need = res.n
    u = shifted_union_1d(s, radius)
    run_start = contains_interval(u, need)
    if run_start is None:
        raise ScalePreconditionError(radius, need, max_run_length(u))
    values = []
    for idx in range(need):
        p = run_start + idx
        witness = 0
        for t in range(1, radius + 1):
            if s.covers(p + t) and s.contains(p + t):
                witness = t
                break
        if witness == 0:
            raise PhiSearchError(f"union member {p} has no witnessing shift")
        values.append(witness)
    mono = find_mono_ap(Coloring(tuple(values), radius), steps + 1)
    if mono is None:
        raise PhiSearchError(
            f"no monochromatic progression in a window of {need} positions; "
            f"the computed van der Waerden number is wrong"
        )
    a = run_start + mono.ap.start + mono.color
    d = mono.ap.step
    for i in range(steps + 1):
        if not s.contains(a + i * d):
            raise PhiSearchError("returned pair fails its membership re-check")
    return APPair(start=a, step=d)


def partition_extract(
    s: WindowSet1D,
    cells: list[WindowSet1D],
    radius: int,
    gap_budget: int = 4,
) -> PartitionWitness:
    """Cell achieving the best scale over a sweep of shift radii.

    The sweep covers radii 1..radius*gap_budget.  Scales are monotone in
    the radius, so each cell's best run length shows up at the top radius;
    the witness reports the least radius that already achieves it.  Ties
    between cells go to the least index.  The returned witness is
    re-verified before being returned.
    """
    if not cells:
        raise PartitionError("no cells given")
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    if gap_budget < 1:
        raise ValueError(f"gap_budget must be >= 1, got {gap_budget}")
    coverage = np.zeros(s.width, dtype=np.int16)
    for cell in cells:
        if (cell.lo, cell.hi) != (s.lo, s.hi):
            raise PartitionError(
                f"cell window [{cell.lo}, {cell.hi}) differs from "
                f"[{s.lo}, {s.hi})"
            )
        coverage += cell.mask
    if not np.array_equal(coverage, s.mask.astype(np.int16)):
        raise PartitionError("cells are not a disjoint cover of the set")
    top = radius * gap_budget
    scores = tuple(ps_scale_1d(cell, top) for cell in cells)
    best = max(range(len(cells)), key=lambda i: (scores[i], -i))
    if scores[best] == 0:
        raise PartitionError("every cell is empty; no positive scale exists")
    chosen = cells[best]
    length = scores[best]
    found_radius = top
    for r in range(1, top + 1):
        if ps_scale_1d(chosen, r) == length:
            found_radius = r
            break
    witness = is_ps_at_scale(chosen, Scale(found_radius, length))
    assert witness is not None, "witness failed its own re-verification"
    return PartitionWitness(
        index=best, scale=Scale(found_radius, length), start=witness.start,
        scores=scores,
    )
