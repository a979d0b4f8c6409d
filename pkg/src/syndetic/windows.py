"""Finite-window integer sets with exact largeness predicates.

A window set stores full membership information for a half-open integer
window (an interval in Z, a box in Z^2) and nothing outside it.  Largeness
notions that are asymptotic on infinite sets -- thickness, piecewise
syndeticity -- become scale-indexed predicates here: each check fixes a
shift radius and a run length and returns an explicit witness on success.

Boundary policy: membership queries outside the window raise
:class:`WindowError` instead of defaulting to false.  Silent falsity near
the boundary would corrupt largeness scores; callers that deliberately
want "outside counts as absent" must opt in via ``outside="false"`` on the
vectorized probes.

All set values are immutable after construction and every operation is a
pure function, so concurrent reads are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "WindowError",
    "Scale",
    "PSWitness1D",
    "WindowSet1D",
    "WindowSet2D",
    "contains_interval",
    "max_run_length",
    "shifted_union_1d",
    "is_ps_at_scale",
    "ps_scale_1d",
    "shifted_union_2d",
    "contains_square",
    "ps_scale_2d",
]


class WindowError(ValueError):
    """Invalid window bounds, or a membership query outside the window."""


@dataclass(frozen=True)
class Scale:
    """Largeness scale: the union of shifts by 1..radius must contain a run
    of ``length`` consecutive integers (a length x length square in 2D)."""

    radius: int
    length: int

    def __post_init__(self) -> None:
        if self.radius < 1:
            raise ValueError(f"scale radius must be >= 1, got {self.radius}")
        if self.length < 1:
            raise ValueError(f"scale length must be >= 1, got {self.length}")


@dataclass(frozen=True)
class PSWitness1D:
    """Leftmost start of a qualifying run inside the shifted union."""

    start: int
    scale: Scale


def _as_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    return int(value)


class WindowSet1D:
    """Subset of the integer window [lo, hi), one bit per integer."""

    __slots__ = ("lo", "hi", "_mask")

    def __init__(self, lo: int, hi: int, mask: np.ndarray):
        lo = _as_int("lo", lo)
        hi = _as_int("hi", hi)
        if lo >= hi:
            raise WindowError(f"window [{lo}, {hi}) is empty")
        arr = np.array(mask, dtype=bool, copy=True)
        if arr.shape != (hi - lo,):
            raise WindowError(
                f"mask of shape {arr.shape} does not fit window [{lo}, {hi})"
            )
        arr.setflags(write=False)
        self.lo = lo
        self.hi = hi
        self._mask = arr

    @classmethod
    def from_members(cls, lo: int, hi: int, members: Iterable[int]) -> "WindowSet1D":
        lo = _as_int("lo", lo)
        hi = _as_int("hi", hi)
        if lo >= hi:
            raise WindowError(f"window [{lo}, {hi}) is empty")
        arr = np.zeros(hi - lo, dtype=bool)
        pts = np.asarray(list(members), dtype=np.int64)
        if pts.size:
            if ((pts < lo) | (pts >= hi)).any():
                bad = pts[(pts < lo) | (pts >= hi)][0]
                raise WindowError(f"member {bad} outside window [{lo}, {hi})")
            arr[pts - lo] = True
        return cls(lo, hi, arr)

    @classmethod
    def empty(cls, lo: int, hi: int) -> "WindowSet1D":
        return cls(lo, hi, np.zeros(hi - lo, dtype=bool))

    @classmethod
    def full(cls, lo: int, hi: int) -> "WindowSet1D":
        return cls(lo, hi, np.ones(hi - lo, dtype=bool))

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    @property
    def width(self) -> int:
        return self.hi - self.lo

    @property
    def count(self) -> int:
        return int(self._mask.sum())

    def is_empty(self) -> bool:
        return not self._mask.any()

    def members(self) -> np.ndarray:
        """All members in increasing order, as absolute integers."""
        return np.flatnonzero(self._mask).astype(np.int64) + self.lo

    def covers(self, m: int) -> bool:
        return self.lo <= m < self.hi

    def contains(self, m: int) -> bool:
        if not self.covers(m):
            raise WindowError(f"query {m} outside window [{self.lo}, {self.hi})")
        return bool(self._mask[m - self.lo])

    __contains__ = contains

    def members_at(self, points, *, outside: str = "raise") -> np.ndarray:
        """Vectorized membership for an array of integers.

        ``outside="raise"`` enforces the window policy; ``outside="false"``
        is an explicit opt-in where out-of-window points count as absent
        (used by boundary-aware scans that treat them conservatively).
        """
        pts = np.asarray(points, dtype=np.int64)
        inside = (pts >= self.lo) & (pts < self.hi)
        if outside == "raise":
            if not inside.all():
                bad = pts[~inside].flat[0]
                raise WindowError(
                    f"query {bad} outside window [{self.lo}, {self.hi})"
                )
            return self._mask[pts - self.lo]
        if outside == "false":
            out = np.zeros(pts.shape, dtype=bool)
            if inside.any():
                idx = np.where(inside, pts - self.lo, 0)
                out = inside & self._mask[idx]
            return out
        raise ValueError(f"outside must be 'raise' or 'false', got {outside!r}")

    def union(self, other: "WindowSet1D") -> "WindowSet1D":
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise WindowError("union requires identical windows")
        return WindowSet1D(self.lo, self.hi, self._mask | other._mask)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WindowSet1D):
            return NotImplemented
        return (
            self.lo == other.lo
            and self.hi == other.hi
            and bool(np.array_equal(self._mask, other._mask))
        )

    def __hash__(self):
        return hash((self.lo, self.hi, self._mask.tobytes()))

    def __repr__(self) -> str:
        return f"WindowSet1D([{self.lo}, {self.hi}), count={self.count})"


class WindowSet2D:
    """Subset of the integer box [x_lo, x_hi) x [y_lo, y_hi)."""

    __slots__ = ("x_lo", "x_hi", "y_lo", "y_hi", "_mask")

    def __init__(self, x_lo: int, x_hi: int, y_lo: int, y_hi: int, mask: np.ndarray):
        x_lo = _as_int("x_lo", x_lo)
        x_hi = _as_int("x_hi", x_hi)
        y_lo = _as_int("y_lo", y_lo)
        y_hi = _as_int("y_hi", y_hi)
        if x_lo >= x_hi or y_lo >= y_hi:
            raise WindowError(
                f"box [{x_lo}, {x_hi}) x [{y_lo}, {y_hi}) is empty"
            )
        arr = np.array(mask, dtype=bool, copy=True)
        if arr.shape != (x_hi - x_lo, y_hi - y_lo):
            raise WindowError(
                f"mask of shape {arr.shape} does not fit box "
                f"[{x_lo}, {x_hi}) x [{y_lo}, {y_hi})"
            )
        arr.setflags(write=False)
        self.x_lo = x_lo
        self.x_hi = x_hi
        self.y_lo = y_lo
        self.y_hi = y_hi
        self._mask = arr

    @classmethod
    def from_points(
        cls, x_lo: int, x_hi: int, y_lo: int, y_hi: int, points: Iterable[tuple[int, int]]
    ) -> "WindowSet2D":
        pts = list(points)
        xs = np.asarray([p[0] for p in pts], dtype=np.int64)
        ys = np.asarray([p[1] for p in pts], dtype=np.int64)
        return cls.from_arrays(x_lo, x_hi, y_lo, y_hi, xs, ys)

    @classmethod
    def from_arrays(
        cls, x_lo: int, x_hi: int, y_lo: int, y_hi: int, xs, ys
    ) -> "WindowSet2D":
        if x_lo >= x_hi or y_lo >= y_hi:
            raise WindowError(
                f"box [{x_lo}, {x_hi}) x [{y_lo}, {y_hi}) is empty"
            )
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        if xs.shape != ys.shape:
            raise WindowError("coordinate arrays differ in shape")
        arr = np.zeros((x_hi - x_lo, y_hi - y_lo), dtype=bool)
        if xs.size:
            bad = (xs < x_lo) | (xs >= x_hi) | (ys < y_lo) | (ys >= y_hi)
            if bad.any():
                i = int(np.flatnonzero(bad)[0])
                raise WindowError(
                    f"member ({xs[i]}, {ys[i]}) outside box "
                    f"[{x_lo}, {x_hi}) x [{y_lo}, {y_hi})"
                )
            arr[xs - x_lo, ys - y_lo] = True
        return cls(x_lo, x_hi, y_lo, y_hi, arr)

    @classmethod
    def empty(cls, x_lo: int, x_hi: int, y_lo: int, y_hi: int) -> "WindowSet2D":
        return cls(x_lo, x_hi, y_lo, y_hi, np.zeros((x_hi - x_lo, y_hi - y_lo), bool))

    @classmethod
    def full(cls, x_lo: int, x_hi: int, y_lo: int, y_hi: int) -> "WindowSet2D":
        return cls(x_lo, x_hi, y_lo, y_hi, np.ones((x_hi - x_lo, y_hi - y_lo), bool))

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    @property
    def box(self) -> tuple[int, int, int, int]:
        return (self.x_lo, self.x_hi, self.y_lo, self.y_hi)

    @property
    def count(self) -> int:
        return int(self._mask.sum())

    def is_empty(self) -> bool:
        return not self._mask.any()

    def points(self) -> np.ndarray:
        """Members as an (n, 2) int64 array, sorted lexicographically."""
        idx = np.argwhere(self._mask).astype(np.int64)
        idx[:, 0] += self.x_lo
        idx[:, 1] += self.y_lo
        return idx

    def covers(self, x: int, y: int) -> bool:
        return self.x_lo <= x < self.x_hi and self.y_lo <= y < self.y_hi

    def contains(self, x: int, y: int) -> bool:
        if not self.covers(x, y):
            raise WindowError(
                f"query ({x}, {y}) outside box "
                f"[{self.x_lo}, {self.x_hi}) x [{self.y_lo}, {self.y_hi})"
            )
        return bool(self._mask[x - self.x_lo, y - self.y_lo])

    def members_at(self, xs, ys, *, outside: str = "raise") -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        inside = (
            (xs >= self.x_lo) & (xs < self.x_hi) & (ys >= self.y_lo) & (ys < self.y_hi)
        )
        if outside == "raise":
            if not inside.all():
                i = int(np.flatnonzero(~inside)[0])
                raise WindowError(
                    f"query ({xs.flat[i]}, {ys.flat[i]}) outside box"
                )
            return self._mask[xs - self.x_lo, ys - self.y_lo]
        if outside == "false":
            out = np.zeros(xs.shape, dtype=bool)
            if inside.any():
                ix = np.where(inside, xs - self.x_lo, 0)
                iy = np.where(inside, ys - self.y_lo, 0)
                out = inside & self._mask[ix, iy]
            return out
        raise ValueError(f"outside must be 'raise' or 'false', got {outside!r}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, WindowSet2D):
            return NotImplemented
        return self.box == other.box and bool(np.array_equal(self._mask, other._mask))

    def __hash__(self):
        return hash((self.box, self._mask.tobytes()))

    def __repr__(self) -> str:
        return (
            f"WindowSet2D([{self.x_lo}, {self.x_hi}) x [{self.y_lo}, {self.y_hi}), "
            f"count={self.count})"
        )


# ---------------------------------------------------------------------------
# 1D predicates


def contains_interval(s: WindowSet1D, length: int) -> int | None:
    """Leftmost start of a run of ``length`` consecutive members, if any.

    A length larger than the window width yields None, not an error.
    """
    length = _as_int("length", length)
    if length < 1:
        raise ValueError(f"interval length must be >= 1, got {length}")
    if length > s.width:
        return None
    c = np.concatenate(([0], np.cumsum(s.mask, dtype=np.int64)))
    sums = c[length:] - c[:-length]
    idx = np.flatnonzero(sums == length)
    if idx.size == 0:
        return None
    return s.lo + int(idx[0])


def max_run_length(s: WindowSet1D) -> int:
    """Length of the longest run of consecutive members; 0 if empty."""
    m = s.mask
    if not m.any():
        return 0
    edges = np.diff(np.concatenate(([0], m.astype(np.int8), [0])))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    return int((ends - starts).max())


def shifted_union_1d(s: WindowSet1D, radius: int) -> WindowSet1D:
    """Union of the shifted copies S-1, ..., S-radius, on the window where
    at least one probe lands inside S's window: [lo-radius, hi-1).

    m is a member iff m+t is a member of s for some t in 1..radius.
    """
    radius = _as_int("radius", radius)
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    w = s.width
    out_lo = s.lo - radius
    out_hi = s.hi - 1
    out = np.zeros(out_hi - out_lo, dtype=bool)
    # out index j holds m = out_lo + j; probe m + t sits at mask index j - radius + t
    for t in range(1, radius + 1):
        shift = radius - t
        out[shift : shift + w] |= s.mask
    return WindowSet1D(out_lo, out_hi, out)


def is_ps_at_scale(s: WindowSet1D, scale: Scale) -> PSWitness1D | None:
    """Piecewise-syndeticity check at one scale, with an explicit witness.

    Present iff the union of shifts by 1..scale.radius contains a run of
    scale.length consecutive integers; returns that run's leftmost start.
    """
    u = shifted_union_1d(s, scale.radius)
    start = contains_interval(u, scale.length)
    if start is None:
        return None
    return PSWitness1D(start=start, scale=scale)


def ps_scale_1d(s: WindowSet1D, radius: int) -> int:
    """Largest run length achieved by the shifted union at this radius."""
    return max_run_length(shifted_union_1d(s, radius))


# ---------------------------------------------------------------------------
# 2D predicates


def shifted_union_2d(m: WindowSet2D, radius: int) -> WindowSet2D:
    """Union of shifts of m by (t1, t2) for t1, t2 in 1..radius.

    (x, y) is a member iff (x+t1, y+t2) is a member of m for some shift
    pair; the result box is [x_lo-radius, x_hi-1) x [y_lo-radius, y_hi-1).
    """
    radius = _as_int("radius", radius)
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    wx = m.x_hi - m.x_lo
    wy = m.y_hi - m.y_lo
    wy2 = wy + radius - 1
    wx2 = wx + radius - 1
    # the shift set is a product, so the union separates into one pass per axis
    tmp = np.zeros((wx, wy2), dtype=bool)
    for t in range(1, radius + 1):
        shift = radius - t
        tmp[:, shift : shift + wy] |= m.mask
    out = np.zeros((wx2, wy2), dtype=bool)
    for t in range(1, radius + 1):
        shift = radius - t
        out[shift : shift + wx, :] |= tmp
    return WindowSet2D(m.x_lo - radius, m.x_hi - 1, m.y_lo - radius, m.y_hi - 1, out)


def _integral_image(mask: np.ndarray) -> np.ndarray:
    ii = np.zeros((mask.shape[0] + 1, mask.shape[1] + 1), dtype=np.int64)
    ii[1:, 1:] = mask.cumsum(axis=0).cumsum(axis=1)
    return ii


def _first_full_square(ii: np.ndarray, side: int) -> tuple[int, int] | None:
    wx = ii.shape[0] - 1
    wy = ii.shape[1] - 1
    if side > wx or side > wy:
        return None
    sums = ii[side:, side:] - ii[:-side, side:] - ii[side:, :-side] + ii[:-side, :-side]
    hits = np.argwhere(sums == side * side)
    if hits.shape[0] == 0:
        return None
    return int(hits[0, 0]), int(hits[0, 1])


def contains_square(m: WindowSet2D, side: int) -> tuple[int, int] | None:
    """Lexicographically least lower-left corner of a filled side x side
    square, or None."""
    side = _as_int("side", side)
    if side < 1:
        raise ValueError(f"square side must be >= 1, got {side}")
    hit = _first_full_square(_integral_image(m.mask), side)
    if hit is None:
        return None
    return (m.x_lo + hit[0], m.y_lo + hit[1])


def ps_scale_2d(m: WindowSet2D, radius: int) -> int:
    """Largest side of a filled square inside the 2D shifted union; 0 if
    the set is empty."""
    if m.is_empty():
        return 0
    u = shifted_union_2d(m, radius)
    ii = _integral_image(u.mask)
    lo, hi = 1, min(u.x_hi - u.x_lo, u.y_hi - u.y_lo)
    best = 0
    # "a filled square of side L exists" is monotone decreasing in L
    while lo <= hi:
        mid = (lo + hi) // 2
        if _first_full_square(ii, mid) is not None:
            best = mid
            lo = mid + 1
        else:
            hi = mid - 1
    return best
