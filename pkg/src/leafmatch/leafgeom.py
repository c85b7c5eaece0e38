"""Leaf-shaped radiator outline: half-ellipse base, spline tip, DXF export.

Local frame: the feed/petiole reference sits at the origin; the half
ellipse bulges toward +x between (0, -semi_minor) and (0, +semi_minor),
and the tip curve continues from (0, +semi_minor) through the sampled
edge points. The closed outline is rotated about the origin, then placed
as a mirrored pair either side of the feed axis (the y-axis), separated
by feed_gap. All lengths are millimeters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_CURVE_POINTS = 128
DEFAULT_ENVELOPE_MM = (100.0, 80.0)

_JOIN_TOL_MM = 1e-6


class SelfIntersectionError(ValueError):
    """A closed outline crosses itself; carries the first offending pair."""

    def __init__(self, seg_a: int, seg_b: int):
        super().__init__(f"outline segments {seg_a} and {seg_b} intersect")
        self.segments = (seg_a, seg_b)


class EnvelopeExceededError(ValueError):
    """The placed pair does not fit the configured board envelope."""


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("point coordinates must be finite")


def _as_array(points) -> np.ndarray:
    return np.array([(p.x, p.y) for p in points], dtype=float)


def _cross2(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def _segment_pairs_intersect(pts: np.ndarray, closed: bool) -> tuple[int, int] | None:
    """First pair of non-adjacent segments that intersect, if any."""
    seg_a = pts if closed else pts[:-1]
    seg_b = np.roll(pts, -1, axis=0) if closed else pts[1:]
    m = len(seg_a)
    lengths = np.hypot(*(seg_b - seg_a).T)
    for i in range(m - 2):
        if lengths[i] == 0.0:
            continue
        # non-adjacent partners only; for closed outlines segment m-1 wraps to 0
        j0 = i + 2
        j1 = m - 1 if (closed and i == 0) else m
        if j0 >= j1:
            continue
        js = np.arange(j0, j1)
        js = js[lengths[j0:j1] > 0.0]
        if len(js) == 0:
            continue
        a, b = seg_a[i], seg_b[i]
        c, d = seg_a[js], seg_b[js]
        ab = b - a
        d1 = _cross2(d - c, a - c)
        d2 = _cross2(d - c, b - c)
        d3 = _cross2(ab, c - a)
        d4 = _cross2(ab, d - a)
        hit = (d1 * d2 < 0) & (d3 * d4 < 0)
        if hit.any():
            return i, int(js[np.argmax(hit)])
    return None


@dataclass(frozen=True)
class Polyline:
    points: tuple[Point2, ...]
    closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.closed:
            distinct = {(p.x, p.y) for p in self.points}
            if len(distinct) < 3:
                raise ValueError("closed polyline needs at least 3 distinct points")
            offending = _segment_pairs_intersect(_as_array(self.points), closed=True)
            if offending is not None:
                raise SelfIntersectionError(*offending)
        elif len(self.points) < 2:
            raise ValueError("polyline needs at least 2 points")

    def as_array(self) -> np.ndarray:
        return _as_array(self.points)


@dataclass(frozen=True)
class LeafProfile:
    """Parameters of one leaf outline and its placement as a fed pair."""

    semi_major: float
    semi_minor: float
    tip_samples: tuple[Point2, ...]
    rotation_deg: float = 45.0
    mirrored_pair: bool = True
    feed_gap: float = 2.0
    curve_points: int = DEFAULT_CURVE_POINTS
    envelope_mm: tuple[float, float] = DEFAULT_ENVELOPE_MM

    def __post_init__(self):
        object.__setattr__(self, "tip_samples", tuple(self.tip_samples))
        object.__setattr__(self, "envelope_mm", tuple(self.envelope_mm))
        if not (self.semi_major > 0 and self.semi_minor > 0):
            raise ValueError("ellipse semi-axes must be positive")
        if len(self.tip_samples) < 2:
            raise ValueError("need at least 2 tip samples")
        if self.feed_gap < 0:
            raise ValueError("feed_gap must be >= 0")
        if len(self.envelope_mm) != 2 or any(not e > 0 for e in self.envelope_mm):
            raise ValueError("envelope_mm must be two positive lengths")
        first = self.tip_samples[0]
        if math.hypot(first.x - 0.0, first.y - self.semi_minor) > _JOIN_TOL_MM:
            raise ValueError(
                "tip samples must start at the ellipse end "
                f"(0, {self.semi_minor}), got ({first.x}, {first.y})"
            )


@dataclass(frozen=True)
class LeafPair:
    """Two mirror-image radiator outlines and their feed attachment points.

    element_b is None when the profile asked for a single un-mirrored
    outline.
    """

    element_a: Polyline
    element_b: Polyline | None
    feed_points: tuple[Point2, ...]


DEFAULT_PROFILE = LeafProfile(
    semi_major=18.0,
    semi_minor=10.0,
    tip_samples=(
        Point2(0.0, 10.0),
        Point2(-8.0, 9.0),
        Point2(-16.0, 6.0),
        Point2(-24.0, 2.0),
        Point2(-28.0, -2.0),
    ),
)


def half_ellipse(a: float, b: float, n: int) -> Polyline:
    """Right half-ellipse from (0, -b) to (0, +b), n+1 points uniform in angle."""
    if not (a > 0 and b > 0):
        raise ValueError("semi-axes must be positive")
    if n < 8:
        raise ValueError(f"need n >= 8, got {n}")
    pts = []
    for i in range(n + 1):
        theta = -math.pi / 2 + i * math.pi / n
        pts.append(Point2(a * math.cos(theta), b * math.sin(theta)))
    pts[0] = Point2(0.0, -b)
    pts[-1] = Point2(0.0, b)
    return Polyline(tuple(pts), closed=False)


def _catmull_rom_tangents(samples: np.ndarray) -> np.ndarray:
    tangents = np.empty_like(samples)
    tangents[0] = samples[1] - samples[0]
    tangents[-1] = samples[-1] - samples[-2]
    if len(samples) > 2:
        tangents[1:-1] = (samples[2:] - samples[:-2]) / 2.0
    return tangents


def tip_curve(samples, n: int = DEFAULT_CURVE_POINTS) -> Polyline:
    """Interpolating composite cubic through all samples (C1 continuous).

    Catmull-Rom tangents turned into cubic Bezier segments, n points per
    segment; the curve passes through every sample exactly.
    """
    if len(samples) < 2:
        raise ValueError("need at least 2 samples")
    if n < 8:
        raise ValueError(f"need n >= 8, got {n}")
    pts = _as_array(samples)
    if any(np.array_equal(pts[i], pts[i + 1]) for i in range(len(pts) - 1)):
        raise ValueError("duplicate consecutive samples")
    tangents = _catmull_rom_tangents(pts)

    out = [samples[0]]
    t = np.linspace(0.0, 1.0, n)[1:]
    for i in range(len(pts) - 1):
        b0, b3 = pts[i], pts[i + 1]
        b1 = b0 + tangents[i] / 3.0
        b2 = b3 - tangents[i + 1] / 3.0
        u = t[:, None]
        curve = (
            (1 - u) ** 3 * b0
            + 3 * (1 - u) ** 2 * u * b1
            + 3 * (1 - u) * u**2 * b2
            + u**3 * b3
        )
        curve[-1] = b3  # endpoint exact regardless of rounding
        out.extend(Point2(float(x), float(y)) for x, y in curve)
    return Polyline(tuple(out), closed=False)


def _rotated(points: np.ndarray, degrees: float) -> np.ndarray:
    phi = math.radians(degrees)
    c, s = math.cos(phi), math.sin(phi)
    return points @ np.array([[c, s], [-s, c]])


def build_leaf_pair(p: LeafProfile) -> LeafPair:
    """Join ellipse and tip curve, rotate, and place the mirrored pair."""
    ellipse = half_ellipse(p.semi_major, p.semi_minor, p.curve_points)
    tip = tip_curve(p.tip_samples, p.curve_points)
    outline = ellipse.as_array()
    tip_pts = tip.as_array()[1:]  # junction point already present
    if np.hypot(*(tip_pts[-1] - outline[0])) <= _JOIN_TOL_MM:
        tip_pts = tip_pts[:-1]  # curve returns to the start; avoid a duplicate
    outline = np.vstack([outline, tip_pts])

    rotated = _rotated(outline, p.rotation_deg)

    if not p.mirrored_pair:
        element_a = Polyline(tuple(Point2(x, y) for x, y in rotated), closed=True)
        anchor = min(element_a.points, key=lambda q: (q.x, q.y))
        _check_envelope((element_a,), p.envelope_mm)
        return LeafPair(element_a, None, (anchor,))

    ax, ay = min(((x, y) for x, y in rotated), key=lambda q: (q[0], q[1]))
    shifted = rotated + np.array([p.feed_gap / 2.0 - ax, -ay])
    element_a = Polyline(tuple(Point2(x, y) for x, y in shifted), closed=True)
    element_b = Polyline(tuple(Point2(-q.x, q.y) for q in element_a.points), closed=True)
    pair = LeafPair(
        element_a,
        element_b,
        (Point2(p.feed_gap / 2.0, 0.0), Point2(-p.feed_gap / 2.0, 0.0)),
    )
    _check_envelope((element_a, element_b), p.envelope_mm)
    return pair


def _check_envelope(elements, envelope: tuple[float, float]):
    w, h = _union_bbox(elements)
    if w > envelope[0] or h > envelope[1]:
        raise EnvelopeExceededError(
            f"pair bounding box {w:.3f} x {h:.3f} mm exceeds "
            f"envelope {envelope[0]} x {envelope[1]} mm"
        )


def _union_bbox(elements) -> tuple[float, float]:
    pts = np.vstack([e.as_array() for e in elements])
    mins, maxs = pts.min(axis=0), pts.max(axis=0)
    return float(maxs[0] - mins[0]), float(maxs[1] - mins[1])


def _polygon_area(pts: np.ndarray) -> float:
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _polygon_perimeter(pts: np.ndarray) -> float:
    return float(np.hypot(*(np.roll(pts, -1, axis=0) - pts).T).sum())


def outline_metrics(lp: LeafPair) -> tuple[float, float, tuple[float, float]]:
    """(total shoelace area mm^2, total perimeter mm, union bbox (w, h) mm)."""
    elements = [lp.element_a] + ([lp.element_b] if lp.element_b else [])
    area = sum(_polygon_area(e.as_array()) for e in elements)
    perimeter = sum(_polygon_perimeter(e.as_array()) for e in elements)
    return area, perimeter, _union_bbox(elements)


def export_dxf(lp: LeafPair) -> str:
    """Minimal ASCII DXF: mm units header, one closed LWPOLYLINE per element.

    Output is byte-deterministic for identical input (fixed 6-decimal
    coordinate formatting, no timestamps).
    """
    elements = [lp.element_a] + ([lp.element_b] if lp.element_b else [])
    lines = [
        "0", "SECTION",
        "2", "HEADER",
        "9", "$INSUNITS",
        "70", "4",
        "0", "ENDSEC",
        "0", "SECTION",
        "2", "ENTITIES",
    ]
    for poly in elements:
        lines += [
            "0", "LWPOLYLINE",
            "8", "0",
            "90", str(len(poly.points)),
            "70", "1",
        ]
        for pt in poly.points:
            lines += ["10", f"{pt.x:.6f}", "20", f"{pt.y:.6f}"]
    lines += ["0", "ENDSEC", "0", "EOF"]
    return "\n".join(lines) + "\n"


def profile_from_dict(d: dict) -> LeafProfile:
    """Profile from its JSON form (lengths mm, angles degrees)."""
    return LeafProfile(
        semi_major=float(d["semi_major_mm"]),
        semi_minor=float(d["semi_minor_mm"]),
        tip_samples=tuple(Point2(float(x), float(y)) for x, y in d["tip_samples_mm"]),
        rotation_deg=float(d.get("rotation_deg", 45.0)),
        mirrored_pair=bool(d.get("mirrored_pair", True)),
        feed_gap=float(d.get("feed_gap_mm", 2.0)),
        curve_points=int(d.get("curve_points", DEFAULT_CURVE_POINTS)),
        envelope_mm=tuple(d.get("envelope_mm", DEFAULT_ENVELOPE_MM)),  # type: ignore[arg-type]
    )


def profile_to_dict(p: LeafProfile) -> dict:
    return {
        "semi_major_mm": p.semi_major,
        "semi_minor_mm": p.semi_minor,
        "tip_samples_mm": [[q.x, q.y] for q in p.tip_samples],
        "rotation_deg": p.rotation_deg,
        "mirrored_pair": p.mirrored_pair,
        "feed_gap_mm": p.feed_gap,
        "curve_points": p.curve_points,
        "envelope_mm": list(p.envelope_mm),
    }
