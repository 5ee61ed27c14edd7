"""Planar primitives: points, triangles, terminal sets and the three-pin construction.

All lengths are in polygon-side units. Angles are plain floats in radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

COLLINEAR_EPS = 1e-12
DISTINCT_EPS = 1e-12
# A vertex angle within this of 120 degrees counts as degenerate.
ANGLE_EPS = 1e-12

TWO_PI = 2.0 * math.pi
THIRD_PI = math.pi / 3.0
TWO_THIRDS_PI = 2.0 * math.pi / 3.0
SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y

    def __sub__(self, other: Point2) -> Point2:
        return Point2(self.x - other.x, self.y - other.y)

    def __add__(self, other: Point2) -> Point2:
        return Point2(self.x + other.x, self.y + other.y)

    def scaled(self, k: float) -> Point2:
        return Point2(k * self.x, k * self.y)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


def dist(p: Sequence[float], q: Sequence[float]) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def cross(o: Sequence[float], a: Sequence[float], b: Sequence[float]) -> float:
    """Twice the signed area of (o, a, b); positive when counterclockwise."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def normalize_angle(theta: float) -> float:
    """Map an angle onto [0, 2pi)."""
    r = math.fmod(theta, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    if r >= TWO_PI:
        r = 0.0
    return r


def vertex_angle(apex: Sequence[float], p: Sequence[float], q: Sequence[float]) -> float:
    """Unsigned angle p-apex-q in [0, pi]."""
    ux, uy = p[0] - apex[0], p[1] - apex[1]
    vx, vy = q[0] - apex[0], q[1] - apex[1]
    return math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)


def rotate(p: Sequence[float], theta: float, about: Sequence[float] = (0.0, 0.0)) -> tuple[float, float]:
    c, s = math.cos(theta), math.sin(theta)
    dx, dy = p[0] - about[0], p[1] - about[1]
    return (about[0] + c * dx - s * dy, about[1] + s * dx + c * dy)


@dataclass(frozen=True)
class Triangle:
    """Labelled triangle; ``b`` is the vertex elevations are measured from."""

    a: Point2
    b: Point2
    c: Point2

    def __post_init__(self):
        if abs(self.signed_area) <= COLLINEAR_EPS:
            raise ValueError("triangle vertices are collinear")

    @classmethod
    def from_coords(cls, a, b, c) -> Triangle:
        return cls(Point2(*a), Point2(*b), Point2(*c))

    @property
    def signed_area(self) -> float:
        return 0.5 * cross(tuple(self.a), tuple(self.b), tuple(self.c))

    @property
    def orientation(self) -> int:
        return 1 if self.signed_area > 0 else -1

    @property
    def vertices(self) -> tuple[Point2, Point2, Point2]:
        return (self.a, self.b, self.c)

    def angles(self) -> tuple[float, float, float]:
        a, b, c = (tuple(v) for v in self.vertices)
        return (vertex_angle(a, b, c), vertex_angle(b, c, a), vertex_angle(c, a, b))

    def side_lengths(self) -> tuple[float, float, float]:
        """Lengths opposite a, b, c respectively (|bc|, |ca|, |ab|)."""
        a, b, c = (tuple(v) for v in self.vertices)
        return (dist(b, c), dist(c, a), dist(a, b))


@dataclass(frozen=True)
class TerminalSet:
    points: tuple[Point2, ...]
    symmetry_order: int = 1
    center: Point2 = Point2(0.0, 0.0)

    def __post_init__(self):
        if len(self.points) < 3:
            raise ValueError("a terminal set needs at least 3 points")
        if self.symmetry_order < 1:
            raise ValueError("symmetry order must be positive")
        for i, p in enumerate(self.points):
            for q in self.points[i + 1:]:
                if dist(tuple(p), tuple(q)) <= DISTINCT_EPS:
                    raise ValueError("terminals must be distinct")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def coords(self) -> list[tuple[float, float]]:
        return [p.as_tuple() for p in self.points]

    @property
    def labels(self) -> list[str]:
        return [vertex_label(i) for i in range(len(self.points))]

    def index(self, label: str) -> int:
        return self.labels.index(label)


def vertex_label(i: int) -> str:
    return chr(ord("A") + i) if i < 26 else f"T{i}"


def regular_polygon(n: int, side: float = 1.0) -> TerminalSet:
    """Regular n-gon centred at the origin, vertex A on the positive x-axis, labels counterclockwise."""
    if n < 3:
        raise ValueError("a polygon needs n >= 3")
    if not side > 0:
        raise ValueError("side must be positive")
    radius = side / (2.0 * math.sin(math.pi / n))
    pts = []
    for k in range(n):
        theta = TWO_PI * k / n
        pts.append(Point2(radius * math.cos(theta), radius * math.sin(theta)))
    return TerminalSet(tuple(pts), symmetry_order=n)


def _check_lengths(l: float, l_prime: float) -> None:
    if not (l > 0 and l_prime > 0):
        raise ValueError("side lengths must be positive")


def stem_elevation(l: float, l_prime: float, angle_b: float) -> float:
    """Angle at B between side BC (length ``l``) and the stem from B to the Steiner point.

    ``l_prime`` is |AB| and ``angle_b`` the triangle angle at B. Only defined while the
    Steiner point is interior, i.e. no triangle angle reaches 120 degrees.
    """
    _check_lengths(l, l_prime)
    if not 0.0 < angle_b < math.pi:
        raise ValueError("angle at B must lie in (0, pi)")
    if angle_b > TWO_THIRDS_PI:
        raise ValueError("angle at B exceeds 120 degrees: no interior Steiner point")
    num = l * math.sin(THIRD_PI) - l_prime * math.sin(THIRD_PI - angle_b)
    den = l * math.cos(THIRD_PI) + l_prime * math.cos(THIRD_PI - angle_b)
    alpha = math.atan2(num, den)
    if alpha < 0.0 or alpha > angle_b:
        raise ValueError("triangle has an angle of 120 degrees or more at A or C")
    return alpha


def _third_side(l: float, l_prime: float, angle_b: float) -> float:
    return math.sqrt(max(l * l + l_prime * l_prime - 2.0 * l * l_prime * math.cos(angle_b), 0.0))


def steiner_3_length(l: float, l_prime: float, angle_b: float) -> float:
    """Length of the shortest tree joining A, B, C given |BC|, |AB| and the angle at B."""
    _check_lengths(l, l_prime)
    if not 0.0 < angle_b < math.pi:
        raise ValueError("angle at B must lie in (0, pi)")
    if angle_b >= TWO_THIRDS_PI - ANGLE_EPS:
        return l + l_prime
    ca = _third_side(l, l_prime, angle_b)
    # Remaining angles from the law of sines / cosines on B=(0,0), C=(l,0).
    ax, ay = l_prime * math.cos(angle_b), l_prime * math.sin(angle_b)
    angle_c = vertex_angle((l, 0.0), (0.0, 0.0), (ax, ay))
    angle_a = vertex_angle((ax, ay), (0.0, 0.0), (l, 0.0))
    if angle_c >= TWO_THIRDS_PI - ANGLE_EPS:
        return l + ca
    if angle_a >= TWO_THIRDS_PI - ANGLE_EPS:
        return l_prime + ca
    alpha = stem_elevation(l, l_prime, angle_b)
    return (
        (l - 2.0 * l_prime * math.cos(angle_b)) * math.sin(alpha)
        + (l * SQRT3 + 2.0 * l_prime * math.sin(angle_b)) * math.cos(alpha)
    ) / SQRT3


def _stem_direction(apex, toward, other, alpha):
    """Unit vector from ``apex`` rotated by ``alpha`` from side apex->toward, turning into the triangle."""
    dx, dy = toward[0] - apex[0], toward[1] - apex[1]
    n = math.hypot(dx, dy)
    dx, dy = dx / n, dy / n
    if cross(apex, toward, other) < 0:
        alpha = -alpha
    c, s = math.cos(alpha), math.sin(alpha)
    return (c * dx - s * dy, s * dx + c * dy)


def fermat_xy(a, b, c) -> tuple[tuple[float, float], Optional[int]]:
    """Fermat point of three coordinate pairs.

    Returns the point and the index (0, 1, 2) of the vertex it coincides with when
    that vertex angle is at least 120 degrees, else None.
    """
    l_bc, l_ab, l_ca = dist(b, c), dist(a, b), dist(c, a)
    # Two coincident vertices: the doubled point is the minimiser.
    if l_ab == 0.0 or l_ca == 0.0:
        return (float(a[0]), float(a[1])), 0
    if l_bc == 0.0:
        return (float(b[0]), float(b[1])), 1
    angles = (vertex_angle(a, b, c), vertex_angle(b, c, a), vertex_angle(c, a, b))
    k = max(range(3), key=angles.__getitem__)
    if angles[k] >= TWO_THIRDS_PI - ANGLE_EPS:
        return (float((a, b, c)[k][0]), float((a, b, c)[k][1])), k
    alpha_b = _elevation_unchecked(l_bc, l_ab, angles[1])
    alpha_c = _elevation_unchecked(l_bc, l_ca, angles[2])
    ub = _stem_direction(b, c, a, alpha_b)
    uc = _stem_direction(c, b, a, alpha_c)
    # b + t*ub = c + s*uc
    det = ub[0] * (-uc[1]) - ub[1] * (-uc[0])
    rx, ry = c[0] - b[0], c[1] - b[1]
    t = (rx * (-uc[1]) - ry * (-uc[0])) / det
    return (b[0] + t * ub[0], b[1] + t * ub[1]), None


def _elevation_unchecked(l, l_prime, angle_b):
    num = l * math.sin(THIRD_PI) - l_prime * math.sin(THIRD_PI - angle_b)
    den = l * math.cos(THIRD_PI) + l_prime * math.cos(THIRD_PI - angle_b)
    return math.atan2(num, den)


def fermat_point(t: Triangle) -> tuple[Point2, Optional[str]]:
    """Point minimising the summed distance to the triangle's vertices.

    The second element names the vertex ('a', 'b' or 'c') the point collapses onto
    when its angle is 120 degrees or more.
    """
    p, k = fermat_xy(tuple(t.a), tuple(t.b), tuple(t.c))
    return Point2(*p), (None if k is None else "abc"[k])


def triangle_steiner_length(t: Triangle) -> float:
    """Three-pin Steiner length of ``t`` evaluated through :func:`steiner_3_length` at vertex b."""
    la, _, lc = t.side_lengths()
    return steiner_3_length(la, lc, t.angles()[1])


def similar_same_chirality(t1: Triangle, t2: Triangle, tol: float = 1e-9) -> Optional[float]:
    """Scale factor taking ``t1`` onto ``t2`` under the labelled vertex correspondence.

    None when the corresponding angles differ by more than ``tol`` or the two
    triangles have opposite handedness.
    """
    if t1.orientation != t2.orientation:
        return None
    if any(abs(x - y) > tol for x, y in zip(t1.angles(), t2.angles())):
        return None
    return t2.side_lengths()[0] / t1.side_lengths()[0]
