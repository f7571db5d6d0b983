"""Half-edge subdivision of a simple line arrangement and its triangle census.

The Euclidean arrangement is compactified by a rectangular frame placed one
unit beyond the extreme crossing coordinates, so the subdivision is a single
connected plane graph and ``v - e + f = 2`` holds on the nose. Projective
faces are recovered by gluing antipodal unbounded faces.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Optional, Sequence

from .geometry import Line, Point, cross, intersect_lines

LEFT, BOTTOM, RIGHT, TOP = range(4)


class ArrangementError(ValueError):
    pass


class NotSimple(ArrangementError):
    pass


class GenerationFailed(ArrangementError):
    pass


@dataclass(frozen=True)
class SimplicityReport:
    ok: bool
    duplicates: tuple[tuple[int, int], ...] = ()
    parallels: tuple[tuple[int, int], ...] = ()
    concurrencies: tuple[tuple[tuple[int, int, int], Point], ...] = ()

    def describe(self) -> str:
        if self.ok:
            return "ok"
        parts = []
        if self.duplicates:
            parts.append(f"duplicate lines {list(self.duplicates)}")
        if self.parallels:
            parts.append(f"parallel pairs {list(self.parallels)}")
        for triple, p in self.concurrencies:
            parts.append(f"lines {list(triple)} concurrent at {p}")
        return "; ".join(parts)


def verify_simple(lines: Sequence[Line]) -> SimplicityReport:
    """Check that all pairs cross and no three lines pass through one point."""
    if len(lines) < 2:
        raise ArrangementError("need at least two lines")
    dups, pars = [], []
    crossings: dict[tuple[int, int], Point] = {}
    for i, j in combinations(range(len(lines)), 2):
        if lines[i] == lines[j]:
            dups.append((i, j))
            continue
        p = intersect_lines(lines[i], lines[j])
        if p is None:
            pars.append((i, j))
        else:
            crossings[i, j] = p
    by_point: dict[Point, set[int]] = {}
    for (i, j), p in crossings.items():
        by_point.setdefault(p, set()).update((i, j))
    conc = []
    for p, members in sorted(by_point.items()):
        if len(members) > 2:
            for triple in combinations(sorted(members), 3):
                conc.append((triple, p))
    ok = not (dups or pars or conc)
    return SimplicityReport(ok, tuple(dups), tuple(pars), tuple(conc))


def _half_plane(d: Point) -> int:
    return 0 if (d.y > 0 or (d.y == 0 and d.x > 0)) else 1


def _angle_cmp(u: Point, v: Point) -> int:
    hu, hv = _half_plane(u), _half_plane(v)
    if hu != hv:
        return hu - hv
    c = cross(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


@dataclass
class Face:
    index: int
    boundary: list[int]  # half-edge ids, in traversal order
    bounded: bool  # no frame edge on the boundary and not the outer face
    outer: bool = False
    finite_edges: int = 0  # edges joining two crossings
    rays: tuple[tuple[int, int], ...] = ()  # (line index, +1/-1 towards the frame)
    lines: tuple[int, ...] = ()  # carrier lines of finite edges, by edge

    @property
    def edge_count(self) -> int:
        return len(self.boundary)


@dataclass
class Arrangement:
    lines: list[Line]
    vertices: list[Point]
    vertex_lines: list[tuple[int, ...]]  # carrier lines through each vertex
    edges: list[tuple[int, int, tuple]]  # (u, v, carrier): ('line', i) or ('frame', side)
    origin: list[int]
    twin: list[int]
    next: list[int]
    prev: list[int]
    face_of: list[int]
    faces: list[Face]
    frame: tuple[Fraction, Fraction, Fraction, Fraction]  # xmin, ymin, xmax, ymax
    crossing_index: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def n_crossings(self) -> int:
        return len(self.crossing_index)

    def is_crossing(self, v: int) -> bool:
        return len(self.vertex_lines[v]) == 2

    def edge_of(self, h: int) -> int:
        return h // 2

    def face_vertices(self, face: Face) -> list[int]:
        return [self.origin[h] for h in face.boundary]

    def euler(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def bounded_faces(self) -> list[Face]:
        return [f for f in self.faces if f.bounded]

    def unbounded_faces(self) -> list[Face]:
        return [f for f in self.faces if not f.bounded and not f.outer]


def _frame(points: Sequence[Point]) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    return min(xs) - 1, min(ys) - 1, max(xs) + 1, max(ys) + 1


def _frame_hits(line: Line, frame) -> list[Point]:
    xmin, ymin, xmax, ymax = frame
    hits = set()
    for x in (xmin, xmax):
        if line.b != 0:
            y = (line.c - line.a * x) / line.b
            if ymin <= y <= ymax:
                hits.add(Point(x, y))
    for y in (ymin, ymax):
        if line.a != 0:
            x = (line.c - line.b * y) / line.a
            if xmin <= x <= xmax:
                hits.add(Point(x, y))
    return sorted(hits)


def _frame_sides(p: Point, frame) -> list[int]:
    xmin, ymin, xmax, ymax = frame
    sides = []
    if p.x == xmin:
        sides.append(LEFT)
    if p.x == xmax:
        sides.append(RIGHT)
    if p.y == ymin:
        sides.append(BOTTOM)
    if p.y == ymax:
        sides.append(TOP)
    return sides


def build_arrangement(lines: Sequence[Line]) -> Arrangement:
    """Frame-compactified half-edge structure of a simple arrangement."""
    report = verify_simple(lines)
    if not report.ok:
        raise NotSimple(report.describe())
    lines = list(lines)
    vertices: list[Point] = []
    vertex_lines: list[tuple[int, ...]] = []
    index_of: dict[Point, int] = {}

    def add_vertex(p: Point, carriers: tuple[int, ...]) -> int:
        if p in index_of:
            return index_of[p]
        index_of[p] = len(vertices)
        vertices.append(p)
        vertex_lines.append(carriers)
        return index_of[p]

    crossing_index = {}
    for i, j in combinations(range(len(lines)), 2):
        p = intersect_lines(lines[i], lines[j])
        crossing_index[i, j] = add_vertex(p, (i, j))
    frame = _frame(vertices)
    xmin, ymin, xmax, ymax = frame

    on_line: list[list[int]] = [[] for _ in lines]
    for (i, j), v in crossing_index.items():
        on_line[i].append(v)
        on_line[j].append(v)
    on_side: list[list[int]] = [[] for _ in range(4)]
    for idx, line in enumerate(lines):
        hits = _frame_hits(line, frame)
        assert len(hits) == 2, "frame must strictly enclose every crossing"
        for p in hits:
            v = add_vertex(p, (idx,))
            on_line[idx].append(v)
            for s in _frame_sides(p, frame):
                on_side[s].append(v)
    for corner in (Point(xmin, ymin), Point(xmax, ymin), Point(xmax, ymax), Point(xmin, ymax)):
        v = add_vertex(corner, ())
        for s in _frame_sides(corner, frame):
            if v not in on_side[s]:
                on_side[s].append(v)

    edges: list[tuple[int, int, tuple]] = []

    def chain(ids: list[int], direction: Point, carrier: tuple):
        base = vertices[ids[0]]
        def along(v):
            d = vertices[v] - base
            return d.x * direction.x + d.y * direction.y
        ordered = sorted(set(ids), key=along)
        for u, v in zip(ordered, ordered[1:]):
            edges.append((u, v, carrier))

    for idx, line in enumerate(lines):
        chain(on_line[idx], line.direction, ("line", idx))
    side_dirs = {LEFT: Point(0, 1), RIGHT: Point(0, 1), BOTTOM: Point(1, 0), TOP: Point(1, 0)}
    for s in range(4):
        chain(on_side[s], side_dirs[s], ("frame", s))

    # half-edge 2e runs u->v, 2e+1 runs v->u
    origin: list[int] = []
    for u, v, _ in edges:
        origin += [u, v]
    n_half = len(origin)
    twin = [h ^ 1 for h in range(n_half)]
    outgoing: list[list[int]] = [[] for _ in vertices]
    for h in range(n_half):
        outgoing[origin[h]].append(h)

    def vec(h: int) -> Point:
        return vertices[origin[twin[h]]] - vertices[origin[h]]

    rank = {}
    for v, hs in enumerate(outgoing):
        hs.sort(key=cmp_to_key(lambda a, b: _angle_cmp(vec(a), vec(b))))
        for r, h in enumerate(hs):
            rank[h] = r
    nxt = [0] * n_half
    for h in range(n_half):
        t = twin[h]
        around = outgoing[origin[t]]
        # clockwise neighbour of the twin keeps the face on the left
        nxt[h] = around[(rank[t] - 1) % len(around)]
    prv = [0] * n_half
    for h in range(n_half):
        prv[nxt[h]] = h

    face_of = [-1] * n_half
    faces: list[Face] = []
    for start in range(n_half):
        if face_of[start] != -1:
            continue
        cycle = []
        h = start
        while face_of[h] == -1:
            face_of[h] = len(faces)
            cycle.append(h)
            h = nxt[h]
        faces.append(Face(index=len(faces), boundary=cycle, bounded=False))

    arr = Arrangement(lines, vertices, vertex_lines, edges, origin, twin, nxt, prv,
                      face_of, faces, frame, crossing_index)
    for face in faces:
        _classify(arr, face)
    outer = [f for f in faces if f.outer]
    assert len(outer) == 1
    return arr


def _signed_area2(arr: Arrangement, face: Face) -> Fraction:
    pts = [arr.vertices[arr.origin[h]] for h in face.boundary]
    return sum((cross(p, q) for p, q in zip(pts, pts[1:] + pts[:1])), Fraction(0))


def _classify(arr: Arrangement, face: Face) -> None:
    if _signed_area2(arr, face) < 0:
        face.outer = True
        return
    touches_frame = False
    finite = 0
    rays = []
    carriers = []
    for h in face.boundary:
        u, v, carrier = arr.edges[arr.edge_of(h)]
        if carrier[0] == "frame":
            touches_frame = True
            continue
        a, b = arr.origin[h], arr.origin[arr.twin[h]]
        if arr.is_crossing(a) and arr.is_crossing(b):
            finite += 1
            carriers.append(carrier[1])
        else:
            touches_frame = True
            idx = carrier[1]
            hub, tip = (a, b) if arr.is_crossing(a) else (b, a)
            d = arr.vertices[tip] - arr.vertices[hub]
            dirv = arr.lines[idx].direction
            sign = 1 if d.x * dirv.x + d.y * dirv.y > 0 else -1
            rays.append((idx, sign))
    face.bounded = not touches_frame
    face.finite_edges = finite
    face.rays = tuple(sorted(rays))
    face.lines = tuple(carriers)


def bounded_triangles(arr: Arrangement) -> int:
    return sum(1 for f in arr.bounded_faces() if f.edge_count == 3)


@dataclass(frozen=True)
class ProjectiveTriangle:
    lines: tuple[int, int, int]
    faces: tuple[int, ...]  # one bounded face, or an antipodal pair of unbounded faces


def antipodal_pairs(arr: Arrangement) -> list[tuple[Face, Face]]:
    """Unbounded faces matched with the face sharing both lines' opposite ends."""
    by_rays = {f.rays: f for f in arr.unbounded_faces()}
    pairs = []
    for f in arr.unbounded_faces():
        mate_key = tuple(sorted((i, -s) for i, s in f.rays))
        g = by_rays.get(mate_key)
        if g is None or len(f.rays) != 2:
            raise ArrangementError(f"face {f.index} has no antipodal partner")
        if f.index < g.index:
            pairs.append((f, g))
    return pairs


def projective_faces(arr: Arrangement) -> int:
    return len(arr.bounded_faces()) + len(antipodal_pairs(arr))


def projective_triangles(arr: Arrangement) -> list[ProjectiveTriangle]:
    out = []
    for f in arr.bounded_faces():
        if f.edge_count == 3:
            out.append(ProjectiveTriangle(tuple(sorted(f.lines)), (f.index,)))
    for f, g in antipodal_pairs(arr):
        if f.finite_edges + g.finite_edges == 1:
            ray_lines = {i for i, _ in f.rays}
            side = f.lines + g.lines
            out.append(ProjectiveTriangle(tuple(sorted(ray_lines | set(side))),
                                          (f.index, g.index)))
    return out


def projective_triangle_count(lines: Sequence[Line], arr: Optional[Arrangement] = None) -> int:
    arr = arr or build_arrangement(lines)
    return len(projective_triangles(arr))


def line_triangle_incidence(lines: Sequence[Line], arr: Optional[Arrangement] = None) -> dict[Line, int]:
    """For each line, how many projective triangles have a side on it."""
    arr = arr or build_arrangement(lines)
    counts = {line: 0 for line in arr.lines}
    for tri in projective_triangles(arr):
        for i in tri.lines:
            counts[arr.lines[i]] += 1
    return counts


def select_infinity_line(lines: Sequence[Line], arr: Optional[Arrangement] = None) -> Line:
    """The least triangle-incident line; ties go to the smallest normalised line."""
    if len(lines) < 3:
        raise ArrangementError("need at least three lines")
    incidence = line_triangle_incidence(lines, arr)
    return min(incidence, key=lambda line: (incidence[line], line.sort_key()))


def census(arr: Arrangement) -> dict:
    incidence = line_triangle_incidence(arr.lines, arr)
    return {
        "n_lines": len(arr.lines),
        "vertices": len(arr.vertices),
        "crossings": arr.n_crossings,
        "edges": len(arr.edges),
        "faces": len(arr.faces),
        "bounded_faces": len(arr.bounded_faces()),
        "bounded_triangles": bounded_triangles(arr),
        "projective_faces": projective_faces(arr),
        "projective_triangles": len(projective_triangles(arr)),
        "per_line_incidence": [incidence[line] for line in arr.lines],
    }


# -- Furedi-Palasti arrangements ---------------------------------------------

def _fp_float_line(j: int, n: int) -> tuple[float, float, float]:
    # Chord of the unit circle joining the points at angles alpha and pi - 2*alpha.
    # The unshifted family is mirror-symmetric about line 0 and has triple
    # points there; a phase of pi/(8n) resolves each into a triangle.
    alpha = 2 * math.pi * j / n + math.pi / (8 * n)
    beta = math.pi - 2 * alpha
    p = (math.cos(alpha), math.sin(alpha))
    q = (math.cos(beta), math.sin(beta))
    if math.dist(p, q) < 1e-9:
        return p[0], p[1], 1.0
    a = q[1] - p[1]
    b = p[0] - q[0]
    return a, b, a * p[0] + b * p[1]


def _rationalize(x: float, max_den: int) -> Fraction:
    return Fraction(x).limit_denominator(max_den)


def furedi_palasti_lines(n: int, max_den: int = 1 << 10, retries: int = 12) -> list[Line]:
    """``n`` rational lines approximating the Furedi-Palasti arrangement.

    The float recipe is rounded by continued fractions and the result is
    checked exactly: simple, no parallels, and at least ceil(n(n-3)/3)
    projective triangles. Precision doubles on each failed attempt.
    """
    if n < 5:
        raise ArrangementError("Furedi-Palasti arrangements need n >= 5")
    target = -(-n * (n - 3) // 3)
    den = max_den
    last = "no attempt"
    for _ in range(retries):
        lines = []
        for j in range(n):
            a, b, c = _fp_float_line(j, n)
            lines.append(Line(_rationalize(a, den), _rationalize(b, den), _rationalize(c, den)))
        report = verify_simple(lines)
        if report.ok:
            count = projective_triangle_count(lines)
            if count >= target:
                return sorted(lines, key=Line.sort_key)
            last = f"{count} projective triangles < {target}"
        else:
            last = report.describe()
        den *= 2
    raise GenerationFailed(f"n={n}: {last}")
