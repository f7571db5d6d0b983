"""Seeded generators of planar region families for empirical bound checks.

Three sources:

* arrangement families: the construction sets on a random simple
  arrangement, optionally thinned by dropping sub-triangles;
* dual-cell families: for a triangulated planar region T, the closed
  regions of the barycentric subdivision dual to the vertices of T (their
  nerve is T itself and every nonempty intersection is connected);
* grouped families: unions of dual regions over random vertex clusters,
  which produce higher-dimensional nerves and disconnected intersections.

Every generator is a pure function of its ``random.Random`` argument.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional

from .arrangement import build_arrangement, verify_simple
from .construction import CellComplex, RegionFamily, build_theorem4_family, stellar_subdivide
from .geometry import Line, Point, barycenter
from .nerve import check_hypotheses, compute_nerve


def random_simple_lines(m: int, rng: random.Random, spread: int = 12, tries: int = 1000) -> list[Line]:
    """m lines with small integer coefficients forming a simple arrangement."""
    for _ in range(tries):
        lines = []
        seen = set()
        while len(lines) < m:
            a, b = rng.randint(-spread, spread), rng.randint(-spread, spread)
            if a == 0 and b == 0:
                continue
            ln = Line(a, b, rng.randint(-spread, spread))
            if ln not in seen:
                seen.add(ln)
                lines.append(ln)
        if verify_simple(lines).ok:
            return sorted(lines, key=Line.sort_key)
    raise RuntimeError(f"no simple arrangement of {m} lines found")


def arrangement_family(m: int, rng: random.Random, keep: float = 1.0) -> RegionFamily:
    """Construction family on m random lines; each sub-triangle survives with probability ``keep``."""
    lines = random_simple_lines(m, rng)
    cx = stellar_subdivide(build_arrangement(lines))
    fam = build_theorem4_family(cx, len(lines))
    if keep >= 1:
        return fam
    dropped = {c.id for c in cx.cells if c.tag[0] == "subtri" and rng.random() >= keep}
    sets = [fam.sets[0]]
    for s in fam.sets[1:]:
        kept = [c for c in s if c not in dropped and cx.cells[c].dim == 2]
        skeleton = [c for c in s if cx.cells[c].dim < 2 and cx.cells[c].tag[0] in ("vertex", "line")]
        sets.append(frozenset(cx.closure(kept + skeleton)))
    return RegionFamily(cx, fam.names, sets)


@dataclass
class Triangulation:
    points: list[Point]
    triangles: list[tuple[int, int, int]]

    def vertices_used(self) -> list[int]:
        return sorted({v for t in self.triangles for v in t})

    def neighbours(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices_used()}
        for t in self.triangles:
            for u, v in combinations(t, 2):
                adj[u].add(v)
                adj[v].add(u)
        return adj


def grid_triangulation(rows: int, cols: int, rng: random.Random, drop: float = 0.0) -> Triangulation:
    """Unit grid with a random diagonal per square; each triangle is removed with probability ``drop``."""
    def vid(i, j):
        return i * (cols + 1) + j

    points = [Point(j, i) for i in range(rows + 1) for j in range(cols + 1)]
    tris = []
    for i in range(rows):
        for j in range(cols):
            a, b, c, d = vid(i, j), vid(i, j + 1), vid(i + 1, j + 1), vid(i + 1, j)
            pair = [(a, b, c), (a, c, d)] if rng.random() < 0.5 else [(a, b, d), (b, c, d)]
            tris.extend(tuple(sorted(t)) for t in pair)
    tris = [t for t in tris if rng.random() >= drop] or tris[:1]
    return Triangulation(points, tris)


def dual_cell_complex(tri: Triangulation) -> tuple[CellComplex, dict[int, list[int]]]:
    """Barycentric subdivision of ``tri`` and, per vertex, the 2-cells of its dual region."""
    cx = CellComplex()
    edges = sorted({e for t in tri.triangles for e in combinations(t, 2)})
    vtx = {v: cx.add(0, (), ("vertex", v), tri.points[v]) for v in tri.vertices_used()}
    mid = {e: cx.add(0, (), ("edge_mid", e), barycenter([tri.points[x] for x in e])) for e in edges}
    ctr = {t: cx.add(0, (), ("tri_mid", t), barycenter([tri.points[x] for x in t])) for t in tri.triangles}
    half = {(v, e): cx.add(1, (vtx[v], mid[e]), ("half", v, e)) for e in edges for v in e}
    spoke_e = {(t, e): cx.add(1, (mid[e], ctr[t]), ("spoke_e", t, e))
               for t in tri.triangles for e in combinations(t, 2)}
    spoke_v = {(t, v): cx.add(1, (vtx[v], ctr[t]), ("spoke_v", t, v))
               for t in tri.triangles for v in t}
    region: dict[int, list[int]] = {v: [] for v in vtx}
    for t in tri.triangles:
        for v in t:
            for e in combinations(t, 2):
                if v in e:
                    f = cx.add(2, (half[v, e], spoke_e[t, e], spoke_v[t, v]), ("flag", v, e, t))
                    region[v].append(f)
    return cx, region


def dual_cell_family(tri: Triangulation) -> RegionFamily:
    cx, region = dual_cell_complex(tri)
    verts = sorted(region)
    return RegionFamily(cx, [f"D{v}" for v in verts],
                        [frozenset(cx.closure(region[v])) for v in verts])


def grouped_family(tri: Triangulation, groups: list[set[int]]) -> RegionFamily:
    """Sets are unions of the dual regions of each vertex group."""
    cx, region = dual_cell_complex(tri)
    sets = []
    for g in groups:
        sets.append(frozenset(cx.closure([f for v in sorted(g) for f in region[v]])))
    return RegionFamily(cx, [f"G{i + 1}" for i in range(len(groups))], sets)


def random_clusters(tri: Triangulation, n: int, size: int, rng: random.Random) -> list[set[int]]:
    """n vertex clusters grown by random breadth-first steps from random seeds."""
    adj = tri.neighbours()
    verts = sorted(adj)
    out = []
    for _ in range(n):
        g = {rng.choice(verts)}
        target = rng.randint(1, size)
        while len(g) < target:
            frontier = sorted({w for v in g for w in adj[v]} - g)
            if not frontier:
                break
            g.add(rng.choice(frontier))
        out.append(g)
    return out


@dataclass
class GeneratedFamily:
    label: str
    family: RegionFamily
    k: int
    b: int


# (k, b) targets of the grouped generator and the cluster parameters that reach them
GROUPED_TARGETS = [
    # k, b, sets, cluster size, grid
    (2, 1, 7, 3, 3),
    (3, 1, 6, 4, 3),
    (3, 1, 8, 5, 3),
    (4, 1, 7, 6, 3),
    (5, 2, 8, 7, 3),
    (6, 2, 9, 8, 3),
    (7, 3, 10, 9, 3),
]


def generated_families(seed: int, count: int, max_tries: int = 200000) -> Iterator[GeneratedFamily]:
    """``count`` families that pass the (k, b) hypotheses with f_{k+1} = 0, cycling through sources."""
    rng = random.Random(seed)
    produced = 0
    tries = 0
    slot = 0
    while produced < count:
        tries += 1
        if tries > max_tries:
            raise RuntimeError(f"only {produced} of {count} families after {max_tries} attempts")
        kind = slot % 3
        if kind == 0:
            m = rng.randint(3, 7)
            keep = rng.choice([1.0, 0.8, 0.5])
            fam = arrangement_family(m, rng, keep)
            cand = GeneratedFamily(f"arr-m{m}-keep{keep}-{tries}", fam, 2, 1)
        elif kind == 1:
            tri = grid_triangulation(rng.randint(1, 4), rng.randint(1, 4), rng, drop=rng.choice([0, 0.2, 0.4]))
            cand = GeneratedFamily(f"dual-{tries}", dual_cell_family(tri), 2, 1)
        else:
            k, b, n, size, side = GROUPED_TARGETS[(slot // 3) % len(GROUPED_TARGETS)]
            tri = grid_triangulation(side, side, rng, drop=rng.choice([0, 0.2]))
            groups = random_clusters(tri, n, size, rng)
            cand = GeneratedFamily(f"grouped-k{k}-b{b}-{tries}", grouped_family(tri, groups), k, b)
        if accept(cand):
            produced += 1
            slot += 1
            yield cand


def accept(cand: GeneratedFamily, nerve=None) -> bool:
    if nerve is None:
        nerve = compute_nerve(cand.family, cand.k + 1)
    if nerve.f_k(cand.k) == 0:
        return False
    return check_hypotheses(cand.family, cand.k, cand.b, nerve).passed
