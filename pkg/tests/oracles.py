"""Brute-force reference computations, independent of the DCEL code."""
from __future__ import annotations

from itertools import combinations, product

from nerve_bounds.geometry import intersect_lines


def _cov(line):
    return (line.a, line.b, -line.c)


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _sign(x):
    return (x > 0) - (x < 0)


def bounded_triangles_oracle(lines) -> int:
    """Triples whose three crossings are not separated by any other line."""
    count = 0
    for i, j, k in combinations(range(len(lines)), 3):
        pts = [intersect_lines(lines[i], lines[j]), intersect_lines(lines[j], lines[k]),
               intersect_lines(lines[i], lines[k])]
        if any(p is None for p in pts):
            continue
        others = [m for m in range(len(lines)) if m not in (i, j, k)]
        if all(len({_sign(lines[m].value(p)) for p in pts}) == 1 for m in others):
            count += 1
    return count


def projective_triangles_oracle(lines) -> tuple[int, list[int]]:
    """Triangle faces of the arrangement in the projective plane, and per-line incidence.

    The three lines of a triple cut the projective plane into four triangles,
    one per sign pattern up to global sign. Each is the cone over three
    homogeneous vertices; another line misses its interior iff it has one
    sign on all three.
    """
    cov = [_cov(ln) for ln in lines]
    total = 0
    incidence = [0] * len(lines)
    for tri in combinations(range(len(lines)), 3):
        others = [m for m in range(len(lines)) if m not in tri]
        for s_rest in product((1, -1), repeat=2):
            signs = dict(zip(tri, (1,) + s_rest))
            verts = []
            for a, b in combinations(tri, 2):
                (c,) = [x for x in tri if x not in (a, b)]
                v = _cross(cov[a], cov[b])
                if _sign(_dot(cov[c], v)) != signs[c]:
                    v = tuple(-x for x in v)
                verts.append(v)
            if all(len({_sign(_dot(cov[m], v)) for v in verts}) == 1 for m in others):
                total += 1
                for x in tri:
                    incidence[x] += 1
    return total, incidence
