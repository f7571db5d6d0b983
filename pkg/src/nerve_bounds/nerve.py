"""Nerves of region families, f-vectors and the upper-bound verdicts.

Index sets are sorted tuples of 0-based set indices. Faces are enumerated level
by level: a candidate of size ``s + 1`` is only ever an extension of a size
``s`` face, which is sound because nerves are downward closed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Optional

from .construction import RegionFamily, mask_cells
from .graph_bounds import ParameterRange, surface_lemma_params


class CapTooLow(ValueError):
    pass


@dataclass
class Nerve:
    n: int
    d_max: int
    levels: list[dict[tuple[int, ...], int]]  # levels[d]: face of dimension d -> cell mask
    truncated: bool = False  # a face of dimension d_max + 1 exists

    @property
    def f(self) -> list[int]:
        return [len(level) for level in self.levels]

    def f_k(self, k: int) -> int:
        if k > self.d_max:
            raise CapTooLow(f"f_{k} needs d_max >= {k}, have {self.d_max}")
        return len(self.levels[k])

    def faces_of_dim(self, k: int) -> list[tuple[int, ...]]:
        if k > self.d_max:
            raise CapTooLow(f"faces of dimension {k} not enumerated (d_max={self.d_max})")
        return sorted(self.levels[k])

    def __contains__(self, sigma) -> bool:
        sigma = tuple(sorted(sigma))
        d = len(sigma) - 1
        return 0 <= d < len(self.levels) and sigma in self.levels[d]

    def faces(self) -> list[tuple[int, ...]]:
        return [s for level in self.levels for s in sorted(level)]

    def mask(self, sigma) -> int:
        sigma = tuple(sorted(sigma))
        return self.levels[len(sigma) - 1].get(sigma, 0)


def compute_nerve(family: RegionFamily, d_max: int) -> Nerve:
    if d_max < 1:
        raise ParameterRange("d_max must be at least 1")
    masks = family.masks
    n = family.n

    def extend(level):
        out: dict[tuple[int, ...], int] = {}
        for sigma, m in level.items():
            for j in range(sigma[-1] + 1, n):
                mj = m & masks[j]
                if mj:
                    out[sigma + (j,)] = mj
        return out

    levels = [{(i,): m for i, m in enumerate(masks) if m}]
    for _ in range(d_max):
        levels.append(extend(levels[-1]))
    truncated = bool(extend(levels[-1]))
    return Nerve(family.n, d_max, levels, truncated)


def f_ind(nerve: Nerve, k: int) -> int:
    """Number of k-dimensional faces lying in some (k+1)-dimensional face."""
    if k + 1 > nerve.d_max:
        raise CapTooLow(f"f_ind_{k} needs d_max >= {k + 1}, have {nerve.d_max}")
    return len(induced_faces(nerve, k))


def induced_faces(nerve: Nerve, k: int) -> set[tuple[int, ...]]:
    out = set()
    for sigma in nerve.faces_of_dim(k + 1):
        for tau in combinations(sigma, k + 1):
            out.add(tau)
    return out


def cell_components(family: RegionFamily, mask: int) -> list[list[int]]:
    """Connected pieces of a closed cell union, under the boundary relation."""
    cells = mask_cells(mask)
    inside = set(cells)
    parent = {c: c for c in cells}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cx = family.complex
    for c in cells:
        for b in cx.cells[c].boundary:
            if b in inside:
                ra, rb = find(c), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for c in cells:
        groups.setdefault(find(c), []).append(c)
    return sorted(groups.values())


def component_count(family: RegionFamily, sigma: Iterable[int]) -> int:
    sigma = tuple(sigma)
    if not sigma:
        raise ValueError("sigma must be nonempty")
    return len(cell_components(family, family.intersection(sigma)))


@dataclass
class HypothesisReport:
    k: int
    b: int
    f_next: int  # f_{k+1}
    no_higher_faces: bool
    component_violations: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    single_points: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.no_higher_faces and not self.component_violations

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "f_k_plus_1_zero": self.no_higher_faces,
            "f_k_plus_1": self.f_next,
            "component_violations": [{"sigma": list(s), "components": c}
                                     for s, c in self.component_violations],
            "single_point_intersections": len(self.single_points),
        }


def check_hypotheses(family: RegionFamily, k: int, b: int,
                     nerve: Optional[Nerve] = None) -> HypothesisReport:
    """Conditions (i) f_{k+1} = 0 and (ii) at most ``b`` components per k- and (k+1)-wise intersection."""
    if k < 2 or b < 1:
        raise ParameterRange("need k >= 2 and b >= 1")
    if nerve is None or nerve.d_max < k + 1:
        nerve = compute_nerve(family, k + 1)
    f_next = nerve.f_k(k + 1)
    report = HypothesisReport(k, b, f_next, f_next == 0)
    cx = family.complex
    for dim in (k - 1, k):
        for sigma in nerve.faces_of_dim(dim):
            comps = cell_components(family, nerve.mask(sigma))
            if len(comps) > b:
                report.component_violations.append((sigma, len(comps)))
            if b == 1 and len(comps) == 1 and len(comps[0]) == 1 and cx.cells[comps[0][0]].dim == 0:
                report.single_points.append(sigma)
    return report


def kalai_eckhoff_bound(n: int, d: int, r: int, k: int) -> int:
    """Upper bound on f_k for convex sets in R^d with every d + r + 1 disjoint."""
    if not (d >= 1 and r >= 1 and d <= k <= d + r - 1 and n >= 0):
        raise ParameterRange(f"need d <= k <= d + r - 1, got d={d}, r={r}, k={k}")
    return sum(comb(j - d, k - d) * comb(n - j + d - 1, d) for j in range(k, d + r))


def theorem_constant(k: int, b: int = 1) -> Fraction:
    """c(k) = (4k+1)/(4k^2-7k+1) for b = 1, and c(b, k) = b/(k-2b) for b >= 2."""
    if b == 1:
        if k < 2:
            raise ParameterRange("b = 1 needs k >= 2")
        return Fraction(4 * k + 1, 4 * k * k - 7 * k + 1)
    if b < 1 or k <= 2 * b:
        raise ParameterRange(f"b >= 2 needs k > 2b, got b={b}, k={k}")
    return Fraction(b, k - 2 * b)


@dataclass
class BoundReport:
    k: int
    b: int
    chi: Optional[int]
    f_vector: list[int]
    f_k: int
    f_ind_km1: int
    constant: Fraction
    additive: Fraction
    bound: Fraction
    satisfied: bool
    margin: Fraction
    hypothesis_status: Optional[dict] = None
    constants_origin: str = "theorem"
    branches: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "b": self.b,
            "chi": self.chi,
            "f_vector": self.f_vector,
            "f_k": self.f_k,
            "f_ind": self.f_ind_km1,
            "constant": frac_str(self.constant),
            "additive": frac_str(self.additive),
            "bound": frac_str(self.bound),
            "satisfied": self.satisfied,
            "margin": frac_str(self.margin),
            "constants_origin": self.constants_origin,
            "branches": {k: frac_str(v) for k, v in self.branches.items()},
            "hypothesis_status": self.hypothesis_status,
        }


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def surface_bound_terms(k: int, b: int, chi: int) -> dict[str, tuple[Fraction, Fraction]]:
    """(slope, intercept) pairs of the bounds the surface argument produces.

    b = 1: with t = 3(k+2-chi) and c_t = 12t/(4t+3), either |E| >= t+1 and
    f_k <= (f_ind - c_t chi)/(k+1-c_t), or |E| <= t and f_k <= (f_ind + t)/(k+1).
    b >= 2: f_k <= (b f_ind - 3 chi)/(k-2b).
    """
    if b == 1:
        t, ct = surface_lemma_params(k, chi)
        denom = k + 1 - ct
        return {
            "many_edges": (1 / denom, -ct * chi / denom),
            "few_edges": (Fraction(1, k + 1), Fraction(t, k + 1)),
        }
    if k <= 2 * b:
        raise ParameterRange(f"b >= 2 needs k > 2b, got b={b}, k={k}")
    if chi > 2:
        raise ParameterRange("chi <= 2 for a closed surface")
    return {"forest": (Fraction(b, k - 2 * b), Fraction(-3 * chi, k - 2 * b))}


def check_main_bounds(nerve: Nerve, k: int, b: int = 1, chi: Optional[int] = None,
                      hypothesis_status: Optional[dict] = None) -> BoundReport:
    """Evaluate f_k <= c f_ind_{k-1} (plane) or the surface bound for Euler characteristic ``chi``."""
    fk = nerve.f_k(k)
    find = f_ind(nerve, k - 1)
    if chi is None:
        c = theorem_constant(k, b)
        bound = c * find
        slope, additive, branches, origin = c, Fraction(0), {}, "theorem"
    else:
        terms = surface_bound_terms(k, b, chi)
        values = {name: s * find + a for name, (s, a) in terms.items()}
        # the argument ends in one of the branches depending on |E(G)|, so the
        # guaranteed bound is the weaker of them
        name = max(values, key=lambda nm: (values[nm], nm))
        slope, additive = terms[name]
        bound = values[name]
        branches, origin = values, "proof-derived"
    return BoundReport(k, b, chi, nerve.f, fk, find, slope, additive, bound,
                       fk <= bound, bound - fk, hypothesis_status, origin, branches)


def proof_chain_bound(f_ind_km1: int, k: int, edges: int) -> Fraction:
    """Bound on f_k that the b = 1 planar argument yields for a witness graph with ``edges`` edges.

    Few edges (|E| <= 3k): f_k <= (f_ind + 3k)/(k+1). Otherwise the lemma's
    12k/(4k+1) cap gives f_k <= (f_ind - 24k/(4k+1))/(k+1-12k/(4k+1)).
    """
    if edges <= 3 * k:
        return Fraction(f_ind_km1 + 3 * k, k + 1)
    cap = Fraction(12 * k, 4 * k + 1)
    return (f_ind_km1 - 2 * cap) / (k + 1 - cap)


def downward_closed(nerve: Nerve) -> bool:
    for d in range(1, len(nerve.levels)):
        for sigma in nerve.levels[d]:
            for tau in combinations(sigma, d):
                if tau not in nerve.levels[d - 1]:
                    return False
    return True
