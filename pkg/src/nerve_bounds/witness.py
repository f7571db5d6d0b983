"""Witness graphs: one vertex per point chosen in each (k+1)-wise intersection.

For every k-face tau met by a (k+1)-face, the witnesses of the (k+1)-faces
above tau are joined by a tree (b = 1) or by one tree per component of A_tau
(b >= 2). The union of these trees is the graph G the edge-counting argument
runs on.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import prod
from typing import Optional, Sequence

import networkx as nx

from .construction import RegionFamily
from .graph_bounds import (Decomposition, EmbeddedGraph, graph_triangles, lemma_ct_check,
                           triangle_blocks)
from .nerve import Nerve, cell_components, induced_faces

Sigma = tuple[int, ...]


class TooManyComponents(ValueError):
    pass


class SearchSpaceExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    sigma: Sigma
    index: int  # 0-based i of a_sigma^i
    component: Optional[int] = None  # smallest cell id of the component holding it

    @property
    def label(self) -> str:
        name = "a_" + "".join(f"{i + 1}," for i in self.sigma).rstrip(",")
        return name if self.component is None else f"{name}^{self.index + 1}"


@dataclass
class Witnesses:
    k: int
    b: int
    points: list[Witness]
    groups: dict[Sigma, list[int]]  # sigma -> vertex ids of W_sigma

    def __len__(self):
        return len(self.points)


def choose_witnesses(nerve: Nerve, k: int, b: int = 1,
                     family: Optional[RegionFamily] = None) -> Witnesses:
    """b = 1: one abstract witness per k-face; b >= 2: b witnesses covering every component."""
    points: list[Witness] = []
    groups: dict[Sigma, list[int]] = {}
    if b >= 2 and family is None:
        raise ValueError("b >= 2 needs the family to locate components")
    for sigma in nerve.faces_of_dim(k):
        ids = []
        comps = cell_components(family, nerve.mask(sigma)) if family is not None else None
        if comps is not None and len(comps) > b:
            raise TooManyComponents(f"A_{sigma} has {len(comps)} > {b} components")
        if b == 1:
            ids.append(len(points))
            points.append(Witness(sigma, 0))
        else:
            reps = [min(c) for c in comps]
            for i in range(b):
                ids.append(len(points))
                points.append(Witness(sigma, i, reps[i] if i < len(reps) else reps[0]))
        groups[sigma] = ids
    return Witnesses(k, b, points, groups)


@dataclass
class WitnessGraph:
    k: int
    b: int
    witnesses: Witnesses
    edges: list[tuple[int, int, Sigma]]  # (u, v, tau)
    gamma: list[Sigma]
    classes: dict[Sigma, list[list[int]]] = field(default_factory=dict)  # per tau, the tree vertex sets

    @property
    def n_vertices(self) -> int:
        return len(self.witnesses)

    def simple_edges(self) -> set[tuple[int, int]]:
        return {(min(u, v), max(u, v)) for u, v, _ in self.edges}

    def multiplicities(self) -> Counter:
        return Counter((min(u, v), max(u, v)) for u, v, _ in self.edges)

    def skeleton(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n_vertices))
        g.add_edges_from(self.simple_edges())
        return g

    def to_dict(self) -> dict:
        pts = self.witnesses.points
        return {
            "k": self.k,
            "b": self.b,
            "vertices": [p.label for p in pts],
            "edges": [{"u": pts[u].label, "v": pts[v].label, "tau": [i + 1 for i in tau]}
                      for u, v, tau in self.edges],
            "gamma_size": len(self.gamma),
        }

    def to_dot(self) -> str:
        pts = self.witnesses.points
        lines = ["graph G {"]
        for i, p in enumerate(pts):
            lines.append(f'  {i} [label="{p.label}"];')
        for u, v, tau in self.edges:
            lines.append(f'  {u} -- {v} [label="{",".join(str(i + 1) for i in tau)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _tree(vertices: Sequence[int], strategy: str) -> list[tuple[int, int]]:
    vs = sorted(vertices)
    if strategy == "path":
        return list(zip(vs, vs[1:]))
    if strategy == "star":
        return [(vs[0], v) for v in vs[1:]]
    raise ValueError(f"unknown tree strategy {strategy!r}")


def tree_classes(w: Witnesses, nerve: Nerve, family: Optional[RegionFamily] = None) -> dict[Sigma, list[list[int]]]:
    """For each tau in Gamma, the vertex sets that must each carry one tree.

    b = 1: all of V_tau. b >= 2: V_tau split by the component of A_tau holding
    each witness (A_sigma lies inside A_tau, so the component is well defined).
    """
    k = w.k
    out: dict[Sigma, list[list[int]]] = {}
    by_tau: dict[Sigma, list[int]] = {}
    for sigma, ids in w.groups.items():
        for tau in combinations(sigma, k):
            by_tau.setdefault(tau, []).extend(ids)
    for tau in sorted(by_tau):
        v_tau = sorted(by_tau[tau])
        if w.b == 1:
            out[tau] = [v_tau]
            continue
        comp_of: dict[int, int] = {}
        for ci, comp in enumerate(cell_components(family, nerve.mask(tau))):
            for c in comp:
                comp_of[c] = ci
        split: dict[int, list[int]] = {}
        for v in v_tau:
            split.setdefault(comp_of[w.points[v].component], []).append(v)
        out[tau] = [split[c] for c in sorted(split)]
    return out


def build_union_graph(w: Witnesses, nerve: Nerve, strategy: str = "path",
                      family: Optional[RegionFamily] = None,
                      trees: Optional[dict[Sigma, list[tuple[int, int]]]] = None) -> WitnessGraph:
    """Union over tau of trees (or forests) on V_tau; ``trees`` overrides the strategy per tau."""
    classes = tree_classes(w, nerve, family)
    gamma = sorted(classes)
    edges = []
    for tau in gamma:
        if trees is not None and tau in trees:
            chosen = trees[tau]
        else:
            chosen = [e for cls in classes[tau] for e in _tree(cls, strategy)]
        edges.extend((u, v, tau) for u, v in chosen)
    return WitnessGraph(w.k, w.b, w, edges, gamma, classes)


@dataclass
class IdentityReport:
    b: int
    edges: int
    expected: int  # (k+1)|W| - b f_ind_{k-1}
    vertex_tree_counts_ok: bool
    endpoints_ok: bool
    acyclic_ok: bool
    components_ok: bool
    simple: bool
    vertex_count_ok: bool

    @property
    def passed(self) -> bool:
        rel = self.edges == self.expected if self.b == 1 else self.edges >= self.expected
        structural = (self.vertex_tree_counts_ok and self.endpoints_ok and self.acyclic_ok
                      and self.components_ok and self.vertex_count_ok)
        return rel and structural and (self.simple or self.b > 1)

    def to_dict(self) -> dict:
        return {"edges": self.edges, "expected": self.expected,
                "relation": "==" if self.b == 1 else ">=", "simple": self.simple,
                "passed": self.passed}


def edge_identity_check(g: WitnessGraph, nerve: Nerve) -> IdentityReport:
    k, b = g.k, g.b
    n_w = g.n_vertices
    find = len(induced_faces(nerve, k - 1))
    expected = (k + 1) * n_w - b * find
    membership = Counter()
    for tau, classes in g.classes.items():
        for cls in classes:
            membership.update(cls)
    tree_counts_ok = all(membership[v] == k + 1 for v in range(n_w))
    v_tau = {tau: {v for cls in classes for v in cls} for tau, classes in g.classes.items()}
    endpoints_ok = all(u in v_tau[tau] and v in v_tau[tau] for u, v, tau in g.edges)
    per_tau: dict[Sigma, list[tuple[int, int]]] = {}
    for u, v, tau in g.edges:
        per_tau.setdefault(tau, []).append((u, v))
    acyclic_ok = components_ok = True
    for tau in g.gamma:
        forest = nx.MultiGraph()
        forest.add_nodes_from(v_tau[tau])
        forest.add_edges_from(per_tau.get(tau, []))
        if forest.number_of_edges() and not nx.is_forest(forest):
            acyclic_ok = False
        if nx.number_connected_components(forest) > b:
            components_ok = False
    simple = len(g.simple_edges()) == len(g.edges) and all(u != v for u, v, _ in g.edges)
    return IdentityReport(b, len(g.edges), expected, tree_counts_ok, endpoints_ok, acyclic_ok,
                          components_ok, simple, n_w == b * nerve.f_k(k))


@dataclass
class TriangleReport:
    triangles: int
    labels: dict[Sigma, set[tuple[int, int]]]  # label nu -> edges of H_nu
    bad_label_sizes: list[tuple[int, int, int]]
    shared_edge_conflicts: list[tuple[int, int]]
    max_vertices: int
    max_edges: int
    k: int

    @property
    def edge_disjoint(self) -> bool:
        seen: set[tuple[int, int]] = set()
        for edges in self.labels.values():
            if seen & edges:
                return False
            seen |= edges
        return True

    @property
    def passed(self) -> bool:
        return (not self.bad_label_sizes and not self.shared_edge_conflicts and self.edge_disjoint
                and self.max_vertices <= self.k + 2 and self.max_edges <= 3 * self.k)

    def to_dict(self) -> dict:
        return {"triangles": self.triangles, "labels": len(self.labels),
                "label_sizes_ok": not self.bad_label_sizes,
                "shared_edges_same_label": not self.shared_edge_conflicts,
                "edge_disjoint": self.edge_disjoint,
                "max_label_vertices": self.max_vertices, "max_label_edges": self.max_edges,
                "passed": self.passed}


def triangle_label_analysis(g: WitnessGraph) -> TriangleReport:
    k = g.k
    pts = g.witnesses.points
    tris = graph_triangles(g.simple_edges())
    labels: dict[Sigma, set[tuple[int, int]]] = {}
    members: dict[Sigma, set[int]] = {}
    edge_label: dict[tuple[int, int], set[Sigma]] = {}
    bad = []
    for a, b_, c in tris:
        nu = tuple(sorted(set(pts[a].sigma) | set(pts[b_].sigma) | set(pts[c].sigma)))
        if len(nu) != k + 2:
            bad.append((a, b_, c))
        sides = {(a, b_), (b_, c), (a, c)}
        labels.setdefault(nu, set()).update(sides)
        members.setdefault(nu, set()).update((a, b_, c))
        for e in sides:
            edge_label.setdefault(e, set()).add(nu)
    conflicts = sorted(e for e, ls in edge_label.items() if len(ls) > 1)
    return TriangleReport(
        len(tris), labels, bad, conflicts,
        max((len(m) for m in members.values()), default=0),
        max((len(e) for e in labels.values()), default=0), k)


def planarity_test(graph) -> tuple[bool, Optional[dict[int, list[int]]]]:
    """Planarity of the underlying simple graph, with a clockwise rotation system when planar."""
    if isinstance(graph, WitnessGraph):
        graph = graph.skeleton()
    simple = nx.Graph(graph)
    planar, emb = nx.check_planarity(simple)
    if not planar:
        return False, None
    return True, {v: list(emb.neighbors_cw_order(v)) for v in emb.nodes}


def embedded(g: WitnessGraph) -> Optional[EmbeddedGraph]:
    planar, rotation = planarity_test(g)
    if not planar:
        return None
    return EmbeddedGraph.from_rotation(range(g.n_vertices), g.simple_edges(), rotation)


def _labeled_trees(vertices: Sequence[int]) -> list[list[tuple[int, int]]]:
    vs = sorted(vertices)
    n = len(vs)
    if n <= 1:
        return [[]]
    if n == 2:
        return [[(vs[0], vs[1])]]
    out = []
    for seq in product(range(n), repeat=n - 2):
        t = nx.from_prufer_sequence(list(seq))
        out.append([(vs[u], vs[v]) for u, v in t.edges])
    return out


def tree_choice_space(w: Witnesses, nerve: Nerve) -> int:
    classes = tree_classes(w, nerve)
    return prod(max(1, len(c[0]) ** (len(c[0]) - 2)) if len(c[0]) >= 2 else 1
                for c in classes.values())


def search_planar_tree_choice(w: Witnesses, nerve: Nerve, cap: int = 100_000) -> Optional[WitnessGraph]:
    """Exhaustive search over labeled spanning trees of every V_tau for a planar union (b = 1)."""
    if w.b != 1:
        raise ValueError("tree-choice search is for b = 1")
    size = tree_choice_space(w, nerve)
    if size > cap:
        raise SearchSpaceExceeded(f"{size} tree choices exceed cap {cap}")
    classes = tree_classes(w, nerve)
    taus = sorted(classes)
    options = [_labeled_trees(classes[tau][0]) for tau in taus]
    for choice in product(*options):
        trees = dict(zip(taus, choice))
        g = build_union_graph(w, nerve, trees=trees)
        if planarity_test(g)[0]:
            return g
    return None


@dataclass
class MultiEdgeReport:
    k: int
    b: int
    max_multiplicity: int
    cross_group_multi: list[tuple[int, int]]
    edges: int
    simple_edges: int
    skeleton_planar: bool
    simple_cap: int  # 3|W|
    full_cap: int  # 3|W| + k(b-1) f_k
    excess_cap: int  # k(b-1) f_k

    @property
    def multiplicity_ok(self) -> bool:
        return self.max_multiplicity <= self.k + 1

    @property
    def excess_ok(self) -> bool:
        return self.edges - self.simple_edges <= self.excess_cap

    @property
    def passed(self) -> bool:
        caps = (self.simple_edges <= self.simple_cap and self.edges <= self.full_cap
                if self.skeleton_planar else True)
        return self.multiplicity_ok and not self.cross_group_multi and self.excess_ok and caps

    def to_dict(self) -> dict:
        return {"max_multiplicity": self.max_multiplicity,
                "multiplicity_cap": self.k + 1,
                "multi_edges_within_groups": not self.cross_group_multi,
                "edges": self.edges, "simple_edges": self.simple_edges,
                "skeleton_planar": self.skeleton_planar,
                "simple_cap": self.simple_cap, "full_cap": self.full_cap,
                "passed": self.passed}


def multiedge_analysis(g: WitnessGraph, f_k: int) -> MultiEdgeReport:
    k, b = g.k, g.b
    pts = g.witnesses.points
    mult = g.multiplicities()
    cross = sorted(e for e, m in mult.items() if m > 1 and pts[e[0]].sigma != pts[e[1]].sigma)
    n_w = g.n_vertices
    return MultiEdgeReport(
        k, b, max(mult.values(), default=0), cross, len(g.edges), len(mult),
        planarity_test(g)[0], 3 * n_w, 3 * n_w + k * (b - 1) * f_k, k * (b - 1) * f_k)


def witness_lemma_check(g: WitnessGraph):
    """The planar lemma on a b = 1 witness graph with parts H_nu and t = 3k.

    Returns ``None`` when the graph is not planar or has at most 3k edges.
    """
    emb = embedded(g)
    if emb is None or emb.e < 3 * g.k + 1:
        return None
    report = triangle_label_analysis(g)
    parts = tuple(frozenset(edges) for _, edges in sorted(report.labels.items()))
    return lemma_ct_check(emb, Decomposition(parts, 3 * g.k))


def planar_choice(w: Witnesses, nerve: Nerve, strategy: str = "path",
                  cap: int = 100_000) -> tuple[WitnessGraph, str]:
    """Strategy-built graph if planar, else a searched planar choice when the space is small."""
    g = build_union_graph(w, nerve, strategy)
    if planarity_test(g)[0]:
        return g, strategy
    try:
        found = search_planar_tree_choice(w, nerve, cap)
    except SearchSpaceExceeded:
        return g, "strategy-nonplanar"
    if found is None:
        return g, "no-planar-choice"
    return found, "search"


def upper_chain(g: WitnessGraph, nerve: Nerve) -> dict:
    """Lower and upper edge bounds of the counting argument and the f_k bound they force.

    b = 1: (k+1)|W| - f_ind <= |E| <= 12k/(4k+1)(|W| - 2) once |E| > 3k, or
    |E| <= 3k otherwise. b >= 2: (k+1)|W| - b f_ind <= |E| <= 3|W| + k(b-1) f_k.
    """
    k, b = g.k, g.b
    find = len(induced_faces(nerve, k - 1))
    fk = nerve.f_k(k)
    n_w = g.n_vertices
    lower = (k + 1) * n_w - b * find
    e = len(g.edges)
    if b == 1:
        if e <= 3 * k:
            upper = Fraction(3 * k)
            fk_bound = Fraction(find + 3 * k, k + 1)
        else:
            cap = Fraction(12 * k, 4 * k + 1)
            upper = cap * (n_w - 2)
            fk_bound = (find - 2 * cap) / (k + 1 - cap)
    else:
        upper = Fraction(3 * n_w + k * (b - 1) * fk)
        fk_bound = Fraction(b * find, k - 2 * b)
    return {"lower": lower, "edges": e, "upper": upper, "f_k": fk, "f_k_bound": fk_bound,
            "chain_ok": lower <= e <= upper and fk <= fk_bound}
