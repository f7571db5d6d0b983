"""Face census and edge-count bounds for planar (and surface) graphs.

Faces always come from a rotation system, never from coordinates: a dart
``(u, v)`` is followed by ``(v, w)`` where ``w`` succeeds ``u`` in the cyclic
order around ``v``.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

import networkx as nx

Edge = tuple[int, int]


class NonPlanarRotation(ValueError):
    pass


class InvalidDecomposition(ValueError):
    pass


class CapExceeded(ValueError):
    pass


class ParameterRange(ValueError):
    pass


def _norm(u, v) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass
class EmbeddedGraph:
    vertices: list[int]
    edges: list[Edge]
    rotation: dict[int, list[int]]  # cyclic neighbour order (clockwise)
    faces: list[list[tuple[int, int]]] = field(default_factory=list)  # darts per face
    face_sizes: list[int] = field(default_factory=list)

    @classmethod
    def from_rotation(cls, vertices: Iterable[int], edges: Iterable[Edge],
                      rotation: dict[int, list[int]]) -> EmbeddedGraph:
        g = cls(sorted(vertices), sorted({_norm(u, v) for u, v in edges}),
                {v: list(rotation.get(v, [])) for v in vertices})
        g._trace_faces()
        return g

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> EmbeddedGraph:
        planar, emb = nx.check_planarity(graph)
        if not planar:
            raise NonPlanarRotation("graph is not planar")
        rotation = {v: list(emb.neighbors_cw_order(v)) for v in emb.nodes}
        return cls.from_rotation(graph.nodes, graph.edges, rotation)

    @property
    def v(self) -> int:
        return len(self.vertices)

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def f(self) -> int:
        return len(self.face_sizes)

    def components(self) -> list[set[int]]:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return [set(c) for c in nx.connected_components(g)]

    def _trace_faces(self) -> None:
        succ: dict[tuple[int, int], int] = {}
        for v, nbrs in self.rotation.items():
            for i, u in enumerate(nbrs):
                succ[v, u] = nbrs[(i + 1) % len(nbrs)]
        darts = [(u, v) for u, v in self.edges] + [(v, u) for u, v in self.edges]
        for u, v in darts:
            if (v, u) not in succ or (u, v) not in succ:
                raise NonPlanarRotation(f"rotation misses edge {u}-{v}")
        seen: set[tuple[int, int]] = set()
        orbit_of: dict[tuple[int, int], int] = {}
        orbits: list[list[tuple[int, int]]] = []
        for d in sorted(darts):
            if d in seen:
                continue
            orbit = []
            while d not in seen:
                seen.add(d)
                orbit_of[d] = len(orbits)
                orbit.append(d)
                u, v = d
                d = (v, succ[v, u])
            orbits.append(orbit)
        # One face per dart orbit and component; outer faces of distinct
        # components merge. Each component is dropped into the largest face of
        # the first component, which is a valid drawing of the whole graph.
        comps = sorted(self.components(), key=min)
        faces: list[list[tuple[int, int]]] = []
        sizes: list[int] = []
        host: Optional[int] = None
        for comp in comps:
            comp_orbits = [o for o in orbits if o[0][0] in comp]
            if not comp_orbits:
                # isolated vertex: a single face of size zero
                comp_orbits = [[]]
            if host is None:
                for o in comp_orbits:
                    faces.append(list(o))
                    sizes.append(len(o))
                host = max(range(len(sizes)), key=lambda i: (sizes[i], -i))
                continue
            outer = max(range(len(comp_orbits)), key=lambda i: (len(comp_orbits[i]), -i))
            for i, o in enumerate(comp_orbits):
                if i == outer:
                    faces[host].extend(o)
                    sizes[host] += len(o)
                else:
                    faces.append(list(o))
                    sizes.append(len(o))
        if not comps:
            faces, sizes = [[]], [0]
        self.faces = faces
        self.face_sizes = sizes
        c = len(comps)
        if c and self.v - self.e + self.f != c + 1:
            raise NonPlanarRotation(
                f"v - e + f = {self.v - self.e + self.f}, expected {c + 1}: rotation is not planar")


def face_census(g: EmbeddedGraph) -> dict[int, int]:
    """t_i counts: faces whose boundary walk has i edges (bridges count twice)."""
    return dict(sorted(Counter(g.face_sizes).items()))


def triangular_faces(g: EmbeddedGraph) -> int:
    return face_census(g).get(3, 0)


@dataclass(frozen=True)
class PlanarVerdict:
    holds: bool
    e: int
    bound: Fraction
    impossible: bool  # exceeds 3v - 6, so no simple planar graph has these counts

    @property
    def slack(self) -> Fraction:
        return self.bound - self.e


def obs_planar_check(v: int, e: int, T: int) -> PlanarVerdict:
    """e <= 2v - 4 + T/2 for a simple planar graph with at most T triangular faces."""
    if e < 2:
        raise ParameterRange("the bound needs e >= 2")
    bound = Fraction(2 * v - 4) + Fraction(T, 2)
    return PlanarVerdict(e <= bound, e, bound, v >= 3 and e > 3 * v - 6)


def graph_triangles(edges: Iterable[Edge]) -> list[tuple[int, int, int]]:
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    out = []
    for u in sorted(adj):
        for v in sorted(w for w in adj[u] if w > u):
            for w in sorted(adj[u] & adj[v]):
                if w > v:
                    out.append((u, v, w))
    return out


def triangle_blocks(edges: Iterable[Edge]) -> list[frozenset[Edge]]:
    """Edge sets of the classes of triangles linked through shared edges."""
    tris = graph_triangles(edges)
    parent = list(range(len(tris)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: dict[Edge, int] = {}
    for i, (a, b, c) in enumerate(tris):
        for e in (_norm(a, b), _norm(b, c), _norm(a, c)):
            if e in owner:
                ra, rb = find(owner[e]), find(i)
                if ra != rb:
                    parent[ra] = rb
            else:
                owner[e] = i
    blocks: dict[int, set[Edge]] = {}
    for i, (a, b, c) in enumerate(tris):
        blocks.setdefault(find(i), set()).update((_norm(a, b), _norm(b, c), _norm(a, c)))
    return sorted((frozenset(s) for s in blocks.values()), key=lambda s: sorted(s))


@dataclass(frozen=True)
class Decomposition:
    parts: tuple[frozenset[Edge], ...]
    t: int

    def validate(self, edges: Iterable[Edge]) -> None:
        edges = [_norm(*e) for e in edges]
        tris = graph_triangles(edges)
        covered: set[Edge] = set()
        for p in self.parts:
            if not 3 <= len(p) <= self.t:
                raise InvalidDecomposition(f"part with {len(p)} edges outside [3, {self.t}]")
            if covered & p:
                raise InvalidDecomposition("parts share an edge")
            covered |= p
        tri_edges = {e for a, b, c in tris for e in (_norm(a, b), _norm(b, c), _norm(a, c))}
        if covered != tri_edges:
            raise InvalidDecomposition("parts must cover exactly the triangle edges")
        for a, b, c in tris:
            sides = {_norm(a, b), _norm(b, c), _norm(a, c)}
            if not any(sides <= p for p in self.parts):
                raise InvalidDecomposition(f"triangle {(a, b, c)} split across parts")


def decompositions(edges: Sequence[Edge], t: int, budget: int = 10_000) -> Iterator[Decomposition]:
    """Valid decompositions with parts of at most ``t`` edges, finest first.

    Parts are unions of triangle blocks (a triangle cannot straddle parts, so
    neither can two triangles sharing an edge). Groupings are searched
    depth-first with a node budget.
    """
    blocks = sorted(triangle_blocks(edges), key=len, reverse=True)
    if any(len(b) > t for b in blocks):
        return
    yield Decomposition(tuple(blocks), t)
    nodes = 0
    seen = {_parts_key(blocks)}

    def rec(i: int, groups: list[set[Edge]]):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            return
        if i == len(blocks):
            yield [frozenset(g) for g in groups]
            return
        for g in groups:
            if len(g) + len(blocks[i]) <= t:
                g |= blocks[i]
                yield from rec(i + 1, groups)
                g -= blocks[i]
        groups.append(set(blocks[i]))
        yield from rec(i + 1, groups)
        groups.pop()

    for parts in rec(0, []):
        key = _parts_key(parts)
        if key in seen:
            continue
        seen.add(key)
        yield Decomposition(tuple(parts), t)


def _parts_key(parts) -> tuple:
    return tuple(sorted(tuple(sorted(p)) for p in parts))


@dataclass(frozen=True)
class LemmaVerdict:
    t: int
    e: int
    v: int
    c_t: Fraction
    edge_bound: Fraction
    t3: int
    t3_bound: Fraction

    @property
    def edge_ok(self) -> bool:
        return self.e <= self.edge_bound

    @property
    def t3_ok(self) -> bool:
        return self.t3 <= self.t3_bound

    @property
    def holds(self) -> bool:
        return self.edge_ok and self.t3_ok


def lemma_constant(t: int) -> Fraction:
    return Fraction(12 * t, 4 * t + 3)


def lemma_ct_check(g: EmbeddedGraph, d: Decomposition, chi: int = 2) -> LemmaVerdict:
    """e <= 12t/(4t+3) (v - chi) together with t_3 <= (2t-3)/(3t) e."""
    if d.t < 3:
        raise InvalidDecomposition("t must be at least 3")
    if g.e < d.t + 1:
        raise InvalidDecomposition(f"lemma needs at least t + 1 = {d.t + 1} edges, graph has {g.e}")
    d.validate(g.edges)
    ct = lemma_constant(d.t)
    return LemmaVerdict(d.t, g.e, g.v, ct, ct * (g.v - chi), triangular_faces(g),
                        Fraction(2 * d.t - 3, 3 * d.t) * g.e)


def surface_edge_cap(f0: int, chi: int) -> int:
    if f0 < 3:
        raise ParameterRange("need at least three vertices")
    return 3 * (f0 - chi)


def surface_lemma_params(k: int, chi: int) -> tuple[int, Fraction]:
    """t = 3(k + 2 - chi) and c_t = 12t/(4t+3); t >= 3k since chi <= 2."""
    if k < 2 or chi > 2:
        raise ParameterRange("need k >= 2 and chi <= 2")
    t = 3 * (k + 2 - chi)
    return t, lemma_constant(t)


# -- exhaustive corpus ------------------------------------------------------

MAX_CORPUS_VERTICES = 9


def _canonical_bucket(g: nx.Graph) -> str:
    return nx.weisfeiler_lehman_graph_hash(g, iterations=3)


def enumerate_small_planar_graphs(v_max: int) -> Iterator[EmbeddedGraph]:
    """Connected simple planar graphs on 1..v_max vertices, one per isomorphism class.

    Every connected graph has a vertex whose removal leaves it connected and
    planarity is inherited by subgraphs, so each level is obtained by joining
    a new vertex to a nonempty neighbour set of a graph from the level below.
    """
    if v_max > MAX_CORPUS_VERTICES:
        raise CapExceeded(f"v_max <= {MAX_CORPUS_VERTICES}")
    if v_max < 1:
        return
    level = [nx.empty_graph(1)]
    yield EmbeddedGraph.from_networkx(level[0])
    for n in range(2, v_max + 1):
        buckets: dict[tuple, list[nx.Graph]] = {}
        nxt = []
        for g in level:
            m = g.number_of_edges()
            for r in range(1, n):
                if n >= 3 and m + r > 3 * n - 6:
                    break
                for nbrs in combinations(range(n - 1), r):
                    h = g.copy()
                    h.add_edges_from((n - 1, u) for u in nbrs)
                    key = (h.number_of_edges(), tuple(sorted(d for _, d in h.degree())),
                           _canonical_bucket(h))
                    same = buckets.setdefault(key, [])
                    if any(nx.is_isomorphic(h, o) for o in same):
                        continue
                    if not nx.check_planarity(h)[0]:
                        continue
                    same.append(h)
                    nxt.append(h)
        for h in nxt:
            yield EmbeddedGraph.from_networkx(h)
        level = nxt


def corpus_record(g: EmbeddedGraph) -> dict:
    return {"v": g.v, "edges": [list(e) for e in g.edges],
            "rotation": {str(v): g.rotation[v] for v in g.vertices}}


@dataclass
class CorpusSummary:
    v_max: int
    graphs: int = 0
    by_order: Counter = field(default_factory=Counter)
    checks: Counter = field(default_factory=Counter)
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"v_max": self.v_max, "graphs": self.graphs,
                "graphs_by_order": {str(k): v for k, v in sorted(self.by_order.items())},
                "checks": dict(sorted(self.checks.items())),
                "failures": self.failures, "passed": self.passed}


def check_graph(g: EmbeddedGraph, graph_id: int, budget: int = 200) -> list[dict]:
    """Every corpus verdict for one embedded graph."""
    out = []
    census = face_census(g)
    out.append({"graph_id": graph_id, "check": "face_sum",
                "pass": sum(i * c for i, c in census.items()) == 2 * g.e})
    if g.e >= 2:
        verdict = obs_planar_check(g.v, g.e, census.get(3, 0))
        out.append({"graph_id": graph_id, "check": "obs_planar", "pass": verdict.holds})
    for t in range(3, g.e):
        for d in decompositions(g.edges, t, budget):
            lv = lemma_ct_check(g, d)
            out.append({"graph_id": graph_id, "check": "lemma_edges", "t": t, "pass": lv.edge_ok})
            out.append({"graph_id": graph_id, "check": "lemma_t3", "t": t, "pass": lv.t3_ok})
    return out


def _check_job(job):
    gid, g, budget = job
    return check_graph(g, gid, budget)


def run_corpus(v_max: int, budget: int = 200,
               workers: int = 1) -> tuple[CorpusSummary, list[tuple[dict, list[dict]]]]:
    """Checks over the whole corpus; ``workers > 1`` spreads them over processes, order preserved."""
    summary = CorpusSummary(v_max)
    graphs = list(enumerate_small_planar_graphs(v_max))
    jobs = [(gid, g, budget) for gid, g in enumerate(graphs)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_job, jobs, chunksize=32))
    else:
        results = [_check_job(j) for j in jobs]
    records = []
    for g, verdicts in zip(graphs, results):
        summary.graphs += 1
        summary.by_order[g.v] += 1
        for vd in verdicts:
            summary.checks[vd["check"]] += 1
            if not vd["pass"]:
                summary.failures.append(vd)
        records.append((corpus_record(g), verdicts))
    return summary, records
