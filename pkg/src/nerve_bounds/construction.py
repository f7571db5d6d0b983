"""Cell complexes, stellar subdivision and the explicit planar families.

Sets are closed unions of cells of one 2-dimensional complex. Because the open
cells partition the underlying space, the point-set intersection of closed
sets is exactly the union of the cells they share.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .arrangement import Arrangement
from .geometry import Point, barycenter


class MalformedComplex(ValueError):
    pass


@dataclass(frozen=True)
class Cell:
    id: int
    dim: int
    boundary: tuple[int, ...]
    tag: tuple = ()
    point: Optional[Point] = None  # 0-cells only


@dataclass
class CellComplex:
    cells: list[Cell] = field(default_factory=list)

    def __post_init__(self):
        self._cofaces: Optional[list[list[int]]] = None

    def add(self, dim: int, boundary: Iterable[int] = (), tag: tuple = (),
            point: Optional[Point] = None) -> int:
        cid = len(self.cells)
        self.cells.append(Cell(cid, dim, tuple(boundary), tag, point))
        self._cofaces = None
        return cid

    def __len__(self):
        return len(self.cells)

    def of_dim(self, dim: int) -> list[Cell]:
        return [c for c in self.cells if c.dim == dim]

    def counts(self) -> tuple[int, int, int]:
        v = e = f = 0
        for c in self.cells:
            if c.dim == 0:
                v += 1
            elif c.dim == 1:
                e += 1
            else:
                f += 1
        return v, e, f

    def euler(self) -> int:
        v, e, f = self.counts()
        return v - e + f

    @property
    def cofaces(self) -> list[list[int]]:
        if self._cofaces is None:
            co: list[list[int]] = [[] for _ in self.cells]
            for c in self.cells:
                for b in c.boundary:
                    co[b].append(c.id)
            self._cofaces = co
        return self._cofaces

    def closure(self, ids: Iterable[int]) -> set[int]:
        out: set[int] = set()
        stack = list(ids)
        while stack:
            c = stack.pop()
            if c in out:
                continue
            out.add(c)
            stack.extend(self.cells[c].boundary)
        return out

    def validate(self) -> None:
        for c in self.cells:
            for b in c.boundary:
                if not 0 <= b < len(self.cells):
                    raise MalformedComplex(f"cell {c.id} has dangling boundary id {b}")
                if self.cells[b].dim != c.dim - 1:
                    raise MalformedComplex(f"cell {c.id}: boundary {b} has wrong dimension")
            if c.dim == 0 and c.boundary:
                raise MalformedComplex(f"vertex {c.id} has a boundary")
            if c.dim == 1 and len(set(c.boundary)) != 2:
                raise MalformedComplex(f"edge {c.id} needs two distinct endpoints")
            if c.dim == 2 and not self._is_cycle(c):
                raise MalformedComplex(f"2-cell {c.id} boundary is not a closed cycle")

    def _is_cycle(self, cell: Cell) -> bool:
        if len(cell.boundary) < 2:
            return False
        degree: dict[int, int] = {}
        for e in cell.boundary:
            for v in self.cells[e].boundary:
                degree[v] = degree.get(v, 0) + 1
        if any(d != 2 for d in degree.values()):
            return False
        return len(self.polygon(cell.id)) == len(cell.boundary)

    def polygon(self, cid: int) -> list[int]:
        """Vertex ids around a 2-cell, in boundary-cycle order."""
        edges = [self.cells[e].boundary for e in self.cells[cid].boundary]
        adj: dict[int, list[int]] = {}
        for u, v in edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        start = edges[0][0]
        order = [start]
        prev, cur = None, start
        while True:
            nbrs = [w for w in adj[cur] if w != prev] or adj[cur]
            nxt = nbrs[0]
            if nxt == start:
                break
            if nxt in order:
                break
            order.append(nxt)
            prev, cur = cur, nxt
        return order

    def summary(self) -> dict:
        v, e, f = self.counts()
        return {"vertices": v, "edges": e, "faces": f, "euler": v - e + f}


@dataclass
class RegionFamily:
    complex: CellComplex
    names: list[str]
    sets: list[frozenset[int]]

    def __post_init__(self):
        if len(self.names) != len(self.sets):
            raise ValueError("one name per set")
        self.masks = [_mask(s) for s in self.sets]

    @property
    def n(self) -> int:
        return len(self.sets)

    def validate(self) -> None:
        self.complex.validate()
        for name, s in zip(self.names, self.sets):
            for c in s:
                if not 0 <= c < len(self.complex):
                    raise MalformedComplex(f"{name}: unknown cell {c}")
            if self.complex.closure(s) != set(s):
                raise MalformedComplex(f"{name} is not closed")

    def intersection(self, sigma: Iterable[int]) -> int:
        """Bitmask of the cells common to every set indexed by ``sigma``."""
        it = iter(sigma)
        try:
            acc = self.masks[next(it)]
        except StopIteration:
            raise ValueError("empty index set") from None
        for i in it:
            acc &= self.masks[i]
        return acc

    def summary(self) -> dict:
        return {
            "n": self.n,
            "complex_summary": self.complex.summary(),
            "sets": [{"name": nm, "cell_count": len(s)} for nm, s in zip(self.names, self.sets)],
        }


def _mask(ids: Iterable[int]) -> int:
    m = 0
    for c in ids:
        m |= 1 << c
    return m


def mask_cells(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def complex_from_arrangement(arr: Arrangement) -> CellComplex:
    return stellar_subdivide(arr, subdivide=False)


def stellar_subdivide(arr: Arrangement, subdivide: bool = True) -> CellComplex:
    """Cell complex of the framed arrangement with every bounded triangle coned from its barycenter.

    Provenance tags: ``('vertex', lines)``, ``('line', j)``, ``('frame', side)``,
    ``('face', f)``, ``('barycenter', f)``, ``('spoke', f, vertex)`` and
    ``('subtri', f, j)`` where ``j`` carries the base edge of the sub-triangle.
    """
    cx = CellComplex()
    for v, p in enumerate(arr.vertices):
        cx.add(0, (), ("vertex", arr.vertex_lines[v]), p)
    edge_cell = [cx.add(1, (u, v), carrier) for u, v, carrier in arr.edges]
    for face in arr.faces:
        if face.outer:
            continue
        edge_ids = [edge_cell[arr.edge_of(h)] for h in face.boundary]
        if not (subdivide and face.bounded and face.edge_count == 3):
            cx.add(2, edge_ids, ("face", face.index))
            continue
        corners = arr.face_vertices(face)
        b = cx.add(0, (), ("barycenter", face.index), barycenter([arr.vertices[c] for c in corners]))
        spoke = {c: cx.add(1, (b, c), ("spoke", face.index, c)) for c in corners}
        for h in face.boundary:
            u, v, carrier = arr.edges[arr.edge_of(h)]
            cx.add(2, (edge_cell[arr.edge_of(h)], spoke[u], spoke[v]),
                   ("subtri", face.index, carrier[1]))
    return cx


def build_theorem4_family(cx: CellComplex, n_lines: int) -> RegionFamily:
    """The n = m + 1 sets built on a stellar-subdivided arrangement of m lines.

    ``A1`` is the union of the lines; ``A(i+1)`` is line ``i`` together with
    the closed sub-triangles whose base lies on it.
    """
    if any(not c.tag for c in cx.cells):
        raise MalformedComplex("cells without provenance tags")
    union: set[int] = set()
    per_line: list[set[int]] = [set() for _ in range(n_lines)]
    for c in cx.cells:
        kind = c.tag[0]
        if kind == "vertex" and c.tag[1]:
            union.add(c.id)
            for j in c.tag[1]:
                per_line[j].add(c.id)
        elif kind == "line":
            union.add(c.id)
            per_line[c.tag[1]].add(c.id)
        elif kind == "subtri":
            per_line[c.tag[2]].update(cx.closure([c.id]))
    names = ["A1"] + [f"A{j + 2}" for j in range(n_lines)]
    sets = [frozenset(union)] + [frozenset(s) for s in per_line]
    return RegionFamily(cx, names, sets)


def build_four_set_example() -> RegionFamily:
    """Triangle a1 a2 a3 coned from its barycenter a4.

    A1, A2, A3 are the closed corner triangles opposite a1, a2, a3 and A4 is
    the outer boundary; every three sets meet but not all four.
    """
    cx = CellComplex()
    pts = [Point(0, 0), Point(6, 0), Point(0, 6)]
    a = [cx.add(0, (), ("vertex", ("a1",)), pts[0]),
         cx.add(0, (), ("vertex", ("a2",)), pts[1]),
         cx.add(0, (), ("vertex", ("a3",)), pts[2])]
    a4 = cx.add(0, (), ("barycenter", 0), barycenter(pts))
    side = {}
    for i, j in ((0, 1), (1, 2), (0, 2)):
        side[i, j] = cx.add(1, (a[i], a[j]), ("boundary", i, j))
    spoke = [cx.add(1, (a4, a[i]), ("spoke", 0, i)) for i in range(3)]
    corner = {}
    for i, j in ((0, 1), (1, 2), (0, 2)):
        corner[i, j] = cx.add(2, (side[i, j], spoke[i], spoke[j]), ("subtri", 0, (i, j)))
    sets = [
        frozenset(cx.closure([corner[1, 2]])),  # conv(a2, a3, a4)
        frozenset(cx.closure([corner[0, 2]])),  # conv(a1, a3, a4)
        frozenset(cx.closure([corner[0, 1]])),  # conv(a1, a2, a4)
        frozenset(cx.closure(side.values())),
    ]
    return RegionFamily(cx, ["A1", "A2", "A3", "A4"], sets)


def family_from_cells(cx: CellComplex, names: Sequence[str], generators: Sequence[Iterable[int]]) -> RegionFamily:
    """Family whose sets are the closures of the given cell collections."""
    return RegionFamily(cx, list(names), [frozenset(cx.closure(g)) for g in generators])
