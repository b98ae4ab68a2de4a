"""Embedded graphs on closed orientable surfaces and rank-3 hypergraphs.

A :class:`SurfaceComplex` is an explicit face list: every face is a cyclic
sequence of vertices together with the edge ids joining consecutive vertices.
Faces are kept consistently oriented, so the two occurrences of an edge run in
opposite directions; the rotation at each vertex is read off from that.
Parallel edges are allowed (small tori need them); self-loops are not.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Sequence

from .pauli import Eliminator, gf2_nullspace

COLORS = ("r", "g", "b")
FORMAT_VERSION = 1


class ComplexError(ValueError):
    """Malformed complex, hypergraph or construction input."""


def other_color(a: str, b: str) -> str:
    (c,) = set(COLORS) - {a, b}
    return c


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True, eq=False)
class SurfaceComplex:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    face_vertices: tuple[tuple[int, ...], ...]
    face_edges: tuple[tuple[int, ...], ...]
    vertex_coloring: tuple[str, ...] | None = None
    edge_coloring: tuple[str, ...] | None = None
    face_coloring: tuple[str, ...] | None = None
    vertex_origin: tuple | None = None
    edge_origin: tuple | None = None
    face_origin: tuple | None = None

    def __post_init__(self):
        n = self.n_vertices
        for e, (u, v) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ComplexError(f"edge {e} has an endpoint out of range")
            if u == v:
                raise ComplexError(f"edge {e} is a self-loop")
        seen = [0] * len(self.edges)
        for f, (fv, fe) in enumerate(zip(self.face_vertices, self.face_edges)):
            if len(fv) != len(fe) or not fv:
                raise ComplexError(f"face {f} has mismatched cycles")
            k = len(fv)
            for i, e in enumerate(fe):
                if {fv[i], fv[(i + 1) % k]} != set(self.edges[e]):
                    raise ComplexError(f"face {f}: edge {e} does not join its neighbours")
                seen[e] += 1
        for e, c in enumerate(seen):
            if c != 2:
                raise ComplexError(f"edge {e} lies on {c} face sides (closed surface needs 2)")
        for e, (a, b) in enumerate(self.occurrences):
            if self._forward(*a) == self._forward(*b):
                raise ComplexError(f"faces are not consistently oriented at edge {e}")
        for name, col, size in (
            ("vertex", self.vertex_coloring, n),
            ("edge", self.edge_coloring, len(self.edges)),
            ("face", self.face_coloring, len(self.face_edges)),
        ):
            if col is not None and len(col) != size:
                raise ComplexError(f"{name} coloring has wrong length")
        if len(self.rotation) != n:
            raise ComplexError("vertex neighbourhoods are not single disks")
        if self.euler_characteristic % 2:
            raise ComplexError("odd Euler characteristic")

    # construction helpers ---------------------------------------------
    @classmethod
    def from_faces(
        cls,
        n_vertices: int,
        face_vertices: Sequence[Sequence[int]],
        edges: Sequence[tuple[int, int]] | None = None,
        face_edges: Sequence[Sequence[int]] | None = None,
        **extra: Any,
    ) -> "SurfaceComplex":
        """Build a complex, deriving edges/edge cycles when unambiguous and
        flipping faces as needed for a consistent orientation."""
        fvs = [list(f) for f in face_vertices]
        if edges is None:
            index: dict[frozenset, int] = {}
            edges = []
            for fv in fvs:
                for i, u in enumerate(fv):
                    key = frozenset((u, fv[(i + 1) % len(fv)]))
                    if key not in index:
                        index[key] = len(edges)
                        edges.append(tuple(sorted(key)))
        edges = [tuple(e) for e in edges]
        if face_edges is None:
            lookup: dict[frozenset, list[int]] = {}
            for e, (u, v) in enumerate(edges):
                lookup.setdefault(frozenset((u, v)), []).append(e)
            fes = []
            for fv in fvs:
                row = []
                for i, u in enumerate(fv):
                    ids = lookup.get(frozenset((u, fv[(i + 1) % len(fv)])))
                    if not ids:
                        raise ComplexError("face side is not an edge")
                    if len(ids) > 1:
                        raise ComplexError("parallel edges: face_edges must be explicit")
                    row.append(ids[0])
                fes.append(row)
        else:
            fes = [list(f) for f in face_edges]
        fvs, fes = _orient(edges, fvs, fes)
        return cls(
            n_vertices,
            tuple(edges),
            tuple(tuple(f) for f in fvs),
            tuple(tuple(f) for f in fes),
            **extra,
        )

    def replace(self, **changes: Any) -> "SurfaceComplex":
        data = {k: getattr(self, k) for k in self.__dataclass_fields__}
        data.update(changes)
        return SurfaceComplex(**data)

    # basic counts ---------------------------------------------------------
    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.face_edges)

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def _forward(self, f: int, i: int) -> bool:
        return self.face_vertices[f][i] == self.edges[self.face_edges[f][i]][0]

    @cached_property
    def occurrences(self) -> tuple[tuple[tuple[int, int], tuple[int, int]], ...]:
        """For each edge, its two (face, position) occurrences."""
        occ: list[list[tuple[int, int]]] = [[] for _ in self.edges]
        for f, fe in enumerate(self.face_edges):
            for i, e in enumerate(fe):
                occ[e].append((f, i))
        return tuple((a, b) for a, b in occ)

    def other_occurrence(self, f: int, i: int) -> tuple[int, int]:
        a, b = self.occurrences[self.face_edges[f][i]]
        return b if a == (f, i) else a

    def edge_faces(self, e: int) -> tuple[int, int]:
        a, b = self.occurrences[e]
        return a[0], b[0]

    @cached_property
    def rotation(self) -> dict[int, tuple[tuple[int, int], ...]]:
        """Vertex -> cyclic sequence of corners ``(face, position)``.

        Consecutive corners share an edge: the out-edge of one corner is the
        in-edge of the next.
        """
        done: set[tuple[int, int]] = set()
        rot: dict[int, tuple[tuple[int, int], ...]] = {}
        for f, fv in enumerate(self.face_vertices):
            for i in range(len(fv)):
                if (f, i) in done:
                    continue
                orbit = []
                c = (f, i)
                while c not in done:
                    done.add(c)
                    orbit.append(c)
                    g, j = self.other_occurrence(*c)
                    c = (g, (j + 1) % len(self.face_vertices[g]))
                v = fv[i]
                if v in rot:
                    raise ComplexError(f"vertex {v} has a disconnected link")
                rot[v] = tuple(orbit)
        return rot

    def corner_edges(self, f: int, i: int) -> tuple[int, int]:
        """(in-edge, out-edge) of the corner of face ``f`` at position ``i``."""
        fe = self.face_edges[f]
        return fe[i - 1], fe[i]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    @cached_property
    def vertex_edges(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for e, (u, v) in enumerate(self.edges):
            out[u].append(e)
            out[v].append(e)
        return tuple(tuple(x) for x in out)

    @cached_property
    def face_masks(self) -> tuple[int, ...]:
        out = []
        for fe in self.face_edges:
            m = 0
            for e in fe:
                m ^= 1 << e
            out.append(m)
        return tuple(out)

    def neighbors(self, v: int) -> list[tuple[int, int]]:
        """(edge id, neighbour) pairs in edge-id order."""
        out = []
        for e in self.vertex_edges[v]:
            a, b = self.edges[e]
            out.append((e, b if a == v else a))
        return out

    # validity --------------------------------------------------------------
    def is_two_colex(self) -> bool:
        """Trivalent with a proper 3-face-coloring that induces edge colors."""
        fc = self.face_coloring
        if fc is None or any(c not in COLORS for c in fc):
            return False
        if any(len(self.rotation[v]) != 3 for v in range(self.n_vertices)):
            return False
        for e in range(self.n_edges):
            f, g = self.edge_faces(e)
            if fc[f] == fc[g]:
                return False
        ec = self.induced_edge_coloring()
        if self.edge_coloring is not None and tuple(self.edge_coloring) != ec:
            return False
        return True

    def induced_edge_coloring(self) -> tuple[str, ...]:
        """Edge color = the color of the two faces at its endpoints."""
        fc = self.face_coloring
        if fc is None:
            raise ComplexError("face coloring absent")
        out = []
        for e in range(self.n_edges):
            f, g = self.edge_faces(e)
            out.append(other_color(fc[f], fc[g]))
        return tuple(out)

    # serialization --------------------------------------------------------
    def to_dict(self) -> dict:
        data: dict[str, Any] = {
            "format": "topsub-complex",
            "version": FORMAT_VERSION,
            "n_vertices": self.n_vertices,
            "edges": [list(e) for e in self.edges],
            "face_vertices": [list(f) for f in self.face_vertices],
            "face_edges": [list(f) for f in self.face_edges],
        }
        for key in ("vertex_coloring", "edge_coloring", "face_coloring"):
            val = getattr(self, key)
            if val is not None:
                data[key] = list(val)
        for key in ("vertex_origin", "edge_origin", "face_origin"):
            val = getattr(self, key)
            if val is not None:
                data[key] = _jsonable(val)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "SurfaceComplex":
        if data.get("format") != "topsub-complex" or data.get("version") != FORMAT_VERSION:
            raise ComplexError("unsupported complex document")
        kw: dict[str, Any] = {}
        for key in ("vertex_coloring", "edge_coloring", "face_coloring"):
            if key in data:
                kw[key] = tuple(data[key])
        for key in ("vertex_origin", "edge_origin", "face_origin"):
            if key in data:
                kw[key] = _tupled(data[key])
        return cls(
            data["n_vertices"],
            tuple(tuple(e) for e in data["edges"]),
            tuple(tuple(f) for f in data["face_vertices"]),
            tuple(tuple(f) for f in data["face_edges"]),
            **kw,
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SurfaceComplex":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "complex") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.n_vertices):
            attrs = f'label="{v + 1}"'
            if self.vertex_coloring:
                attrs += f' color="{_DOT_COLOR[self.vertex_coloring[v]]}"'
            lines.append(f"  {v} [{attrs}];")
        for e, (u, v) in enumerate(self.edges):
            attrs = f'label="e{e}"'
            if self.edge_coloring:
                attrs += f' color="{_DOT_COLOR[self.edge_coloring[e]]}"'
            lines.append(f"  {u} -- {v} [{attrs}];")
        lines.append("}")
        return "\n".join(lines) + "\n"


_DOT_COLOR = {"r": "red", "g": "green", "b": "blue", "x": "red", "y": "green", "z": "blue"}


def _jsonable(val):
    if isinstance(val, (tuple, list)):
        return [_jsonable(v) for v in val]
    return val


def _tupled(val):
    if isinstance(val, list):
        return tuple(_tupled(v) for v in val)
    return val


def _orient(edges, fvs, fes):
    """Flip faces so that each edge is traversed once in each direction."""
    nf = len(fvs)
    occ: dict[int, list[tuple[int, int]]] = {}
    for f, fe in enumerate(fes):
        for i, e in enumerate(fe):
            occ.setdefault(e, []).append((f, i))

    def forward(f, i):
        return fvs[f][i] == edges[fes[f][i]][0]

    def flip(f):
        fv, fe = fvs[f], fes[f]
        k = len(fv)
        fvs[f] = [fv[0]] + [fv[k - t] for t in range(1, k)]
        fes[f] = [fe[k - 1 - t] for t in range(k)]

    state = [None] * nf
    for start in range(nf):
        if state[start] is not None:
            continue
        state[start] = True
        queue = deque([start])
        while queue:
            f = queue.popleft()
            for i, e in enumerate(fes[f]):
                pair = occ.get(e, [])
                if len(pair) != 2:
                    raise ComplexError(f"edge {e} lies on {len(pair)} face sides")
                for g, j in pair:
                    if (g, j) == (f, i):
                        continue
                    if g == f:
                        if forward(f, i) == forward(g, j):
                            raise ComplexError("surface is not orientable")
                        continue
                    if state[g] is None:
                        if forward(f, i) == forward(g, j):
                            flip(g)
                            for ee in set(fes[g]):
                                occ[ee] = [(h, t) for h, t in occ[ee] if h != g]
                            for t, ee in enumerate(fes[g]):
                                occ[ee].append((g, t))
                        state[g] = True
                        queue.append(g)
                    elif forward(f, i) == forward(g, j):
                        raise ComplexError("surface is not orientable")
    return fvs, fes


def trace_faces(n_vertices: int, edges: Sequence[tuple[int, int]], rotation: dict[int, list[int]]):
    """Faces of an embedded graph given the cyclic edge order at each vertex.

    Arriving at a vertex along an edge, a face leaves along the next edge in
    that vertex's rotation.  Returns (face_vertices, face_edges).
    """
    pos: dict[tuple[int, int], int] = {}
    for v, rot in rotation.items():
        for k, e in enumerate(rot):
            pos[(v, e)] = k
    done: set[tuple[int, int]] = set()
    fvs, fes = [], []
    for e0, (a, b) in enumerate(edges):
        for start in ((e0, a), (e0, b)):
            if start not in done and (start[1], e0) in pos:
                fv, fe = [], []
                e, v = start
                while (e, v) not in done:
                    done.add((e, v))
                    fv.append(v)
                    fe.append(e)
                    x, y = edges[e]
                    w = y if x == v else x
                    rot = rotation[w]
                    e = rot[(pos[(w, e)] + 1) % len(rot)]
                    v = w
                fvs.append(fv)
                fes.append(fe)
    return fvs, fes


# ---------------------------------------------------------------------------
# operations


def dual(c: SurfaceComplex) -> SurfaceComplex:
    """Vertex per face, edge per edge, face per vertex (indexed like c's vertices)."""
    edges = tuple(c.edge_faces(e) for e in range(c.n_edges))
    fvs, fes = [], []
    for v in range(c.n_vertices):
        orbit = c.rotation[v]
        fvs.append([f for f, _ in orbit])
        fes.append([c.face_edges[f][i] for f, i in orbit])
    return SurfaceComplex.from_faces(
        c.n_faces,
        fvs,
        edges=edges,
        face_edges=fes,
        vertex_coloring=c.face_coloring,
        edge_coloring=c.edge_coloring,
        face_coloring=c.vertex_coloring,
        vertex_origin=tuple(("f", f) for f in range(c.n_faces)),
        edge_origin=tuple(("e", e) for e in range(c.n_edges)),
        face_origin=tuple(("v", v) for v in range(c.n_vertices)),
    )


def medial(c: SurfaceComplex) -> SurfaceComplex:
    """Vertex per edge of c, edge per corner; faces are f-faces then v-faces."""
    corner_id: dict[tuple[int, int], int] = {}
    edges = []
    for f, fe in enumerate(c.face_edges):
        for i in range(len(fe)):
            corner_id[(f, i)] = len(edges)
            edges.append((fe[i - 1], fe[i]))
    fvs, fes, origin = [], [], []
    for f, fe in enumerate(c.face_edges):
        k = len(fe)
        fvs.append(list(fe))
        fes.append([corner_id[(f, (i + 1) % k)] for i in range(k)])
        origin.append(("f", f))
    for v in range(c.n_vertices):
        orbit = c.rotation[v]
        fvs.append([c.corner_edges(*cr)[0] for cr in orbit])
        fes.append([corner_id[cr] for cr in orbit])
        origin.append(("v", v))
    edge_origin = [None] * len(edges)
    for (f, i), k in corner_id.items():
        edge_origin[k] = ("corner", f, i, c.face_vertices[f][i])
    return SurfaceComplex.from_faces(
        c.n_edges,
        fvs,
        edges=edges,
        face_edges=fes,
        vertex_origin=tuple(("e", e) for e in range(c.n_edges)),
        edge_origin=tuple(edge_origin),
        face_origin=tuple(origin),
    )


def delete_colored_vertices(c: SurfaceComplex, color: str) -> SurfaceComplex:
    """Remove vertices of one color and their edges; faces are re-traced.

    Vertex ids are renumbered in order; ``vertex_origin``/``edge_origin`` of the
    result hold the original ids.
    """
    if c.vertex_coloring is None:
        raise ComplexError("vertex coloring absent")
    keep = [v for v in range(c.n_vertices) if c.vertex_coloring[v] != color]
    if len(keep) == c.n_vertices:
        return c
    new_id = {v: i for i, v in enumerate(keep)}
    kept_edges = [e for e, (u, v) in enumerate(c.edges) if u in new_id and v in new_id]
    new_e = {e: i for i, e in enumerate(kept_edges)}
    edges = [(new_id[c.edges[e][0]], new_id[c.edges[e][1]]) for e in kept_edges]
    rotation = {}
    for v in keep:
        order = [c.corner_edges(*cr)[1] for cr in c.rotation[v]]
        rotation[new_id[v]] = [new_e[e] for e in order if e in new_e]
    fvs, fes = trace_faces(len(keep), edges, rotation)
    return SurfaceComplex.from_faces(
        len(keep),
        fvs,
        edges=edges,
        face_edges=fes,
        vertex_coloring=tuple(c.vertex_coloring[v] for v in keep),
        edge_coloring=None if c.edge_coloring is None else tuple(c.edge_coloring[e] for e in kept_edges),
        vertex_origin=tuple(keep),
        edge_origin=tuple(kept_edges),
    )


def simplify_parallel_edges(c: SurfaceComplex) -> SurfaceComplex:
    """Collapse every 2-sided face into a single edge (repeatedly)."""
    while True:
        digon = next((f for f, fe in enumerate(c.face_edges) if len(fe) == 2), None)
        if digon is None:
            return c
        keep_e, drop_e = sorted(c.face_edges[digon])
        fvs, fes = [], []
        origins = []
        for f, (fv, fe) in enumerate(zip(c.face_vertices, c.face_edges)):
            if f == digon:
                continue
            fvs.append(list(fv))
            fes.append([keep_e if e == drop_e else e for e in fe])
            if c.face_origin is not None:
                origins.append(c.face_origin[f])
        remap = {}
        edges = []
        eorig = []
        for e, uv in enumerate(c.edges):
            if e == drop_e:
                continue
            remap[e] = len(edges)
            edges.append(uv)
            if c.edge_origin is not None:
                eorig.append(c.edge_origin[e])
        remap[drop_e] = remap[keep_e]
        fes = [[remap[e] for e in fe] for fe in fes]
        c = SurfaceComplex.from_faces(
            c.n_vertices,
            fvs,
            edges=edges,
            face_edges=fes,
            vertex_coloring=c.vertex_coloring,
            face_coloring=None
            if c.face_coloring is None
            else tuple(col for f, col in enumerate(c.face_coloring) if f != digon),
            vertex_origin=c.vertex_origin,
            edge_origin=tuple(eorig) if c.edge_origin is not None else None,
            face_origin=tuple(origins) if c.face_origin is not None else None,
        )


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class CycleSet:
    edges: frozenset[int]
    is_hypercycle: bool = False

    @property
    def mask(self) -> int:
        m = 0
        for e in self.edges:
            m |= 1 << e
        return m


def vertex_degrees_in(c: SurfaceComplex, edge_mask: int) -> dict[int, int]:
    deg: dict[int, int] = {}
    for e in _bits(edge_mask):
        for v in c.edges[e]:
            deg[v] = deg.get(v, 0) + 1
    return deg


def _spanning_tree(c: SurfaceComplex):
    parent: dict[int, tuple[int, int] | None] = {0: None}
    depth = {0: 0}
    queue = deque([0])
    tree: set[int] = set()
    while queue:
        v = queue.popleft()
        for e, w in c.neighbors(v):
            if w not in parent:
                parent[w] = (v, e)
                depth[w] = depth[v] + 1
                tree.add(e)
                queue.append(w)
    if len(parent) != c.n_vertices:
        raise ComplexError("complex is disconnected")
    return parent, depth, tree


def homology_cycle_basis(c: SurfaceComplex) -> list[CycleSet]:
    """2g cycles spanning first homology, shortest fundamental cycles first."""
    parent, depth, tree = _spanning_tree(c)

    def path_mask(u, v):
        m = 0
        while u != v:
            if depth[u] >= depth[v]:
                p, e = parent[u]
                m ^= 1 << e
                u = p
            else:
                p, e = parent[v]
                m ^= 1 << e
                v = p
        return m

    candidates = []
    for e, (u, v) in enumerate(c.edges):
        if e not in tree:
            m = path_mask(u, v) | (1 << e)
            candidates.append((m.bit_count(), e, m))
    candidates.sort()
    elim = Eliminator()
    for m in c.face_masks:
        elim.add(m)
    out = []
    target = 2 * c.genus
    for _, _, m in candidates:
        if len(out) == target:
            break
        if elim.add(m):
            out.append(CycleSet(frozenset(_bits(m))))
    return out


def cohomology_basis(c: SurfaceComplex) -> list[int]:
    """2g edge masks that vanish on every face boundary and are not coboundaries."""
    cocycles = gf2_nullspace(list(c.face_masks), c.n_edges)
    elim = Eliminator()
    for v in range(c.n_vertices):
        m = 0
        for e in c.vertex_edges[v]:
            m ^= 1 << e
        elim.add(m)
    out = [z for z in cocycles if elim.add(z)]
    if len(out) != 2 * c.genus:
        raise ComplexError("cohomology dimension does not match genus")
    return out


def homology_class(c: SurfaceComplex, edge_mask: int, basis: list[int] | None = None) -> int:
    """Bit i set iff the cycle pairs oddly with the i-th cohomology generator."""
    basis = cohomology_basis(c) if basis is None else basis
    out = 0
    for i, z in enumerate(basis):
        if (z & edge_mask).bit_count() & 1:
            out |= 1 << i
    return out


def shortest_nontrivial_cycle_length(c: SurfaceComplex) -> int:
    if c.genus < 1:
        raise ComplexError("no homologically nontrivial cycles on a sphere")
    basis = cohomology_basis(c)
    label = [0] * c.n_edges
    for i, z in enumerate(basis):
        for e in _bits(z):
            label[e] |= 1 << i
    adj = [c.neighbors(v) for v in range(c.n_vertices)]
    best = None
    for root in range(c.n_vertices):
        dist = {(root, 0): 0}
        queue = deque([(root, 0)])
        while queue:
            v, h = queue.popleft()
            d = dist[(v, h)]
            if best is not None and d >= best:
                break
            for e, w in adj[v]:
                state = (w, h ^ label[e])
                if state not in dist:
                    dist[state] = d + 1
                    if w == root and state[1]:
                        best = d + 1 if best is None else min(best, d + 1)
                    queue.append(state)
    return best


# ---------------------------------------------------------------------------
# hypergraphs


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """Edges 0..m2-1 are rank-2, m2.. are rank-3."""

    n_vertices: int
    rank2_edges: tuple[tuple[int, int], ...]
    rank3_edges: tuple[tuple[int, int, int], ...]
    edge_coloring: tuple[str, ...] | None = None

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        return self.rank2_edges + self.rank3_edges

    def is_rank3(self, e: int) -> bool:
        return e >= len(self.rank2_edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for e, verts in enumerate(self.edges):
            for v in verts:
                inc[v].append(e)
        return tuple(tuple(x) for x in inc)

    def validate(self) -> None:
        edges = self.edges
        for e, verts in enumerate(edges):
            if len(set(verts)) != len(verts):
                raise ComplexError(f"edge {e} repeats a vertex")
        for v, inc in enumerate(self.incidence):
            if len(inc) != 3:
                raise ComplexError(f"vertex {v} has degree {len(inc)}, expected 3")
        for v, inc in enumerate(self.incidence):
            for i, a in enumerate(inc):
                for b in inc[i + 1 :]:
                    if len(set(edges[a]) & set(edges[b])) > 1:
                        raise ComplexError(f"edges {a} and {b} share more than one vertex")
        if self.edge_coloring is not None:
            if len(self.edge_coloring) != len(edges):
                raise ComplexError("edge coloring has wrong length")
            for v, inc in enumerate(self.incidence):
                if len({self.edge_coloring[e] for e in inc}) != 3:
                    raise ComplexError(f"edges at vertex {v} are not 3 distinct colors")

    def derived_graph_edges(self) -> list[tuple[int, int]]:
        """Edges of the derived graph: rank-2 edges plus the sides of each hyperedge."""
        out = list(self.rank2_edges)
        for u, v, w in self.rank3_edges:
            out += [(u, v), (v, w), (u, w)]
        return out

    def to_dict(self) -> dict:
        data = {
            "format": "topsub-hypergraph",
            "version": FORMAT_VERSION,
            "n_vertices": self.n_vertices,
            "rank2_edges": [list(e) for e in self.rank2_edges],
            "rank3_edges": [list(e) for e in self.rank3_edges],
        }
        if self.edge_coloring is not None:
            data["edge_coloring"] = list(self.edge_coloring)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "Hypergraph":
        if data.get("format") != "topsub-hypergraph" or data.get("version") != FORMAT_VERSION:
            raise ComplexError("unsupported hypergraph document")
        return cls(
            data["n_vertices"],
            tuple(tuple(e) for e in data["rank2_edges"]),
            tuple(tuple(e) for e in data["rank3_edges"]),
            tuple(data["edge_coloring"]) if "edge_coloring" in data else None,
        )


def is_hypercycle(h: Hypergraph, edges: Iterable[int]) -> bool:
    deg: dict[int, int] = {}
    all_edges = h.edges
    for e in edges:
        if not 0 <= e < len(all_edges):
            raise ComplexError(f"edge id {e} out of range")
        for v in all_edges[e]:
            deg[v] = deg.get(v, 0) ^ 1
    return not any(deg.values())


def hypergraph_isomorphic(a: Hypergraph, b: Hypergraph) -> bool:
    """Structural isomorphism (colors ignored) via the vertex/edge incidence graph."""
    import networkx as nx
    from networkx.algorithms.isomorphism import GraphMatcher, categorical_node_match

    def incidence_graph(h: Hypergraph):
        g = nx.Graph()
        for v in range(h.n_vertices):
            g.add_node(("v", v), kind="v")
        for e, verts in enumerate(h.edges):
            g.add_node(("e", e), kind=f"e{len(verts)}")
            for v in verts:
                g.add_edge(("e", e), ("v", v))
        return g

    if (a.n_vertices, len(a.rank2_edges), len(a.rank3_edges)) != (
        b.n_vertices,
        len(b.rank2_edges),
        len(b.rank3_edges),
    ):
        return False
    gm = GraphMatcher(incidence_graph(a), incidence_graph(b), node_match=categorical_node_match("kind", None))
    return gm.is_isomorphic()


def complexes_isomorphic(a: SurfaceComplex, b: SurfaceComplex) -> bool:
    """Isomorphism of the vertex/edge/face incidence structure."""
    import networkx as nx
    from networkx.algorithms.isomorphism import GraphMatcher, categorical_node_match

    def graph(c: SurfaceComplex):
        g = nx.Graph()
        for v in range(c.n_vertices):
            g.add_node(("v", v), kind="v")
        for e, (u, v) in enumerate(c.edges):
            g.add_node(("e", e), kind="e")
            g.add_edge(("e", e), ("v", u))
            g.add_edge(("e", e), ("v", v))
        for f, fe in enumerate(c.face_edges):
            g.add_node(("f", f), kind="f")
            for e in set(fe):
                g.add_edge(("f", f), ("e", e))
        return g

    if (a.n_vertices, a.n_edges, a.n_faces) != (b.n_vertices, b.n_edges, b.n_faces):
        return False
    gm = GraphMatcher(graph(a), graph(b), node_match=categorical_node_match("kind", None))
    return gm.is_isomorphic()
