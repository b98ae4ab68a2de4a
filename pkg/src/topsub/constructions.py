"""Maps from source complexes to code-ready decorated hypergraphs.

Every output keeps a provenance tag for each vertex, hypergraph edge and face
of its derived graph so that decoders can find unit cells and check faces by
origin rather than by position.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable

from .complex import (
    COLORS,
    ComplexError,
    Hypergraph,
    SurfaceComplex,
    dual,
    medial,
    simplify_parallel_edges,
)


@dataclass(frozen=True, eq=False)
class DecoratedHypergraph:
    """A construction output.

    ``derived`` is the embedded derived graph: rank-2 edges, the three sides of
    each rank-3 edge, and faces including one triangle per rank-3 edge.  For
    the subsystem surface construction there is no hypergraph; the gauge
    triangles live in ``extras["triangles"]``.
    """

    kind: str
    source: SurfaceComplex
    derived: SurfaceComplex
    hypergraph: Hypergraph | None
    vertex_origin: tuple
    edge_origin: tuple
    face_origin: tuple
    cells: tuple[tuple[int, ...], ...] | None = None
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def n_qubits(self) -> int:
        return self.derived.n_vertices

    def to_dict(self) -> dict:
        from .complex import _jsonable

        data = {
            "format": "topsub-construction",
            "version": 1,
            "kind": self.kind,
            "source": self.source.to_dict(),
            "derived": self.derived.to_dict(),
            "vertex_origin": _jsonable(self.vertex_origin),
            "edge_origin": _jsonable(self.edge_origin),
            "face_origin": _jsonable(self.face_origin),
        }
        if self.hypergraph is not None:
            data["hypergraph"] = self.hypergraph.to_dict()
        if self.cells is not None:
            data["cells"] = [list(c) for c in self.cells]
        return data


def three_color_faces(c: SurfaceComplex, seed: tuple[str, str, str] | None = None) -> tuple[str, ...] | None:
    """Proper face 3-coloring of a connected trivalent complex, or None.

    Around a trivalent vertex the three faces take three colors, and that
    choice propagates along edges, so the coloring is unique up to a
    permutation; ``seed`` fixes the colors at vertex 0.
    """
    if any(c.degree(v) != 3 for v in range(c.n_vertices)):
        return None
    colors: list[str | None] = [None] * c.n_faces
    for (f, _), col in zip(c.rotation[0], seed or COLORS):
        colors[f] = col
    queue = deque([0])
    seen = {0}
    while queue:
        v = queue.popleft()
        faces = [f for f, _ in c.rotation[v]]
        if len(set(faces)) != 3:
            return None
        missing = [f for f in faces if colors[f] is None]
        if len(missing) > 1:
            return None
        if missing:
            rest = set(COLORS) - {colors[f] for f in faces if colors[f] is not None}
            if len(rest) != 1:
                return None
            colors[missing[0]] = rest.pop()
        if len({colors[f] for f in faces}) != 3:
            return None
        for _, w in c.neighbors(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if any(col is None for col in colors):
        return None
    for e in range(c.n_edges):
        f, g = c.edge_faces(e)
        if colors[f] == colors[g]:
            return None
    return tuple(colors)


# ---------------------------------------------------------------------------
# flag 2-colex


def colex_from_graph(
    g: SurfaceComplex, f_color: str = "g", e_color: str = "b", v_color: str = "r"
) -> SurfaceComplex:
    """2-colex on the flags of ``g``.

    Faces come in three kinds: f-faces (``2|f|`` sides), e-faces (4 sides) and
    v-faces (``2 deg v`` sides), colored ``f_color``, ``e_color``, ``v_color``.
    Faces are ordered f-faces, then e-faces, then v-faces.
    """
    if len({f_color, e_color, v_color}) != 3 or not {f_color, e_color, v_color} <= set(COLORS):
        raise ComplexError("face kinds need three distinct colors")
    offset, darts = [], []
    for f, fe in enumerate(g.face_edges):
        offset.append(len(darts))
        darts += [(f, i) for i in range(len(fe))]
    D = len(darts)

    def dart(f, i):
        return offset[f] + i % len(g.face_edges[f])

    def flag(f, i, s):
        return 2 * dart(f, i) + s

    edges, edge_origin, edge_color = [], [], []
    for f, i in darts:  # along edges: same face and edge, both ends
        edges.append((flag(f, i, 0), flag(f, i, 1)))
        edge_origin.append(("along", f, i))
        edge_color.append(v_color)
    for f, i in darts:  # corner edges: same face and vertex
        edges.append((flag(f, i - 1, 1), flag(f, i, 0)))
        edge_origin.append(("corner", f, i))
        edge_color.append(e_color)
    for f, i in darts:  # cross edges: same edge and vertex, tail of the dart
        h, j = g.other_occurrence(f, i)
        edges.append((flag(f, i, 0), flag(h, j, 1)))
        edge_origin.append(("cross", f, i))
        edge_color.append(f_color)

    def along(f, i):
        return dart(f, i)

    def corner(f, i):
        return D + dart(f, i)

    def cross(f, i):
        return 2 * D + dart(f, i)

    fvs, fes, origin, colors = [], [], [], []
    for f, fe in enumerate(g.face_edges):
        k = len(fe)
        fvs.append([flag(f, i // 2, i % 2) for i in range(2 * k)])
        fes.append([along(f, i // 2) if i % 2 == 0 else corner(f, i // 2 + 1) for i in range(2 * k)])
        origin.append(("f", f))
        colors.append(f_color)
    for e, ((f, i), (h, j)) in enumerate(g.occurrences):
        fvs.append([flag(f, i, 0), flag(f, i, 1), flag(h, j, 0), flag(h, j, 1)])
        fes.append([along(f, i), cross(h, j), along(h, j), cross(f, i)])
        origin.append(("e", e))
        colors.append(e_color)
    for v in range(g.n_vertices):
        fv, fe = [], []
        for f, i in g.rotation[v]:
            fv += [flag(f, i - 1, 1), flag(f, i, 0)]
            fe += [corner(f, i), cross(f, i)]
        fvs.append(fv)
        fes.append(fe)
        origin.append(("v", v))
        colors.append(v_color)
    vertex_origin = []
    for f, i in darts:
        fv, fe = g.face_vertices[f], g.face_edges[f]
        vertex_origin.append(("flag", fv[i], fe[i], f))
        vertex_origin.append(("flag", fv[(i + 1) % len(fv)], fe[i], f))
    c = SurfaceComplex.from_faces(
        2 * D,
        fvs,
        edges=edges,
        face_edges=fes,
        face_coloring=tuple(colors),
        edge_coloring=tuple(edge_color),
        vertex_origin=tuple(vertex_origin),
        edge_origin=tuple(edge_origin),
        face_origin=tuple(origin),
    )
    if not c.is_two_colex():
        raise ComplexError("flag complex failed the 2-colex check")
    return c


# ---------------------------------------------------------------------------
# vertex expansion


def _require_colex(colex: SurfaceComplex) -> None:
    if not colex.is_two_colex():
        raise ComplexError("input is not a 2-colex (trivalent, properly 3-face-colored)")


def _next_color(c: str) -> str:
    return COLORS[(COLORS.index(c) + 1) % 3]


def vertex_expand(colex: SurfaceComplex) -> DecoratedHypergraph:
    """Replace every vertex by a rank-3 edge on its three corners.

    Hypergraph vertex ids are corner ids (face offset + position).  Rank-2
    edges are the darts of the colex; rank-3 edges are blue, rank-2 edges red
    or green according to their colex color relative to the face they bound.
    """
    _require_colex(colex)
    offset, corners = [], []
    for f, fe in enumerate(colex.face_edges):
        offset.append(len(corners))
        corners += [(f, i) for i in range(len(fe))]
    n = len(corners)

    def cid(f, i):
        return offset[f] + i % len(colex.face_edges[f])

    fc, ec = colex.face_coloring, colex.induced_edge_coloring()
    rank2, colors2, origin2 = [], [], []
    for f, i in corners:
        rank2.append((cid(f, i), cid(f, i + 1)))
        e = colex.face_edges[f][i]
        colors2.append("r" if ec[e] == _next_color(fc[f]) else "g")
        origin2.append(("dart", f, i, e))
    rank3, origin3 = [], []
    side = {}
    for v in range(colex.n_vertices):
        orbit = colex.rotation[v]
        rank3.append(tuple(cid(*c) for c in orbit))
        origin3.append(("vertex", v))
    h = Hypergraph(n, tuple(rank2), tuple(rank3), tuple(colors2) + ("b",) * len(rank3))
    h.validate()

    # derived graph: darts, then triangle sides (corner -> next corner in rotation)
    dedges = list(rank2)
    for v in range(colex.n_vertices):
        orbit = colex.rotation[v]
        for k, c in enumerate(orbit):
            side[c] = len(dedges)
            dedges.append((cid(*c), cid(*orbit[(k + 1) % 3])))
    fvs, fes, forigin = [], [], []
    for f, fe in enumerate(colex.face_edges):
        fvs.append([cid(f, i) for i in range(len(fe))])
        fes.append([cid(f, i) for i in range(len(fe))])
        forigin.append(("face", f))
    for e, ((f, i), (g, j)) in enumerate(colex.occurrences):
        fvs.append([cid(f, i), cid(f, i + 1), cid(g, j), cid(g, j + 1)])
        fes.append([cid(f, i), side[(g, j)], cid(g, j), side[(f, i)]])
        forigin.append(("edge", e))
    for v in range(colex.n_vertices):
        orbit = colex.rotation[v]
        fvs.append([cid(*c) for c in orbit])
        fes.append([side[c] for c in orbit])
        forigin.append(("triangle", v))
    derived = SurfaceComplex.from_faces(n, fvs, edges=dedges, face_edges=fes, face_origin=tuple(forigin))
    return DecoratedHypergraph(
        kind="vertex_expansion",
        source=colex,
        derived=derived,
        hypergraph=h,
        vertex_origin=tuple(("corner", f, i, colex.face_vertices[f][i]) for f, i in corners),
        edge_origin=tuple(origin2 + origin3),
        face_origin=tuple(forigin),
        cells=tuple(rank3),
        extras={"face_corners": tuple(tuple(cid(f, i) for i in range(len(fe))) for f, fe in enumerate(colex.face_edges))},
    )


# ---------------------------------------------------------------------------
# promotion of alternate face edges


def hypergraph_code_construction(
    colex: SurfaceComplex,
    faces: list[int] | tuple[int, ...],
    promote: str | Callable[[int], bool] = "lowest",
) -> DecoratedHypergraph:
    """Promote alternate boundary edges of each chosen red face to rank-3 edges.

    Each chosen face gets an inner face with ``|f|/2`` new vertices; the t-th
    promoted edge in cyclic order takes the t-th inner vertex, so hyperedges
    never cross.  ``promote`` picks the alternating half: "lowest" takes the
    half holding the lowest edge id, otherwise a predicate on colex edge ids
    that must select exactly one half.
    """
    _require_colex(colex)
    fc = colex.face_coloring
    chosen = sorted(set(faces))
    for f in chosen:
        k = len(colex.face_edges[f])
        if fc[f] != "r":
            raise ComplexError(f"face {f} is not red")
        if k % 4 or k <= 4:
            raise ComplexError(f"face {f} has {k} sides; need a multiple of 4 above 4")
    n0 = colex.n_vertices
    ec = list(colex.induced_edge_coloring())
    edges = list(colex.edges)
    eorigin: list[tuple] = [("colex_edge", e) for e in range(colex.n_edges)]
    vorigin: list[tuple] = [("colex", v) for v in range(n0)]
    promoted: set[int] = set()
    rank3, r3origin = [], []
    inner_edges: list[int] = []
    inner_colors: dict[int, str] = {}
    keep_faces = [f for f in range(colex.n_faces) if f not in set(chosen)]
    fvs = [list(colex.face_vertices[f]) for f in keep_faces]
    fes = [list(colex.face_edges[f]) for f in keep_faces]
    forigin: list[tuple] = [("colex_face", f) for f in keep_faces]
    cells: list[tuple[int, ...]] = []
    hyper_sides: list[tuple[int, int, int]] = []
    inner_of: dict[int, tuple[int, ...]] = {}
    promoted_colors = set()
    for f in chosen:
        fv, fe = colex.face_vertices[f], colex.face_edges[f]
        k = len(fe)
        if promote == "lowest":
            parity = fe.index(min(fe)) % 2
        else:
            picks = {i % 2 for i in range(k) if promote(fe[i])}
            hits = [i for i in range(k) if promote(fe[i])]
            if len(picks) != 1 or len(hits) != k // 2:
                raise ComplexError(f"promotion rule does not select an alternating half of face {f}")
            parity = picks.pop()
        m = k // 2
        w = [len(vorigin) + t for t in range(m)]
        for t in range(m):
            vorigin.append(("inner", f, t))
        inner_of[f] = tuple(w)
        tri_sides = []
        for t in range(m):
            pos = parity + 2 * t
            u, v = fv[pos], fv[(pos + 1) % k]
            e = fe[pos]
            promoted.add(e)
            promoted_colors.add(ec[e])
            vw = len(edges)
            edges.append((v, w[t]))
            eorigin.append(("hyper_side", f, t, "vw"))
            wu = len(edges)
            edges.append((w[t], u))
            eorigin.append(("hyper_side", f, t, "wu"))
            tri_sides.append((e, vw, wu))
            rank3.append((u, v, w[t]))
            r3origin.append(("hyper", f, t, e))
        ring = []
        for t in range(m):
            ring.append(len(edges))
            inner_colors[len(edges)] = "r" if t % 2 == 0 else "g"
            edges.append((w[t], w[(t + 1) % m]))
            eorigin.append(("inner_edge", f, t))
        inner_edges += ring
        for t in range(m):
            pos = parity + 2 * t
            u, v = fv[pos], fv[(pos + 1) % k]
            e, vw, wu = tri_sides[t]
            fvs.append([u, v, w[t]])
            fes.append([e, vw, wu])
            forigin.append(("triangle", f, t))
            u_next = fv[(pos + 2) % k]
            gap = fe[(pos + 1) % k]
            _, vw_next, wu_next = tri_sides[(t + 1) % m]
            fvs.append([v, u_next, w[(t + 1) % m], w[t]])
            fes.append([gap, wu_next, ring[t], vw])
            forigin.append(("quad", f, t))
            hyper_sides.append((e, vw, wu))
        fvs.append(list(w))
        fes.append(list(ring))
        forigin.append(("inner_face", f))
        cells.append(tuple(fv) + tuple(w))
    if len(promoted_colors) > 1:
        raise ComplexError("promoted edges carry mixed colors")
    swap = promoted_colors == {"g"}

    def recolor(c):
        return {"g": "b", "b": "g"}.get(c, c) if swap else c

    rank2, colors2, origin2 = [], [], []
    for e in range(colex.n_edges):
        if e not in promoted:
            rank2.append(colex.edges[e])
            colors2.append(recolor(ec[e]))
            origin2.append(("colex_edge", e))
    for e in inner_edges:
        rank2.append(edges[e])
        colors2.append(inner_colors[e])
        origin2.append(eorigin[e])
    n = len(vorigin)
    h = Hypergraph(n, tuple(rank2), tuple(rank3), tuple(colors2) + ("b",) * len(rank3))
    h.validate()
    derived = SurfaceComplex.from_faces(
        n, fvs, edges=edges, face_edges=fes, edge_origin=tuple(eorigin), face_origin=tuple(forigin)
    )
    return DecoratedHypergraph(
        kind="hypergraph_construction",
        source=colex,
        derived=derived,
        hypergraph=h,
        vertex_origin=tuple(vorigin),
        edge_origin=tuple(origin2 + r3origin),
        face_origin=tuple(forigin),
        cells=tuple(cells) if chosen else None,
        extras={"faces": tuple(chosen), "inner": inner_of, "hyper_sides": tuple(hyper_sides)},
    )


def uniform_rank3_construction(gamma: SurfaceComplex) -> DecoratedHypergraph:
    """Flag 2-colex of gamma with every v-face promoted along its e-face sides."""
    colex = colex_from_graph(gamma)
    vfaces = [f for f, o in enumerate(colex.face_origin) if o[0] == "v"]
    crossing = {e for e, o in enumerate(colex.edge_origin) if o[0] == "cross"}
    dh = hypergraph_code_construction(colex, vfaces, promote=lambda e: e in crossing)
    return DecoratedHypergraph(**{**dh.__dict__, "kind": "uniform_rank3"})


# ---------------------------------------------------------------------------
# generalized five-squares


def face_bipartition(gamma: SurfaceComplex) -> tuple[int, ...]:
    """0/1 class per face with adjacent faces in different classes."""
    side: list[int | None] = [None] * gamma.n_faces
    for start in range(gamma.n_faces):
        if side[start] is not None:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            f = queue.popleft()
            for e in gamma.face_edges[f]:
                a, b = gamma.edge_faces(e)
                if a == b:
                    raise ComplexError("faces of the source are not bicolorable")
                g = b if a == f else a
                if side[g] is None:
                    side[g] = 1 - side[f]
                    queue.append(g)
                elif side[g] == side[f]:
                    raise ComplexError("faces of the source are not bicolorable")
    return tuple(side)


def _five_squares(gamma: SurfaceComplex, bad: bool) -> DecoratedHypergraph:
    for v in range(gamma.n_vertices):
        d = gamma.degree(v)
        if d % 2 or d <= 2:
            raise ComplexError(f"vertex {v} has degree {d}; need even degree above 2")
    classes = face_bipartition(gamma)
    gm = medial(gamma)
    gms = dual(gm)
    colex = colex_from_graph(gms)
    # gms vertex x is gm face x: gamma faces first, then gamma vertices
    nF = gamma.n_faces
    fv_faces, ff_faces = [], []
    colex_face_of_gms_vertex = {}
    for f, o in enumerate(colex.face_origin):
        if o[0] == "v":
            colex_face_of_gms_vertex[o[1]] = f
            (ff_faces if o[1] < nF else fv_faces).append(f)
    kind = "cross" if bad else "corner"
    chosen_edges = {e for e, o in enumerate(colex.edge_origin) if o[0] == kind}
    dh = hypergraph_code_construction(colex, fv_faces, promote=lambda e: e in chosen_edges)

    # unit cell: an F_v face, its inner vertices, and the e-faces around it
    efaces_of: dict[int, list[int]] = {f: [] for f in fv_faces}
    eface_ids = [f for f, o in enumerate(colex.face_origin) if o[0] == "e"]
    vface_of_vertex = {}
    for f in fv_faces + ff_faces:
        for v in colex.face_vertices[f]:
            vface_of_vertex[v] = f
    for ef in eface_ids:
        owners = {vface_of_vertex[v] for v in colex.face_vertices[ef]}
        (cell_face,) = owners & set(fv_faces)
        efaces_of[cell_face].append(ef)
    cells = []
    for f in fv_faces:
        verts = set(colex.face_vertices[f]) | set(dh.extras["inner"][f])
        for ef in efaces_of[f]:
            verts |= set(colex.face_vertices[ef])
        cells.append(tuple(sorted(verts)))

    # highlighted qubit per gamma corner: the flag (face, corner, out-edge)
    flag_id = {o[1:]: v for v, o in enumerate(colex.vertex_origin)}
    corner_edge = {}
    for k, o in enumerate(gm.edge_origin):
        corner_edge[(o[1], o[2])] = k
    highlight = {}
    for f, fe in enumerate(gamma.face_edges):
        for i in range(len(fe)):
            e_gms = corner_edge[(f, i)]
            highlight[(f, i)] = flag_id[(f, e_gms, fe[i])]
    extras = dict(dh.extras)
    extras.update(
        gamma=gamma,
        face_classes=classes,
        fv_faces=tuple(fv_faces),
        ff_faces=tuple(ff_faces),
        e_faces=tuple(eface_ids),
        gamma_face_of=tuple(colex.face_origin[f][1] for f in ff_faces),
        gamma_vertex_of=tuple(colex.face_origin[f][1] - nF for f in fv_faces),
        cell_efaces={f: tuple(v) for f, v in efaces_of.items()},
        highlight=highlight,
        variant="e_face_hyperedges" if bad else "standard",
    )
    return DecoratedHypergraph(
        kind="five_squares_bad" if bad else "five_squares",
        source=gamma,
        derived=dh.derived,
        hypergraph=dh.hypergraph,
        vertex_origin=dh.vertex_origin,
        edge_origin=dh.edge_origin,
        face_origin=dh.face_origin,
        cells=tuple(cells),
        extras=extras,
    )


def five_squares_construction(gamma: SurfaceComplex) -> DecoratedHypergraph:
    """Generalized five-squares code from a face-bicolorable graph of even degrees."""
    return _five_squares(gamma, bad=False)


def five_squares_bad_variant(gamma: SurfaceComplex) -> DecoratedHypergraph:
    """Same pipeline but hyperedges sit on e-face boundaries (constant distance)."""
    return _five_squares(gamma, bad=True)


# ---------------------------------------------------------------------------
# subsystem surface codes


def corner_alternation(gamma: SurfaceComplex) -> dict[tuple[int, int], str]:
    """Type X/Z per corner, alternating around every vertex and every face."""
    corners = [(f, i) for f, fe in enumerate(gamma.face_edges) for i in range(len(fe))]
    nbrs: dict[tuple[int, int], list[tuple[int, int]]] = {c: [] for c in corners}
    for f, fe in enumerate(gamma.face_edges):
        k = len(fe)
        for i in range(k):
            nbrs[(f, i)].append((f, (i + 1) % k))
            nbrs[(f, (i + 1) % k)].append((f, i))
    for v, orbit in gamma.rotation.items():
        for a, b in zip(orbit, orbit[1:] + orbit[:1]):
            nbrs[a].append(b)
            nbrs[b].append(a)
    kind: dict[tuple[int, int], str] = {}
    for start in corners:
        if start in kind:
            continue
        kind[start] = "X"
        queue = deque([start])
        while queue:
            c = queue.popleft()
            flip = "Z" if kind[c] == "X" else "X"
            for d in nbrs[c]:
                if d not in kind:
                    kind[d] = flip
                    queue.append(d)
                elif kind[d] != flip:
                    raise ComplexError("corner types cannot alternate around every vertex and face")
    return kind


def subsystem_surface_construction(gamma4: SurfaceComplex) -> DecoratedHypergraph:
    """Medial graph plus a center in every v-face, split into typed triangles.

    Qubits: medial vertices (one per edge of gamma4, ids 0..E-1) then one
    center per vertex of gamma4.  Each corner (f, i) of gamma4 yields the
    triangle (center, in-edge, out-edge) with an X or Z gauge type.
    """
    for v in range(gamma4.n_vertices):
        if gamma4.degree(v) != 4:
            raise ComplexError(f"vertex {v} has degree {gamma4.degree(v)}; need 4")
    for f, fe in enumerate(gamma4.face_edges):
        if len(fe) % 2:
            raise ComplexError(f"face {f} has odd length {len(fe)}")
    kind = corner_alternation(gamma4)
    gm = medial(gamma4)
    E = gamma4.n_edges
    center = lambda v: E + v  # noqa: E731
    edges = list(gm.edges)
    eorigin = list(gm.edge_origin)
    spoke = {}
    for v in range(gamma4.n_vertices):
        for f, i in gamma4.rotation[v]:
            e = gamma4.face_edges[f][i]
            spoke[(v, e)] = len(edges)
            edges.append((center(v), e))
            eorigin.append(("spoke", v, e))
    corner_edge = {(o[1], o[2]): k for k, o in enumerate(gm.edge_origin)}
    fvs, fes, forigin = [], [], []
    for x, o in enumerate(gm.face_origin):
        if o[0] == "f":
            fvs.append(list(gm.face_vertices[x]))
            fes.append(list(gm.face_edges[x]))
            forigin.append(o)
    triangles = []
    for f, fe in enumerate(gamma4.face_edges):
        for i in range(len(fe)):
            v = gamma4.face_vertices[f][i]
            a, b = fe[i - 1], fe[i]
            fvs.append([center(v), a, b])
            fes.append([spoke[(v, a)], corner_edge[(f, i)], spoke[(v, b)]])
            forigin.append(("triangle", f, i, kind[(f, i)]))
            triangles.append(((center(v), a, b), kind[(f, i)], (f, i)))
    n = E + gamma4.n_vertices
    derived = SurfaceComplex.from_faces(
        n, fvs, edges=edges, face_edges=fes, edge_origin=tuple(eorigin), face_origin=tuple(forigin)
    )
    vorigin = tuple(("edge", e) for e in range(E)) + tuple(("center", v) for v in range(gamma4.n_vertices))
    return DecoratedHypergraph(
        kind="subsystem_surface",
        source=gamma4,
        derived=derived,
        hypergraph=None,
        vertex_origin=vorigin,
        edge_origin=tuple(eorigin),
        face_origin=tuple(forigin),
        cells=tuple((center(v),) + tuple(gamma4.face_edges[f][i] for f, i in gamma4.rotation[v]) for v in range(gamma4.n_vertices)),
        extras={"triangles": tuple(triangles), "corner_type": kind},
    )


# ---------------------------------------------------------------------------
# contraction


def contract_rank3_edges(dh: DecoratedHypergraph) -> SurfaceComplex:
    """Quotient the derived graph by its rank-3 triangles, then merge parallel edges."""
    h = dh.hypergraph
    if h is None:
        raise ComplexError("construction has no rank-3 edges to contract")
    c = dh.derived
    parent = list(range(c.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for tri in h.rank3_edges:
        for v in tri[1:]:
            parent[find(v)] = find(tri[0])
    roots = sorted({find(v) for v in range(c.n_vertices)})
    new_id = {r: i for i, r in enumerate(roots)}
    keep = [e for e, (u, v) in enumerate(c.edges) if find(u) != find(v)]
    new_e = {e: i for i, e in enumerate(keep)}
    edges = [(new_id[find(c.edges[e][0])], new_id[find(c.edges[e][1])]) for e in keep]
    fvs, fes, origin = [], [], []
    for f, (fv, fe) in enumerate(zip(c.face_vertices, c.face_edges)):
        kept = [(new_id[find(fv[i])], new_e[e]) for i, e in enumerate(fe) if e in new_e]
        if not kept:
            continue
        fvs.append([v for v, _ in kept])
        fes.append([e for _, e in kept])
        origin.append(c.face_origin[f] if c.face_origin else ("face", f))
    out = SurfaceComplex.from_faces(len(roots), fvs, edges=edges, face_edges=fes, face_origin=tuple(origin))
    out = simplify_parallel_edges(out)
    colors = three_color_faces(out)
    if colors is None:
        raise ComplexError("contraction is not a 2-colex")
    return out.replace(face_coloring=colors, edge_coloring=out.replace(face_coloring=colors).induced_edge_coloring())
