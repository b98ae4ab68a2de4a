"""Periodic lattices on the torus and the 12-qubit honeycomb fixture."""

from __future__ import annotations

from typing import Any

from .complex import COLORS, ComplexError, SurfaceComplex, dual

Vec = tuple[int, int]


def lattice_hnf(a: Vec, b: Vec) -> tuple[int, int, int]:
    """Return (A, B1, B2) with the lattice spanned by (A, 0) and (B1, B2)."""
    u, v = list(a), list(b)
    while v[1]:
        q = u[1] // v[1]
        u = [u[0] - q * v[0], u[1] - q * v[1]]
        u, v = v, u
    # u has nonzero second coordinate, v lies on the x-axis
    if u[1] < 0:
        u = [-u[0], -u[1]]
    A = abs(v[0])
    if A == 0 or u[1] == 0:
        raise ComplexError("lattice vectors are degenerate")
    return A, u[0] % A, u[1]


class _Torus:
    """Integer points of Z^2 modulo a full-rank sublattice."""

    def __init__(self, a: Vec, b: Vec):
        self.A, self.B1, self.B2 = lattice_hnf(a, b)
        self.size = self.A * self.B2

    def index(self, i: int, j: int) -> int:
        k = j // self.B2
        j -= k * self.B2
        i = (i - k * self.B1) % self.A
        return j * self.A + i

    def points(self):
        for j in range(self.B2):
            for i in range(self.A):
                yield i, j


def _periodic(a: Vec, b: Vec, edge_steps: list[Vec], face_shapes: list[list[Vec]]):
    """Build a one-vertex-per-cell lattice.

    ``face_shapes`` list vertex offsets around each face of a cell; every side
    must be one of ``edge_steps`` (or its reverse).
    """
    t = _Torus(a, b)
    edges: list[tuple[int, int]] = []
    eid: dict[tuple[int, int, int], int] = {}
    for i, j in t.points():
        for s, (di, dj) in enumerate(edge_steps):
            eid[(t.index(i, j), s, 0)] = len(edges)
            edges.append((t.index(i, j), t.index(i + di, j + dj)))
    fvs, fes = [], []
    for i, j in t.points():
        for shape in face_shapes:
            fv, fe = [], []
            for k, (di, dj) in enumerate(shape):
                ni, nj = shape[(k + 1) % len(shape)]
                step = (ni - di, nj - dj)
                if step in edge_steps:
                    s, base = edge_steps.index(step), (i + di, j + dj)
                else:
                    s, base = edge_steps.index((-step[0], -step[1])), (i + ni, j + nj)
                fv.append(t.index(i + di, j + dj))
                fe.append(eid[(t.index(*base), s, 0)])
            fvs.append(fv)
            fes.append(fe)
    return t, edges, fvs, fes


def square_torus(a: Vec, b: Vec) -> SurfaceComplex:
    t, edges, fvs, fes = _periodic(a, b, [(1, 0), (0, 1)], [[(0, 0), (1, 0), (1, 1), (0, 1)]])
    return SurfaceComplex.from_faces(
        t.size, fvs, edges=edges, face_edges=fes, vertex_origin=tuple(t.points())
    )


def triangular_torus(a: Vec, b: Vec) -> SurfaceComplex:
    t, edges, fvs, fes = _periodic(
        a,
        b,
        [(1, 0), (0, 1), (1, 1)],
        [[(0, 0), (1, 0), (1, 1)], [(0, 0), (1, 1), (0, 1)]],
    )
    coloring = None
    if all((x + y) % 3 == 0 for x, y in (a, b)):
        coloring = tuple(COLORS[(i + j) % 3] for i, j in t.points())
    return SurfaceComplex.from_faces(
        t.size,
        fvs,
        edges=edges,
        face_edges=fes,
        vertex_coloring=coloring,
        vertex_origin=tuple(t.points()),
    )


def honeycomb_torus(a: Vec, b: Vec) -> SurfaceComplex:
    """Dual of a 3-colorable triangular torus: a 2-colex of hexagons."""
    tri = triangular_torus(a, b)
    if tri.vertex_coloring is None:
        raise ComplexError("lattice vectors must have coordinate sums divisible by 3")
    hexes = dual(tri)
    return hexes.replace(edge_coloring=hexes.induced_edge_coloring())


def rotated_surface_dsq(d: int) -> SurfaceComplex:
    """Square tiling of the torus with (d^2+1)/2 vertices, d^2+1 edges and shortest cycle d."""
    if d < 3 or d % 2 == 0:
        raise ComplexError("d must be odd and at least 3")
    h = (d + 1) // 2
    return square_torus((h, h - 1), (-(h - 1), h))


_HONEYCOMB_PRESETS: dict[int, tuple[Vec, Vec]] = {
    6: ((3, 0), (1, 2)),
    12: ((3, 0), (2, 4)),
    24: ((6, 0), (2, 4)),
}


def build_family(family: str, **params: Any) -> SurfaceComplex:
    """Instantiate a named lattice family on the torus.

    honeycomb_torus: ``L`` (multiple of 3, L x L hexagons), ``hexagons`` in
    {6, 12, 24}, or explicit ``lattice``.  square_torus / triangular_torus:
    ``L`` or ``lattice``.  square_octagon_torus: ``size`` s, the flag 2-colex
    of the square torus spanned by (2s, 0) and (s, s).  rotated_surface_dsq:
    ``d``.
    """
    lattice = params.get("lattice")
    if family == "honeycomb_torus":
        if lattice is None:
            if "hexagons" in params:
                try:
                    lattice = _HONEYCOMB_PRESETS[params["hexagons"]]
                except KeyError:
                    raise ComplexError(f"no preset for {params['hexagons']} hexagons") from None
            else:
                L = params["L"]
                if L % 3:
                    raise ComplexError("honeycomb L must be a multiple of 3")
                lattice = ((L, 0), (0, L))
        return honeycomb_torus(*lattice)
    if family in ("square_torus", "triangular_torus"):
        if lattice is None:
            L = params["L"]
            if L < 2:
                raise ComplexError("L must be at least 2")
            lattice = ((L, 0), (0, L))
        build = square_torus if family == "square_torus" else triangular_torus
        return build(*lattice)
    if family == "square_octagon_torus":
        from .constructions import colex_from_graph

        s = params["size"]
        if s < 1:
            raise ComplexError("size must be positive")
        return colex_from_graph(square_torus((2 * s, 0), (s, s)))
    if family == "rotated_surface_dsq":
        return rotated_surface_dsq(params["d"])
    raise ComplexError(f"unknown family {family!r}")


# 12-qubit honeycomb on the torus with the qubit labels of the worked example.
# Faces are listed with 1-based qubit labels; colors r/g/b play the roles of
# x/y/z, so r-edges carry XX, g-edges YY and b-edges ZZ.
HONEYCOMB12_FACES = (
    ((1, 5, 8, 10, 7, 4), "b"),
    ((2, 6, 3, 12, 9, 11), "b"),
    ((2, 6, 9, 11, 8, 5), "r"),
    ((1, 4, 3, 12, 7, 10), "r"),
    ((3, 4, 7, 12, 9, 6), "g"),
    ((1, 5, 2, 11, 8, 10), "g"),
)


def honeycomb12() -> SurfaceComplex:
    c = SurfaceComplex.from_faces(
        12,
        [[q - 1 for q in fv] for fv, _ in HONEYCOMB12_FACES],
        face_coloring=tuple(col for _, col in HONEYCOMB12_FACES),
    )
    return c.replace(edge_coloring=c.induced_edge_coloring())
