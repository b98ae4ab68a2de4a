"""Decoders for the code families, each returning an estimate with a stage trace.

Every decoder tracks the residual syndrome as a bitmask over the stabilizer
generators.  A correction ``C`` updates it by the syndrome of ``C``, so flip
targets always follow from commutation rather than from bookkeeping rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from .code import PAULI_OF_COLOR, SubsystemCode, SyndromeVector
from .complex import SurfaceComplex, _bits
from .matching import DecodingGraph, ParityError, decode_defects
from .pauli import PauliOperator


class DecoderError(ValueError):
    """The code lacks the structure a decoder relies on."""


@dataclass
class DecodeOutcome:
    estimate: PauliOperator
    trace: list[dict[str, Any]] = field(default_factory=list)


def _mask(syndrome: int | SyndromeVector) -> int:
    return syndrome.mask if isinstance(syndrome, SyndromeVector) else int(syndrome)


def _cache(code: SubsystemCode) -> dict:
    return code.extras.setdefault("_decoder_cache", {})


def _single_mask(code: SubsystemCode, q: int, kind: str) -> int:
    table = _cache(code).setdefault("single", {})
    key = (q, kind)
    if key not in table:
        table[key] = code.syndrome_mask(PauliOperator.single(code.n_qubits, q, kind))
    return table[key]


class _Tracker:
    """Running estimate and residual syndrome."""

    def __init__(self, code: SubsystemCode, syndrome):
        self.code = code
        self.n = code.n_qubits
        self.mask = _mask(syndrome)
        self.x = 0
        self.z = 0
        self.trace: list[dict[str, Any]] = []

    def bit(self, label) -> int:
        return self.code.check_bit(label, self.mask)

    def apply_single(self, q: int, kind: str) -> None:
        if kind in "XY":
            self.x ^= 1 << q
        if kind in "ZY":
            self.z ^= 1 << q
        self.mask ^= _single_mask(self.code, q, kind)

    def apply(self, op: PauliOperator) -> None:
        self.x ^= op.x
        self.z ^= op.z
        self.mask ^= self.code.syndrome_mask(op)

    def finish(self, stage: str = "homology") -> DecodeOutcome:
        """Remove any syndrome left on checks no stage handled."""
        if self.mask:
            try:
                fix = self.code.pure_error(self.mask, "Z")
            except ValueError:
                fix = self.code.pure_error(self.mask, "any")
            self.trace.append({"stage": stage, "residual": _bits(self.mask), "correction": str(fix)})
            self.apply(fix)
        return DecodeOutcome(PauliOperator(self.n, self.x, self.z), self.trace)


def _graph_from_ops(code: SubsystemCode, labels: list, ops: Iterable[tuple[int, PauliOperator]]) -> DecodingGraph:
    """Arcs join the two listed checks that each operator flips."""
    checks = [code.checks[lab].op for lab in labels]
    arcs = []
    for carrier, op in ops:
        hit = [i for i, c in enumerate(checks) if ((c.x & op.z) ^ (c.z & op.x)).bit_count() & 1]
        if len(hit) == 2:
            arcs.append((hit[0], hit[1], carrier))
        elif hit:
            raise DecoderError(f"operator {carrier} flips {len(hit)} checks of the matching graph")
    return DecodingGraph(len(labels), arcs)


def _defects(t: _Tracker, labels: list) -> list[int]:
    return [i for i, lab in enumerate(labels) if t.bit(lab)]


def _match(t: _Tracker, graph: DecodingGraph, labels: list, name: str) -> set[int]:
    defects = _defects(t, labels)
    if len(defects) % 2:
        raise ParityError(f"{name}: odd number of defects ({len(defects)})")
    carriers, m = decode_defects(graph, defects)
    t.trace.append({
        "stage": name,
        "defects": [labels[i] for i in defects],
        "matching": [(labels[a], labels[b]) for a, b in m],
        "carriers": sorted(carriers),
    })
    return carriers


# ---------------------------------------------------------------------------
# cubic subsystem color codes


def _cubic_parts(code: SubsystemCode):
    cache = _cache(code)
    if "cubic" not in cache:
        colex = code.construction
        if code.family != "cubic" or not isinstance(colex, SurfaceComplex):
            raise DecoderError("expected a cubic subsystem color code")
        ec = colex.induced_edge_coloring()
        face_label = {}
        for lab in code.labels_of_kind("face"):
            face_label[lab[1]] = lab
        if len(face_label) != colex.n_faces:
            raise DecoderError("cubic code is missing face checks")
        labels = [face_label[f] for f in range(colex.n_faces)]
        lift = {}
        for e, (u, v) in enumerate(colex.edges):
            lift[e] = (min(u, v), PAULI_OF_COLOR[ec[e]])
        xy = [face_label[f] for f in range(colex.n_faces) if colex.face_coloring[f] != "b"]
        n = code.n_qubits
        proj = _graph_from_ops(
            code, xy, ((e, PauliOperator.single(n, q, k)) for e, (q, k) in lift.items() if ec[e] == "b")
        )
        full = _graph_from_ops(code, labels, ((e, PauliOperator.single(n, q, k)) for e, (q, k) in lift.items()))
        cache["cubic"] = (colex, labels, xy, lift, proj, full)
    return cache["cubic"]


def decode_cubic_projection(code: SubsystemCode, syndrome) -> DecodeOutcome:
    """X cleanup on z-faces, matching on the x/y-face toric code, then homology."""
    colex, labels, xy, lift, proj, _ = _cubic_parts(code)
    t = _Tracker(code, syndrome)
    flips = []
    for lab in labels:
        f = lab[1]
        if colex.face_coloring[f] == "b" and t.bit(lab):
            q = min(colex.face_vertices[f])
            t.apply_single(q, "X")
            flips.append(q)
    t.trace.append({"stage": "x_cleanup", "flips": flips, "syndrome": _bits(t.mask)})
    for e in sorted(_match(t, proj, xy, "projected_matching")):
        q, kind = lift[e]
        t.apply_single(q, kind)
    return t.finish()


def decode_cubic_colored_matching(code: SubsystemCode, syndrome) -> DecodeOutcome:
    """One matching on the dual graph; each edge lifts to its color's Pauli."""
    colex, labels, _, lift, _, full = _cubic_parts(code)
    t = _Tracker(code, syndrome)
    lifted = []
    for e in sorted(_match(t, full, labels, "colored_matching")):
        q, kind = lift[e]
        t.apply_single(q, kind)
        lifted.append(f"{kind}{q + 1}")
    t.trace.append({"stage": "lift", "paulis": lifted})
    return t.finish()


# ---------------------------------------------------------------------------
# color-code sub-decoder


def _restricted_graph(colex: SurfaceComplex, drop: str, ec) -> tuple[list[int], DecodingGraph]:
    """Faces of two colors joined across the edges of the third."""
    faces = [f for f in range(colex.n_faces) if colex.face_coloring[f] != drop]
    pos = {f: i for i, f in enumerate(faces)}
    arcs = []
    for e in range(colex.n_edges):
        if ec[e] == drop:
            a, b = colex.edge_faces(e)
            arcs.append((pos[a], pos[b], e))
    return faces, DecodingGraph(len(faces), arcs)


def _color_parts(colex: SurfaceComplex):
    parts = _COLOR_CACHE.get(id(colex))
    if parts is None or parts[0] is not colex:
        ec = colex.induced_edge_coloring()
        graphs = {c: _restricted_graph(colex, c, ec) for c in "rgb"}
        parts = (colex, ec, graphs)
        _COLOR_CACHE[id(colex)] = parts
    return parts


_COLOR_CACHE: dict[int, tuple] = {}


def _lift_face(colex: SurfaceComplex, f: int, chosen: set[int]) -> set[int] | None:
    """Vertices of face f whose boundary edges flip exactly the chosen ones."""
    fv, fe = colex.face_vertices[f], colex.face_edges[f]
    k = len(fv)
    # edge fe[i] joins fv[i] and fv[i+1]; walk the cycle fixing x_0 = 0
    x = [0] * k
    for i in range(k - 1):
        x[i + 1] = x[i] ^ (fe[i] in chosen)
    if x[k - 1] ^ x[0] != (fe[k - 1] in chosen):
        return None
    ones = {fv[i] for i in range(k) if x[i]}
    if 2 * len(ones) > k:
        ones = set(fv) - ones
    return ones


def _face_syndrome(colex: SurfaceComplex, verts: set[int]) -> set[int]:
    out = set()
    for f, fv in enumerate(colex.face_vertices):
        if len(verts.intersection(fv)) % 2:
            out.add(f)
    return out


def decode_color_code_single_type(colex: SurfaceComplex, face_syndrome: Iterable[int]) -> tuple[set[int], dict]:
    """Restriction decoder: match in two restricted lattices sharing a color, lift per face.

    Returns the vertex set and a trace record.  If no shared color lifts to
    the right syndrome, the record carries ``failed=True`` and a GF(2)
    preimage is returned instead.
    """
    defects = set(face_syndrome)
    _, ec, graphs = _color_parts(colex)
    record: dict[str, Any] = {"stage": "color_code", "defects": sorted(defects)}
    for shared in "rgb":
        chosen: set[int] = set()
        for drop in "rgb":
            if drop == shared:
                continue
            faces, g = graphs[drop]
            idx = [i for i, f in enumerate(faces) if f in defects]
            try:
                carriers, _ = decode_defects(g, idx)
            except ParityError:
                chosen = None
                break
            chosen |= carriers
        if chosen is None:
            continue
        verts: set[int] = set()
        ok = True
        for f in range(colex.n_faces):
            if colex.face_coloring[f] != shared:
                continue
            part = _lift_face(colex, f, chosen)
            if part is None:
                ok = False
                break
            verts ^= part
        if ok and _face_syndrome(colex, verts) == defects:
            record.update(shared_color=shared, vertices=sorted(verts))
            return verts, record
    verts = _color_preimage(colex, defects)
    record.update(failed=True, vertices=sorted(verts))
    return verts, record


def _color_preimage(colex: SurfaceComplex, defects: set[int]) -> set[int]:
    rows = []
    for f, fv in enumerate(colex.face_vertices):
        v = 0
        for q in fv:
            v ^= 1 << q
        rows.append(v | ((f in defects) << colex.n_vertices))
    n = colex.n_vertices
    piv: dict[int, int] = {}
    for r in rows:
        for p, pr in piv.items():
            if (r >> p) & 1:
                r ^= pr
        low = r & ((1 << n) - 1)
        if not low:
            if r:
                raise ParityError("face syndrome has no vertex preimage")
            continue
        p = (low & -low).bit_length() - 1
        for q in list(piv):
            if (piv[q] >> p) & 1:
                piv[q] ^= r
        piv[p] = r
    return {p for p, r in piv.items() if (r >> n) & 1}


# ---------------------------------------------------------------------------
# topological subsystem color codes


def _tscc_parts(code: SubsystemCode):
    cache = _cache(code)
    if "tscc" not in cache:
        dh = code.construction
        if code.family != "tscc":
            raise DecoderError("expected a topological subsystem color code")
        colex = dh.source
        r2 = {lab[1]: lab for lab in code.labels_of_kind("rank2")}
        r3 = {lab[1]: lab for lab in code.labels_of_kind("rank3")}
        if len(r2) != colex.n_faces or len(r3) != colex.n_faces:
            raise DecoderError("projection needs a rank-2 and a rank-3 check per face")
        corners = dh.extras["face_corners"]
        triangles = dh.hypergraph.rank3_edges
        cache["tscc"] = (colex, r2, r3, corners, triangles)
    return cache["tscc"]


def project_tscc_syndrome(code: SubsystemCode, syndrome) -> set[int]:
    """Colex faces whose rank-3 check fires."""
    colex, _, r3, _, _ = _tscc_parts(code)
    mask = _mask(syndrome)
    return {f for f in range(colex.n_faces) if code.check_bit(r3[f], mask)}


def project_z_error(code: SubsystemCode, e: PauliOperator) -> set[int]:
    """Colex vertices whose rank-3 edge carries an odd number of Z errors."""
    _, _, _, _, triangles = _tscc_parts(code)
    return {v for v, tri in enumerate(triangles) if sum((e.z >> q) & 1 for q in tri) % 2}


def decode_tscc(code: SubsystemCode, syndrome, *, cleanup: str = "syndrome") -> DecodeOutcome:
    """X cleanup through rank-2 checks, then the color-code decoder on rank-3 checks.

    ``cleanup`` picks the corner that receives the X correction in a flagged
    face: ``"lowest"`` always takes the lowest corner, ``"syndrome"`` takes
    the corner leaving the fewest rank-3 defects (lowest corner on ties).
    """
    colex, r2, r3, corners, triangles = _tscc_parts(code)
    if cleanup not in ("lowest", "syndrome"):
        raise ValueError(f"unknown cleanup rule {cleanup!r}")
    rank3_bits = 0
    for i, lab in enumerate(code.stabilizer_labels):
        if lab[0] == "rank3":
            rank3_bits |= 1 << i
    t = _Tracker(code, syndrome)
    flips = []
    for f in range(colex.n_faces):
        if t.bit(r2[f]):
            q = min(corners[f])
            if cleanup == "syndrome":
                q = min(corners[f], key=lambda c: (((t.mask ^ _single_mask(code, c, "X")) & rank3_bits).bit_count(), c))
            t.apply_single(q, "X")
            flips.append(q)
    t.trace.append({"stage": "x_cleanup", "flips": flips, "syndrome": _bits(t.mask)})
    faces = {f for f in range(colex.n_faces) if t.bit(r3[f])}
    verts, record = decode_color_code_single_type(colex, faces)
    t.trace.append(record)
    for v in sorted(verts):
        for q in triangles[v]:
            t.apply_single(q, "Z")
    return t.finish()


# ---------------------------------------------------------------------------
# generalized five-squares codes


def _five_squares_parts(code: SubsystemCode):
    cache = _cache(code)
    if "five" not in cache:
        if code.family != "five_squares":
            raise DecoderError("expected a five-squares code with S1..S5 checks")
        dh = code.construction
        ex = dh.extras
        if "face_classes" not in ex:
            raise DecoderError("construction lacks the face bipartition")
        n = code.n_qubits
        zonly = []
        used = set()
        for kind in ("S4", "S5"):
            for lab in code.labels_of_kind(kind):
                sup = code.checks[lab].op.support()
                q = min(set(sup) - used)
                used.add(q)
                zonly.append((lab, q))
        inner = ex["inner"]
        s2 = [(lab, inner[lab[1]][0]) for lab in code.labels_of_kind("S2")]
        ff = list(ex["ff_faces"])
        classes = ex["face_classes"]
        phi = dict(zip(ff, ex["gamma_face_of"]))
        s1 = {phi[lab[1]]: lab for lab in code.labels_of_kind("S1")}
        s3 = {phi[lab[1]]: lab for lab in code.labels_of_kind("S3")}
        copies = []
        for side in (0, 1):
            labels = [s1[g] if classes[g] == side else s3[g] for g in sorted(s1)]
            ops = []
            for (f, i), q in sorted(ex["highlight"].items()):
                if classes[f] == side:
                    ops.append((q, PauliOperator.single(n, q, "Z")))
            copies.append((labels, _graph_from_ops(code, labels, ops)))
        cache["five"] = (zonly, s2, copies)
    return cache["five"]


def decode_five_squares(code: SubsystemCode, syndrome) -> DecodeOutcome:
    """Local X cleanup, rank-3 Z cleanup per cell, then two surface-code matchings."""
    zonly, s2, copies = _five_squares_parts(code)
    t = _Tracker(code, syndrome)
    flips = []
    for lab, q in zonly:
        if t.bit(lab):
            t.apply_single(q, "X")
            flips.append(q)
    t.trace.append({"stage": "x_cleanup", "flips": flips})
    zs = []
    for lab, w in s2:
        if t.bit(lab):
            t.apply_single(w, "Z")
            zs.append(w)
    t.trace.append({"stage": "rank3_cleanup", "flips": zs})
    for c, (labels, graph) in enumerate(copies):
        for q in sorted(_match(t, graph, labels, f"surface_copy_{c + 1}")):
            t.apply_single(q, "Z")
    return t.finish()


# ---------------------------------------------------------------------------
# subsystem surface codes


def _subsystem_surface_parts(code: SubsystemCode):
    cache = _cache(code)
    if "ssc" not in cache:
        if code.family != "subsystem_surface":
            raise DecoderError("expected a subsystem surface code")
        n = code.n_qubits
        zl = sorted(code.labels_of_kind("Z-type"), key=lambda lab: lab[1])
        xl = sorted(code.labels_of_kind("X-type"), key=lambda lab: lab[1])
        gx = _graph_from_ops(code, zl, ((q, PauliOperator.single(n, q, "X")) for q in range(n)))
        gz = _graph_from_ops(code, xl, ((q, PauliOperator.single(n, q, "Z")) for q in range(n)))
        cache["ssc"] = (zl, gx, xl, gz)
    return cache["ssc"]


def decode_subsystem_surface(code: SubsystemCode, syndrome) -> DecodeOutcome:
    """Independent matchings for bit flips (Z-type checks) and phase flips (X-type checks)."""
    zl, gx, xl, gz = _subsystem_surface_parts(code)
    t = _Tracker(code, syndrome)
    xs = _match(t, gx, zl, "bit_flips")
    zs = _match(t, gz, xl, "phase_flips")
    for q in sorted(xs):
        t.apply_single(q, "X")
    for q in sorted(zs):
        t.apply_single(q, "Z")
    return t.finish()


# ---------------------------------------------------------------------------
# plain surface code


def surface_code_graph(surface: SurfaceComplex, checks: str = "vertex") -> DecodingGraph:
    """Vertex checks joined along edges, or face checks joined across edges."""
    if checks == "vertex":
        return DecodingGraph(surface.n_vertices, [(u, v, e) for e, (u, v) in enumerate(surface.edges)])
    if checks == "face":
        return DecodingGraph(surface.n_faces, [(*surface.edge_faces(e), e) for e in range(surface.n_edges)])
    raise ValueError(f"checks must be 'vertex' or 'face', not {checks!r}")


def decode_surface_code(surface: SurfaceComplex, defects: Iterable[int], checks: str = "vertex") -> set[int]:
    """Edges whose flips reproduce the defect set, by minimum-weight matching."""
    graph = surface_code_graph(surface, checks)
    carriers, _ = decode_defects(graph, sorted(set(defects)))
    return carriers


def surface_code_logical_masks(surface: SurfaceComplex, checks: str = "vertex") -> list[int]:
    """Edge masks detecting nontrivial cycles of the complementary type."""
    from .complex import cohomology_basis, homology_cycle_basis

    if checks == "vertex":
        return list(cohomology_basis(surface))
    return [c.mask for c in homology_cycle_basis(surface)]


DECODERS = {
    "projection": decode_cubic_projection,
    "colored_matching": decode_cubic_colored_matching,
    "tscc": decode_tscc,
    "five_squares": decode_five_squares,
    "subsystem_surface": decode_subsystem_surface,
}

DEFAULT_DECODER = {
    "cubic": "colored_matching",
    "tscc": "tscc",
    "five_squares": "five_squares",
    "subsystem_surface": "subsystem_surface",
}
