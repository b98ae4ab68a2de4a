"""Subsystem codes: gauge group, stabilizer, logicals, syndromes and parameters."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Sequence

from .complex import SurfaceComplex, homology_cycle_basis
from .constructions import DecoratedHypergraph
from .pauli import (
    BudgetExceeded,
    Eliminator,
    PauliOperator,
    SymplecticBasis,
    centralizer_basis,
    commutes,
    gf2_nullspace,
    minimum_weight_in_coset,
    product,
    symplectic_product,
)

PAULI_OF_COLOR = {"r": "X", "g": "Y", "b": "Z"}


class ConstructionBug(RuntimeError):
    """A supposed stabilizer fails to commute with the gauge group."""


class SyndromeMismatch(ValueError):
    """Estimate and actual error have different syndromes."""


@dataclass(frozen=True)
class Check:
    """A labeled stabilizer element and its expansion in the generators."""

    label: tuple
    op: PauliOperator
    combo: int


@dataclass(frozen=True)
class SyndromeVector:
    mask: int
    length: int

    def __post_init__(self):
        if self.mask >> self.length:
            raise ValueError("syndrome bits beyond the generator count")

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> i) & 1 for i in range(self.length))

    def __getitem__(self, i: int) -> int:
        return (self.mask >> i) & 1

    def __len__(self) -> int:
        return self.length

    def __xor__(self, other: "SyndromeVector") -> "SyndromeVector":
        if other.length != self.length:
            raise ValueError("syndrome lengths differ")
        return SyndromeVector(self.mask ^ other.mask, self.length)

    def weight(self) -> int:
        return self.mask.bit_count()


@dataclass(frozen=True, eq=False)
class SubsystemCode:
    family: str
    n_qubits: int
    gauge_ops: tuple[PauliOperator, ...]
    gauge_labels: tuple[tuple, ...]
    gauge_gens: SymplecticBasis
    stabilizer_gens: tuple[PauliOperator, ...]
    stabilizer_labels: tuple[tuple, ...]
    bare_logicals: tuple[tuple[PauliOperator, PauliOperator], ...]
    checks: dict[tuple, Check]
    construction: Any = None
    qubit_map: tuple | None = None
    cell_map: tuple | None = None
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def n_stabilizers(self) -> int:
        return len(self.stabilizer_gens)

    @property
    def k(self) -> int:
        return len(self.bare_logicals)

    @property
    def r(self) -> int:
        return (self.gauge_gens.rank - self.n_stabilizers) // 2

    @cached_property
    def harmless(self) -> Eliminator:
        """Span of gauge generators (which contains the stabilizer)."""
        return self.gauge_gens.eliminator()

    @cached_property
    def _stab_rows(self) -> tuple[tuple[int, int], ...]:
        return tuple((g.x, g.z) for g in self.stabilizer_gens)

    def syndrome_mask(self, e: PauliOperator) -> int:
        if e.n_qubits != self.n_qubits:
            raise ValueError("error acts on the wrong number of qubits")
        ex, ez = e.x, e.z
        out = 0
        for i, (x, z) in enumerate(self._stab_rows):
            if ((x & ez) ^ (z & ex)).bit_count() & 1:
                out |= 1 << i
        return out

    def check_bit(self, label: tuple, syndrome: int | SyndromeVector) -> int:
        mask = syndrome.mask if isinstance(syndrome, SyndromeVector) else syndrome
        return (self.checks[label].combo & mask).bit_count() & 1

    def labels_of_kind(self, kind: str) -> list[tuple]:
        return [lab for lab in self.checks if lab[0] == kind]

    @cached_property
    def _solvers(self) -> dict[str, "_PreimageSolver"]:
        return {}

    def pure_error(self, mask: int, kind: str = "Z") -> PauliOperator:
        """An operator of type ``kind`` (X, Z or any) with the given syndrome."""
        solver = self._solvers.get(kind)
        if solver is None:
            solver = self._solvers[kind] = _PreimageSolver(self.stabilizer_gens, kind, self.n_qubits)
        return solver.solve(mask)

    def to_listing(self) -> str:
        """Stabilizer and gauge generators as labeled 1-based Pauli strings."""
        lines = [f"# n={self.n_qubits} k={self.k} r={self.r} s={self.n_stabilizers} family={self.family}"]
        for lab, g in zip(self.stabilizer_labels, self.stabilizer_gens):
            lines.append(f"stabilizer {_fmt_label(lab)}: {g}")
        for i, g in enumerate(self.gauge_gens):
            lines.append(f"gauge {i}: {g}")
        for i, (x, z) in enumerate(self.bare_logicals):
            lines.append(f"logical X{i}: {x}")
            lines.append(f"logical Z{i}: {z}")
        return "\n".join(lines) + "\n"


def _fmt_label(label: tuple) -> str:
    return "/".join(str(p) for p in label)


class _PreimageSolver:
    """Solve <g_i, P> = t_i for P of one Pauli type by a reusable reduction."""

    def __init__(self, gens: Sequence[PauliOperator], kind: str, n: int):
        self.kind, self.n = kind, n
        if kind == "Z":
            rows = [g.x for g in gens]
        elif kind == "X":
            rows = [g.z for g in gens]
        else:
            rows = [g.z | (g.x << n) for g in gens]
        pivots: dict[int, list[int]] = {}
        self.dependencies: list[int] = []
        for i, r in enumerate(rows):
            combo = 1 << i
            for p, (pr, pc) in pivots.items():
                if (r >> p) & 1:
                    r ^= pr
                    combo ^= pc
            if not r:
                self.dependencies.append(combo)
                continue
            p = (r & -r).bit_length() - 1
            for q, entry in pivots.items():
                if (entry[0] >> p) & 1:
                    entry[0] ^= r
                    entry[1] ^= combo
            pivots[p] = [r, combo]
        self.pivots = {p: combo for p, (_, combo) in pivots.items()}

    def solve(self, mask: int) -> PauliOperator:
        for dep in self.dependencies:
            if (dep & mask).bit_count() & 1:
                raise ValueError(f"no {self.kind}-type operator has this syndrome")
        sol = 0
        for p, combo in self.pivots.items():
            if (combo & mask).bit_count() & 1:
                sol |= 1 << p
        n = self.n
        if self.kind == "Z":
            return PauliOperator(n, 0, sol)
        if self.kind == "X":
            return PauliOperator(n, sol, 0)
        return PauliOperator(n, sol & ((1 << n) - 1), sol >> n)


# ---------------------------------------------------------------------------
# assembling a code


def _pair(n: int, qubits: Sequence[int], kind: str) -> PauliOperator:
    return PauliOperator.from_support(n, qubits, kind)


def _center_basis(gauge: SymplecticBasis) -> list[int]:
    """Vectors of span(gauge) commuting with all of it."""
    rows = list(gauge)
    m = len(rows)
    gram = []
    for a in rows:
        v = 0
        for j, b in enumerate(rows):
            if symplectic_product(a, b):
                v |= 1 << j
        gram.append(v)
    out = []
    for combo in gf2_nullspace(gram, m):
        vec = 0
        for j in range(m):
            if (combo >> j) & 1:
                vec ^= rows[j].vector
        out.append(vec)
    return out


def _bare_logicals(gauge: SymplecticBasis, stabs: list[PauliOperator], n: int):
    """Symplectic Gram-Schmidt on C(G) modulo S."""
    base = Eliminator()
    for s in stabs:
        base.add(s.vector)
    pool = []
    for p in centralizer_basis(gauge):
        if base.add(p.vector):
            pool.append(p)
    pairs = []
    while pool:
        a = pool.pop(0)
        partner = next((i for i, b in enumerate(pool) if symplectic_product(a, b)), None)
        if partner is None:
            raise ConstructionBug("centralizer element commutes with all others but is not a stabilizer")
        b = pool.pop(partner)
        rest = []
        for c in pool:
            if symplectic_product(c, b):
                c = c * a
            if symplectic_product(c, a):
                c = c * b
            rest.append(c)
        pool = rest
        pairs.append((a, b))
    return tuple(pairs)


def assemble_code(
    family: str,
    n: int,
    gauge: list[tuple[tuple, PauliOperator]],
    local_checks: list[tuple[tuple, PauliOperator]],
    nontrivial: list[tuple[tuple, PauliOperator]] | None = None,
    **kw: Any,
) -> SubsystemCode:
    """Build a code from labeled gauge operators and labeled stabilizer candidates.

    Candidates are verified to lie in the center of the gauge group.  The
    generator list keeps independent candidates in order (local first); any
    missing rank is filled from the center with ``("center", i)`` labels.
    """
    gauge_ops = tuple(op for _, op in gauge)
    gauge_basis = SymplecticBasis.from_paulis(gauge_ops, n)
    center = _center_basis(gauge_basis)
    center_elim = Eliminator()
    for v in center:
        center_elim.add(v)
    candidates = list(local_checks) + list(nontrivial or [])
    for label, op in candidates:
        if not center_elim.contains(op.vector):
            bad = next((g for g in gauge_ops if not commutes(g, op)), None)
            why = "anticommutes with a gauge operator" if bad is not None else "is outside the gauge group"
            raise ConstructionBug(f"check {label} {why}")
    gens: list[PauliOperator] = []
    labels: list[tuple] = []
    chosen = Eliminator()
    for label, op in candidates:
        if chosen.add(op.vector):
            gens.append(op)
            labels.append(label)
    extra = 0
    for v in center:
        if chosen.rank == len(center):
            break
        if chosen.add(v):
            gens.append(PauliOperator.from_vector(n, v))
            labels.append(("center", extra))
            extra += 1
    # expansion of every candidate in the chosen generators
    expand = _Expander(gens)
    checks = {}
    for label, op in candidates + [(lab, g) for lab, g in zip(labels, gens)]:
        checks.setdefault(label, Check(label, op, expand(op.vector)))
    logicals = _bare_logicals(gauge_basis, gens, n)
    return SubsystemCode(
        family=family,
        n_qubits=n,
        gauge_ops=gauge_ops,
        gauge_labels=tuple(lab for lab, _ in gauge),
        gauge_gens=gauge_basis,
        stabilizer_gens=tuple(gens),
        stabilizer_labels=tuple(labels),
        bare_logicals=logicals,
        checks=checks,
        **kw,
    )


class _Expander:
    """Express span members as generator combinations (bit i = generator i)."""

    def __init__(self, gens: Sequence[PauliOperator]):
        self.pivots: dict[int, tuple[int, int]] = {}
        for i, g in enumerate(gens):
            vec, combo = g.vector, 1 << i
            while vec:
                low = vec & -vec
                hit = self.pivots.get(low)
                if hit is None:
                    self.pivots[low] = (vec, combo)
                    break
                vec ^= hit[0]
                combo ^= hit[1]
            else:
                raise ValueError("generators are dependent")

    def __call__(self, vec: int) -> int:
        combo = 0
        while vec:
            low = vec & -vec
            hit = self.pivots.get(low)
            if hit is None:
                raise ValueError("vector is outside the generator span")
            vec ^= hit[0]
            combo ^= hit[1]
        return combo


# ---------------------------------------------------------------------------
# family rules


def link_operator(n: int, qubits: Sequence[int], color: str) -> PauliOperator:
    return PauliOperator.from_support(n, qubits, PAULI_OF_COLOR[color])


def hypergraph_gauge(h) -> list[tuple[tuple, PauliOperator]]:
    """Two-body link operators: colored pairs on rank-2 edges, ZZ pairs inside rank-3 edges."""
    n = h.n_vertices
    out = []
    m2 = len(h.rank2_edges)
    for e, (u, v) in enumerate(h.rank2_edges):
        out.append((("rank2", e), link_operator(n, (u, v), h.edge_coloring[e])))
    for t, (u, v, w) in enumerate(h.rank3_edges):
        for a, b in ((u, v), (v, w), (u, w)):
            out.append((("rank3", m2 + t, a, b), PauliOperator.from_support(n, (a, b), "Z")))
    return out


def loop_operator(h, edges: Iterable[int]) -> PauliOperator:
    """Product of edge operators: colored pairs for rank-2, ZZZ for rank-3."""
    n = h.n_vertices
    ops = []
    for e in edges:
        verts = h.edges[e]
        if len(verts) == 2:
            ops.append(link_operator(n, verts, h.edge_coloring[e]))
        else:
            ops.append(PauliOperator.from_support(n, verts, "Z"))
    return product(ops, n)


def cubic_code(colex: SurfaceComplex, nontrivial: list[tuple[tuple, PauliOperator]] | None = None) -> SubsystemCode:
    """Cubic subsystem color code: qubits on vertices, XX/YY/ZZ on r/g/b edges."""
    if not colex.is_two_colex():
        raise ValueError("cubic codes need a 2-colex")
    n = colex.n_vertices
    ec = colex.induced_edge_coloring()
    gauge = [(("link", e, ec[e]), link_operator(n, uv, ec[e])) for e, uv in enumerate(colex.edges)]
    local = []
    for f, fv in enumerate(colex.face_vertices):
        col = colex.face_coloring[f]
        local.append((("face", f, col), PauliOperator.from_support(n, set(fv), PAULI_OF_COLOR[col])))
    if nontrivial is None:
        nontrivial = []
        for i, cyc in enumerate(homology_cycle_basis(colex)):
            ops = [gauge[e][1] for e in sorted(cyc.edges)]
            nontrivial.append((("homology", i), product(ops, n)))
    return assemble_code("cubic", n, gauge, local, nontrivial, construction=colex)


# stabilizers of the 12-qubit worked example, in its printed order; the fifth
# acts as Y on qubit 12 (the printed X there does not commute with the gauge group)
HONEYCOMB12_STABILIZERS = (
    "Z1 Z5 Z8 Z10 Z7 Z4",
    "Z2 Z6 Z3 Z12 Z9 Z11",
    "X2 X6 X9 X11 X8 X5",
    "X1 X4 X3 X12 X7 X10",
    "Y3 Y4 Y7 Y12 Y9 Y6",
    "Y2 X5 X8 Y11",
    "X7 Z10 Y8 X11 Z9 Y12",
)


def honeycomb12_code() -> SubsystemCode:
    """The worked-example code with its generators in printed order (S1..S7)."""
    from .families import honeycomb12

    colex = honeycomb12()
    ops = [PauliOperator.from_string(s, 12) for s in HONEYCOMB12_STABILIZERS]
    code = cubic_code(colex, nontrivial=[(("homology", i), ops[5 + i]) for i in range(2)])
    expand = _Expander(code.stabilizer_gens)
    if [expand(op.vector) for op in ops] != [1 << i for i in range(7)]:
        raise ConstructionBug("fixture generators do not match the printed list")
    return code


def tscc_code(dh: DecoratedHypergraph) -> SubsystemCode:
    """Vertex-expanded 2-colex: a rank-2 and a rank-3 stabilizer per colex face."""
    h, colex = dh.hypergraph, dh.source
    n = h.n_vertices
    local = []
    offsets = dh.extras["face_corners"]
    for f, corners in enumerate(offsets):
        darts = list(corners)  # rank-2 edge id == corner id of its tail
        local.append((("rank2", f), loop_operator(h, darts)))
    m2 = len(h.rank2_edges)
    for f, fe in enumerate(colex.face_edges):
        k = len(fe)
        edges = [m2 + v for v in set(colex.face_vertices[f])]
        edges += [offsets[f][i] for i in range(0, k, 2)]
        for i in range(k):
            g, j = colex.other_occurrence(f, i)
            edges.append(offsets[g][j])
        local.append((("rank3", f), loop_operator(h, edges)))
    return assemble_code("tscc", n, hypergraph_gauge(h), local, None, construction=dh)


def five_squares_code(dh: DecoratedHypergraph) -> SubsystemCode:
    """Generalized five-squares code with S1..S5 labeled checks."""
    h = dh.hypergraph
    n = h.n_vertices
    colex = dh.derived  # faces carry colex/triangle/quad/inner provenance
    src = _colex_of(dh)
    rank2_of = {}
    for e, o in enumerate(dh.edge_origin):
        rank2_of[o] = e
    gauge = hypergraph_gauge(h)
    if dh.kind == "five_squares_bad":
        return assemble_code("five_squares_bad", n, gauge, [], None, construction=dh)
    ex = dh.extras
    local = []
    # S1: rank-2 boundary of each F_f face
    for f in ex["ff_faces"]:
        edges = [rank2_of[("colex_edge", e)] for e in src.face_edges[f]]
        local.append((("S1", f), loop_operator(h, edges)))
    for f in ex["fv_faces"]:
        m = len(src.face_edges[f]) // 2
        hyper = [e for e, o in enumerate(dh.edge_origin) if o[0] == "hyper" and o[1] == f]
        promoted = {dh.edge_origin[e][3] for e in hyper}
        rest = [rank2_of[("colex_edge", e)] for e in src.face_edges[f] if e not in promoted]
        green = [rank2_of[("inner_edge", f, t)] for t in range(m) if h.edge_coloring[rank2_of[("inner_edge", f, t)]] == "g"]
        local.append((("S2", f), loop_operator(h, hyper + rest + green)))
    for f in ex["fv_faces"]:
        m = len(src.face_edges[f]) // 2
        local.append((("S4", f), loop_operator(h, [rank2_of[("inner_edge", f, t)] for t in range(m)])))
    for f in ex["e_faces"]:
        local.append((("S5", f), loop_operator(h, [rank2_of[("colex_edge", e)] for e in src.face_edges[f]])))
    partial = assemble_code("five_squares", n, gauge, local, None)
    s3 = _five_squares_s3(partial, dh)
    return assemble_code("five_squares", n, gauge, local + s3, None, construction=dh)


def _colex_of(dh: DecoratedHypergraph) -> SurfaceComplex:
    from .constructions import colex_from_graph
    from .complex import dual, medial

    cached = dh.extras.get("_colex")
    if cached is None:
        cached = colex_from_graph(dual(medial(dh.source)))
        dh.extras["_colex"] = cached
    return cached


def _five_squares_s3(code: SubsystemCode, dh: DecoratedHypergraph) -> list[tuple[tuple, PauliOperator]]:
    """S3 per F_f face: the stabilizer whose X-part on highlighted qubits is the
    set of highlights assigned to this face's edges from the neighbouring faces."""
    ex = dh.extras
    gamma = ex["gamma"]
    highlight = ex["highlight"]
    hl_qubits = sorted(set(highlight.values()))
    target: dict[int, set[int]] = {f: set() for f in range(gamma.n_faces)}
    for (f, i), q in highlight.items():
        e = gamma.face_edges[f][i]
        a, b = gamma.edge_faces(e)
        other = b if a == f else a
        target[other].add(q)
    # columns: center generators; rows: x-bits on highlighted qubits
    gens = list(code.stabilizer_gens)
    rows = []
    for q in hl_qubits:
        v = 0
        for j, g in enumerate(gens):
            if (g.x >> q) & 1:
                v |= 1 << j
        rows.append(v)
    out = []
    for f_idx, f in enumerate(ex["ff_faces"]):
        phi = ex["gamma_face_of"][f_idx]
        rhs = 0
        for r, q in enumerate(hl_qubits):
            if q in target[phi]:
                rhs |= 1 << r
        combo = _solve_columns(rows, rhs, len(gens))
        if combo is None:
            raise ConstructionBug(f"no stabilizer realizes the S3 pattern around face {f}")
        op = product([g for j, g in enumerate(gens) if (combo >> j) & 1], code.n_qubits)
        out.append((("S3", f), op))
    return out


def _solve_columns(rows: list[int], rhs: int, ncols: int) -> int | None:
    """Find a column combination c with parity(rows[r] & c) == rhs_r for every r."""
    aug = [r | (((rhs >> i) & 1) << ncols) for i, r in enumerate(rows)]
    piv: dict[int, int] = {}
    for r in aug:
        for p, pr in piv.items():
            if (r >> p) & 1:
                r ^= pr
        low = r & ((1 << ncols) - 1)
        if not low:
            if r:
                return None
            continue
        p = (low & -low).bit_length() - 1
        for q in list(piv):
            if (piv[q] >> p) & 1:
                piv[q] ^= r
        piv[p] = r
    sol = 0
    for p, r in piv.items():
        if (r >> ncols) & 1:
            sol |= 1 << p
    return sol


def subsystem_surface_code(dh: DecoratedHypergraph) -> SubsystemCode:
    """Weight-3 X/Z triangle gauges; s_f^X and s_f^Z per source face."""
    gamma = dh.source
    n = dh.n_qubits
    gauge = []
    by_corner = {}
    for qubits, kind, corner in dh.extras["triangles"]:
        op = PauliOperator.from_support(n, qubits, kind)
        gauge.append((("triangle", corner[0], corner[1], kind), op))
        by_corner[corner] = op
    local = []
    for kind in ("X", "Z"):
        for f, fe in enumerate(gamma.face_edges):
            ops = [by_corner[(f, i)] for i in range(len(fe)) if dh.extras["corner_type"][(f, i)] == kind]
            local.append(((f"{kind}-type", f), product(ops, n)))
    return assemble_code("subsystem_surface", n, gauge, local, None, construction=dh)


def generic_code(dh: DecoratedHypergraph) -> SubsystemCode:
    return assemble_code(dh.kind, dh.hypergraph.n_vertices, hypergraph_gauge(dh.hypergraph), [], None, construction=dh)


FAMILIES = ("cubic", "tscc", "five_squares", "five_squares_bad", "subsystem_surface", "hypergraph")


def extract_code(source: DecoratedHypergraph | SurfaceComplex, family: str) -> SubsystemCode:
    if family == "cubic":
        if not isinstance(source, SurfaceComplex):
            raise ValueError("cubic codes are built directly on a 2-colex")
        return cubic_code(source)
    if not isinstance(source, DecoratedHypergraph):
        raise ValueError(f"{family} codes need a construction output")
    expected = {
        "tscc": ("vertex_expansion",),
        "five_squares": ("five_squares",),
        "five_squares_bad": ("five_squares_bad",),
        "subsystem_surface": ("subsystem_surface",),
        "hypergraph": ("hypergraph_construction", "uniform_rank3", "vertex_expansion", "five_squares", "five_squares_bad"),
    }
    if family not in expected:
        raise ValueError(f"unknown family {family!r}")
    if source.kind not in expected[family]:
        raise ValueError(f"{family} codes cannot be built from a {source.kind} construction")
    builder = {
        "tscc": tscc_code,
        "five_squares": five_squares_code,
        "five_squares_bad": five_squares_code,
        "subsystem_surface": subsystem_surface_code,
        "hypergraph": generic_code,
    }[family]
    return builder(source)


# ---------------------------------------------------------------------------
# predicates and parameters


def measure_syndrome(code: SubsystemCode, e: PauliOperator) -> SyndromeVector:
    return SyndromeVector(code.syndrome_mask(e), code.n_stabilizers)


def is_equivalent_modulo_gauge(code: SubsystemCode, e1: PauliOperator, e2: PauliOperator) -> bool:
    return code.harmless.contains((e1 * e2).vector)


def logical_failure(code: SubsystemCode, actual: PauliOperator, estimate: PauliOperator) -> bool:
    if code.syndrome_mask(actual) != code.syndrome_mask(estimate):
        raise SyndromeMismatch("estimate does not reproduce the syndrome of the error")
    eff = actual * estimate
    return any(not commutes(eff, a) or not commutes(eff, b) for a, b in code.bare_logicals)


def qubit_adjacency(code: SubsystemCode) -> dict[int, list[int]]:
    """Qubits are adjacent when some gauge operator touches both."""
    adj: dict[int, set[int]] = {q: set() for q in range(code.n_qubits)}
    for g in code.gauge_ops:
        sup = g.support()
        for a in sup:
            adj[a].update(b for b in sup if b != a)
    return {q: sorted(v) for q, v in adj.items()}


def dressed_distance(code: SubsystemCode, max_w: int, *, connected: bool = False, budget: int = 2_000_000):
    """Minimum weight of C(S) outside the gauge group, or None above max_w.

    With no logical qubits this set is empty; the search then excludes only
    the stabilizer, giving the weight of the lightest gauge-qubit operator.
    """
    space = centralizer_basis(list(code.stabilizer_gens), code.n_qubits)
    exclude = code.gauge_gens
    if code.k == 0:
        exclude = SymplecticBasis.from_paulis(code.stabilizer_gens, code.n_qubits)
    return minimum_weight_in_coset(
        space,
        exclude,
        max_w,
        constraints=list(code.stabilizer_gens),
        adjacency=qubit_adjacency(code) if connected else None,
        budget=budget,
    )


def bare_logical_weight(code: SubsystemCode, max_w: int, *, connected: bool = True, budget: int = 2_000_000):
    """Minimum weight of C(G) outside the stabilizer, or None above max_w."""
    space = centralizer_basis(code.gauge_gens)
    stabs = SymplecticBasis.from_paulis(code.stabilizer_gens, code.n_qubits)
    return minimum_weight_in_coset(
        space,
        stabs,
        max_w,
        constraints=list(code.gauge_ops),
        adjacency=qubit_adjacency(code) if connected else None,
        budget=budget,
    )


@dataclass
class ParameterReport:
    n: int
    k: int
    r: int
    s: int
    d: int | None
    d_note: str
    rows: list[tuple[str, Any, Any, bool]]

    @property
    def passed(self) -> bool:
        return all(ok for *_, ok in self.rows)

    def render(self) -> str:
        d = self.d if self.d is not None else self.d_note
        lines = [f"[[n={self.n}, k={self.k}, r={self.r}, d={d}]]  s={self.s}"]
        for name, want, got, ok in self.rows:
            lines.append(f"  {name}: expected {want}, got {got} -> {'PASS' if ok else 'FAIL'}")
        return "\n".join(lines)


def verify_parameters(
    code: SubsystemCode,
    expected: dict[str, int] | None = None,
    *,
    distance_budget: int = 6,
    support_budget: int = 2_000_000,
    connected: bool = False,
) -> ParameterReport:
    """Compare n, k, r, s (and d when expected) with the values of ``expected``.

    The distance is searched exhaustively up to ``distance_budget``; above
    that it is reported as a lower bound.
    """
    expected = dict(expected or {})
    n, k, r, s = code.n_qubits, code.k, code.r, code.n_stabilizers
    if n - r - s != k or 2 * r + s != code.gauge_gens.rank:
        raise ConstructionBug("counting identities fail")
    d, note = None, "not computed"
    if "d" in expected or "d_min" in expected:
        try:
            hit = dressed_distance(code, min(distance_budget, n), connected=connected, budget=support_budget)
        except BudgetExceeded:
            hit, note = None, "search budget exhausted"
        if hit is not None:
            d = hit[0]
        elif note == "not computed":
            note = f"> {distance_budget}"
    got = {"n": n, "k": k, "r": r, "s": s, "d": d}
    rows = []
    for key in ("n", "k", "r", "s", "d"):
        if key in expected:
            rows.append((key, expected[key], got[key], got[key] == expected[key]))
    if "d_min" in expected:
        ok = d is None and note.startswith(">") and distance_budget + 1 >= expected["d_min"] or (d is not None and d >= expected["d_min"])
        rows.append(("d_min", expected["d_min"], d if d is not None else note, ok))
    return ParameterReport(n, k, r, s, d, note, rows)
