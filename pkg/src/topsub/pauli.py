"""Phase-free Pauli operators and GF(2) symplectic linear algebra.

Operators are stored as a pair of packed bit-vectors (Python ints), bit ``i``
of ``x``/``z`` being the X/Z component on qubit ``i`` (0-based).  Display
strings are 1-based, e.g. ``"Z4 X8"``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class DimensionError(ValueError):
    """Operands act on different numbers of qubits."""


class BudgetExceeded(RuntimeError):
    """An exhaustive search ran past its combinatorial budget."""


_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}


@dataclass(frozen=True)
class PauliOperator:
    n_qubits: int
    x: int = 0
    z: int = 0

    def __post_init__(self):
        if self.n_qubits < 0:
            raise DimensionError("negative qubit count")
        if (self.x | self.z) >> self.n_qubits:
            raise DimensionError("bit-vector longer than n_qubits")

    # construction -----------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(n, 0, 0)

    @classmethod
    def single(cls, n: int, qubit: int, kind: str) -> "PauliOperator":
        if not 0 <= qubit < n:
            raise DimensionError(f"qubit {qubit} out of range for n={n}")
        bit = 1 << qubit
        kind = kind.upper()
        return cls(n, bit if kind in "XY" else 0, bit if kind in "ZY" else 0)

    @classmethod
    def from_support(cls, n: int, qubits: Iterable[int], kind: str) -> "PauliOperator":
        mask = 0
        for q in qubits:
            if not 0 <= q < n:
                raise DimensionError(f"qubit {q} out of range for n={n}")
            mask ^= 1 << q
        kind = kind.upper()
        return cls(n, mask if kind in "XY" else 0, mask if kind in "ZY" else 0)

    @classmethod
    def from_string(cls, text: str, n: int) -> "PauliOperator":
        """Parse ``"X1 Z4 Y8"`` (1-based).  ``"I"`` or ``""`` is the identity.

        Repeated qubits multiply, so ``"X1 Z1"`` is ``Y1``.
        """
        x = z = 0
        for tok in text.replace(",", " ").split():
            kind, idx = tok[0].upper(), tok[1:]
            if kind == "I" and not idx:
                continue
            if kind not in "XYZ" or not idx.isdigit():
                raise ValueError(f"bad Pauli token {tok!r}")
            q = int(idx) - 1
            if not 0 <= q < n:
                raise DimensionError(f"qubit {q + 1} out of range for n={n}")
            if kind in "XY":
                x ^= 1 << q
            if kind in "ZY":
                z ^= 1 << q
        return cls(n, x, z)

    @classmethod
    def from_vector(cls, n: int, vec: int) -> "PauliOperator":
        """Inverse of :meth:`vector` (x in the low ``n`` bits, z above)."""
        mask = (1 << n) - 1
        return cls(n, vec & mask, vec >> n)

    # views --------------------------------------------------------------
    @property
    def vector(self) -> int:
        return self.x | (self.z << self.n_qubits)

    @property
    def support_mask(self) -> int:
        return self.x | self.z

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def support(self) -> list[int]:
        return _bits(self.x | self.z)

    def letter(self, qubit: int) -> str:
        return _LETTER[((self.x >> qubit) & 1, (self.z >> qubit) & 1)]

    def is_identity(self) -> bool:
        return not (self.x or self.z)

    def restrict(self, kind: str) -> "PauliOperator":
        """The X part (``kind='X'``) or Z part (``kind='Z'``) of the operator."""
        if kind.upper() == "X":
            return PauliOperator(self.n_qubits, self.x, 0)
        return PauliOperator(self.n_qubits, 0, self.z)

    def __str__(self) -> str:
        if self.is_identity():
            return "I"
        return " ".join(f"{self.letter(q)}{q + 1}" for q in self.support())

    def __repr__(self) -> str:
        return f"PauliOperator({self.n_qubits}, {str(self)!r})"

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return multiply(self, other)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _check(a: PauliOperator, b: PauliOperator) -> None:
    if a.n_qubits != b.n_qubits:
        raise DimensionError(f"{a.n_qubits} vs {b.n_qubits} qubits")


def symplectic_product(a: PauliOperator, b: PauliOperator) -> int:
    _check(a, b)
    return (((a.x & b.z) ^ (a.z & b.x)).bit_count()) & 1


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    return symplectic_product(a, b) == 0


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    _check(a, b)
    return PauliOperator(a.n_qubits, a.x ^ b.x, a.z ^ b.z)


def product(paulis: Iterable[PauliOperator], n: int) -> PauliOperator:
    x = z = 0
    for p in paulis:
        if p.n_qubits != n:
            raise DimensionError(f"{p.n_qubits} vs {n} qubits")
        x ^= p.x
        z ^= p.z
    return PauliOperator(n, x, z)


# ---------------------------------------------------------------------------
# GF(2) elimination on packed rows


class Eliminator:
    """Incremental row-echelon form over GF(2) with lowest-bit pivots.

    ``add`` returns True when the row was independent of those seen so far.
    Each stored row remembers which inserted rows it combines (``combo``), so
    membership queries can also return a certificate.
    """

    def __init__(self):
        self.pivots: dict[int, tuple[int, int]] = {}
        self.count = 0

    def reduce(self, vec: int) -> tuple[int, int]:
        """Return ``(remainder, combo)``; the remainder is 0 iff vec is in the span."""
        combo = rest = 0
        pivots = self.pivots
        while vec:
            low = vec & -vec
            hit = pivots.get(low)
            if hit is None:
                rest |= low
                vec ^= low
            else:
                vec ^= hit[0]
                combo ^= hit[1]
        return rest, combo

    def add(self, vec: int) -> bool:
        tag = 1 << self.count
        self.count += 1
        rest, combo = self.reduce(vec)
        if not rest:
            return False
        low = rest & -rest
        self.pivots[low] = (rest, combo ^ tag)
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec)[0] == 0

    @property
    def rank(self) -> int:
        return len(self.pivots)


def gf2_rank(rows: Iterable[int]) -> int:
    elim = Eliminator()
    for r in rows:
        elim.add(r)
    return elim.rank


def gf2_nullspace(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of ``{v : popcount(v & r) even for every r}`` on ``ncols`` bits."""
    work = [r for r in rows if r]
    reduced: list[int] = []
    pivcols: list[int] = []
    for r in work:
        for p, pr in zip(pivcols, reduced):
            if (r >> p) & 1:
                r ^= pr
        if not r:
            continue
        p = (r & -r).bit_length() - 1
        for i, pr in enumerate(reduced):
            if (pr >> p) & 1:
                reduced[i] = pr ^ r
        reduced.append(r)
        pivcols.append(p)
    pivset = set(pivcols)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = 1 << f
        for p, pr in zip(pivcols, reduced):
            if (pr >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# bases


@dataclass(frozen=True)
class SymplecticBasis:
    n_qubits: int
    rows: tuple[PauliOperator, ...]

    def __post_init__(self):
        for r in self.rows:
            if r.n_qubits != self.n_qubits:
                raise DimensionError("row length mismatch")
        if gf2_rank(r.vector for r in self.rows) != len(self.rows):
            raise ValueError("rows are not independent")

    @classmethod
    def from_paulis(cls, paulis: Iterable[PauliOperator], n: int) -> "SymplecticBasis":
        """Keep the independent rows of ``paulis`` in input order."""
        elim = Eliminator()
        kept = []
        for p in paulis:
            if p.n_qubits != n:
                raise DimensionError(f"{p.n_qubits} vs {n} qubits")
            if elim.add(p.vector):
                kept.append(p)
        return cls(n, tuple(kept))

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[PauliOperator]:
        return iter(self.rows)

    def eliminator(self) -> Eliminator:
        elim = Eliminator()
        for r in self.rows:
            elim.add(r.vector)
        return elim


def rank_and_membership(basis: SymplecticBasis, p: PauliOperator) -> tuple[bool, int]:
    if p.n_qubits != basis.n_qubits:
        raise DimensionError(f"{p.n_qubits} vs {basis.n_qubits} qubits")
    return basis.eliminator().contains(p.vector), basis.rank


def _swap_vector(p: PauliOperator) -> int:
    # <a, b> = popcount(a.vector & swap(b)) mod 2
    return p.z | (p.x << p.n_qubits)


def centralizer_basis(gens: SymplecticBasis | Sequence[PauliOperator], n: int | None = None) -> SymplecticBasis:
    rows = list(gens)
    if n is None:
        if not isinstance(gens, SymplecticBasis):
            raise ValueError("n required for a plain sequence")
        n = gens.n_qubits
    kernel = gf2_nullspace([_swap_vector(g) for g in rows], 2 * n)
    return SymplecticBasis(n, tuple(PauliOperator.from_vector(n, v) for v in kernel))


# ---------------------------------------------------------------------------
# exhaustive minimum-weight search


def connected_subsets(adjacency: dict[int, Sequence[int]], size: int) -> Iterator[tuple[int, ...]]:
    """Every connected vertex set of exactly ``size`` vertices, once each (ESU)."""
    for root in sorted(adjacency):

        def extend(sub: list[int], ext: set[int], closed: set[int]):
            if len(sub) == size:
                yield tuple(sorted(sub))
                return
            ext = set(ext)
            while ext:
                w = min(ext)
                ext.discard(w)
                new = {u for u in adjacency[w] if u > root and u not in closed}
                sub.append(w)
                yield from extend(sub, ext | new, closed | new)
                sub.pop()

        start = {u for u in adjacency[root] if u > root}
        yield from extend([root], start, start | {root})


def minimum_weight_in_coset(
    space: SymplecticBasis,
    exclude: SymplecticBasis,
    max_w: int,
    *,
    constraints: Sequence[PauliOperator] | None = None,
    adjacency: dict[int, Sequence[int]] | None = None,
    budget: int = 2_000_000,
) -> tuple[int, PauliOperator] | None:
    """Smallest-weight element of span(space) \\ span(exclude), searching weights <= max_w.

    ``constraints`` may supply operators whose centralizer is span(space);
    passing sparse ones (e.g. stabilizer generators for C(S)) is much faster
    than the default dense dual basis.  With ``adjacency`` only connected
    supports are enumerated, which is exact whenever the minimum of the coset
    is attained on a connected support (true for centralizers of operators
    that are local in that adjacency).  Returns ``(weight, operator)`` or None.
    """
    n = space.n_qubits
    if not 0 <= max_w <= n:
        raise ValueError("max_w out of range")
    if constraints is None:
        constraints = list(centralizer_basis(space))
    excl = exclude.eliminator()
    by_qubit: dict[int, list[int]] = {q: [] for q in range(n)}
    rows = [c for c in constraints]
    for i, c in enumerate(rows):
        for q in c.support():
            by_qubit[q].append(i)

    checked = 0
    for w in range(1, max_w + 1):
        supports: Iterable[tuple[int, ...]]
        if adjacency is None:
            supports = itertools.combinations(range(n), w)
        else:
            supports = connected_subsets(adjacency, w)
        for support in supports:
            checked += 1
            if checked > budget:
                raise BudgetExceeded(f"more than {budget} supports at weight {w}")
            hit = _full_support_solution(support, rows, by_qubit, excl, n)
            if hit is not None:
                return w, hit
    return None


def _full_support_solution(support, rows, by_qubit, excl: Eliminator, n: int):
    w = len(support)
    # local coordinates: bit i -> x on support[i], bit w+i -> z on support[i]
    touched = sorted({i for q in support for i in by_qubit[q]})
    local_rows = []
    for i in touched:
        r = rows[i]
        v = 0
        for j, q in enumerate(support):
            # constraint swap: x-part pairs with row z, z-part with row x
            if (r.z >> q) & 1:
                v |= 1 << j
            if (r.x >> q) & 1:
                v |= 1 << (w + j)
        local_rows.append(v)
    kernel = gf2_nullspace(local_rows, 2 * w)
    if not kernel:
        return None
    full = (1 << w) - 1
    v = 0
    # Gray-code walk over the kernel span
    for i in range(1, 1 << len(kernel)):
        v ^= kernel[(i & -i).bit_length() - 1]
        if ((v | (v >> w)) & full) == full:
            x = z = 0
            for j, q in enumerate(support):
                if (v >> j) & 1:
                    x |= 1 << q
                if (v >> (w + j)) & 1:
                    z |= 1 << q
            p = PauliOperator(n, x, z)
            if not excl.contains(p.vector):
                return p
    return None
