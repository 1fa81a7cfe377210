"""Graded bases, sparse vectors, degree-preserving maps, and exact row reduction.

Vectors are sparse dicts index -> CycScalar with no stored zeros; echelon rows
are dense lists.  RowSpace keeps a reduced row-echelon form with pivots
normalized to 1, which makes the echelon matrix independent of insertion order.
"""

from __future__ import annotations

from .colors import Color, GroupElement
from .errors import BasisMismatch, ColorMismatch, DimensionMismatch
from .scalars import CycScalar, cyc_inv

__all__ = [
    "GradedBasis",
    "GradedVector",
    "GradedMap",
    "RowSpace",
    "tensor_basis",
    "braid",
    "rref_insert",
    "solve_membership",
    "kernel_basis",
]


class GradedBasis:
    """An ordered list of (name, degree) entries over a fixed color."""

    __slots__ = ("color", "entries", "_index")

    def __init__(self, color: Color, entries) -> None:
        self.color = color
        ents = []
        for name, degree in entries:
            ents.append((str(name), color.group.element(degree)))
        self.entries = tuple(ents)
        names = [n for n, _ in self.entries]
        assert len(set(names)) == len(names), "basis names must be unique"
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self) -> int:
        return len(self.entries)

    def name(self, i: int) -> str:
        return self.entries[i][0]

    def degree(self, i: int) -> GroupElement:
        return self.entries[i][1]

    def index(self, name: str) -> int:
        return self._index[name]

    def vector(self, coords: dict) -> "GradedVector":
        return GradedVector(self, coords)

    def unit(self, i: int, scalar=None) -> "GradedVector":
        s = self.color.one() if scalar is None else scalar
        return GradedVector(self, {i: s})

    def zero(self) -> "GradedVector":
        return GradedVector(self, {})

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, GradedBasis)
            and self.color == other.color
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.color, self.entries))

    def __repr__(self):
        return f"GradedBasis({len(self.entries)} entries)"


class GradedVector:
    """Sparse vector over a GradedBasis; zero coordinates are never stored."""

    __slots__ = ("basis", "coords")

    def __init__(self, basis: GradedBasis, coords: dict) -> None:
        self.basis = basis
        self.coords = {i: c for i, c in coords.items() if c}

    def _same(self, other: "GradedVector") -> None:
        if self.basis != other.basis:
            raise BasisMismatch("vectors over different bases")

    def __add__(self, other: "GradedVector") -> "GradedVector":
        self._same(other)
        out = dict(self.coords)
        for i, c in other.coords.items():
            s = out.get(i)
            out[i] = c if s is None else s + c
        return GradedVector(self.basis, out)

    def __sub__(self, other: "GradedVector") -> "GradedVector":
        return self + (-other)

    def __neg__(self) -> "GradedVector":
        return GradedVector(self.basis, {i: -c for i, c in self.coords.items()})

    def scaled(self, s) -> "GradedVector":
        if not s:
            return GradedVector(self.basis, {})
        return GradedVector(self.basis, {i: c * s for i, c in self.coords.items()})

    __mul__ = scaled
    __rmul__ = scaled

    def __eq__(self, other):
        if not isinstance(other, GradedVector):
            return NotImplemented
        return self.basis == other.basis and self.coords == other.coords

    def __bool__(self):
        return bool(self.coords)

    def __hash__(self):
        return hash((self.basis, tuple(sorted(self.coords.items()))))

    def degree(self) -> GroupElement | None:
        """The common degree of the support, or None for 0 or mixed-degree vectors."""
        degs = {self.basis.degree(i) for i in self.coords}
        return degs.pop() if len(degs) == 1 else None

    def dense(self) -> list:
        zero = CycScalar.zero(self.basis.color.N)
        return [self.coords.get(i, zero) for i in range(len(self.basis))]

    def items_sorted(self):
        return sorted(self.coords.items())

    def __repr__(self):
        terms = ", ".join(f"{self.basis.name(i)}: {c}" for i, c in self.items_sorted())
        return f"GradedVector({{{terms}}})"


class GradedMap:
    """Linear map given by per-source-basis-vector images; degree preservation
    is validated at construction and violation is a hard error."""

    __slots__ = ("source", "target", "columns")

    def __init__(self, source: GradedBasis, target: GradedBasis, columns) -> None:
        if source.color != target.color:
            raise ColorMismatch("source and target over different colors")
        cols = tuple(columns)
        if len(cols) != len(source):
            raise DimensionMismatch(f"{len(cols)} columns for {len(source)} source vectors")
        for i, col in enumerate(cols):
            if col.basis != target:
                raise BasisMismatch(f"column {i} lies in the wrong basis")
            want = source.degree(i)
            for j in col.coords:
                if target.degree(j) != want:
                    raise ValueError(
                        f"degree violation: image of {source.name(i)} touches "
                        f"{target.name(j)} of different degree"
                    )
        self.source, self.target, self.columns = source, target, cols

    def apply(self, v: GradedVector) -> GradedVector:
        if v.basis != self.source:
            raise BasisMismatch("vector not over the source basis")
        out = self.target.zero()
        for i, c in v.coords.items():
            out = out + self.columns[i].scaled(c)
        return out

    def compose(self, inner: "GradedMap") -> "GradedMap":
        """self o inner."""
        if inner.target != self.source:
            raise BasisMismatch("composition mismatch")
        return GradedMap(inner.source, self.target, [self.apply(c) for c in inner.columns])


class RowSpace:
    """Reduced row-echelon accumulator over CycScalar, ambient dimension fixed.

    Rows are dense lists; pivots are normalized to 1 and eliminated from all
    other rows, so the stored matrix is the canonical RREF of the span —
    identical for any insertion order of the same row multiset.
    """

    __slots__ = ("dim", "N", "rows", "pivots")

    def __init__(self, dim: int, root_order: int) -> None:
        self.dim = dim
        self.N = root_order
        self.rows: list[list[CycScalar]] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _as_row(self, v) -> list:
        if isinstance(v, GradedVector):
            row = v.dense()
        else:
            row = list(v)
        if len(row) != self.dim:
            raise DimensionMismatch(f"row length {len(row)} != ambient {self.dim}")
        return row

    def reduce(self, v) -> list:
        """Residue of v modulo the current span (no insertion)."""
        row = self._as_row(v)
        for p, stored in zip(self.pivots, self.rows):
            c = row[p]
            if c:
                for k in range(p, self.dim):
                    if stored[k]:
                        row[k] = row[k] - c * stored[k]
        return row

    def insert(self, v) -> list:
        """Insert v; returns the residue (zero list iff v was already in the span)."""
        row = self.reduce(v)
        lead = next((k for k in range(self.dim) if row[k]), None)
        if lead is None:
            return row
        inv = cyc_inv(row[lead])
        norm = [c * inv for c in row]
        for stored in self.rows:
            c = stored[lead]
            if c:
                for k in range(lead, self.dim):
                    if norm[k]:
                        stored[k] = stored[k] - c * norm[k]
        at = next((i for i, p in enumerate(self.pivots) if p > lead), len(self.pivots))
        self.rows.insert(at, norm)
        self.pivots.insert(at, lead)
        return row

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def solve(self, v):
        """Coordinates of v in the stored row basis, or None if v is outside the span."""
        row = self._as_row(v)
        coords = []
        for p, stored in zip(self.pivots, self.rows):
            c = row[p]
            coords.append(c)
            if c:
                for k in range(p, self.dim):
                    if stored[k]:
                        row[k] = row[k] - c * stored[k]
        if any(row):
            return None
        return coords


def tensor_basis(a: GradedBasis, b: GradedBasis) -> GradedBasis:
    """Lexicographic product basis; the degree of (v, w) is the group sum."""
    if a.color != b.color:
        raise ColorMismatch("tensor factors over different colors")
    group = a.color.group
    entries = []
    for na, da in a.entries:
        for nb, db in b.entries:
            entries.append((f"{na}(x){nb}", group.add(da, db)))
    return GradedBasis(a.color, entries)


def braid(a: GradedBasis, b: GradedBasis) -> GradedMap:
    """The symmetric braiding V (x) W -> W (x) V, (v, w) -> chi(|v|, |w|) (w, v)."""
    if a.color != b.color:
        raise ColorMismatch("braid factors over different colors")
    src = tensor_basis(a, b)
    tgt = tensor_basis(b, a)
    cols = []
    for i in range(len(a)):
        for j in range(len(b)):
            s = a.color.chi.chi(a.degree(i), b.degree(j))
            cols.append(tgt.unit(j * len(a) + i, s))
    return GradedMap(src, tgt, cols)


def rref_insert(rs: RowSpace, v):
    """Insert a row; returns (rs, residue).  Residue zero iff v was in the span."""
    return rs, rs.insert(v)


def solve_membership(rs: RowSpace, v):
    """Coordinates of v in the row basis of rs when v lies in the span, else None."""
    return rs.solve(v)


def kernel_basis(rows, dim: int, root_order: int) -> list[list[CycScalar]]:
    """Kernel of the linear map x -> A x for constraint rows A (each of length dim).

    Returns echelon-normalized kernel vectors via the standard free-variable
    construction on the RREF of A.
    """
    rs = RowSpace(dim, root_order)
    for r in rows:
        rs.insert(r)
    pivots = set(rs.pivots)
    zero = CycScalar.zero(root_order)
    one = CycScalar.one(root_order)
    out = []
    for free in range(dim):
        if free in pivots:
            continue
        vec = [zero] * dim
        vec[free] = one
        for p, stored in zip(rs.pivots, rs.rows):
            if stored[free]:
                vec[p] = -stored[free]
        out.append(vec)
    return out
