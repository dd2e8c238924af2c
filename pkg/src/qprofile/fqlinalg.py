"""Matrices and subspaces over F_q.

Vectors are tuples of element codes. Matrices act on column vectors, so
``matvec(T, v)`` is T·v. Subspaces are stored by their reduced row echelon
basis, which makes equality of subspaces equality of representations.
The dual space is identified with F_q^n through the dot product.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from qprofile.ffield import FieldCtx

Vector = tuple[int, ...]


@dataclass(frozen=True)
class MatrixFq:
    ctx: FieldCtx
    nrows: int
    ncols: int
    rows: tuple[Vector, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError(f"matrix rows do not match shape {self.nrows}x{self.ncols}")

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows: Iterable[Sequence[int]], ncols: int | None = None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            for x in r:
                if not 0 <= x < ctx.q:
                    raise ValueError(f"entry {x} is not an element of F_{ctx.q}")
        return cls(ctx, len(rows), ncols, rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __str__(self):
        return format_matrix(self)


def identity(ctx: FieldCtx, n: int) -> MatrixFq:
    return MatrixFq(ctx, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def zero_matrix(ctx: FieldCtx, nrows: int, ncols: int | None = None) -> MatrixFq:
    ncols = nrows if ncols is None else ncols
    return MatrixFq(ctx, nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))


def from_columns(ctx: FieldCtx, cols: Sequence[Sequence[int]], nrows: int) -> MatrixFq:
    return MatrixFq(ctx, nrows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(nrows)))


def transpose(m: MatrixFq) -> MatrixFq:
    return MatrixFq(m.ctx, m.ncols, m.nrows, tuple(m.column(j) for j in range(m.ncols)))


def dot(ctx: FieldCtx, u: Sequence[int], v: Sequence[int]) -> int:
    s = 0
    if ctx.e == 1:
        for a, b in zip(u, v):
            s += a * b
        return s % ctx.p
    for a, b in zip(u, v):
        if a and b:
            s = ctx.add(s, ctx.mul(a, b))
    return s


def matvec(m: MatrixFq, v: Sequence[int]) -> Vector:
    if len(v) != m.ncols:
        raise ValueError(f"vector of length {len(v)} does not fit a {m.nrows}x{m.ncols} matrix")
    return tuple(dot(m.ctx, r, v) for r in m.rows)


def matmul(a: MatrixFq, b: MatrixFq) -> MatrixFq:
    if a.ncols != b.nrows:
        raise ValueError("inner dimensions differ")
    bcols = b.columns()
    return MatrixFq(a.ctx, a.nrows, b.ncols, tuple(tuple(dot(a.ctx, r, c) for c in bcols) for r in a.rows))


def vec_add(ctx: FieldCtx, u: Sequence[int], v: Sequence[int]) -> Vector:
    if ctx.e == 1:
        p = ctx.p
        return tuple((a + b) % p for a, b in zip(u, v))
    return tuple(ctx.add(a, b) for a, b in zip(u, v))


def vec_scale(ctx: FieldCtx, c: int, v: Sequence[int]) -> Vector:
    return tuple(ctx.mul(c, a) for a in v)


def linear_combination(ctx: FieldCtx, coeffs: Sequence[int], vectors: Sequence[Sequence[int]], length: int) -> Vector:
    out = [0] * length
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] = ctx.add(out[i], ctx.mul(c, a))
    return tuple(out)


def _echelon(ctx: FieldCtx, rows: Iterable[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns nonzero rows and their pivot columns."""
    work = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    prime = ctx.e == 1
    p = ctx.p
    for col in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        row = work[r]
        lead = row[col]
        if lead != 1:
            s = ctx.inv(lead)
            row[:] = [ctx.mul(s, x) for x in row]
        for i, other in enumerate(work):
            c = other[col]
            if i == r or not c:
                continue
            if prime:
                other[:] = [(x - c * y) % p for x, y in zip(other, row)]
            else:
                other[:] = [ctx.sub(x, ctx.mul(c, y)) for x, y in zip(other, row)]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rref(m: MatrixFq) -> tuple[MatrixFq, int]:
    """Reduced row echelon form of ``m`` (zero rows kept at the bottom) and its rank."""
    rows, _ = _echelon(m.ctx, m.rows, m.ncols)
    rank = len(rows)
    padded = tuple(tuple(r) for r in rows) + tuple((0,) * m.ncols for _ in range(m.nrows - rank))
    return MatrixFq(m.ctx, m.nrows, m.ncols, padded), rank


def rank(m: MatrixFq) -> int:
    return rref(m)[1]


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^n held by its canonical RREF basis (no zero rows)."""

    ctx: FieldCtx
    ambient: int
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(b) if x) for b in self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_full(self) -> bool:
        return len(self.basis) == self.ambient

    def basis_matrix(self) -> MatrixFq:
        return MatrixFq(self.ctx, self.dim, self.ambient, self.basis)

    def coordinates(self, v: Sequence[int]) -> Vector:
        """Coefficients of ``v`` in the RREF basis; ``v`` must lie in the subspace."""
        coords = tuple(v[j] for j in self.pivots)
        if linear_combination(self.ctx, coords, self.basis, self.ambient) != tuple(v):
            raise ValueError(f"vector {tuple(v)} is not in the subspace")
        return coords

    def __contains__(self, v) -> bool:
        coords = tuple(v[j] for j in self.pivots)
        return linear_combination(self.ctx, coords, self.basis, self.ambient) == tuple(v)

    def issubspace(self, other: "Subspace") -> bool:
        return all(b in other for b in self.basis)

    def __str__(self):
        if not self.basis:
            return "{0}"
        return format_matrix(self.basis_matrix())


def span(ctx: FieldCtx, ambient: int, generators: Iterable[Sequence[int]]) -> Subspace:
    gens = [tuple(g) for g in generators]
    for g in gens:
        if len(g) != ambient:
            raise ValueError(f"generator of length {len(g)} in ambient dimension {ambient}")
    rows, _ = _echelon(ctx, gens, ambient)
    return Subspace(ctx, ambient, tuple(tuple(r) for r in rows))


def zero_subspace(ctx: FieldCtx, n: int) -> Subspace:
    return Subspace(ctx, n, ())


def full_space(ctx: FieldCtx, n: int) -> Subspace:
    return Subspace(ctx, n, identity(ctx, n).rows)


def _check_same(u: Subspace, v: Subspace):
    if u.ambient != v.ambient or u.ctx != v.ctx:
        raise ValueError("subspaces live in different ambient spaces")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_same(u, v)
    return span(u.ctx, u.ambient, u.basis + v.basis)


def kernel(m: MatrixFq) -> Subspace:
    """Right null space {v : m·v = 0}."""
    ctx, n = m.ctx, m.ncols
    rows, pivots = _echelon(ctx, m.rows, n)
    pivset = set(pivots)
    gens = []
    for f in range(n):
        if f in pivset:
            continue
        v = [0] * n
        v[f] = 1
        for row, pc in zip(rows, pivots):
            v[pc] = ctx.neg(row[f])
        gens.append(v)
    return span(ctx, n, gens)


def annihilator(w: Subspace) -> Subspace:
    """Functionals vanishing on ``w``, as vectors under the dot product."""
    return kernel(MatrixFq(w.ctx, w.dim, w.ambient, w.basis))


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    _check_same(u, v)
    if u.is_full:
        return v
    if v.is_full:
        return u
    return annihilator(subspace_sum(annihilator(u), annihilator(v)))


def _check_operator(t: MatrixFq, w: Subspace):
    if not t.is_square or t.nrows != w.ambient:
        raise ValueError(f"{t.nrows}x{t.ncols} matrix does not act on F_q^{w.ambient}")


def image(t: MatrixFq, w: Subspace) -> Subspace:
    _check_operator(t, w)
    return span(w.ctx, w.ambient, [matvec(t, b) for b in w.basis])


def restricted_preimage(
    ctx: FieldCtx,
    n: int,
    vectors: Sequence[Sequence[int]],
    images: Sequence[Sequence[int]],
    target: Subspace,
) -> Subspace:
    """Span of the combinations sum(c_j vectors[j]) whose image sum(c_j images[j]) lies in ``target``.

    ``vectors[j] -> images[j]`` describes a linear map on span(vectors).
    """
    if not vectors:
        return zero_subspace(ctx, n)
    ann = annihilator(target).basis
    # column j holds the residue of images[j] against target; its kernel is the preimage
    residues = MatrixFq(
        ctx, len(ann), len(vectors),
        tuple(tuple(dot(ctx, a, img) for img in images) for a in ann),
    )
    coeffs = kernel(residues).basis
    return span(ctx, n, [linear_combination(ctx, c, vectors, n) for c in coeffs])


def preimage(t: MatrixFq, w: Subspace) -> Subspace:
    """Inverse image {v : t·v in w}; handles singular ``t``."""
    _check_operator(t, w)
    n = w.ambient
    return restricted_preimage(w.ctx, n, identity(w.ctx, n).rows, t.columns(), w)


def parse_vectors(text: str) -> list[Vector]:
    """Parse ``"0,0,1;1,0,1"`` into row tuples; the empty string is no rows."""
    text = text.strip()
    if not text:
        return []
    return [tuple(int(x) for x in row.split(",")) for row in text.split(";")]


def parse_matrix(ctx: FieldCtx, text: str) -> MatrixFq:
    rows = parse_vectors(text)
    if len({len(r) for r in rows}) > 1:
        raise ValueError("matrix rows have unequal lengths")
    return MatrixFq.from_rows(ctx, rows)


def format_matrix(m: MatrixFq) -> str:
    return ";".join(",".join(str(x) for x in r) for r in m.rows)
