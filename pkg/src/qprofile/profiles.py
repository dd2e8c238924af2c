"""Subspace profiles under an operator, defect chains of partial maps,
simplicity, and the transpose/annihilator duality between the two."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from qprofile.ffield import FieldCtx
from qprofile.fqlinalg import (
    MatrixFq,
    Subspace,
    Vector,
    _echelon,
    annihilator,
    full_space,
    image,
    linear_combination,
    matvec,
    restricted_preimage,
    span,
    subspace_sum,
    transpose,
)
from qprofile.fqpoly import char_poly, is_irreducible
from qprofile.partition import Partition


@dataclass(frozen=True)
class PartialMap:
    """A linear map from ``domain`` (a subspace of F_q^n) into F_q^n.

    ``images[i]`` is the image of the i-th RREF basis vector of the domain.
    """

    ctx: FieldCtx
    ambient: int
    domain: Subspace
    images: tuple[Vector, ...]

    def __post_init__(self):
        if len(self.images) != self.domain.dim:
            raise ValueError(f"{len(self.images)} images for a {self.domain.dim}-dimensional domain")
        if any(len(v) != self.ambient for v in self.images):
            raise ValueError("image vector of the wrong length")

    @classmethod
    def from_generators(
        cls, ctx: FieldCtx, n: int, gens: Sequence[Sequence[int]], images: Sequence[Sequence[int]]
    ) -> "PartialMap":
        """Map with ``gens[i] -> images[i]``; generators may be dependent if the images agree."""
        if len(gens) != len(images):
            raise ValueError("need one image per generator")
        rows = [tuple(g) + tuple(v) for g, v in zip(gens, images)]
        if any(len(r) != 2 * n for r in rows):
            raise ValueError(f"generators and images must have length {n}")
        reduced, pivots = _echelon(ctx, rows, 2 * n)
        if pivots and pivots[-1] >= n:
            raise ValueError("generators are dependent but their images are not")
        domain = Subspace(ctx, n, tuple(tuple(r[:n]) for r in reduced))
        return cls(ctx, n, domain, tuple(tuple(r[n:]) for r in reduced))

    @classmethod
    def restriction(cls, t: MatrixFq, w: Subspace) -> "PartialMap":
        return cls(w.ctx, w.ambient, w, tuple(matvec(t, b) for b in w.basis))

    @classmethod
    def operator(cls, t: MatrixFq) -> "PartialMap":
        return cls.restriction(t, full_space(t.ctx, t.nrows))

    @property
    def k(self) -> int:
        return self.domain.dim

    @property
    def is_full(self) -> bool:
        return self.domain.is_full

    def apply(self, v: Sequence[int]) -> Vector:
        coords = self.domain.coordinates(v)
        return linear_combination(self.ctx, coords, self.images, self.ambient)

    def as_matrix(self) -> MatrixFq:
        """The operator matrix of a full-domain map."""
        if not self.is_full:
            raise ValueError("only full-domain maps are operators")
        # the RREF basis of the full space is the standard basis
        n = self.ambient
        return MatrixFq(self.ctx, n, n, tuple(tuple(c[i] for c in self.images) for i in range(n)))

    def __str__(self):
        from qprofile.fqlinalg import format_matrix

        dom = format_matrix(self.domain.basis_matrix())
        img = ";".join(",".join(str(x) for x in v) for v in self.images)
        return f"{dom}|{img}"


def parse_map(ctx: FieldCtx, n: int, text: str) -> PartialMap:
    """Parse ``"GENS|IMAGES"`` where both halves use the ``a,b,c;d,e,f`` row format."""
    from qprofile.fqlinalg import parse_vectors

    gens_text, sep, imgs_text = text.partition("|")
    if not sep:
        raise ValueError("partial map must be written as GENERATORS|IMAGES")
    return PartialMap.from_generators(ctx, n, parse_vectors(gens_text), parse_vectors(imgs_text))


def _check_operator(t: MatrixFq, w: Subspace):
    if not t.is_square or t.nrows != w.ambient:
        raise ValueError(f"{t.nrows}x{t.ncols} matrix does not act on F_q^{w.ambient}")


def profile(t: MatrixFq, w: Subspace) -> Partition:
    """Increments of dim(W + TW + ... + T^{j-1} W); the zero subspace gets ()."""
    _check_operator(t, w)
    parts = []
    prev = 0
    s = w
    while s.dim > prev:
        parts.append(s.dim - prev)
        prev = s.dim
        s = subspace_sum(w, image(t, s))
    return Partition(tuple(parts))


def _step(pm: PartialMap, cur: Subspace) -> Subspace:
    # {w in cur : T w in cur}, for cur inside the domain
    return restricted_preimage(pm.ctx, pm.ambient, cur.basis, [pm.apply(b) for b in cur.basis], cur)


def defect_chain(pm: PartialMap) -> tuple[tuple[int, ...], int, Subspace]:
    """Dimensions d_0 >= ... >= d_ell of W_0 = V, W_1 = W, W_{i+1} = W_i ∩ T^{-1} W_i.

    Returns (dims, ell, W_ell); W_ell is the largest invariant subspace.
    """
    n = pm.ambient
    if pm.is_full:
        return (n,), 0, pm.domain
    dims = [n, pm.k]
    cur = pm.domain
    while True:
        nxt = _step(pm, cur)
        if nxt == cur:
            return tuple(dims), len(dims) - 1, cur
        dims.append(nxt.dim)
        cur = nxt


def defect_dimensions(pm: PartialMap) -> Partition:
    dims, _, _ = defect_chain(pm)
    return Partition(tuple(a - b for a, b in zip(dims, dims[1:])))


def is_simple_map(pm: PartialMap) -> bool:
    """Only {0} and F_q^n are invariant.

    For a proper domain the largest invariant subspace W_ell decides this.
    A full-domain map always has W_ell = F_q^n, so there the test is
    irreducibility of the characteristic polynomial.
    """
    if pm.is_full:
        return is_simple_operator(pm.as_matrix())
    _, _, w_ell = defect_chain(pm)
    return w_ell.is_zero or w_ell.is_full


def is_simple_operator(t: MatrixFq) -> bool:
    if not t.is_square:
        raise ValueError("operator must be square")
    return is_irreducible(char_poly(t))


def dual_restriction(t: MatrixFq, w: Subspace) -> PartialMap:
    """The transpose of ``t`` restricted to the annihilator of ``w``."""
    _check_operator(t, w)
    return PartialMap.restriction(transpose(t), annihilator(w))


def complement_in(w: Subspace, w_prime: Subspace) -> list[Vector]:
    """RREF rows of ``w_prime`` that extend a basis of ``w`` to one of ``w_prime``."""
    if not w.issubspace(w_prime):
        raise ValueError("domain is not contained in the target subspace")
    out = []
    cur = w
    for b in w_prime.basis:
        nxt = span(w.ctx, w.ambient, cur.basis + (b,))
        if nxt.dim > cur.dim:
            out.append(b)
            cur = nxt
    return out


def extend_map(pm: PartialMap, w_prime: Subspace, extra_images: Sequence[Sequence[int]]) -> PartialMap:
    """Extend ``pm`` to ``w_prime``; ``extra_images`` are the images of ``complement_in(domain, w_prime)``."""
    comp = complement_in(pm.domain, w_prime)
    if len(comp) != len(extra_images):
        raise ValueError(f"need {len(comp)} extra images, got {len(extra_images)}")
    return PartialMap.from_generators(
        pm.ctx, pm.ambient, list(pm.domain.basis) + comp, list(pm.images) + [tuple(v) for v in extra_images]
    )


def all_vectors(ctx: FieldCtx, n: int) -> Iterator[Vector]:
    return itertools.product(range(ctx.q), repeat=n)


def enumerate_extensions(pm: PartialMap, w_prime: Subspace) -> Iterator[PartialMap]:
    """Every extension of ``pm`` to ``w_prime`` once, ordered by the extra image codes."""
    comp = complement_in(pm.domain, w_prime)
    vectors = list(all_vectors(pm.ctx, pm.ambient))
    gens = list(pm.domain.basis) + comp
    for extra in itertools.product(vectors, repeat=len(comp)):
        yield PartialMap.from_generators(pm.ctx, pm.ambient, gens, list(pm.images) + list(extra))
