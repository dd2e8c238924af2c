"""Polynomials over F_q, companion matrices, characteristic polynomials,
and Smith normal form of the pencil xI - A attached to a partial map.

Coefficients are element codes, constant term first. The zero polynomial
has an empty coefficient tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from qprofile.ffield import FieldCtx
from qprofile.fqlinalg import MatrixFq


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


@dataclass(frozen=True)
class PolyFq:
    ctx: FieldCtx
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(tuple(self.coeffs)))

    @classmethod
    def x(cls, ctx: FieldCtx) -> "PolyFq":
        return cls(ctx, (0, 1))

    @classmethod
    def const(cls, ctx: FieldCtx, c: int) -> "PolyFq":
        return cls(ctx, (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_monic(self) -> bool:
        return self.lead == 1

    def monic(self) -> "PolyFq":
        if not self.coeffs or self.lead == 1:
            return self
        s = self.ctx.inv(self.lead)
        return PolyFq(self.ctx, tuple(self.ctx.mul(s, c) for c in self.coeffs))

    def scale(self, c: int) -> "PolyFq":
        return PolyFq(self.ctx, tuple(self.ctx.mul(c, a) for a in self.coeffs))

    def __add__(self, other: "PolyFq") -> "PolyFq":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.ctx.add
        return PolyFq(self.ctx, tuple(add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)))

    def __neg__(self) -> "PolyFq":
        return PolyFq(self.ctx, tuple(self.ctx.neg(c) for c in self.coeffs))

    def __sub__(self, other: "PolyFq") -> "PolyFq":
        return self + (-other)

    def __mul__(self, other: "PolyFq") -> "PolyFq":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyFq(self.ctx, ())
        ctx = self.ctx
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
        return PolyFq(ctx, tuple(out))

    def __divmod__(self, other: "PolyFq") -> tuple["PolyFq", "PolyFq"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = ctx.inv(other.lead)
        quo = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            f = ctx.mul(c, inv_lead)
            quo[k - db] = f
            for i, b in enumerate(other.coeffs):
                if b:
                    rem[k - db + i] = ctx.sub(rem[k - db + i], ctx.mul(f, b))
        return PolyFq(ctx, tuple(quo)), PolyFq(ctx, tuple(rem[:db]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, a: int) -> int:
        ctx = self.ctx
        acc = 0
        for c in reversed(self.coeffs):
            acc = ctx.add(ctx.mul(acc, a), c)
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)


def parse_poly(ctx: FieldCtx, text: str) -> PolyFq:
    """Parse comma-separated coefficient codes, constant term first."""
    text = text.strip()
    coeffs = tuple(int(c) for c in text.split(",")) if text else ()
    for c in coeffs:
        if not 0 <= c < ctx.q:
            raise ValueError(f"coefficient {c} is not an element of F_{ctx.q}")
    return PolyFq(ctx, coeffs)


def format_poly(f: PolyFq) -> str:
    return ",".join(str(c) for c in f.coeffs) if f.coeffs else "0"


def poly_gcd(f: PolyFq, g: PolyFq) -> PolyFq:
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def powmod(f: PolyFq, k: int, m: PolyFq) -> PolyFq:
    result = PolyFq.const(f.ctx, 1) % m
    base = f % m
    while k:
        if k & 1:
            result = (result * base) % m
        base = (base * base) % m
        k >>= 1
    return result


def is_irreducible(f: PolyFq) -> bool:
    """Irreducibility over F_q via gcd(x^(q^i) - x, f) = 1 for i <= deg/2."""
    n = f.degree
    if n < 1:
        raise ValueError("irreducibility is defined for non-constant polynomials")
    if n == 1:
        return True
    ctx = f.ctx
    f = f.monic()
    x = PolyFq.x(ctx)
    h = x % f
    for _ in range(n // 2):
        h = powmod(h, ctx.q, f)
        if not poly_gcd(h - x, f).is_one():
            return False
    return True


def monic_polys(ctx: FieldCtx, degree: int) -> Iterator[PolyFq]:
    """All monic polynomials of a given degree, ordered by sum(c_i q^i)."""
    q = ctx.q
    for code in range(q**degree):
        coeffs = []
        for _ in range(degree):
            code, r = divmod(code, q)
            coeffs.append(r)
        yield PolyFq(ctx, tuple(coeffs) + (1,))


def is_irreducible_by_trial_division(f: PolyFq) -> bool:
    """Slow check: no monic divisor of degree 1..deg/2."""
    n = f.degree
    if n < 1:
        raise ValueError("irreducibility is defined for non-constant polynomials")
    return all(not (f % g).is_zero() for d in range(1, n // 2 + 1) for g in monic_polys(f.ctx, d))


def smallest_irreducible(ctx: FieldCtx, n: int) -> PolyFq:
    if n < 1:
        raise ValueError("degree must be >= 1")
    return next(f for f in monic_polys(ctx, n) if is_irreducible(f))


def companion_matrix(f: PolyFq) -> MatrixFq:
    """Companion matrix: e_1 -> e_2 -> ... -> e_n -> -(c_0 e_1 + ... + c_{n-1} e_n)."""
    if not f.is_monic() or f.degree < 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    ctx, n = f.ctx, f.degree
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i + 1][i] = 1
    for i in range(n):
        rows[i][n - 1] = ctx.neg(f.coeffs[i])
    return MatrixFq(ctx, n, n, tuple(tuple(r) for r in rows))


def char_poly(t: MatrixFq) -> PolyFq:
    """det(xI - t) via reduction to upper Hessenberg form."""
    if not t.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    ctx, n = t.ctx, t.nrows
    h = [list(r) for r in t.rows]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if h[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            h[piv], h[m] = h[m], h[piv]
            for row in h:
                row[piv], row[m] = row[m], row[piv]
        inv_t = ctx.inv(h[m][m - 1])
        for i in range(m + 1, n):
            u = ctx.mul(h[i][m - 1], inv_t)
            if not u:
                continue
            # row_i -= u row_m, then col_m += u col_i keeps the similarity class
            h[i] = [ctx.sub(a, ctx.mul(u, b)) for a, b in zip(h[i], h[m])]
            for row in h:
                row[m] = ctx.add(row[m], ctx.mul(u, row[i]))
    # p_m = (x - h_mm) p_{m-1} - sum_i h_im (h_{i+1,i} ... h_{m,m-1}) p_{i-1}, on raw coefficient lists
    add, mul, neg = ctx.add, ctx.mul, ctx.neg
    polys = [[1]]
    for m in range(1, n + 1):
        mm = m - 1
        prev = polys[m - 1]
        c = neg(h[mm][mm])
        pm = [0] + prev
        for i, a in enumerate(prev):
            if a:
                pm[i] = add(pm[i], mul(c, a))
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = mul(prod, h[i][i - 1])
            if not prod:
                break
            c = neg(mul(h[i - 1][mm], prod))
            if c:
                for j, a in enumerate(polys[i - 1]):
                    if a:
                        pm[j] = add(pm[j], mul(c, a))
        polys.append(pm)
    return PolyFq(ctx, tuple(polys[n]))


@dataclass(frozen=True)
class PolyMatrix:
    ctx: FieldCtx
    nrows: int
    ncols: int
    entries: tuple[tuple[PolyFq, ...], ...]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def pencil_of(pm) -> PolyMatrix:
    """The n x k matrix xI - A of a partial map: column j is x*b_j - T(b_j)."""
    ctx, n = pm.ctx, pm.ambient
    basis, images = pm.domain.basis, pm.images
    entries = tuple(
        tuple(PolyFq(ctx, (ctx.neg(img[i]), b[i])) for b, img in zip(basis, images))
        for i in range(n)
    )
    return PolyMatrix(ctx, n, len(basis), entries)


def operator_pencil(t: MatrixFq) -> PolyMatrix:
    ctx, n = t.ctx, t.nrows
    entries = tuple(
        tuple(PolyFq(ctx, (ctx.neg(t.rows[i][j]), int(i == j))) for j in range(n)) for i in range(n)
    )
    return PolyMatrix(ctx, n, n, entries)


def smith_normal_form(m: PolyMatrix) -> list[PolyFq]:
    """Diagonal of the Smith normal form over F_q[x], monic, each dividing the next.

    Pivot: nonzero entry of least degree, ties to the smallest (row, column).
    Returns min(nrows, ncols) entries; zero polynomials close the list if rank is short.
    """
    ctx = m.ctx
    a = [list(r) for r in m.entries]
    nr, nc = m.nrows, m.ncols
    zero = PolyFq(ctx, ())
    diag: list[PolyFq] = []

    def best(t):
        found = None
        for i in range(t, nr):
            for j in range(t, nc):
                e = a[i][j]
                if e.coeffs and (found is None or e.degree < found[0]):
                    found = (e.degree, i, j)
        return found

    for t in range(min(nr, nc)):
        while True:
            found = best(t)
            if found is None:
                break
            _, i, j = found
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
            piv = a[t][t]
            clean = True
            for i in range(t + 1, nr):
                if a[i][t].coeffs:
                    quo, rem = divmod(a[i][t], piv)
                    a[i] = [x - quo * y for x, y in zip(a[i], a[t])]
                    clean = clean and rem.is_zero()
            for j in range(t + 1, nc):
                if a[t][j].coeffs:
                    quo, rem = divmod(a[t][j], piv)
                    for row in a:
                        row[j] = row[j] - quo * row[t]
                    clean = clean and rem.is_zero()
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if not (a[i][j] % piv).is_zero()),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        if best(t) is None and not a[t][t].coeffs:
            diag.extend([zero] * (min(nr, nc) - t))
            break
        diag.append(a[t][t].monic())
    return diag


def invariant_factors(pm) -> list[PolyFq]:
    """Invariant factors f_1 | ... | f_k of a partial map with k-dimensional domain."""
    return smith_normal_form(pencil_of(pm))
