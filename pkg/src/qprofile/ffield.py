"""Finite fields F_{p^e} with elements encoded as integers.

An element of F_{p^e} is the residue c_0 + c_1 x + ... + c_{e-1} x^{e-1}
modulo a monic irreducible polynomial over F_p, stored as the integer
code sum(c_i * p**i). For prime fields the code is the residue itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

MAX_ORDER = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, e) with n == p**e, or None if n is not a prime power."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    e = 0
    m = n
    while m % p == 0:
        m //= p
        e += 1
    return (p, e) if m == 1 else None


def _digits(code: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        code, r = divmod(code, p)
        out.append(r)
    return out


def _undigits(digits, p: int) -> int:
    code = 0
    for c in reversed(digits):
        code = code * p + c
    return code


@dataclass(frozen=True)
class FieldCtx:
    """The field F_q, q = p**e, fixed by a monic irreducible ``modulus`` over F_p.

    ``modulus`` is a coefficient tuple, constant term first, of length e + 1.
    Arithmetic tables are built lazily and excluded from equality.
    """

    p: int
    e: int
    modulus: tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.e)

    def __repr__(self):
        if self.e == 1:
            return f"FieldCtx(F_{self.p})"
        return f"FieldCtx(F_{self.p}^{self.e}, modulus={list(self.modulus)})"

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def elements(self) -> range:
        return range(self.q)

    # -- raw residue arithmetic, used only to build tables --

    def _raw_mul(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        da, db = _digits(a, p, e), _digits(b, p, e)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for k in range(len(prod) - 1, e - 1, -1):
            c = prod[k]
            if c:
                for i in range(e + 1):
                    prod[k - e + i] = (prod[k - e + i] - c * mod[i]) % p
        return _undigits(prod[:e], p)

    @cached_property
    def _log_tables(self) -> tuple[list[int], list[int]]:
        # exp has length 2(q-1) so exp[log a + log b] needs no reduction
        q = self.q
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._raw_mul(x, g)
            if len(exp) == q - 1:
                break
        else:
            raise ArithmeticError(f"no primitive element found in {self!r}")
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        return exp + exp, log

    @cached_property
    def _add_table(self) -> list[list[int]] | None:
        if self.e == 1 or self.p == 2 or self.q > 256:
            return None
        p, e = self.p, self.e
        digs = [_digits(a, p, e) for a in range(self.q)]
        return [
            [_undigits([(x + y) % p for x, y in zip(da, db)], p) for db in digs]
            for da in digs
        ]

    # -- element arithmetic --

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        table = self._add_table
        if table is not None:
            return table[a][b]
        p, e = self.p, self.e
        return _undigits([(x + y) % p for x, y in zip(_digits(a, p, e), _digits(b, p, e))], p)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        if self.p == 2:
            return a
        p, e = self.p, self.e
        return _undigits([-x % p for x in _digits(a, p, e)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._log_tables
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.e == 1:
            return pow(a, -1, self.p)
        exp, log = self._log_tables
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        if k == 0:
            return 1
        if a == 0:
            return 0
        if self.e == 1:
            return pow(a, k, self.p)
        exp, log = self._log_tables
        return exp[log[a] * k % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_q."""
        return n % self.p


@lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> FieldCtx:
    """Build F_{p^e} with the smallest-encoding monic irreducible modulus.

    >>> make_field(2, 2).modulus
    (1, 1, 1)
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if e < 1:
        raise ValueError(f"extension degree must be >= 1, got {e}")
    if p**e > MAX_ORDER:
        raise ValueError(f"field order {p}^{e} exceeds the cap {MAX_ORDER}")
    if e == 1:
        return FieldCtx(p, 1, (0, 1))

    from qprofile.fqpoly import PolyFq, is_irreducible

    base = make_field(p, 1)
    for code in range(p**e):
        coeffs = tuple(_digits(code, p, e)) + (1,)
        if is_irreducible(PolyFq(base, coeffs)):
            return FieldCtx(p, e, coeffs)
    raise AssertionError("unreachable: irreducibles exist in every degree")


def field_of_order(q: int) -> FieldCtx:
    pe = prime_power(q)
    if pe is None:
        raise ValueError(f"{q} is not a prime power")
    return make_field(*pe)


def parse_field(text: str) -> FieldCtx:
    """Parse ``"P^E"`` or ``"N"`` into a field; N must be a prime power."""
    s = text.strip()
    if "^" in s:
        base, _, exp = s.partition("^")
        return make_field(int(base), int(exp))
    return field_of_order(int(s))


def add(ctx: FieldCtx, a: int, b: int) -> int:
    return ctx.add(a, b)


def sub(ctx: FieldCtx, a: int, b: int) -> int:
    return ctx.sub(a, b)


def mul(ctx: FieldCtx, a: int, b: int) -> int:
    return ctx.mul(a, b)


def inv(ctx: FieldCtx, a: int) -> int:
    return ctx.inv(a)
