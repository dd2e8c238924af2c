"""Closed-form subspace and map counts as exact polynomials in q.

Everything is assembled in Z[q] first and evaluated afterwards. Quotients
such as (q^n - 1)/(q^m - 1) are only ever formed on a fully assembled
numerator, and a nonzero remainder raises ``ArithmeticError``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from qprofile.ffield import prime_power
from qprofile.partition import (
    Partition,
    as_partition,
    conjugate,
    partitions_of,
    partitions_with_first_part,
)

__all__ = [
    "QPolynomial",
    "SignedQPolynomial",
    "partitions_of",
    "partitions_with_first_part",
    "conjugate",
    "q_binomial",
    "gamma_q",
    "sigma_poly",
    "sigma_value",
    "simple_maps_with_defect_poly",
    "simple_maps_with_defect_count",
    "simple_extension_count",
    "charpoly_extension_count",
    "splitting_poly",
    "splitting_count",
    "whittaker_coefficient",
    "orbit_stabilizer_identity_check",
    "column_sum_check",
]


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class QPolynomial:
    """Integer polynomial in q, constant term first."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def const(cls, c: int) -> "QPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "QPolynomial":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _lift(self, other) -> "QPolynomial":
        return other if isinstance(other, QPolynomial) else QPolynomial.const(other)

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return QPolynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = QPolynomial.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "QPolynomial"):
        """Division by a polynomial with leading coefficient +-1."""
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead = other.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must have leading coefficient +-1")
        rem = list(self.coeffs)
        db = other.degree
        quo = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c:
                f = c * lead
                quo[k - db] = f
                for i, b in enumerate(other.coeffs):
                    rem[k - db + i] -= f * b
        return QPolynomial(tuple(quo)), QPolynomial(tuple(rem[:db]))

    def exact_div(self, other: "QPolynomial") -> "QPolynomial":
        quo, rem = divmod(self, other)
        if not rem.is_zero():
            raise ArithmeticError(f"({self}) / ({other}) leaves remainder {rem}")
        return quo

    def __call__(self, q: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            mag = abs(c)
            term = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not out:
                out.append(term if c > 0 else "-" + term)
            else:
                out.append(("+ " if c > 0 else "- ") + term)
        return " ".join(out)

    def to_list(self) -> list[int]:
        return list(self.coeffs)


ONE = QPolynomial.const(1)
Q = QPolynomial.monomial(1)


@dataclass(frozen=True)
class SignedQPolynomial:
    sign: int
    magnitude: QPolynomial

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.magnitude.is_zero() and self.sign != 1:
            object.__setattr__(self, "sign", 1)

    def as_poly(self) -> QPolynomial:
        return self.magnitude if self.sign == 1 else -self.magnitude

    def __str__(self):
        m = str(self.magnitude)
        if self.sign == 1:
            return m
        return f"-({m})" if len(self.magnitude.coeffs) > 1 or " " in m else f"-{m}"


def q_power_minus_one(k: int) -> QPolynomial:
    return QPolynomial.monomial(k) - 1


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> QPolynomial:
    """Gaussian binomial via the q-Pascal rule [n,k] = [n-1,k-1] + q^k [n-1,k]."""
    if k < 0 or n < 0 or k > n:
        return QPolynomial()
    if k == 0 or k == n:
        return ONE
    return q_binomial(n - 1, k - 1) + QPolynomial.monomial(k) * q_binomial(n - 1, k)


@lru_cache(maxsize=None)
def gamma_q(k: int) -> QPolynomial:
    """|GL_k(F_q)| = prod_{i<k} (q^k - q^i)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = ONE
    for i in range(k):
        out = out * (QPolynomial.monomial(k) - QPolynomial.monomial(i))
    return out


def _binomial_chain(mu: Partition) -> QPolynomial:
    out = ONE
    for i in range(len(mu)):
        out = out * q_binomial(mu[i], mu[i + 1])
    return out


def _check_prime_power(q: int):
    if prime_power(q) is None:
        raise ValueError(f"q = {q} is not a prime power; counts are only meaningful over fields")


def sigma_poly(mu: Partition | Sequence[int]) -> QPolynomial:
    """Number of subspaces with profile ``mu`` under a simple operator on F_q^n, n = |mu|."""
    mu = as_partition(mu)
    if not mu.parts:
        raise ValueError("sigma is defined for nonempty partitions")
    n = mu.weight
    exponent = sum(m * m - m for m in mu.parts[1:])
    numerator = q_power_minus_one(n) * QPolynomial.monomial(exponent) * _binomial_chain(mu)
    return numerator.exact_div(q_power_minus_one(mu[0]))


def sigma_value(mu: Partition | Sequence[int], q: int) -> int:
    _check_prime_power(q)
    return sigma_poly(mu)(q)


def _check_defect_shape(mu: Partition, n: int | None):
    if not mu.parts:
        raise ValueError("partition must be nonempty")
    if n is not None and mu.weight != n:
        raise ValueError(f"{mu} is not a partition of {n}")


def simple_maps_with_defect_poly(mu: Partition | Sequence[int]) -> QPolynomial:
    """Simple maps on a fixed k-dimensional W ⊂ F_q^n with defect dimensions ``mu``.

    Here n = |mu| and k = n - mu_1.
    """
    mu = as_partition(mu)
    _check_defect_shape(mu, None)
    k = mu.weight - mu[0]
    exponent = sum(m * m for m in mu.parts[1:])
    return QPolynomial.monomial(exponent) * gamma_q(k) * _binomial_chain(mu)


def simple_maps_with_defect_count(mu: Partition | Sequence[int], q: int, n: int | None = None, k: int | None = None) -> int:
    mu = as_partition(mu)
    _check_defect_shape(mu, n)
    if k is not None and mu[0] != mu.weight - k:
        raise ValueError(f"first part of {mu} must equal n - k = {mu.weight - k}")
    _check_prime_power(q)
    return simple_maps_with_defect_poly(mu)(q)


def simple_extension_count(n: int, k: int, q: int) -> int:
    """Simple extensions of a simple map on a k-space to a fixed (k+1)-space."""
    if not 0 <= k < n - 1:
        raise ValueError(f"need 0 <= k < n - 1, got n={n}, k={k}")
    _check_prime_power(q)
    return q**n - q ** (k + 1)


def charpoly_extension_poly(n: int, k: int) -> QPolynomial:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    out = ONE
    for j in range(k + 1, n):
        out = out * (QPolynomial.monomial(n) - QPolynomial.monomial(j))
    return out


def charpoly_extension_count(n: int, k: int, q: int) -> int:
    """Extensions of a simple map on a k-space to an operator with a given irreducible char poly."""
    _check_prime_power(q)
    return charpoly_extension_poly(n, k)(q)


def splitting_poly(m: int, d: int) -> QPolynomial:
    if m < 1 or d < 1:
        raise ValueError("m and d must be positive")
    numerator = q_power_minus_one(m * d) * QPolynomial.monomial(m * (m - 1) * (d - 1))
    return numerator.exact_div(q_power_minus_one(m))


def splitting_count(m: int, d: int, q: int) -> int:
    """m-dimensional splitting subspaces for a generator of F_{q^{md}} over F_q."""
    _check_prime_power(q)
    return splitting_poly(m, d)(q)


def whittaker_coefficient(mu: Partition | Sequence[int]) -> SignedQPolynomial:
    """Coefficient of W_mu(x; q) in the q-Whittaker expansion of the power sum p_n."""
    mu = as_partition(mu)
    if not mu.parts:
        raise ValueError("partition must be nonempty")
    n = mu.weight
    exponent = sum(comb(m, 2) for m in mu.parts[1:])
    numerator = q_power_minus_one(n) * QPolynomial.monomial(exponent) * _binomial_chain(mu)
    magnitude = numerator.exact_div(q_power_minus_one(mu[0]))
    return SignedQPolynomial(-1 if (n - mu[0]) % 2 else 1, magnitude)


def orbit_stabilizer_identity_check(n: int, k: int) -> bool:
    """gamma(n) == gamma(k) gamma(n-k) q^{k(n-k)} [n, k] as polynomials."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    rhs = gamma_q(k) * gamma_q(n - k) * QPolynomial.monomial(k * (n - k)) * q_binomial(n, k)
    return gamma_q(n) == rhs


def column_sum_check(n: int, k: int) -> bool:
    """Sum of sigma over mu |- n with mu_1 = n - k equals [n, n-k].

    For k = n the only (n-k)-space is {0}, whose profile is empty, so the
    expected sum drops that one subspace.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    total = QPolynomial()
    for mu in partitions_with_first_part(n, n - k):
        total = total + sigma_poly(mu)
    expected = q_binomial(n, n - k) - (1 if k == n else 0)
    return total == expected
