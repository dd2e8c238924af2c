import itertools
from math import comb

import pytest
import sympy
from hypothesis import given, strategies as st

from qprofile.counting import (
    QPolynomial,
    SignedQPolynomial,
    charpoly_extension_count,
    column_sum_check,
    gamma_q,
    orbit_stabilizer_identity_check,
    q_binomial,
    sigma_poly,
    sigma_value,
    simple_extension_count,
    simple_maps_with_defect_count,
    simple_maps_with_defect_poly,
    splitting_count,
    whittaker_coefficient,
)
from qprofile.ffield import make_field
from qprofile.fqlinalg import MatrixFq, rank
from qprofile.partition import Partition, conjugate, partitions_of, partitions_with_first_part

from conftest import subspaces_by_spanning_sets

q = sympy.Symbol("q")


def to_sympy(p: QPolynomial):
    return sum(c * q**i for i, c in enumerate(p.coeffs))


def sympy_sigma(mu):
    """The closed form simplified by sympy, independent of QPolynomial division."""
    mu = list(mu) + [0]
    n = sum(mu)
    expr = (q**n - 1) / (q ** mu[0] - 1) * q ** sum(m * m - m for m in mu[1:])
    for a, b in zip(mu, mu[1:]):
        expr *= sympy.prod([(1 - q ** (a - i)) / (1 - q ** (i + 1)) for i in range(b)])
    return sympy.expand(sympy.cancel(sympy.together(expr)))


# -- partitions --

def test_partition_enumeration():
    assert len(partitions_of(4)) == 5
    assert [len(partitions_of(n)) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert [str(m) for m in partitions_of(4)] == ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]
    assert partitions_with_first_part(4, 2) == [Partition.of(2, 2), Partition.of(2, 1, 1)]
    assert conjugate(Partition.of(2, 1, 1)) == Partition.of(3, 1)
    assert partitions_of(0) == [Partition()]


def test_partition_validation_and_text():
    with pytest.raises(ValueError):
        Partition.of(1, 2)
    assert Partition.of(3, 1, 0, 0) == Partition.of(3, 1)
    assert str(Partition()) == "()"
    assert Partition.parse("(2,1,1)") == Partition.parse("2,1,1") == Partition.of(2, 1, 1)
    assert Partition.parse("()") == Partition()


@pytest.mark.parametrize("n", range(0, 9))
def test_conjugation_is_an_involution(n):
    parts = partitions_of(n)
    assert sorted(conjugate(m) for m in parts) == sorted(parts)
    assert all(conjugate(conjugate(m)) == m for m in parts)
    assert len(set(parts)) == len(parts)


# -- QPolynomial --

small_poly = st.lists(st.integers(-20, 20), max_size=6).map(lambda c: QPolynomial(tuple(c)))


@given(small_poly, small_poly, st.integers(-5, 5))
def test_qpolynomial_ring_ops_evaluate_pointwise(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)
    assert (a - b)(x) == a(x) - b(x)


@given(small_poly, st.integers(0, 4), st.sampled_from([1, -1]))
def test_division_by_monic(a, k, lead):
    d = QPolynomial.monomial(k, lead) + 1 if k else QPolynomial.const(lead)
    quo, rem = divmod(a, d)
    assert quo * d + rem == a
    assert rem.degree < d.degree
    assert (a * d).exact_div(d) == a


def test_exact_div_rejects_remainder():
    with pytest.raises(ArithmeticError):
        (QPolynomial.monomial(3) - 1).exact_div(QPolynomial.monomial(2) - 1)


def test_qpolynomial_text():
    assert str(QPolynomial((1, 1, 1))) == "q^2 + q + 1"
    assert str(QPolynomial((-1, 0, -2))) == "-2*q^2 - 1"
    assert str(QPolynomial()) == "0"
    assert str(SignedQPolynomial(-1, QPolynomial((1, 1)))) == "-(q + 1)"
    assert SignedQPolynomial(-1, QPolynomial()).sign == 1


# -- q-binomials and gamma --

def test_q_binomial_examples(F2):
    assert q_binomial(5, 0) == QPolynomial.const(1)
    assert q_binomial(3, 1) == QPolynomial((1, 1, 1))
    assert q_binomial(3, 1)(2) == len(subspaces_by_spanning_sets(F2, 3, 1)) == 7
    assert q_binomial(4, 2)(2) == len(subspaces_by_spanning_sets(F2, 4, 2)) == 35
    assert q_binomial(3, 1)(3) == len(subspaces_by_spanning_sets(make_field(3), 3, 1))
    assert q_binomial(3, 4).is_zero() and q_binomial(3, -1).is_zero()


def test_gamma_examples(F2):
    assert gamma_q(0) == QPolynomial.const(1)
    assert gamma_q(2)(2) == 6
    invertible = sum(
        1 for e in itertools.product(range(2), repeat=9)
        if rank(MatrixFq(F2, 3, 3, (e[0:3], e[3:6], e[6:9]))) == 3
    )
    assert gamma_q(3)(2) == invertible == 168


def test_gamma_overflows_64_bits():
    assert gamma_q(9)(2) > 2**64
    assert gamma_q(20)(5) == __import__("math").prod(5**20 - 5**i for i in range(20))


@pytest.mark.parametrize("n", range(0, 21))
def test_q_binomial_symmetry_and_pascal(n):
    for k in range(n + 1):
        assert q_binomial(n, k) == q_binomial(n, n - k)
        assert q_binomial(n, k)(1) == comb(n, k)
        if 0 < k < n:
            # the other q-Pascal rule
            other = QPolynomial.monomial(n - k) * q_binomial(n - 1, k - 1) + q_binomial(n - 1, k)
            assert q_binomial(n, k) == other


def test_q_binomial_against_sympy():
    for n in range(8):
        for k in range(n + 1):
            expr = sympy.prod([(1 - q ** (n - i)) / (1 - q ** (i + 1)) for i in range(k)])
            assert sympy.expand(sympy.cancel(expr) - to_sympy(q_binomial(n, k))) == 0


# -- sigma --

def test_sigma_examples():
    for n in range(1, 8):
        assert sigma_poly((n,)) == QPolynomial.const(1)
    assert sigma_poly((2, 1)) == QPolynomial((1, 1, 1))
    assert sigma_value((2, 1), 2) == 7
    assert sigma_value((2, 2), 2) == 20
    assert sigma_value((2, 1, 1), 2) == 15
    for n in range(1, 7):
        for qq in (2, 3, 4):
            assert sigma_value((1,) * n, qq) == (qq**n - 1) // (qq - 1)


def test_sigma_needs_a_field_size():
    with pytest.raises(ValueError):
        sigma_value((2, 1), 6)
    with pytest.raises(ValueError):
        sigma_poly(())


@pytest.mark.parametrize("n", range(1, 8))
def test_sigma_matches_sympy(n):
    for mu in partitions_of(n):
        assert sympy.expand(sympy_sigma(mu) - to_sympy(sigma_poly(mu))) == 0, mu


@pytest.mark.parametrize("n", range(1, 9))
def test_column_sums(n):
    for k in range(n + 1):
        assert column_sum_check(n, k)


def test_column_sum_explicit():
    total = sigma_poly((2, 2)) + sigma_poly((2, 1, 1))
    assert total == q_binomial(4, 2)


@pytest.mark.parametrize("n", range(1, 13))
def test_whittaker_consistency_and_polynomiality(n):
    for mu in partitions_of(n):
        c = whittaker_coefficient(mu)
        shift = sum(comb(m, 2) for m in mu.parts[1:])
        assert sigma_poly(mu) == c.magnitude * QPolynomial.monomial(shift)
        assert c.sign == (-1) ** (n - mu[0])
    assert whittaker_coefficient((n,)).as_poly() == QPolynomial.const(1)


def test_whittaker_examples():
    c = whittaker_coefficient((1, 1))
    expected = sympy.cancel((q**2 - 1) / (q - 1))
    assert c.sign == -1 and sympy.expand(to_sympy(c.magnitude) - expected) == 0
    assert c.as_poly() == QPolynomial((-1, -1))
    c = whittaker_coefficient((2, 1))
    assert c.sign == -1 and c.magnitude == QPolynomial((1, 1, 1))


# -- other closed forms --

def test_simple_maps_with_defect_examples():
    assert simple_maps_with_defect_count((4,), 2) == 1
    assert simple_maps_with_defect_count((2, 1), 2, n=3, k=1) == 2 * 1 * 3 == 6
    assert simple_maps_with_defect_count((2, 2), 2, n=4, k=2) == 96
    with pytest.raises(ValueError):
        simple_maps_with_defect_count((2, 1), 2, n=4)
    with pytest.raises(ValueError):
        simple_maps_with_defect_count((2, 1), 2, k=2)


def test_simple_map_totals_sum_to_all_simple_maps():
    # summing over mu with mu_1 = n - k gives the count of simple maps on W;
    # for k = 1 every map whose image leaves the line is simple: q^n - q
    for n in range(2, 7):
        total = sum((simple_maps_with_defect_poly(mu) for mu in partitions_with_first_part(n, n - 1)), QPolynomial())
        assert total == QPolynomial.monomial(n) - QPolynomial.monomial(1)


def test_extension_counts():
    assert simple_extension_count(3, 1, 2) == 4
    assert simple_extension_count(4, 0, 2) == 14
    for n in range(2, 7):
        assert simple_extension_count(n, n - 2, 3) == 3**n - 3 ** (n - 1)
    with pytest.raises(ValueError):
        simple_extension_count(3, 2, 2)
    assert charpoly_extension_count(5, 4, 2) == 1
    assert charpoly_extension_count(3, 1, 2) == 4
    assert charpoly_extension_count(4, 1, 2) == 96


def test_splitting_examples():
    for d in range(1, 6):
        assert splitting_count(1, d, 3) == (3**d - 1) // 2
    assert splitting_count(2, 2, 2) == 20
    assert splitting_count(2, 2, 3) == 90


def test_splitting_is_sigma_of_rectangle():
    for m in range(1, 13):
        for d in range(1, 13 // m + 1):
            if m * d > 12:
                continue
            for qq in (2, 3, 4, 5):
                assert splitting_count(m, d, qq) == sigma_value((m,) * d, qq)


def test_orbit_stabilizer():
    assert orbit_stabilizer_identity_check(5, 0)
    assert orbit_stabilizer_identity_check(4, 2)
    assert orbit_stabilizer_identity_check(10, 3)
    lhs = to_sympy(gamma_q(4))
    rhs = to_sympy(gamma_q(2)) ** 2 * q**4 * to_sympy(q_binomial(4, 2))
    assert sympy.expand(lhs - rhs) == 0
