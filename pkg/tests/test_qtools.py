import random

import pytest
import sympy
from gmpy2 import mpq

from conftest import poly, series_coeffs, sympy_coeffs
from hlrr.errors import SingularError, UsageError
from hlrr.exactnum import PowerSeries
from hlrr.qtools import (
    INFINITE,
    Mono,
    PochSpec,
    alt_qbinom_sum_check,
    congruence_product,
    jacobi_triple,
    poch,
    product_term,
    qbinom,
    qbinom_coefficients,
    qbinom_theorem_check,
    qpoch,
    term_valuation,
)

Q = sympy.Symbol("q")


def test_poch_examples():
    assert series_coeffs(poch(PochSpec(Mono(1, 1), 3), 6)) == [1, -1, -1, 0, 1, 1, -1]
    assert series_coeffs(poch(PochSpec(Mono(5, 0), 0), 4)) == [1, 0, 0, 0, 0]
    odd = poch(PochSpec(Mono(1, 1), INFINITE, 2), 5)
    expected = poly([1, -1], hi=5) * poly([1, 0, 0, -1], hi=5) * poly([1, 0, 0, 0, 0, -1])
    assert odd == expected


def test_poch_infinite_needs_positive_step():
    with pytest.raises(UsageError):
        PochSpec(Mono(1, 1), INFINITE, 0)
    with pytest.raises(UsageError):
        PochSpec(Mono(1, 1), -1)


def test_poch_infinite_stable_under_order():
    spec = PochSpec(Mono(mpq(-2, 3), 0), INFINITE, 2)
    assert poch(spec, 40).truncate(20) == poch(spec, 20)


def test_poch_splice_identity():
    rng = random.Random(5)
    for _ in range(10):
        x = mpq(rng.randint(-9, 9), rng.randint(1, 9))
        n = rng.randint(0, 5)
        head = poch(PochSpec(Mono(x, 0), n), 30)
        tail = poch(PochSpec(Mono(x, n), INFINITE), 30)
        assert head * tail == poch(PochSpec(Mono(x, 0), INFINITE), 30)


def test_laurent_infinite_product_matches_sympy():
    z = mpq(3, 2)
    f = product_term(1, 0, num=[PochSpec(Mono(z, -1), INFINITE, 1)], order=10)
    zs = sympy.Rational(3, 2)
    expr = sympy.prod([1 - zs * Q ** (j - 1) for j in range(13)])
    assert series_coeffs(f) == sympy_coeffs(expr, Q, f.lo, f.hi)


def test_product_term_with_denominators_matches_sympy():
    a = mpq(-2, 5)
    f = product_term(3, 2, num=[PochSpec(Mono(a, 1), 2, 1)], den=[PochSpec(Mono(1, 1), INFINITE, 2)], order=12)
    As = sympy.Rational(-2, 5)
    expr = 3 * Q**2 * (1 - As * Q) * (1 - As * Q**2) / sympy.prod([1 - Q ** (2 * j + 1) for j in range(8)])
    assert series_coeffs(f, 0, 12) == sympy_coeffs(expr, Q, 0, 12)


def test_product_term_vanishing_factors():
    assert product_term(1, 0, num=[Mono(1, 0)], order=5).is_zero()
    with pytest.raises(SingularError):
        product_term(1, 0, den=[Mono(1, 0)], order=5)


def test_term_valuation():
    assert term_valuation(3, num=[PochSpec(Mono(2, -2), 1)]) == 1
    assert term_valuation(0, den=[PochSpec(Mono(2, -1), 2)]) == 1


# Gaussian binomials


def test_qbinom_coefficients_match_product_formula():
    for n in range(8):
        for k in range(n + 1):
            num = sympy.prod([1 - Q ** (n - k + i) for i in range(1, k + 1)])
            den = sympy.prod([1 - Q**i for i in range(1, k + 1)])
            expected = sympy.Poly(sympy.cancel(num / den), Q).all_coeffs()[::-1]
            assert qbinom_coefficients(n, k) == [int(c) for c in expected]


def test_qbinom_at_rationals():
    q = mpq(2, 3)
    assert qbinom(4, 2, q) == (1 - q**4) * (1 - q**3) / ((1 - q) * (1 - q**2))
    assert qbinom(3, 5, q) == 0
    with pytest.raises(SingularError):
        qbinom(4, 2, mpq(1))
    assert qpoch(mpq(2), mpq(3), 2) == (1 - 2) * (1 - 6)


def test_qbinom_theorem_examples():
    assert qbinom_theorem_check(0, 5, 7) == (1, 1)
    lhs, rhs = qbinom_theorem_check(2, -2, 3)
    assert lhs == rhs == 5


def test_qbinom_theorem_random():
    rng = random.Random(11)
    for n in range(9):
        for _ in range(20):
            z = mpq(rng.randint(-9, 9), rng.randint(1, 9))
            q = mpq(rng.choice([i for i in range(-9, 10) if i]), rng.randint(1, 9))
            if q in (1, -1):
                continue
            lhs, rhs = qbinom_theorem_check(n, z, q)
            assert lhs == rhs


def test_alt_qbinom_sum():
    lhs, rhs = alt_qbinom_sum_check(4)
    assert lhs == rhs
    assert series_coeffs(lhs, 0, 5) == [1, -1, 0, -1, 1, 0]
    lhs, rhs = alt_qbinom_sum_check(3)
    assert lhs.is_zero() and rhs.is_zero()
    lhs, rhs = alt_qbinom_sum_check(0)
    assert lhs.coefficient(0) == 1 and lhs == rhs
    for m in range(13):
        lhs, rhs = alt_qbinom_sum_check(m)
        assert lhs.first_discrepancy(rhs) is None


# theta functions and congruence products


def test_jacobi_examples():
    for side in ("sum", "product"):
        assert series_coeffs(jacobi_triple(Mono(-1, 1), 4, 3, side=side), 0, 3) == [1, 1, 0, 1]
    assert series_coeffs(jacobi_triple(Mono(-1, 5), 12, 3)) == [1, 0, 0, 0]
    k = 1
    jtp = jacobi_triple(Mono(-1, 2 * k + 1), 4 * k + 4, 30)
    product = product_term(
        1,
        0,
        num=[PochSpec(Mono(1, 8), INFINITE, 8), PochSpec(Mono(-1, 3), INFINITE, 8), PochSpec(Mono(-1, 5), INFINITE, 8)],
        order=30,
    )
    assert jtp == product


def test_jacobi_sum_equals_product():
    for M in range(2, 13):
        for a in range(1, M):
            x = Mono(-1, a)
            assert jacobi_triple(x, M, 40, "sum") == jacobi_triple(x, M, 40, "product")


def test_jacobi_rejects_bad_arguments():
    with pytest.raises(UsageError):
        jacobi_triple(Mono(-1, 1), 0, 10)
    with pytest.raises(UsageError):
        jacobi_triple(Mono(-1, 1), 4, 10, side="middle")


def restricted_partition_count(n, allowed):
    ways = [1] + [0] * n
    for part in allowed:
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways


def test_congruence_product_examples():
    assert congruence_product({1, 4}, 5, 4).coefficient(4) == 2
    assert series_coeffs(congruence_product({2, 3, 4, 5, 11, 12, 13, 14}, 16, 4)) == [1, 0, 1, 1, 2]
    assert series_coeffs(congruence_product({1}, 2, 0)) == [1]


def test_congruence_product_counts_restricted_partitions():
    rng = random.Random(2)
    for _ in range(40):
        m = rng.randint(2, 20)
        residues = set(rng.sample(range(1, m), rng.randint(1, m - 1)))
        order = rng.randint(0, 20)
        allowed = [n for n in range(1, order + 1) if n % m in residues]
        assert series_coeffs(congruence_product(residues, m, order)) == restricted_partition_count(order, allowed)
