import pytest
import sympy

from conftest import series_coeffs, sympy_coeffs
from hlrr import bailey
from hlrr.bailey import (
    BaileyPair,
    chain_alpha_side,
    chain_lambda_side,
    check_pair,
    derived_identity_check,
    derived_lhs,
    derived_rhs,
    iterated_identity_check,
    limit_identity_check,
    limit_sides,
    relation_sides,
    slater_pair,
    transform,
)
from hlrr.errors import UsageError
from hlrr.exactnum import PowerSeries
from hlrr.identities import forms

S = sympy.Symbol("s")
ORDER = 40


@pytest.fixture(scope="module")
def pairs():
    return {1: slater_pair(1), 2: slater_pair(2)}


def poch_sym(x, base, n):
    return sympy.prod([1 - x * base**j for j in range(n)])


def oracle_pair(which, n):
    """alpha_n and beta_n written directly from the pair definitions with q = s^2."""
    if which == 1:
        alpha = 1 if n == 0 else S ** (2 * n * n) * (S**n + S ** (-n))
        beta = 1 / (poch_sym(S, S**2, n) * poch_sym(S**2, S**2, n))
        a = 1
    else:
        alpha = S ** (2 * n * n + n) * (1 + S ** (2 * n + 1)) / (1 + S)
        beta = 1 / (poch_sym(S**3, S**2, n) * poch_sym(S**2, S**2, n))
        a = S**2
    return alpha, beta, a


def oracle_relation_rhs(which, n):
    total = 0
    for r in range(n + 1):
        alpha, _, a = oracle_pair(which, r)
        total += alpha / (poch_sym(S**2, S**2, n - r) * poch_sym(a * S**2, S**2, n + r))
    return total


@pytest.mark.parametrize("which", [1, 2])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_relation_matches_direct_expansion(pairs, which, n):
    beta, rhs = relation_sides(pairs[which], n, 20)
    _, beta_sym, _ = oracle_pair(which, n)
    assert series_coeffs(beta, 0, 20) == sympy_coeffs(beta_sym, S, 0, 20)
    assert series_coeffs(rhs, 0, 20) == sympy_coeffs(oracle_relation_rhs(which, n), S, 0, 20)


def test_pair_alpha_values(pairs):
    assert pairs[2].alpha(0, 10) == PowerSeries.one(10, "s")
    assert pairs[1].alpha(0, 10) == PowerSeries.one(10, "s")
    alpha1 = pairs[1].alpha(1, 10)
    assert [(e, int(c)) for e, c in alpha1.items()] == [(1, 1), (3, 1)]


def test_pairs_satisfy_relation(pairs):
    for p in pairs.values():
        assert check_pair(p, 8, ORDER).ok
        for n in range(9):
            assert p.beta(n, ORDER).coefficient(0) == 1


def test_literal_alpha0_breaks_relation_at_zero():
    literal = slater_pair(1, literal_alpha0=True, validate=False)
    result = check_pair(literal, 8, ORDER)
    assert not result.ok and result.failing_n == 0
    with pytest.raises(UsageError):
        slater_pair(1, literal_alpha0=True)


def test_corrupted_pair_fails_at_one(pairs):
    p = pairs[1]
    bad = BaileyPair(
        label="corrupted",
        a_exp=0,
        alpha_fn=lambda n, order: p.alpha(n, order) + (1 if n == 1 else 0),
        beta_fn=p.beta,
        alpha_low=lambda n: min(p.alpha_low(n), 0),
    )
    result = check_pair(bad, 4, 20)
    assert not result.ok and result.failing_n == 1


def test_unknown_pair_and_unvalidated_use():
    with pytest.raises(UsageError):
        slater_pair(3)
    raw = slater_pair(2, validate=False)
    with pytest.raises(UsageError):
        transform(raw, "i")


# Bailey's lemma


def test_transform_examples(pairs):
    image = transform(pairs[1], "i")
    assert [(e, int(c)) for e, c in image.alpha(1, 20).items()] == [(3, 1), (5, 1)]
    image = transform(pairs[1], "ii")
    assert image.alpha(0, 20) == pairs[1].alpha(0, 20)
    assert image.beta(0, 20) == pairs[1].beta(0, 20)


@pytest.mark.parametrize("which", [1, 2])
@pytest.mark.parametrize("mode", ["i", "ii", "iii"])
def test_transforms_preserve_relation(pairs, which, mode):
    image = transform(pairs[which], mode, validate=False)
    assert check_pair(image, 6, ORDER).ok


def test_inner_index_variant_is_not_a_pair(pairs):
    variant = transform(pairs[2], "ii", validate=False, inner_index=True)
    assert not check_pair(variant, 6, ORDER).ok


def test_mode_iii_needs_even_a(pairs):
    odd = BaileyPair("odd", 1, pairs[1].alpha_fn, pairs[1].beta_fn, pairs[1].alpha_low, validated=True)
    with pytest.raises(UsageError):
        transform(odd, "iii", validate=False)
    with pytest.raises(UsageError):
        transform(pairs[1], "iv")


@pytest.mark.parametrize("which", [1, 2])
@pytest.mark.parametrize("mode", ["i", "ii", "iii"])
def test_limits(pairs, which, mode):
    assert limit_identity_check(pairs[which], mode, ORDER).ok
    lhs40, rhs40 = limit_sides(pairs[which], mode, ORDER)
    lhs20, rhs20 = limit_sides(pairs[which], mode, 20)
    assert lhs40.truncate(20) == lhs20 and rhs40.truncate(20) == rhs20


@pytest.mark.parametrize("which", [1, 2])
@pytest.mark.parametrize("mode", ["an1", "an2", "an3"])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_chains(pairs, which, mode, k):
    assert iterated_identity_check(pairs[which], k, mode, ORDER).ok


@pytest.mark.parametrize("which", [1, 2])
@pytest.mark.parametrize("mode", ["an1", "an2", "an3"])
def test_single_chain_step_is_the_limit(pairs, which, mode):
    lhs, rhs = limit_sides(pairs[which], bailey.CHAIN_MODES[mode], 30)
    assert chain_lambda_side(pairs[which], 1, mode, 30) == lhs
    assert chain_alpha_side(pairs[which], 1, mode, 30) == rhs


@pytest.mark.parametrize("which", [1, 2])
@pytest.mark.parametrize("k", [2, 3])
def test_repeated_transform_then_limit_is_the_chain(pairs, which, k):
    p = pairs[which]
    for _ in range(k - 1):
        p = transform(p, "i", validate=False)
        p.validated = True
    lhs, rhs = limit_sides(p, "i", 30)
    assert lhs == chain_lambda_side(pairs[which], k, "an1", 30)
    assert rhs == chain_alpha_side(pairs[which], k, "an1", 30)


def test_chain_of_first_pair_is_the_q_squared_multisum(pairs):
    for k in (1, 2, 3):
        chain = chain_lambda_side(pairs[1], k, "an1", ORDER).rename("q")
        assert chain == forms.t3_lhs(11, k, ORDER)


# the derived multisums


@pytest.mark.parametrize("which", [55, 56, 57])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_derived_identities(which, k):
    assert derived_identity_check(which, k, ORDER).ok


def test_derived_56_constant_term():
    assert derived_lhs(56, 1, ORDER).coefficient(0) == 1


@pytest.mark.parametrize("which", [56, 57])
def test_printed_denominators_fail(which):
    for k in (1, 2, 3):
        result = derived_identity_check(which, k, ORDER, printed=True)
        assert not result.ok and result.exponent == 1


def test_derived_55_against_theta_family():
    # identical at k = 1, different from k = 2 on
    assert derived_lhs(55, 1, ORDER) == forms.t3_lhs(13, 1, ORDER)
    for k in (2, 3):
        j = derived_lhs(55, k, ORDER).first_discrepancy(forms.t3_lhs(13, k, ORDER), hi=ORDER)
        assert j is not None


def test_derived_rhs_rejects_unknown():
    with pytest.raises(UsageError):
        derived_rhs(58, 1, 10)
