"""Both sides of every verified identity, assembled from the core modules.

Series builders take monomials for their grading parameters (``Mono(c, e)``
stands for c v^e) and return a PowerSeries through v^order.  Point builders
take exact rationals and return rationals.
"""

from __future__ import annotations

from functools import lru_cache

from ..errors import DivergenceError, UsageError
from ..exactnum import ONE, ZERO, PowerSeries, rational
from ..hlpoly import (
    N_CONVENTIONS,
    PointConfig,
    elementary_sym,
    hl_symmetrization,
    phi,
    pin_n_convention,
    principal_points,
    principal_samples,
    psi,
    sign_sequences,
    twist,
)
from ..partitions import (
    Partition,
    coefficient,
    enumerate_bounded,
    gen_qbinom,
    partitions_in_box,
    partitions_of,
    pochhammer_lambda,
    strips,
)
from ..qtools import (
    INFINITE,
    Mono,
    PochSpec,
    _invert,
    congruence_product,
    jacobi_triple,
    product_term,
    qbinom,
    qpoch,
    term_valuation,
)


def _c2(n: int) -> int:
    return n * (n - 1) // 2


def _zero(order, var="q"):
    return PowerSeries.zero(0, order, var)


def _power(z: Mono, k: int) -> Mono:
    return Mono(z.coeff**k, z.exp * k)


def _times(z: Mono, c=1, e=0) -> Mono:
    """The monomial c v^e z."""
    return Mono(rational(c) * z.coeff, z.exp + e)


def _inf(c, e, step=1) -> PochSpec:
    return PochSpec(Mono(c, e), INFINITE, step)


def _fin(c, e, count, step=1) -> PochSpec:
    return PochSpec(Mono(c, e), count, step)


def _lambda_den(parts, base_exp: int):
    """(v^b; v^b)_lambda for a padded part tuple, one spec per difference."""
    out = []
    for i, p in enumerate(parts):
        nxt = parts[i + 1] if i + 1 < len(parts) else 0
        out.append(_fin(1, base_exp, p - nxt, base_exp))
    return out


def sum_until(term, valuation, order, var="q", start=0):
    """Sum term(r) for r = start, ... until valuation(r) exceeds order for good.

    ``valuation`` must be a convex lower bound; summation stops at the first r
    past the minimum whose bound exceeds the order.
    """
    total = _zero(order, var)
    r = start
    prev = None
    while True:
        v = valuation(r)
        if v > order and prev is not None and v > prev:
            return total
        if v <= order:
            total = total + term(r)
        if prev is not None and v <= prev and r - start > 4 * (order + 10):
            raise DivergenceError("summands stop raising the valuation")
        prev = v
        r += 1


@lru_cache(maxsize=None)
def pinned_n_convention() -> str:
    """The n-statistic that the principal specialization validates."""
    return pin_n_convention(principal_samples())


def n_pinned(lam) -> int:
    return N_CONVENTIONS[pinned_n_convention()](Partition(lam))


# Rogers-Ramanujan


def rr_intro_lhs(a: int, order: int) -> PowerSeries:
    total = _zero(order)
    n = 0
    while n * n + a * n <= order:
        total = total + product_term(1, n * n + a * n, den=[_fin(1, 1, n)], order=order)
        n += 1
    return total


def rr_intro_rhs(a: int, order: int) -> PowerSeries:
    return congruence_product({a + 1, -(a + 1)}, 5, order)


# sums of Hall-Littlewood polynomials, graded by t with x_i = c_i t

HL_SUM_KINDS = ("all", "even", "c", "d")


def _hl_weight(kind: str, lam: Partition, q):
    """Coefficient of P_lambda in the full sum of the given kind, or None if excluded."""
    if kind == "all":
        return ONE
    if kind == "even":
        return ONE if all(p % 2 == 0 for p in lam) else None
    if kind == "c":
        if any(m % 2 for m in lam.multiplicities().values()):
            return None
        return coefficient(lam, "c", q)
    if kind == "d":
        return coefficient(lam, "d", q)
    raise UsageError(f"unknown sum kind {kind!r}")


def hl_graded_lhs(kind: str, cs, q, order: int) -> PowerSeries:
    pc = PointConfig(tuple(cs), q)
    terms = {}
    for w in range(order + 1):
        total = ZERO
        for lam in partitions_of(w):
            if lam.length > pc.n:
                continue
            weight = _hl_weight(kind, lam, pc.q)
            if weight is None:
                continue
            total += weight * hl_symmetrization(lam, pc)
        terms[w] = total
    return PowerSeries.from_dict(terms, order, lo=0, var="t")


def _pair_specs(ys, q):
    num, den = [], []
    for i in range(len(ys)):
        for j in range(i + 1, len(ys)):
            p = Mono(ys[i].coeff * ys[j].coeff, ys[i].exp + ys[j].exp)
            num.append(Mono(q * p.coeff, p.exp))
            den.append(p)
    return num, den


def psi_series(ys, q, alpha, order: int, var="t", coeff=1, exp=0) -> PowerSeries:
    """coeff v^exp Psi_q(Y; alpha) for monomials Y, as a series."""
    q, alpha = rational(q), rational(alpha)
    num, den = _pair_specs(ys, q)
    den += list(ys)
    if alpha:
        den += [Mono(alpha * y.coeff, y.exp) for y in ys]
    return product_term(coeff, exp, num=num, den=den, order=order, var=var)


def phi_series(ys, q, alpha, beta, order: int, var="t") -> PowerSeries:
    q, alpha, beta = rational(q), rational(alpha), rational(beta)
    num, den = _pair_specs(ys, q)
    num += [Mono(alpha * y.coeff, y.exp) for y in ys if alpha]
    den += [Mono(beta * y.coeff, y.exp) for y in ys if beta]
    return product_term(1, 0, num=num, den=den, order=order, var=var)


def hl_graded_rhs(kind: str, cs, q, order: int) -> PowerSeries:
    ys = [Mono(rational(c), 1) for c in cs]
    if kind == "all":
        return psi_series(ys, q, 0, order)
    if kind == "even":
        return psi_series(ys, q, -1, order)
    if kind == "c":
        return phi_series(ys, q, 0, 0, order)
    if kind == "d":
        return phi_series(ys, q, q, 1, order)
    raise UsageError(f"unknown sum kind {kind!r}")


# sums over partitions with bounded parts


def bounded_lhs(even: bool, pc: PointConfig, k: int):
    """sum of P_lambda over lambda_1 <= k (or over even lambda with lambda_1 <= 2k)."""
    total = ZERO
    for mu in partitions_in_box(pc.n, k):
        lam = mu.scaled(2) if even else mu
        total += hl_symmetrization(lam, pc)
    return total


def bounded_rhs(even: bool, pc: PointConfig, k: int):
    alpha = -1 if even else 0
    power = 2 * k if even else k
    total = ZERO
    for xi in sign_sequences(pc.n):
        term = psi(twist(pc, xi), alpha)
        for x, s in zip(pc.xs, xi.signs):
            if s == -1:
                term *= x**power
        total += term
    return total


def bounded_graded_lhs(even: bool, cs, q, k: int, order: int) -> PowerSeries:
    pc = PointConfig(tuple(cs), q)
    terms = {}
    for mu in partitions_in_box(pc.n, k):
        lam = mu.scaled(2) if even else mu
        if lam.weight <= order:
            terms[lam.weight] = terms.get(lam.weight, ZERO) + hl_symmetrization(lam, pc)
    return PowerSeries.from_dict(terms, order, lo=0, var="t")


def bounded_graded_rhs(even: bool, cs, q, k: int, order: int) -> PowerSeries:
    """The sign-sequence side with x_i = c_i t; twisted variables are Laurent in t."""
    alpha = -1 if even else 0
    power = 2 * k if even else k
    cs = [rational(c) for c in cs]
    total = PowerSeries.zero(order, order, "t")
    for xi in sign_sequences(len(cs)):
        ys = []
        coeff, exp = ONE, 0
        for c, s in zip(cs, xi.signs):
            if s == 1:
                ys.append(Mono(c, 1))
            else:
                ys.append(Mono(ONE / c, -1))
                coeff *= c**power
                exp += power
        total = total + psi_series(ys, q, alpha, order, coeff=coeff, exp=exp)
    return total


# bounded-part formulas with the coefficients c_{lambda,k}, d_{lambda,k}


def theorem1_lhs(which: str, pc: PointConfig, k: int, kind: str | None = None):
    """Left side; ``kind`` overrides the coefficient family (c_k, c_k_half, d_k)."""
    if kind is None:
        kind = "c_k_half" if which == "a" else "d_k"
    total = ZERO
    for lam in partitions_in_box(pc.n, k):
        if which == "a" and any(m % 2 for m in lam.multiplicities().values()):
            continue
        total += coefficient(lam, kind, pc.q, k) * hl_symmetrization(lam, pc)
    return total


def theorem1_rhs(which: str, pc: PointConfig, k: int):
    total = ZERO
    for xi in sign_sequences(pc.n):
        if which == "a" and xi.minus_count % 2:
            continue
        tw = twist(pc, xi)
        term = phi(tw, 0, 0) if which == "a" else phi(tw, pc.q, 1)
        for x, s in zip(pc.xs, xi.signs):
            if s == -1:
                term *= x**k
        total += term
    return total


# the key q-identity and its specializations


def t2_degree(k_len, z: Mono, ab_count: int):
    """Lower bound for the q-valuation of a multisum term (monotone in each part)."""

    def degree(lam):
        l1 = lam.part(1)
        return z.exp * lam.weight + lam.scaled(2).n_stat() - ab_count * l1 * (l1 - 1)

    return degree


def t2_lhs(k: int, a, b, z: Mono, order: int, length=None) -> PowerSeries:
    """sum over l(lambda) <= k of z^|lambda| q^{n(2 lambda)} (a, b; q^-2)_{lambda_1}
    / ((q^2; q^2)_lambda (q; q^2)_{lambda_k}).

    ``length`` None uses k; pass a different bound with k = None to drop the
    (q; q^2)_{lambda_k} factor (unbounded length when length is also None).
    """
    a, b = rational(a), rational(b)
    ab_count = (a != 0) + (b != 0)
    degree = t2_degree(k, z, ab_count)
    bound = k if k is not None else length
    total = _zero(order)
    for lam in enumerate_bounded(bound, degree, order):
        parts = lam.padded(bound) if bound is not None else tuple(lam)
        l1 = lam.part(1)
        num = [_fin(a, 0, l1, -2), _fin(b, 0, l1, -2)]
        den = _lambda_den(parts, 2)
        if k is not None:
            den.append(_fin(1, 1, parts[-1], 2))
        w = lam.weight
        exp = z.exp * w + n_pinned(lam.scaled(2))
        if term_valuation(exp, num, den) < (z.exp + 1) * w:
            raise DivergenceError(f"term {tuple(lam)} has valuation below its weight")
        total = total + product_term(z.coeff**w, exp, num=num, den=den, order=order)
    return total


def t2_rhs(k: int, a, b, z: Mono, order: int) -> PowerSeries:
    """The r-sum side.  The r = 0 factor (1 - z/q)/(z/q; q)_inf is used in its
    cancelled form 1/(z; q)_inf, which keeps z = q admissible."""
    a, b = rational(a), rational(b)
    prefix_num = [PochSpec(z, INFINITE, 2)]
    prefix_den = [PochSpec(_times(z, a * b, 1), INFINITE, 2)]

    def specs(r):
        num = prefix_num + [
            _fin(a, 0, r, -2),
            _fin(b, 0, r, -2),
            PochSpec(_times(z, a, 2 * r + 1), INFINITE, 2),
            PochSpec(_times(z, b, 2 * r + 1), INFINITE, 2),
        ]
        den = prefix_den + [_fin(1, 1, 2 * r)]
        if r == 0:
            den.append(PochSpec(z, INFINITE, 1))
        else:
            den.append(PochSpec(_times(z, 1, 2 * r - 1), INFINITE, 1))
            num.append(_times(z, 1, 4 * r - 1))
        zk = _power(z, k * r)
        return zk.coeff, zk.exp + (k + 1) * _c2(2 * r), num, den

    def term(r):
        c, e, num, den = specs(r)
        return product_term(c, e, num=num, den=den, order=order)

    def valuation(r):
        c, e, num, den = specs(r)
        return term_valuation(e, num, den)

    return sum_until(term, valuation, order)


def t2zq_display(k: int, a, b, order: int, printed: bool) -> PowerSeries:
    """The displayed z = q form; ``printed`` keeps the leading 1 as displayed,
    otherwise the r = 0 term is (aq^2, bq^2; q^2)_inf/((abq^2; q^2)_inf (q^2; q^2)_inf)."""
    a, b = rational(a), rational(b)
    den = [_inf(a * b, 2, 2), _inf(1, 2, 2)]
    if printed:
        total = PowerSeries.one(order)
    else:
        total = product_term(1, 0, num=[_inf(a, 2, 2), _inf(b, 2, 2)], den=den, order=order)

    def term(r):
        num = [_fin(a, 0, r, -2), _fin(b, 0, r, -2), _inf(a, 2 * r + 2, 2), _inf(b, 2 * r + 2, 2), Mono(-1, 2 * r)]
        return product_term(1, 2 * k * r * r + _c2(2 * r), num=num, den=den, order=order)

    ab_count = (a != 0) + (b != 0)
    return total + sum_until(term, lambda r: 2 * k * r * r + _c2(2 * r) - ab_count * r * (r - 1), order, start=1)


# Jacobi triple product and the multisum identities with theta-quotient sides

T3_IDS = (11, 12, 13, 14, 15, 16)


def _t3_shape(which: int, printed: bool):
    """(exponent, extra numerator specs) for the multisum term of lambda."""
    if which == 11:
        return lambda n2, l1: 2 * n2, lambda l1: []
    if which == 12:
        return lambda n2, l1: 2 * n2 - 2 * l1, lambda l1: [Mono(1, 2 * l1)]
    if which == 13:
        return lambda n2, l1: 2 * n2 - l1 * l1, lambda l1: [_fin(-1, 1, l1, 2)]
    if which == 14:
        return lambda n2, l1: 2 * n2 - l1 * l1 - l1, lambda l1: [_fin(-1, 0, l1, 2), Mono(1, 2 * l1)]
    if which == 15:
        if printed:
            exp = lambda n2, l1: 2 * n2 - l1 * l1 + l1  # noqa: E731
        else:
            exp = lambda n2, l1: 2 * n2 - 2 * l1 * l1 + l1  # noqa: E731
        return exp, lambda l1: [_fin(-1, 0, l1, 2), _fin(-1, 1, l1, 2)]
    if which == 16:
        return lambda n2, l1: 2 * n2 - l1 * l1 + l1, lambda l1: [_fin(-1, 0, l1, 2)]
    raise UsageError(f"no multisum {which}")


def t3_lhs(which: int, k: int, order: int, printed: bool = False) -> PowerSeries:
    """Multisum over l(lambda) <= k with denominator (q; q^2)_{lambda_k} (q^2; q^2)_lambda.

    ``printed`` only matters for 15, whose displayed exponent differs from
    the one the derivation produces.
    """
    exp_fn, num_fn = _t3_shape(which, printed)

    def degree(lam):
        return exp_fn(lam.n2(), lam.part(1))

    total = _zero(order)
    for lam in enumerate_bounded(k, degree, order):
        parts = lam.padded(k)
        den = _lambda_den(parts, 2) + [_fin(1, 1, parts[-1], 2)]
        total = total + product_term(1, degree(lam), num=num_fn(parts[0]), den=den, order=order)
    return total


def _t3_jtp_data(which: int, k: int):
    """(scalar, prefactor num, prefactor den, x exponent, modulus) of the J-form."""
    if which == 11:
        return 1, [], [_inf(1, 2, 2)], 2 * k + 1, 4 * k + 4
    if which == 12:
        return 1, [], [_inf(1, 2, 2)], 2 * k - 1, 4 * k + 4
    if which == 13:
        return 1, [_inf(-1, 1, 2)], [_inf(1, 2, 2)], 2 * k, 4 * k + 2
    if which == 14:
        return 2, [_inf(-1, 2, 2)], [_inf(1, 2, 2)], 2 * k - 1, 4 * k + 2
    if which == 15:
        return 1, [_inf(-1, 1)], [_inf(1, 1)], 2 * k, 4 * k
    if which == 16:
        return 1, [_inf(-1, 2, 2)], [_inf(1, 2, 2)], 2 * k + 1, 4 * k + 2
    raise UsageError(f"no multisum {which}")


def t3_jtp(which: int, k: int, order: int) -> PowerSeries:
    """Prefactor times the sum side of J(-q^x, q^M)."""
    c, num, den, x, m = _t3_jtp_data(which, k)
    pre = product_term(c, 0, num=num, den=den, order=order)
    return pre * jacobi_triple(Mono(-1, x), m, order, side="sum")


def _pm(values, m):
    return {v % m for x in values for v in (x, -x)}


def t3_printed(which: int, k: int, order: int) -> PowerSeries:
    """The product side exactly as displayed (residue lists and theta quotients)."""
    if which == 11:
        m = 8 * k + 8
        res = _pm([2 * k + 1, 2 * k + 3] + list(range(2, 4 * k + 1, 2)), m)
        return congruence_product(res, m, order)
    if which == 12:
        m = 8 * k + 8
        res = _pm([2 * k + 5] + list(range(2, 4 * k + 1, 2)) + [4 * k + 2], m)
        top = product_term(1, 0, num=[_inf(1, 2 * k - 1, m), _inf(1, 6 * k + 9, m)], order=order)
        return top * congruence_product(res, m, order)
    if which == 13:
        m = 4 * k + 2
        num = [_inf(-1, 1, 2), _inf(1, m, m), _inf(-1, 2 * k, m), _inf(-1, 2 * k + 2, m)]
        return product_term(1, 0, num=num, den=[_inf(1, 2, 2)], order=order)
    if which == 14:
        m = 4 * k + 2
        num = [_inf(-1, 2, 2), _inf(1, m, m), _inf(-1, 2 * k - 1, m), _inf(-1, 2 * k + 3, m)]
        return product_term(1, 0, num=num, den=[_inf(1, 2, 2)], order=order)
    if which == 15:
        m = 4 * k
        num = [_inf(-1, 1), _inf(1, m, m), _inf(-1, 2 * k, m), _inf(-1, 2 * k, m)]
        return product_term(1, 0, num=num, den=[_inf(1, 1)], order=order)
    if which == 16:
        m = 4 * k + 2
        num = [_inf(-1, 2, 2), _inf(1, m, m), _inf(-1, 2 * k + 1, m), _inf(-1, 2 * k + 1, m)]
        return product_term(1, 0, num=num, den=[_inf(1, 2, 2)], order=order)
    raise UsageError(f"no multisum {which}")


# single-sum identities

RR_IDS = (17, 18, 19, 20, 21, 22)
RR_FROM_T3 = {17: 11, 18: 12, 19: 13, 20: 14, 21: 15, 22: 16}
# the k = 1 multisum equals this multiple of the single sum
RR_COLLAPSE_FACTOR = {17: 1, 18: 1, 19: 1, 20: 2, 21: 1, 22: 1}


def rr_lhs(which: int, order: int) -> PowerSeries:
    if which == 17:
        return sum_until(lambda n: product_term(1, 2 * n * n, den=[_fin(1, 1, 2 * n)], order=order), lambda n: 2 * n * n, order)
    if which == 18:
        e = lambda n: 2 * n * n + 2 * n  # noqa: E731
        return sum_until(lambda n: product_term(1, e(n), den=[_fin(1, 1, 2 * n + 1)], order=order), e, order)
    if which == 19:
        e = lambda n: n * n  # noqa: E731
        return sum_until(
            lambda n: product_term(1, e(n), num=[_fin(-1, 1, n, 2)], den=[_fin(1, 1, 2 * n)], order=order), e, order
        )
    if which == 20:
        e = lambda n: n * n + n  # noqa: E731
        return sum_until(
            lambda n: product_term(1, e(n), num=[_fin(-1, 2, n, 2)], den=[_fin(1, 1, 2 * n + 1)], order=order), e, order
        )
    if which == 21:
        tail = sum_until(
            lambda n: product_term(2, n, num=[_fin(-1, 1, 2 * n - 1)], den=[_fin(1, 1, 2 * n)], order=order),
            lambda n: n,
            order,
            start=1,
        )
        return PowerSeries.one(order) + tail
    if which == 22:
        e = lambda n: n * n + n  # noqa: E731
        tail = sum_until(
            lambda n: product_term(2, e(n), num=[_fin(-1, 2, n - 1, 2)], den=[_fin(1, 1, 2 * n)], order=order),
            e,
            order,
            start=1,
        )
        return PowerSeries.one(order) + tail
    raise UsageError(f"no single-sum identity {which}")


def rr_rhs(which: int, order: int) -> PowerSeries:
    if which == 17:
        return congruence_product(_pm([2, 3, 4, 5], 16), 16, order)
    if which == 18:
        return congruence_product(_pm([1, 4, 6, 7], 16), 16, order)
    if which == 19:
        num = [_inf(1, 6, 12), _inf(1, 6, 12), _inf(1, 12, 12)]
        return product_term(1, 0, num=num, den=[_inf(1, 1)], order=order)
    if which == 20:
        num = [_inf(1, 3, 12), _inf(1, 9, 12), _inf(1, 12, 12)]
        return product_term(1, 0, num=num, den=[_inf(1, 1)], order=order)
    if which == 21:
        num = [_inf(1, 4, 4), _inf(-1, 2, 4), _inf(-1, 2, 4)]
        return product_term(1, 0, num=num, den=[_inf(1, 1), _inf(1, 1, 2)], order=order)
    if which == 22:
        num = [_inf(1, 6, 6), _inf(-1, 3, 6), _inf(-1, 3, 6)]
        return product_term(1, 0, num=num, den=[_inf(1, 1), _inf(-1, 1, 2)], order=order)
    raise UsageError(f"no single-sum identity {which}")


# bounded-part formulas at the principal specialization


def t4_lhs(which: str, n: int, k: int, z, q, printed: bool = False):
    """Finite multisum side.  For ``a`` the coefficient of (2 lambda)' uses
    the half form unless ``printed``."""
    z, q = rational(z), rational(q)
    total = ZERO
    for lam in partitions_in_box(k, n):
        if which == "a":
            two = lam.scaled(2)
            g = gen_qbinom(n, two, q)
            if not g:
                continue
            c = coefficient(two.conjugate(), "c_k" if printed else "c_k_half", q, k)
            total += c * z**lam.weight * q ** n_pinned(two) * g
        else:
            c = coefficient(lam.conjugate(), "d_k", q, k)
            total += c * z**lam.weight * q ** n_pinned(lam) * gen_qbinom(n, lam, q)
    return total


def t4_rhs(which: str, n: int, k: int, z, q):
    z, q = rational(z), rational(q)
    total = ZERO
    if which == "a":
        for r in range(n // 2 + 1):
            term = z ** (k * r) * q ** ((k + 1) * _c2(2 * r)) * qbinom(n, 2 * r, q)
            term *= (1 - z * q ** (4 * r - 1)) * _invert(qpoch(z * q ** (2 * r - 1), q, n + 1))
            total += term
        return qpoch(z, q * q, n) * total
    z2 = z * z
    for r in range(n + 1):
        term = z ** (k * r) * q ** (r + (k + 1) * _c2(r)) * qbinom(n, r, q)
        term *= (1 - z / q) * (1 - z2 * q ** (2 * r - 1)) * (1 - z * q**n)
        term *= _invert((1 - z * q ** (r - 1)) * (1 - z * q**r) * qpoch(z2 * q ** (r - 1), q, n + 1))
        total += term
    return qpoch(z2, q * q, n) * total


def t4_hl_lhs(which: str, n: int, k: int, w, q):
    """The same left side computed from Hall-Littlewood values at a principal point.

    For ``a`` the point is x_i = w q^{i-1} and z = w^2; for ``b`` x_i = w q^{i-1} and z = w.
    """
    pc = principal_points(n, w, q)
    total = ZERO
    for lam in partitions_in_box(k, n):
        if which == "a":
            if 2 * lam.part(1) > n:
                continue
            mu = lam.scaled(2).conjugate()
            total += coefficient(mu, "c_k_half", pc.q, k) * hl_symmetrization(mu, pc)
        else:
            mu = lam.conjugate()
            total += coefficient(mu, "d_k", pc.q, k) * hl_symmetrization(mu, pc)
    return total


def lim2_lhs(k: int, z: Mono, order: int) -> PowerSeries:
    def degree(lam):
        return z.exp * lam.weight + n_pinned(lam)

    total = _zero(order)
    for lam in enumerate_bounded(k, degree, order):
        parts = lam.padded(k)
        den = [_fin(1, 1, parts[-1])]
        den += [_fin(1, 2, (parts[i] - parts[i + 1]) // 2, 2) for i in range(k - 1)]
        total = total + product_term(z.coeff**lam.weight, degree(lam), den=den, order=order)
    return total


def lim2_rhs(k: int, z: Mono, order: int) -> PowerSeries:
    z2 = _power(z, 2)
    pre = PochSpec(z2, INFINITE, 2)

    def specs(r):
        zk = _power(z, k * r)
        num = [pre, _times(z, 1, -1), _times(z2, 1, 2 * r - 1)]
        den = [_fin(1, 1, r), _times(z, 1, r - 1), _times(z, 1, r), PochSpec(_times(z2, 1, r - 1), INFINITE, 1)]
        return zk.coeff, zk.exp + r + (k + 1) * _c2(r), num, den

    def term(r):
        c, e, num, den = specs(r)
        return product_term(c, e, num=num, den=den, order=order)

    return sum_until(term, lambda r: term_valuation(*specs(r)[1:]), order)


def odd_product_inverse(order: int) -> PowerSeries:
    return product_term(1, 0, den=[_inf(1, 1, 2)], order=order)


# q-Pieri rule for generalized q-binomials


def qpieri_sides(mu, m: int, n: int, q):
    mu = Partition(mu)
    q = rational(q)
    lhs = q ** (_c2(m) + mu.n_stat()) * qbinom(n, m, q) * gen_qbinom(n, mu, q)
    rhs = ZERO
    for lam in strips(mu, m, "horizontal"):
        weight = ONE
        for i in range(1, lam.length + 1):
            weight *= qbinom(lam.part(i) - lam.part(i + 1), lam.part(i) - mu.part(i), q)
        rhs += q ** lam.n_stat() * gen_qbinom(n, lam, q) * weight
    return lhs, rhs


def horizontal_strips_brute(mu, m: int):
    """Filter every partition of |mu| + m by containment and interlacing."""
    mu = Partition(mu)
    found = []
    for lam in partitions_of(mu.weight + m):
        if lam.contains(mu) and all(lam.part(i + 1) <= mu.part(i) for i in range(1, lam.length + 1)):
            found.append(lam)
    return sorted(found, reverse=True)


def geometric_e_sides(r: int, i: int, j: int, q):
    q = rational(q)
    pc = PointConfig(tuple(q ** (i + t) for t in range(j)), q)
    return elementary_sym(r, pc), q ** (i * r + _c2(r)) * qbinom(j, r, q)


# finite sums of generalized q-binomials, graded by z


def lemma6_sides(which: int, n: int, q, order: int):
    q = rational(q)
    terms = {}
    for w in range(order + 1):
        total = ZERO
        # z counts |lambda|; in 40 the q-binomial is taken at 2 lambda
        for lam in partitions_of(w, n // 2 if which == 40 else n):
            if which == 38:
                total += q ** (2 * lam.n_stat()) * gen_qbinom(n, lam, q)
            elif which == 39:
                total += q ** lam.n_stat() * gen_qbinom(n, lam, q)
            elif which == 40:
                two = lam.scaled(2)
                total += pochhammer_lambda(q, lam, q * q) * q ** two.n_stat() * gen_qbinom(n, two, q)
            else:
                raise UsageError(f"no finite sum {which}")
        terms[w] = total
    lhs = PowerSeries.from_dict(terms, order, lo=0, var="z")
    powers = [Mono(q**j, 1) for j in range(n)]
    if which == 38:
        rhs = product_term(1, 0, den=powers, order=order, var="z")
    elif which == 39:
        num = [Mono(-(q**j), 1) for j in range(n)]
        den = [Mono(q**j, 2) for j in range(n)]
        rhs = product_term(1, 0, num=num, den=den, order=order, var="z")
    else:
        num = [Mono(q ** (2 * j), 1) for j in range(n)]
        rhs = product_term(1, 0, num=num, den=powers, order=order, var="z")
    return lhs, rhs


def lemma6_limit_sides(which: int, z: Mono, order: int):
    """The n -> infinity forms, graded by q with z = c q^s (s >= 1)."""
    if which == 1:
        degree = lambda lam: z.exp * lam.weight + 2 * lam.n_stat()  # noqa: E731
        base = 1
    elif which == 2:
        degree = lambda lam: z.exp * lam.weight + lam.n_stat()  # noqa: E731
        base = 1
    elif which == 3:
        degree = lambda lam: z.exp * lam.weight + lam.scaled(2).n_stat()  # noqa: E731
        base = 2
    else:
        raise UsageError(f"no limit form {which}")
    lhs = _zero(order)
    for lam in enumerate_bounded(None, degree, order):
        den = _lambda_den(tuple(lam), base)
        lhs = lhs + product_term(z.coeff**lam.weight, degree(lam), den=den, order=order)
    if which == 1:
        rhs = product_term(1, 0, den=[PochSpec(z, INFINITE, 1)], order=order)
    elif which == 2:
        num = [PochSpec(_times(z, -1), INFINITE, 1)]
        den = [PochSpec(_power(z, 2), INFINITE, 1)]
        rhs = product_term(1, 0, num=num, den=den, order=order)
    else:
        rhs = product_term(1, 0, den=[PochSpec(_times(z, 1, 1), INFINITE, 2)], order=order)
    return lhs, rhs


# q-Gauss sum


def qgauss_sides(a, b, x: Mono, order: int):
    a, b = rational(a), rational(b)
    ratio = _times(x, ONE / (a * b))

    def term(n):
        num = [_fin(a, 0, n), _fin(b, 0, n)]
        den = [_fin(1, 1, n), PochSpec(x, n, 1)]
        return product_term(ratio.coeff**n, ratio.exp * n, num=num, den=den, order=order)

    lhs = sum_until(term, lambda n: ratio.exp * n, order)
    num = [PochSpec(_times(x, ONE / a), INFINITE, 1), PochSpec(_times(x, ONE / b), INFINITE, 1)]
    den = [PochSpec(x, INFINITE, 1), PochSpec(ratio, INFINITE, 1)]
    return lhs, product_term(1, 0, num=num, den=den, order=order)


def qgauss_terminating_sides(m: int, a, x, q):
    a, x, q = rational(a), rational(x), rational(q)
    lhs = ZERO
    for n in range(m + 1):
        term = qpoch(a, q, n) * qpoch(q ** (-m), q, n) * (x * q**m / a) ** n
        lhs += term * _invert(qpoch(q, q, n) * qpoch(x, q, n))
    rhs = qpoch(x / a, q, m) * _invert(qpoch(x, q, m))
    return lhs, rhs


def lemma7_sides(a, b, z, order: int):
    """Unbounded-length multisum with (a, b; q^-2)_{lambda_1} against its product."""
    z = Mono(rational(z), 0)
    lhs = t2_lhs(None, a, b, z, order, length=None)
    a, b = rational(a), rational(b)
    num = [_inf(a * z.coeff, 1, 2), _inf(b * z.coeff, 1, 2)]
    den = [_inf(z.coeff, 1, 2), _inf(a * b * z.coeff, 1, 2)]
    return lhs, product_term(1, 0, num=num, den=den, order=order)
