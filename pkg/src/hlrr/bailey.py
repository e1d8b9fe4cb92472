"""Bailey pairs, Bailey's lemma and the chains built from it.

Everything here lives in a variable s whose square is the Bailey base
p = s^2, so half powers of p are whole powers of s.  The parameter a is
always a pure power s^a_exp.  Once the chains are summed, s plays the
role of q in the resulting Rogers-Ramanujan type identities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import DivergenceError, UsageError
from .exactnum import ONE, PowerSeries
from .partitions import Partition, enumerate_bounded
from .qtools import INFINITE, Mono, PochSpec, product_term

VAR = "s"
VALIDATION_DEPTH = 8
TRANSFORM_DEPTH = 6
VALIDATION_ORDER = 40


def _poch(c, e, n, step=2):
    """(c s^e; s^step)_n as a PochSpec."""
    return PochSpec(Mono(c, e), n, step)


def _zero(order):
    return PowerSeries.zero(order, order, VAR)


def _apply(f: PowerSeries, num=(), den=()):
    """Multiply f by the binomials of num and divide by those of den."""
    for spec in num:
        for j in range(spec.count):
            f = f.mul_binomial(spec.argument.coeff, spec.argument.exp + spec.step * j)
    for spec in den:
        for j in range(spec.count):
            f = f.div_binomial(spec.argument.coeff, spec.argument.exp + spec.step * j)
    return f


@dataclass
class BaileyPair:
    """A pair (alpha_n, beta_n) relative to a = s^a_exp.

    ``alpha_fn(n, order)`` and ``beta_fn(n, order)`` return series in s
    through s^order.  ``alpha_low(n)`` is a lower bound for the valuation of
    alpha_n; every beta_n is a power series (valuation >= 0).
    """

    label: str
    a_exp: int
    alpha_fn: Callable
    beta_fn: Callable
    alpha_low: Callable
    validated: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    def alpha(self, n: int, order: int) -> PowerSeries:
        return self._memo("alpha", n, order)

    def beta(self, n: int, order: int) -> PowerSeries:
        return self._memo("beta", n, order)

    def _memo(self, which, n, order):
        key = (which, n, order)
        if key not in self._cache:
            fn = self.alpha_fn if which == "alpha" else self.beta_fn
            self._cache[key] = fn(n, order)
        return self._cache[key]

    def require_validated(self):
        if not self.validated:
            raise UsageError(f"Bailey pair {self.label!r} has not passed the relation check")


@dataclass
class CheckResult:
    ok: bool
    failing_n: int | None = None
    exponent: int | None = None
    lhs: object = None
    rhs: object = None

    def __bool__(self):
        return self.ok


def relation_sides(p: BaileyPair, n: int, order: int):
    """beta_n and sum_r alpha_r / ((p)_{n-r} (ap)_{n+r})."""
    rhs = _zero(order)
    for r in range(n + 1):
        if p.alpha_low(r) > order:
            continue
        term = p.alpha(r, order)
        term = _apply(term, den=[_poch(1, 2, n - r), _poch(1, p.a_exp + 2, n + r)])
        rhs = rhs + term
    return p.beta(n, order), rhs


def check_pair(p: BaileyPair, n_max: int = VALIDATION_DEPTH, order: int = VALIDATION_ORDER) -> CheckResult:
    for n in range(n_max + 1):
        lhs, rhs = relation_sides(p, n, order)
        j = lhs.first_discrepancy(rhs, hi=order)
        if j is not None:
            return CheckResult(False, n, j, lhs.coefficient(j) if lhs.lo <= j else 0, rhs.coefficient(j) if rhs.lo <= j else 0)
    return CheckResult(True)


def _validate(p: BaileyPair, depth: int) -> BaileyPair:
    result = check_pair(p, depth)
    if not result.ok:
        raise UsageError(f"Bailey pair {p.label!r} fails the relation at n={result.failing_n}")
    p.validated = True
    return p


# the two pairs from Slater's list, in base p = s^2


def _pair1_alpha(n, order, literal_alpha0=False):
    if n == 0:
        return PowerSeries.constant(2 if literal_alpha0 else 1, max(order, 0), VAR) if order >= 0 else _zero(order)
    terms = {2 * n * n + n: ONE, 2 * n * n - n: ONE}
    terms = {e: c for e, c in terms.items() if e <= order}
    if not terms:
        return _zero(order)
    return PowerSeries.from_dict(terms, order, var=VAR)


def _pair1_beta(n, order):
    return product_term(1, 0, den=[_poch(1, 1, n), _poch(1, 2, n)], order=order, var=VAR)


def _pair2_alpha(n, order):
    # (1 + s^{2n+1}) / (1 + s) is an exact polynomial
    return product_term(
        1, 2 * n * n + n, num=[Mono(-1, 2 * n + 1)], den=[Mono(-1, 1)], order=order, var=VAR
    )


def _pair2_beta(n, order):
    return product_term(1, 0, den=[_poch(1, 3, n), _poch(1, 2, n)], order=order, var=VAR)


def slater_pair(which: int, literal_alpha0: bool = False, validate: bool = True) -> BaileyPair:
    """Pair 1 has a = 1, pair 2 has a = p.

    Pair 1's displayed alpha_n evaluates to 2 at n = 0, but the relation at
    n = 0 forces alpha_0 = beta_0 = 1; ``literal_alpha0`` keeps the 2.
    """
    if which == 1:
        pair = BaileyPair(
            label="slater-1" + ("-literal" if literal_alpha0 else ""),
            a_exp=0,
            alpha_fn=lambda n, order: _pair1_alpha(n, order, literal_alpha0),
            beta_fn=_pair1_beta,
            alpha_low=lambda n: 2 * n * n - n,
        )
    elif which == 2:
        pair = BaileyPair(
            label="slater-2",
            a_exp=2,
            alpha_fn=_pair2_alpha,
            beta_fn=_pair2_beta,
            alpha_low=lambda n: 2 * n * n + n,
        )
    else:
        raise UsageError(f"no Slater pair {which}")
    if validate:
        _validate(pair, VALIDATION_DEPTH)
    return pair


# Bailey's lemma


def _half_a(p: BaileyPair) -> int:
    if p.a_exp % 2:
        raise UsageError("mode iii needs a to be an even power of s")
    return p.a_exp // 2


def _mode_data(p: BaileyPair, mode: str):
    """Per-mode pieces: exponent of the n-th weight, and the Pochhammer arguments.

    Returns (weight_exp(n), top, bottom) where the weight is s^weight_exp(n),
    ``top`` the s-exponent c with (-s^c; s^2)_n multiplying beta_k (None if
    absent) and ``bottom`` the one dividing by (-s^c; s^2)_n.
    """
    a = p.a_exp
    if mode == "i":
        return (lambda n: a * n + 2 * n * n), None, None
    if mode == "ii":
        return (lambda n: a * n + n * n), 1, a + 1
    if mode == "iii":
        h = _half_a(p)
        return (lambda n: h * n + n * n), h + 1, h + 1
    raise UsageError(f"unknown transform mode {mode!r}")


def transform(p: BaileyPair, mode: str, validate: bool = True, inner_index: bool = False) -> BaileyPair:
    """The image of p under one of the three forms of Bailey's lemma.

    In mode ii the denominator (-a p^{1/2})_n carries the outer index n,
    which is what the lemma gives when the free parameters go to infinity.
    ``inner_index`` puts the summation index there instead; that variant is
    not a Bailey pair in general and exists so the difference can be shown.
    """
    p.require_validated()
    weight, top, bottom = _mode_data(p, mode)

    def alpha_fn(n, order):
        sh = weight(n)
        f = p.alpha(n, order - sh).shift(sh)
        if top is not None:
            # ratio (-s^top; s^2)_n / (-s^bottom; s^2)_n; trivial in mode iii
            if top != bottom:
                f = _apply(f, num=[_poch(-1, top, n)], den=[_poch(-1, bottom, n)])
        return f

    def beta_fn(n, order):
        total = _zero(order)
        for k in range(n + 1):
            sh = weight(k)
            if sh > order:
                continue
            f = p.beta(k, order - sh).shift(sh)
            num = [_poch(-1, top, k)] if top is not None else []
            den = [_poch(1, 2, n - k)]
            if inner_index and bottom is not None:
                den.append(_poch(-1, bottom, k))
            f = _apply(f, num=num, den=den)
            total = total + f
        if bottom is not None and not inner_index:
            total = _apply(total, den=[_poch(-1, bottom, n)])
        return total

    image = BaileyPair(
        label=f"{p.label}>{mode}",
        a_exp=p.a_exp,
        alpha_fn=alpha_fn,
        beta_fn=beta_fn,
        alpha_low=lambda n: weight(n) + p.alpha_low(n),
    )
    if validate:
        _validate(image, TRANSFORM_DEPTH)
    return image


def _sum_terms(bound, term, order, what):
    """Sum term(n) for n = 0, 1, ... while bound(n) <= order."""
    total = _zero(order)
    n = 0
    while bound(n) <= order:
        if bound(n + 1) <= bound(n) and bound(n + 2) <= bound(n + 1):
            raise DivergenceError(f"{what}: summands stop raising the valuation at n={n}")
        total = total + term(n)
        n += 1
    return total


def limit_sides(p: BaileyPair, mode: str, order: int):
    """Both sides of the n -> infinity form of the lemma in the given mode."""
    p.require_validated()
    weight, top, bottom = _mode_data(p, mode)
    a = p.a_exp

    def beta_term(n):
        sh = weight(n)
        f = p.beta(n, order - sh).shift(sh)
        if top is not None:
            f = _apply(f, num=[_poch(-1, top, n)])
        return f

    def alpha_term(r):
        sh = weight(r)
        f = p.alpha(r, order - sh).shift(sh)
        if top is not None and top != bottom:
            f = _apply(f, num=[_poch(-1, top, r)], den=[_poch(-1, bottom, r)])
        return f

    lhs = _sum_terms(weight, beta_term, order, "beta side")
    rhs = _sum_terms(lambda r: weight(r) + p.alpha_low(r), alpha_term, order, "alpha side")
    rhs = _prefactor(rhs, a, bottom if mode != "i" else None)
    return lhs, rhs


def _prefactor(f: PowerSeries, a_exp: int, bottom):
    """Multiply by (-s^bottom; s^2)_inf / (a p; p)_inf on f's window."""
    num = [PochSpec(Mono(-1, bottom), INFINITE, 2)] if bottom is not None else []
    den = [PochSpec(Mono(1, a_exp + 2), INFINITE, 2)]
    factor = product_term(1, 0, num=num, den=den, order=f.hi - min(f.lo, 0), var=VAR)
    return (f * factor).truncate(f.hi)


def limit_identity_check(p: BaileyPair, mode: str, order: int) -> CheckResult:
    lhs, rhs = limit_sides(p, mode, order)
    j = lhs.first_discrepancy(rhs, hi=order)
    return CheckResult(j is None, exponent=j, lhs=lhs, rhs=rhs)


CHAIN_MODES = {"an1": "i", "an2": "ii", "an3": "iii"}


def chain_alpha_side(p: BaileyPair, k: int, mode: str, order: int) -> PowerSeries:
    """Left side of the k-fold iteration: a prefactor times a sum over alpha_r."""
    p.require_validated()
    if k < 1:
        raise UsageError("k must be positive")
    weight, top, bottom = _mode_data(p, CHAIN_MODES[mode])

    def term(r):
        sh = k * weight(r)
        f = p.alpha(r, order - sh).shift(sh)
        if top is not None and top != bottom:
            for _ in range(k):
                f = _apply(f, num=[_poch(-1, top, r)], den=[_poch(-1, bottom, r)])
        return f

    total = _sum_terms(lambda r: k * weight(r) + p.alpha_low(r), term, order, "alpha side")
    return _prefactor(total, p.a_exp, bottom if mode != "an1" else None)


def chain_degree(p: BaileyPair, mode: str):
    """s-exponent of the monomial weight of lambda in the k-fold sum (monotone)."""
    a = p.a_exp
    if mode == "an1":
        return lambda lam: a * lam.weight + 2 * lam.n2()
    if mode == "an2":
        return lambda lam: a * lam.weight + lam.n2()
    if mode == "an3":
        h = _half_a(p)
        return lambda lam: h * lam.weight + lam.n2()
    raise UsageError(f"unknown chain mode {mode!r}")


def chain_lambda_term(p: BaileyPair, lam: Partition, k: int, mode: str, order: int) -> PowerSeries:
    exp = chain_degree(p, mode)(lam)
    parts = lam.padded(k)
    last = parts[-1]
    f = p.beta(last, order - exp).shift(exp)
    num = [_poch(1, 2, last)]
    den = [_poch(1, 2, parts[i] - parts[i + 1]) for i in range(k - 1)] + [_poch(1, 2, last)]
    if mode == "an2":
        num += [_poch(-1, 1, x) for x in parts]
        den += [_poch(-1, p.a_exp + 1, x) for x in parts[:-1]]
    elif mode == "an3":
        num.append(_poch(-1, _half_a(p) + 1, last))
    return _apply(f, num=num, den=den)


def chain_lambda_side(p: BaileyPair, k: int, mode: str, order: int) -> PowerSeries:
    """Right side of the k-fold iteration: the sum over partitions of length <= k."""
    p.require_validated()
    total = _zero(order)
    for lam in enumerate_bounded(k, chain_degree(p, mode), order):
        total = total + chain_lambda_term(p, lam, k, mode, order)
    return total


def iterated_identity_check(p: BaileyPair, k: int, mode: str, order: int) -> CheckResult:
    lhs = chain_alpha_side(p, k, mode, order)
    rhs = chain_lambda_side(p, k, mode, order)
    j = lhs.first_discrepancy(rhs, hi=order)
    return CheckResult(j is None, exponent=j, lhs=lhs, rhs=rhs)


# the multisum identities obtained from the two Slater pairs

DERIVED = {
    # which: (pair, chain mode)
    55: (1, "an2"),
    56: (2, "an1"),
    57: (2, "an3"),
}


def _derived_degree(which):
    if which == 55:
        return lambda lam: lam.n2()
    if which == 56:
        return lambda lam: 2 * lam.weight + 2 * lam.n2()
    if which == 57:
        return lambda lam: lam.weight + lam.n2()
    raise UsageError(f"no derived identity {which}")


def derived_lhs(which: int, k: int, order: int, printed: bool = False, var: str = "q") -> PowerSeries:
    """Multisum side.  For 56 and 57 the denominator is (q; q^2)_{lambda_k + 1}
    unless ``printed`` asks for the displayed (q; q^2)_{lambda_k}."""
    degree = _derived_degree(which)
    extra = 0 if (which == 55 or printed) else 1
    total = PowerSeries.zero(order, order, var)
    for lam in enumerate_bounded(k, degree, order):
        parts = lam.padded(k)
        last = parts[-1]
        den = [_poch(1, 2, parts[i] - parts[i + 1]) for i in range(k - 1)]
        den += [_poch(1, 2, last), _poch(1, 1, last + extra)]
        num = []
        if which == 55:
            num.append(_poch(-1, 1, last))
        elif which == 57:
            num.append(_poch(-1, 2, last))
        total = total + product_term(1, degree(lam), num=num, den=den, order=order, var=var)
    return total


def derived_rhs(which: int, k: int, order: int, var: str = "q") -> PowerSeries:
    if which == 55:
        m = 2 * k + 4
        num = [Mono(1, m), Mono(-1, k + 1), Mono(-1, k + 3)]
        den = [PochSpec(Mono(1, 1), INFINITE, 1), PochSpec(Mono(-1, 2), INFINITE, 2)]
    elif which == 56:
        m = 4 * k + 4
        num = [Mono(1, m), Mono(-1, 4 * k + 3), Mono(-1, 1)]
        den = [PochSpec(Mono(1, 2), INFINITE, 2)]
    elif which == 57:
        m = 2 * k + 4
        num = [Mono(1, m), Mono(-1, 2 * k + 3), Mono(-1, 1)]
        den = [PochSpec(Mono(1, 1), INFINITE, 1), PochSpec(Mono(-1, 1), INFINITE, 2)]
    else:
        raise UsageError(f"no derived identity {which}")
    num = [PochSpec(x, INFINITE, m) for x in num]
    return product_term(1, 0, num=num, den=den, order=order, var=var)


def derived_chain(which: int, k: int, order: int, var: str = "q") -> PowerSeries:
    """The partition side of the k-fold chain that produces identity ``which``.

    For pair 54 the chain carries 1/(s^3; s^2)_{lambda_k}, which is
    (1 - s)/(s; s^2)_{lambda_k + 1}; dividing by (1 - s) lines it up with
    the multisum side.
    """
    pair_id, mode = DERIVED[which]
    chain = chain_lambda_side(slater_pair(pair_id), k, mode, order)
    if pair_id == 2:
        chain = chain.div_binomial(1, 1)
    return chain.rename(var)


def derived_identity_check(which: int, k: int, order: int, printed: bool = False) -> CheckResult:
    lhs = derived_lhs(which, k, order, printed)
    rhs = derived_rhs(which, k, order)
    j = lhs.first_discrepancy(rhs, hi=order)
    if j is None:
        chain = derived_chain(which, k, order)
        j = lhs.first_discrepancy(chain, hi=order)
    return CheckResult(j is None, exponent=j, lhs=lhs, rhs=rhs)
