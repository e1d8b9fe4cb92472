"""q-Pochhammer symbols, Gaussian binomials and classical product identities.

The workhorse is :func:`product_term`, which expands a monomial times a
ratio of Pochhammer products into a series truncated at a given order.
Factors are applied one binomial at a time, so Laurent factors such as
(a; q^-2)_n cost no more than ordinary ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DivergenceError, SingularError, UsageError
from .exactnum import ONE, ZERO, PowerSeries, is_scalar, rational

INFINITE = math.inf


class Mono(NamedTuple):
    """The monomial coeff * v^exp."""

    coeff: object
    exp: int


def as_mono(x) -> Mono:
    if isinstance(x, Mono):
        return Mono(rational(x.coeff), int(x.exp))
    if is_scalar(x):
        return Mono(rational(x), 0)
    if isinstance(x, PowerSeries):
        terms = x.items()
        if len(terms) != 1:
            raise UsageError("expected a monomial series")
        e, c = terms[0]
        return Mono(c, e)
    if isinstance(x, tuple) and len(x) == 2:
        return Mono(rational(x[0]), int(x[1]))
    raise UsageError(f"cannot read {x!r} as a monomial")


@dataclass(frozen=True)
class PochSpec:
    """(argument; step)_count with argument c*v^e and step v^s.

    ``step`` is the exponent s of the base; ``count`` may be INFINITE.
    """

    argument: object
    count: object
    step: int = 1

    def __post_init__(self):
        object.__setattr__(self, "argument", as_mono(self.argument))
        step = self.step
        if isinstance(step, (PowerSeries, Mono, tuple)):
            m = as_mono(step)
            if m.coeff != ONE:
                raise UsageError("the base of a Pochhammer symbol must be a pure power")
            step = m.exp
        object.__setattr__(self, "step", int(step))
        if self.count != INFINITE:
            if int(self.count) != self.count or self.count < 0:
                raise UsageError(f"bad Pochhammer length {self.count!r}")
            object.__setattr__(self, "count", int(self.count))
        elif self.step <= 0:
            raise UsageError("an infinite product needs a base of positive valuation")


def poch_factors(arg, step: int, count) -> PochSpec:
    return PochSpec(arg, count, step)


def _expand(spec, window_len):
    """Binomials (c, e) of a factor list entry.

    Returns (fixed, extra): ``fixed`` are the factors with e <= 0 (they move
    the valuation), ``extra`` the raising ones that matter inside the window.
    """
    if isinstance(spec, PochSpec):
        c, e = spec.argument
        s = spec.step
        if spec.count == INFINITE:
            fixed, extra = [], []
            j = 0
            while True:
                ej = e + s * j
                if ej > window_len and ej > 0:
                    break
                (fixed if ej <= 0 else extra).append((c, ej))
                j += 1
            return fixed, extra
        pairs = [(c, e + s * j) for j in range(spec.count)]
    else:
        m = as_mono(spec)
        pairs = [(m.coeff, m.exp)]
    fixed = [p for p in pairs if p[1] <= 0]
    extra = [p for p in pairs if p[1] > 0]
    return fixed, extra


def term_valuation(exp: int, num=(), den=()) -> int:
    """Exact v-valuation of a product term whose factors have nonzero constant parts."""
    v = exp
    for spec in num:
        for c, e in _expand(spec, 0)[0]:
            if c and e < 0:
                v += e
    for spec in den:
        for c, e in _expand(spec, 0)[0]:
            if c and e < 0:
                v -= e
    return v


def product_term(coeff, exp: int, num=(), den=(), order: int = 40, var: str = "q"):
    """coeff * v^exp * prod(num) / prod(den) as a series through v^order.

    Entries of ``num`` and ``den`` are PochSpec values or single binomials
    given as monomials x, meaning the factor (1 - x).
    """
    coeff = rational(coeff)
    fixed_num, fixed_den = [], []
    for spec in num:
        fixed_num.extend(_expand(spec, 0)[0])
    for spec in den:
        fixed_den.extend(_expand(spec, 0)[0])
    v0 = exp
    for c, e in fixed_num:
        if c and e < 0:
            v0 += e
    for c, e in fixed_den:
        if c and e < 0:
            v0 -= e
    if not coeff or v0 > order:
        return PowerSeries.zero(order, order, var)
    length = order - v0
    extra_num, extra_den = [], []
    for spec in num:
        extra_num.extend(_expand(spec, length)[1])
    for spec in den:
        extra_den.extend(_expand(spec, length)[1])
    f = PowerSeries.monomial(coeff, exp, exp + length, var)
    for c, e in fixed_den:
        if e == 0 and c == ONE:
            raise SingularError("a denominator factor (1 - 1) vanishes", factor=(c, e))
    for c, e in fixed_num:
        f = f.mul_binomial(c, e)
    for c, e in fixed_den:
        f = f.div_binomial(c, e)
    for c, e in extra_num:
        if e <= length:
            f = f.mul_binomial(c, e)
    for c, e in extra_den:
        if e <= length:
            f = f.div_binomial(c, e)
    return f


def poch(spec: PochSpec, order: int, var: str = "q") -> PowerSeries:
    """Series of a single Pochhammer product through v^order."""
    return product_term(ONE, 0, num=[spec], order=order, var=var)


def poch_series_general(x: PowerSeries, step: int, count, order: int) -> PowerSeries:
    """(x; v^step)_count for an arbitrary series argument."""
    if count == INFINITE:
        if step <= 0:
            raise UsageError("an infinite product needs a base of positive valuation")
        v = x.valuation()
        if v is None or v < 1:
            if v is not None and v < 1:
                raise DivergenceError("infinite product whose factors never raise the valuation")
        count = 0
        while v is None or v + step * count <= order:
            count += 1
            if v is None:
                break
    result = PowerSeries.one(order, x.var)
    for j in range(count):
        result = result * (1 - x.shift(step * j))
    return result.truncate(order) if result.hi > order else result


# generic finite products over any carrier (rationals or series)


def qpoch(x, q, n: int):
    """(x; q)_n = prod_{j<n} (1 - x q^j) for rational or series carriers."""
    if n < 0:
        raise UsageError("negative Pochhammer length")
    result = ONE
    term = x
    for _ in range(n):
        result = (1 - term) * result
        term = term * q
    return result


def qpoch_inv(x, q, n: int):
    """1/(x; q)_n, raising SingularError on a vanishing factor."""
    value = qpoch(x, q, n)
    return _invert(value)


def _invert(value):
    if isinstance(value, PowerSeries):
        return value.inverse()
    if not value:
        raise SingularError("a denominator vanishes at this specialization")
    return ONE / value


def qbinom(n: int, k: int, q):
    """Gaussian binomial [n; k] for rational or series q."""
    if k < 0 or k > n:
        return ZERO
    k = min(k, n - k)
    num = ONE
    den = ONE
    for i in range(1, k + 1):
        num = (1 - q ** (n - k + i)) * num
        den = (1 - q**i) * den
    return num * _invert(den)


def qbinom_coefficients(n: int, k: int) -> list[int]:
    """Integer coefficients of [n; k] as a polynomial, by the Pascal recurrence."""
    if k < 0 or k > n:
        return [0]
    prev = [[1]]
    for m in range(1, n + 1):
        row = []
        for j in range(m + 1):
            a = prev[j - 1] if j >= 1 else [0]
            b = prev[j] if j < m else [0]
            size = max(len(a), len(b) + j)
            c = [0] * size
            for i, x in enumerate(a):
                c[i] += x
            for i, x in enumerate(b):
                c[i + j] += x
            row.append(c)
        prev = row
    coeffs = prev[k]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def jacobi_triple(x, Q, order: int, side: str = "sum", var: str = "q") -> PowerSeries:
    """J(x, Q) = sum_r (-1)^r x^r Q^C(r,2) = (Q, x, Q/x; Q)_inf.

    x and Q are monomials in v (an int Q means v^Q); Q must have positive valuation.
    """
    x = as_mono(x)
    Qm = Mono(ONE, Q) if isinstance(Q, int) else as_mono(Q)
    if Qm.exp <= 0:
        raise UsageError("J(x, Q) needs Q of positive valuation")
    if side == "product":
        if Qm.coeff != ONE:
            raise UsageError("product side needs Q = v^M")
        M = Qm.exp
        num = [
            PochSpec(Qm, INFINITE, M),
            PochSpec(x, INFINITE, M),
            PochSpec(Mono(ONE / x.coeff, M - x.exp), INFINITE, M),
        ]
        return product_term(ONE, 0, num=num, order=order, var=var)
    if side != "sum":
        raise UsageError(f"unknown side {side!r}")
    a, M = x.exp, Qm.exp

    def expo(r):
        return a * r + M * (r * (r - 1) // 2)

    exps = {}
    for direction in (1, -1):
        r = 0 if direction == 1 else -1
        while True:
            e = expo(r)
            if e <= order:
                c = (-1) ** (r % 2) * x.coeff**r * Qm.coeff ** (r * (r - 1) // 2)
                exps[e] = exps.get(e, ZERO) + c
            elif expo(r + direction) > e:
                break
            r += direction
    lo = min(list(exps) + [order])
    return PowerSeries.from_dict(exps, order, lo=lo, var=var)


def congruence_product(residues, m: int, order: int, var: str = "q") -> PowerSeries:
    """prod over n >= 1 with n mod m in residues of 1/(1 - v^n)."""
    classes = {r % m for r in residues}
    f = PowerSeries.one(order, var)
    for n in range(1, order + 1):
        if n % m in classes:
            f = f.div_binomial(ONE, n)
    return f


def alt_qbinom_sum_check(m: int) -> tuple[PowerSeries, PowerSeries]:
    """Both sides of sum_j (-1)^j [m; j] = (q; q^2)_{m/2} (m even), 0 (m odd).

    Sides are exact polynomials, returned on a window holding every term.
    """
    hi = m * m + 1
    lhs = PowerSeries.zero(0, hi)
    for j in range(m + 1):
        coeffs = qbinom_coefficients(m, j)
        term = PowerSeries.from_dict(dict(enumerate(coeffs)), hi, lo=0)
        lhs = lhs + (term if j % 2 == 0 else -term)
    if m % 2:
        rhs = PowerSeries.zero(0, hi)
    else:
        rhs = product_term(ONE, 0, num=[PochSpec(Mono(ONE, 1), m // 2, 2)], order=hi)
    return lhs, rhs


def qbinom_theorem_check(n: int, z, q) -> tuple:
    """Both sides of sum_r [n; r] z^r q^C(r,2) = (-z; q)_n at rationals."""
    z, q = rational(z), rational(q)
    lhs = ZERO
    for r in range(n + 1):
        lhs += qbinom(n, r, q) * z**r * q ** (r * (r - 1) // 2)
    rhs = qpoch(-z, q, n)
    return lhs, rational(rhs)
