"""Exact rationals and truncated Laurent series over them.

A PowerSeries stores the coefficients of v^lo .. v^hi.  Everything below
``lo`` is known to be zero, everything above ``hi`` is unknown.  Operations
only ever report coefficients they can vouch for, so the window of a result
is the intersection of what its inputs determine.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

from gmpy2 import mpq

from .errors import SingularError, UsageError, WindowError

Rational = type(mpq(0))
ZERO = mpq(0)
ONE = mpq(1)


def rational(value) -> mpq:
    """Coerce ints, Fractions, mpq values and "a/b" strings to mpq."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise UsageError("booleans are not rationals")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        try:
            return mpq(text)
        except ValueError as exc:
            raise UsageError(f"not a rational: {value!r}") from exc
    if isinstance(value, _RationalABC):
        return mpq(int(value.numerator), int(value.denominator))
    raise UsageError(f"cannot treat {type(value).__name__} as an exact rational")


def is_scalar(value) -> bool:
    return isinstance(value, (Rational, int, Fraction)) and not isinstance(value, bool)


def rational_text(value) -> str:
    """Render as "num/den", always with an explicit denominator."""
    value = rational(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> mpq:
    if not isinstance(text, str):
        raise UsageError(f"expected a 'num/den' string, got {text!r}")
    return rational(text)


class PowerSeries:
    """Truncated Laurent series in one named variable."""

    __slots__ = ("lo", "coeffs", "var")

    def __init__(self, coeffs, lo: int = 0, var: str = "q"):
        coeffs = tuple(rational(c) for c in coeffs)
        if not coeffs:
            raise UsageError("a series window holds at least one coefficient")
        self.coeffs = coeffs
        self.lo = int(lo)
        self.var = var

    # construction helpers

    @classmethod
    def _raw(cls, coeffs, lo, var):
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        obj.lo = lo
        obj.var = var
        return obj

    @classmethod
    def zero(cls, lo: int, hi: int, var: str = "q"):
        if hi < lo:
            raise UsageError(f"empty window [{lo}, {hi}]")
        return cls._raw((ZERO,) * (hi - lo + 1), lo, var)

    @classmethod
    def constant(cls, c, hi: int, var: str = "q"):
        return cls.monomial(c, 0, hi, var)

    @classmethod
    def one(cls, hi: int, var: str = "q"):
        return cls.monomial(ONE, 0, hi, var)

    @classmethod
    def monomial(cls, c, e: int, hi: int, var: str = "q"):
        """c * v^e, exact, reported on the window [e, hi]."""
        if hi < e:
            raise UsageError(f"monomial v^{e} does not fit below hi={hi}")
        coeffs = [ZERO] * (hi - e + 1)
        coeffs[0] = rational(c)
        return cls._raw(coeffs, e, var)

    @classmethod
    def from_dict(cls, terms: dict, hi: int, lo: int | None = None, var: str = "q"):
        """Exact polynomial given as {exponent: coefficient}."""
        if lo is None:
            lo = min(terms) if terms else 0
            lo = min(lo, hi)
        out = [ZERO] * (hi - lo + 1)
        for e, c in terms.items():
            if e < lo:
                raise UsageError("term below the requested window")
            if e <= hi:
                out[e - lo] += rational(c)
        return cls._raw(out, lo, var)

    # basic accessors

    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs) - 1

    def coefficient(self, j: int) -> mpq:
        if j < self.lo or j > self.hi:
            raise WindowError(
                f"coefficient of {self.var}^{j} is outside the window [{self.lo}, {self.hi}]",
                required=j,
            )
        return self.coeffs[j - self.lo]

    def _get(self, j):
        # zero below the window; callers guarantee j <= hi
        if j < self.lo:
            return ZERO
        return self.coeffs[j - self.lo]

    def items(self):
        """(exponent, coefficient) pairs for nonzero coefficients."""
        lo = self.lo
        return [(lo + i, c) for i, c in enumerate(self.coeffs) if c]

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return self.lo + i
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def restrict(self, lo: int | None = None, hi: int | None = None):
        """Narrow the window.  Lowering lo just pads with known zeros."""
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        if hi > self.hi:
            raise WindowError(
                f"cannot extend window of {self.var} beyond {self.hi} (asked {hi})",
                required=hi,
            )
        if hi < lo:
            raise UsageError(f"empty window [{lo}, {hi}]")
        if lo < self.lo:
            out = [ZERO] * (self.lo - lo) + list(self.coeffs[: hi - self.lo + 1])
            return PowerSeries._raw(out, lo, self.var)
        # raising lo drops coefficients, which is only truthful if they vanish
        if any(self.coeffs[: lo - self.lo]):
            raise UsageError("raising lo would discard nonzero coefficients")
        return PowerSeries._raw(self.coeffs[lo - self.lo : hi - self.lo + 1], lo, self.var)

    def truncate(self, hi: int):
        return self.restrict(hi=hi)

    def rename(self, var: str):
        return PowerSeries._raw(self.coeffs, self.lo, var)

    def _check_var(self, other):
        if other.var != self.var:
            raise UsageError(f"variable mismatch: {self.var} vs {other.var}")

    # arithmetic

    def __neg__(self):
        return PowerSeries._raw([-c for c in self.coeffs], self.lo, self.var)

    def __add__(self, other):
        if is_scalar(other):
            other = PowerSeries.constant(other, max(self.hi, 0), self.var)
        elif not isinstance(other, PowerSeries):
            return NotImplemented
        self._check_var(other)
        lo = min(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if hi < lo:
            raise WindowError("sum has no common window")
        out = [self._get(j) + other._get(j) for j in range(lo, hi + 1)]
        return PowerSeries._raw(out, lo, self.var)

    __radd__ = __add__

    def __sub__(self, other):
        if is_scalar(other):
            return self + (-rational(other))
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = rational(c)
        return PowerSeries._raw([c * x for x in self.coeffs], self.lo, self.var)

    def shift(self, k: int):
        """Multiply by v^k."""
        return PowerSeries._raw(self.coeffs, self.lo + k, self.var)

    def __mul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        self._check_var(other)
        lo = self.lo + other.lo
        hi = min(self.hi + other.lo, other.hi + self.lo)
        n = hi - lo + 1
        a, b = self.coeffs, other.coeffs
        out = [ZERO] * n
        for i in range(min(n, len(a))):
            ai = a[i]
            if not ai:
                continue
            for j in range(min(n - i, len(b))):
                out[i + j] += ai * b[j]
        return PowerSeries._raw(out, lo, self.var)

    __rmul__ = __mul__

    def inverse(self):
        m = self.valuation()
        if m is None:
            raise SingularError(f"series in {self.var} is zero on its whole window")
        u = self.coeffs[m - self.lo :]
        u0 = u[0]
        g = [ONE / u0]
        for k in range(1, len(u)):
            acc = ZERO
            for j in range(1, k + 1):
                uj = u[j]
                if uj:
                    acc += uj * g[k - j]
            g.append(-acc / u0)
        return PowerSeries._raw(g, -m, self.var)

    def __truediv__(self, other):
        if is_scalar(other):
            other = rational(other)
            if not other:
                raise SingularError("division by the scalar 0")
            return self.scale(ONE / other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if is_scalar(other):
            return self.inverse().scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        base = self
        result = None
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            return PowerSeries.one(max(self.hi - self.lo, 0), self.var)
        return result

    # exact binomial factors (1 - c v^e)

    def mul_binomial(self, c, e: int):
        """Multiply by (1 - c v^e), keeping the window length."""
        c = rational(c)
        if not c:
            return self
        coeffs = self.coeffs
        if e == 0:
            return self.scale(ONE - c)
        if e > 0:
            out = list(coeffs)
            for i in range(e, len(out)):
                x = coeffs[i - e]
                if x:
                    out[i] -= c * x
            return PowerSeries._raw(out, self.lo, self.var)
        d = -e
        n = len(coeffs)
        # new window [lo - d, hi - d]; coefficient j is f_j - c f_{j+d}
        out = []
        for i in range(n):
            x = coeffs[i - d] if i >= d else ZERO
            out.append(x - c * coeffs[i])
        return PowerSeries._raw(out, self.lo - d, self.var)

    def div_binomial(self, c, e: int):
        """Divide by (1 - c v^e), keeping the window length."""
        c = rational(c)
        if not c:
            return self
        if e == 0:
            if c == ONE:
                raise SingularError("division by the vanishing factor (1 - 1)", factor=(c, e))
            return self.scale(ONE / (ONE - c))
        if e > 0:
            out = list(self.coeffs)
            for i in range(e, len(out)):
                x = out[i - e]
                if x:
                    out[i] += c * x
            return PowerSeries._raw(out, self.lo, self.var)
        # 1/(1 - c v^-d) = -(v^d / c) / (1 - v^d / c)
        d = -e
        inv = ONE / c
        return self.div_binomial(inv, d).scale(-inv).shift(d)

    def substitute_power(self, m: int):
        """f(v^m) for m >= 1."""
        if m < 1:
            raise UsageError("substitute_power needs m >= 1")
        if m == 1:
            return self
        lo = self.lo * m
        hi = self.hi * m
        out = [ZERO] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[i * m] = c
        return PowerSeries._raw(out, lo, self.var)

    def evaluate_polynomial(self, x):
        """Evaluate assuming the window captures every nonzero term."""
        x = rational(x)
        total = ZERO
        for e, c in self.items():
            total += c * x ** e
        return total

    # comparison

    def first_discrepancy(self, other, lo: int | None = None, hi: int | None = None):
        """First exponent in the shared window where the two differ, or None."""
        self._check_var(other)
        start = min(self.lo, other.lo) if lo is None else lo
        stop = min(self.hi, other.hi) if hi is None else hi
        if stop > min(self.hi, other.hi):
            raise WindowError("comparison window exceeds known coefficients", required=stop)
        for j in range(start, stop + 1):
            if self._get(j) != other._get(j):
                return j
        return None

    def __eq__(self, other):
        if is_scalar(other):
            other = PowerSeries.constant(other, max(self.hi, 0), self.var)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        if other.var != self.var:
            return False
        return self.first_discrepancy(other) is None

    __hash__ = None

    # serialization

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "lo": self.lo,
            "hi": self.hi,
            "coeffs": [rational_text(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict):
        coeffs = [parse_rational(c) for c in data["coeffs"]]
        series = cls._raw(coeffs, int(data["lo"]), data.get("var", "q"))
        if "hi" in data and data["hi"] != series.hi:
            raise UsageError("serialized window does not match coefficient count")
        return series

    def __repr__(self):
        terms = []
        for e, c in self.items():
            terms.append(f"{c}*{self.var}^{e}")
        body = " + ".join(terms) if terms else "0"
        return f"PowerSeries({body}; [{self.lo}, {self.hi}])"


def series_var(hi: int, var: str = "q") -> PowerSeries:
    """The variable itself, v, on the window [1, hi]."""
    return PowerSeries.monomial(ONE, 1, hi, var)


def series_mul(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    return f * g


def series_inverse(f: PowerSeries) -> PowerSeries:
    return f.inverse()
