"""Shared oracles for the test suite."""

import pytest
import sympy
from gmpy2 import mpq

from hlrr.exactnum import PowerSeries


def sympy_coeffs(expr, var, lo, hi):
    """Coefficients of a rational function's Laurent expansion on [lo, hi].

    sympy puts the expression over a common denominator; the expansion is a
    plain power-series division of the two resulting polynomials.
    """
    num, den = sympy.fraction(sympy.together(sympy.sympify(expr)))
    num_c = sympy.Poly(num, var).all_coeffs()[::-1]
    den_c = sympy.Poly(den, var).all_coeffs()[::-1]
    shift = next(i for i, c in enumerate(den_c) if c != 0)
    den_c = den_c[shift:]
    # expr = var^-shift * num / den, with den(0) != 0
    need = hi + shift + 1
    quotient = []
    for j in range(max(need, 0)):
        acc = num_c[j] if j < len(num_c) else 0
        for i in range(1, min(j, len(den_c) - 1) + 1):
            acc -= den_c[i] * quotient[j - i]
        quotient.append(sympy.Rational(acc) / den_c[0])
    out = []
    for e in range(lo, hi + 1):
        j = e + shift
        c = quotient[j] if 0 <= j < len(quotient) else 0
        c = sympy.Rational(c)
        out.append(mpq(int(c.p), int(c.q)))
    return out


def series_coeffs(f: PowerSeries, lo=None, hi=None):
    lo = f.lo if lo is None else lo
    hi = f.hi if hi is None else hi
    return [f._get(j) for j in range(lo, hi + 1)]


def poly(coeffs, hi=None, lo=0, var="q"):
    """Exact polynomial from a coefficient list starting at exponent lo."""
    hi = lo + len(coeffs) - 1 if hi is None else hi
    return PowerSeries.from_dict({lo + i: c for i, c in enumerate(coeffs)}, hi, lo=lo, var=var)


# one pass/fail line per acceptance criterion

_criteria = {}


def pytest_runtest_logreport(report):
    number = getattr(report, "criterion", None)
    if number is None or report.when != "call" and report.passed:
        return
    ok = _criteria.get(number, True)
    _criteria[number] = ok and report.passed


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if _criteria[number] else 'FAIL'}")
