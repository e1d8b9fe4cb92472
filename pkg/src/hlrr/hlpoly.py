"""Hall-Littlewood polynomials at exact rational points.

Two evaluators are provided and kept deliberately unrelated:
``hl_symmetrization`` sums over all permutations of the alphabet, while
``hl_filtration`` sums over chains of subsets (ordered set partitions).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from .errors import PreconditionError, SingularError, UsageError
from .exactnum import ONE, ZERO, rational
from .partitions import Partition, gen_qbinom, partitions_of
from .qtools import qbinom, qpoch

MAX_SYMMETRIZATION_N = 7
MAX_FILTRATION_N = 6


@dataclass(frozen=True)
class PointConfig:
    """An alphabet of distinct nonzero rationals together with a value of q."""

    xs: tuple
    q: object

    def __post_init__(self):
        xs = tuple(rational(x) for x in self.xs)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "q", rational(self.q))
        if any(x == 0 for x in xs):
            raise PreconditionError("alphabet entries must be nonzero")
        if len(set(xs)) != len(xs):
            raise PreconditionError(f"alphabet entries must be distinct: {xs}")

    @property
    def n(self) -> int:
        return len(self.xs)

    def with_xs(self, xs) -> "PointConfig":
        return PointConfig(tuple(xs), self.q)

    def constraint_violations(self) -> list:
        """Names of the generic-position conditions this point fails."""
        bad = []
        xs = self.xs
        if any(x in (ONE, -ONE) for x in xs):
            bad.append("x_i = +-1")
        if any(xs[i] * xs[j] == ONE for i in range(len(xs)) for j in range(i + 1, len(xs))):
            bad.append("x_i x_j = 1")
        if self.q in (ZERO, ONE, -ONE):
            bad.append("q in {0, 1, -1}")
        return bad


@dataclass(frozen=True)
class SignSequence:
    signs: tuple

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if any(s not in (1, -1) for s in signs):
            raise UsageError(f"signs must be +1 or -1: {signs}")
        object.__setattr__(self, "signs", signs)

    @property
    def minus_count(self) -> int:
        return sum(1 for s in self.signs if s == -1)

    @classmethod
    def prefix(cls, n: int, r: int) -> "SignSequence":
        """r minus signs followed by n - r plus signs."""
        return cls((-1,) * r + (1,) * (n - r))


def sign_sequences(n: int):
    """All 2^n sign sequences, in a fixed order."""
    for mask in range(2**n):
        yield SignSequence(tuple(-1 if mask >> i & 1 else 1 for i in range(n)))


@dataclass(frozen=True)
class Filtration:
    """Strictly increasing chain of index sets ending at the full alphabet."""

    chain: tuple

    def __post_init__(self):
        chain = tuple(frozenset(c) for c in self.chain)
        object.__setattr__(self, "chain", chain)
        for a, b in zip(chain, chain[1:]):
            if not a < b:
                raise PreconditionError("filtration steps must be strict inclusions")

    def blocks(self) -> list:
        out, prev = [], frozenset()
        for c in self.chain:
            out.append(c - prev)
            prev = c
        return out

    def weight(self, pc: PointConfig):
        """pi_F: product over pairs in increasing blocks of (x_i - q x_j)/(x_i - x_j)."""
        level = {}
        for idx, block in enumerate(self.blocks()):
            for i in block:
                level[i] = idx
        xs, q = pc.xs, pc.q
        w = ONE
        for i in level:
            for j in level:
                if level[i] < level[j]:
                    w *= (xs[i] - q * xs[j]) / (xs[i] - xs[j])
        return w


def _qint_factorial(m: int, q):
    """prod_{k<=m} (1 + q + ... + q^{k-1})."""
    result = ONE
    for k in range(1, m + 1):
        result *= sum((q**j for j in range(k)), ZERO)
    return result


def _check_length(lam: Partition, n: int, cap: int, what: str):
    if n > cap:
        raise UsageError(f"{what} supports at most {cap} variables (got {n})")


@lru_cache(maxsize=64)
def _perm_weights(xs: tuple, q):
    """For every permutation w, the product over i<j of (x_wi - q x_wj)/(x_wi - x_wj)."""
    n = len(xs)
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                table[i][j] = (xs[i] - q * xs[j]) / (xs[i] - xs[j])
    out = []
    for perm in permutations(range(n)):
        w = ONE
        for a in range(n):
            row = table[perm[a]]
            for b in range(a + 1, n):
                w *= row[perm[b]]
        out.append((perm, w))
    return out


def hl_symmetrization(lam, pc: PointConfig):
    """P_lambda(X; q) by summing over all n! permutations."""
    lam = Partition(lam)
    n = pc.n
    if lam.length > n:
        return ZERO
    _check_length(lam, n, MAX_SYMMETRIZATION_N, "symmetrization")
    parts = lam.padded(n)
    mult = {}
    for p in parts:
        mult[p] = mult.get(p, 0) + 1
    norm = ONE
    for m in mult.values():
        norm *= _qint_factorial(m, pc.q)
    if not norm:
        raise SingularError("normalizing q-factorial vanishes at this q")
    xs = pc.xs
    powers = [[x**p for p in parts] for x in xs]
    total = ZERO
    for perm, w in _perm_weights(xs, pc.q):
        mono = ONE
        for a, i in enumerate(perm):
            e = parts[a]
            if e:
                mono *= powers[i][a]
        total += w * mono
    return total / norm


def _ordered_set_partitions(items: tuple, sizes: list):
    if not sizes:
        yield []
        return
    first, rest = sizes[0], sizes[1:]
    for block in combinations(items, first):
        chosen = set(block)
        remaining = tuple(i for i in items if i not in chosen)
        for tail in _ordered_set_partitions(remaining, rest):
            yield [frozenset(block)] + tail


def hl_filtration(lam, pc: PointConfig):
    """P_lambda(X; q) as a sum over filtrations of the alphabet."""
    lam = Partition(lam)
    n = pc.n
    if lam.length > n:
        return ZERO
    _check_length(lam, n, MAX_FILTRATION_N, "filtration formula")
    parts = lam.padded(n)
    values, sizes = [], []
    for p in parts:
        if values and values[-1] == p:
            sizes[-1] += 1
        else:
            values.append(p)
            sizes.append(1)
    xs = pc.xs
    total = ZERO
    for blocks in _ordered_set_partitions(tuple(range(n)), sizes):
        chain, acc = [], frozenset()
        for b in blocks:
            acc = acc | b
            chain.append(acc)
        term = Filtration(tuple(chain)).weight(pc)
        for mu, block in zip(values, blocks):
            if mu:
                prod = ONE
                for i in block:
                    prod *= xs[i]
                term *= prod**mu
        total += term
    return total


def hall_littlewood(lam, pc: PointConfig):
    return hl_symmetrization(lam, pc)


def _pole(value, what):
    if not value:
        raise SingularError(f"pole: factor {what} vanishes", factor=what)
    return value


def psi(pc: PointConfig, alpha):
    """Psi_q(X; alpha) = prod 1/((1 - x_i)(1 - alpha x_i)) prod_{j<k} (1 - q x_j x_k)/(1 - x_j x_k)."""
    alpha = rational(alpha)
    xs, q = pc.xs, pc.q
    value = ONE
    for i, x in enumerate(xs):
        value /= _pole(1 - x, f"1 - x_{i + 1}")
        value /= _pole(1 - alpha * x, f"1 - alpha x_{i + 1}")
    return value * _pair_product(pc)


def phi(pc: PointConfig, alpha, beta):
    """Phi_q(X; alpha, beta) = prod (1 - alpha x_i)/(1 - beta x_i) prod_{j<k} (1 - q x_j x_k)/(1 - x_j x_k)."""
    alpha, beta = rational(alpha), rational(beta)
    value = ONE
    for i, x in enumerate(pc.xs):
        value *= (1 - alpha * x) / _pole(1 - beta * x, f"1 - beta x_{i + 1}")
    return value * _pair_product(pc)


def _pair_product(pc: PointConfig):
    xs, q = pc.xs, pc.q
    value = ONE
    for j in range(len(xs)):
        for k in range(j + 1, len(xs)):
            p = xs[j] * xs[k]
            value *= (1 - q * p) / _pole(1 - p, f"1 - x_{j + 1} x_{k + 1}")
    return value


def twist(pc: PointConfig, xi: SignSequence) -> PointConfig:
    """Replace x_i by x_i^{xi_i}; raises PreconditionError on a collision."""
    if len(xi.signs) != pc.n:
        raise UsageError("sign sequence length does not match the alphabet")
    return pc.with_xs(x if s == 1 else 1 / x for x, s in zip(pc.xs, xi.signs))


def elementary_sym(m: int, pc: PointConfig):
    if m < 0 or m > pc.n:
        return ZERO
    total = ZERO
    for combo in combinations(pc.xs, m):
        prod = ONE
        for x in combo:
            prod *= x
        total += prod
    return total


def pieri_sides(mu, m: int, pc: PointConfig):
    """P_mu e_m and the sum over vertical strips with q-binomial weights."""
    from .partitions import strips

    mu = Partition(mu)
    q = pc.q
    lhs = hl_symmetrization(mu, pc) * elementary_sym(m, pc)
    mu_c = mu.conjugate()
    rhs = ZERO
    for lam in strips(mu, m, "vertical"):
        if lam.length > pc.n:
            continue
        lc = lam.conjugate()
        weight = ONE
        for i in range(1, lc.length + 1):
            top = lc.part(i) - lc.part(i + 1)
            weight *= qbinom(top, lc.part(i) - mu_c.part(i), q)
        rhs += weight * hl_symmetrization(lam, pc)
    return lhs, rhs


def pieri_check(mu, m: int, pc: PointConfig) -> bool:
    lhs, rhs = pieri_sides(mu, m, pc)
    return lhs == rhs


# principal specialization

N_CONVENTIONS = {
    "sum_binomial_parts": Partition.n_stat,
    "sum_index_weighted": Partition.n_stat_rows,
}


def principal_points(n: int, w, q) -> PointConfig:
    w, q = rational(w), rational(q)
    return PointConfig(tuple(w * q**i for i in range(n)), q)


def principal_sides(lam, n: int, w, q, convention: str = "sum_binomial_parts"):
    """P_{lambda'}(w, wq, ..., wq^{n-1}) and w^|lambda| q^{n(lambda)} [n; lambda]."""
    lam = Partition(lam)
    pc = principal_points(n, w, q)
    lhs = hl_symmetrization(lam.conjugate(), pc)
    stat = N_CONVENTIONS[convention](lam)
    rhs = pc.xs[0] ** lam.weight * pc.q**stat * gen_qbinom(n, lam, pc.q)
    return lhs, rhs


def principal_spec_check(lam, n: int, w, q, convention: str = "sum_binomial_parts") -> bool:
    lhs, rhs = principal_sides(lam, n, w, q, convention)
    return lhs == rhs


def pin_n_convention(samples) -> str:
    """Return the single n-statistic convention consistent with all samples.

    ``samples`` is an iterable of (lam, n, w, q).  Raises if zero or both
    conventions survive, since the choice must be decided by data.
    """
    samples = list(samples)
    survivors = []
    for name in N_CONVENTIONS:
        if all(principal_spec_check(lam, n, w, q, name) for lam, n, w, q in samples):
            survivors.append(name)
    if len(survivors) != 1:
        raise PreconditionError(f"principal specialization does not pin a convention: {survivors}")
    return survivors[0]


def principal_samples(max_n: int = 4, max_weight: int = 6, points=None):
    """Every lambda with lambda_1 <= n <= max_n and |lambda| <= max_weight, crossed with points."""
    if points is None:
        points = [(rational("2/3"), rational("-3/5")), (rational("-7/2"), rational("5/4"))]
    out = []
    for n in range(1, max_n + 1):
        for w in range(max_weight + 1):
            for lam in partitions_of(w, n):
                for wv, qv in points:
                    out.append((lam, n, wv, qv))
    return out


# the specialization displays used in the proof of the bounded-part formulas


def specialization_sides(which: int, n: int, r: int, w, q, xs=None, xi=None):
    """Both sides of one of the five specialization displays.

    Display 29 holds at any point; pass ``xs`` to evaluate it away from the
    principal specialization, and ``xi`` for a sign sequence other than the
    prefix one.  Displays 30 and 31 use x_i = w q^{i-1} with z = w^2;
    displays 32 and 33 use x_i = z q^{i-1}, so there z = w.
    """
    w, q = rational(w), rational(q)
    if not 0 <= r <= n:
        raise UsageError("need 0 <= r <= n")
    if xi is None:
        xi = SignSequence.prefix(n, r)
    if which == 29:
        pc = PointConfig(tuple(xs), q) if xs is not None else principal_points(n, w, q)
        tw = twist(pc, xi)
        lhs = phi(tw, 0, 0)
        rhs = psi(tw, -1)
        for x in tw.xs:
            rhs *= 1 - x * x
        return lhs, rhs
    tw = twist(principal_points(n, w, q), xi)
    c2 = r * (r - 1) // 2
    if which == 30:
        z = w * w
        lhs = ONE
        for x in tw.xs:
            lhs *= 1 - x * x
        rhs = (-1) ** r * z ** (-r) * q ** (-2 * c2) * qpoch(z, q * q, n)
        return lhs, rhs
    if which == 31:
        z = w * w
        lhs = psi(tw, -1)
        den = _pole(qpoch(z * q ** (r - 1), q, n + 1), "(z q^(r-1); q)_(n+1)")
        rhs = (-1) ** r * z**r * q ** (3 * c2) * qbinom(n, r, q) * (1 - z * q ** (2 * r - 1)) / den
        return lhs, rhs
    if which == 32:
        z = w
        lhs = ONE
        for x in tw.xs:
            lhs *= (1 - q * x) / _pole(1 - x, "1 - x_i")
        den = _pole((1 - z * q ** (r - 1)) * (1 - z * q**r), "(1 - z q^(r-1))(1 - z q^r)")
        rhs = q**r * (1 - z / q) * (1 - z * q**n) / den
        return lhs, rhs
    if which == 33:
        z2 = w * w
        lhs = phi(tw, 0, 0)
        den = _pole(qpoch(z2 * q ** (r - 1), q, n + 1), "(z^2 q^(r-1); q)_(n+1)")
        rhs = q**c2 * qbinom(n, r, q) * (1 - z2 * q ** (2 * r - 1)) * qpoch(z2, q * q, n) / den
        return lhs, rhs
    raise UsageError(f"unknown specialization display {which}")


def specialization_identities_check(which: int, n: int, r: int, w, q) -> bool:
    lhs, rhs = specialization_sides(which, n, r, w, q)
    return lhs == rhs
