"""Integer partitions, their statistics, and the partition-indexed q-products."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import PreconditionError, UsageError
from .exactnum import ONE, ZERO
from .qtools import _invert, qpoch


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p <= 0:
                raise UsageError(f"partition parts must be positive: {parts}")
            if i and parts[i - 1] < p:
                raise UsageError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_parts(cls, parts):
        """Sort and drop zeros first; handy for padded k-tuples."""
        return cls(sorted((p for p in parts if p), reverse=True))

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """lambda_i with 1-based indexing, 0 beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p >= j) for j in range(1, self[0] + 1))

    def multiplicities(self) -> dict:
        mult = {}
        for p in self:
            mult[p] = mult.get(p, 0) + 1
        return mult

    def m(self, i: int) -> int:
        return sum(1 for p in self if p == i)

    def n_stat(self) -> int:
        """sum of C(lambda_i, 2) over the parts."""
        return sum(p * (p - 1) // 2 for p in self)

    def n_stat_rows(self) -> int:
        """sum of (i - 1) lambda_i; the other classical convention."""
        return sum(i * p for i, p in enumerate(self))

    def n2(self) -> int:
        return sum(p * p for p in self)

    def scaled(self, factor: int) -> "Partition":
        return Partition(factor * p for p in self)

    def contains(self, other) -> bool:
        if len(other) > len(self):
            return False
        return all(a >= b for a, b in zip(self, other))

    def padded(self, k: int) -> tuple:
        if len(self) > k:
            raise UsageError(f"{self} has more than {k} parts")
        return tuple(self) + (0,) * (k - len(self))

    def differences(self) -> list:
        """lambda_i - lambda_{i+1} for i = 1..l, the last against 0."""
        parts = list(self) + [0]
        return [parts[i] - parts[i + 1] for i in range(len(self))]

    def to_json(self):
        return list(self)

    def __repr__(self):
        return f"Partition({tuple(self)!r})"


EMPTY = Partition()


@dataclass(frozen=True)
class PartitionStats:
    weight: int
    length: int
    conjugate: Partition
    mult: dict
    n_stat: int
    n2: int


def statistics(lam) -> PartitionStats:
    lam = Partition(lam)
    return PartitionStats(
        weight=lam.weight,
        length=lam.length,
        conjugate=lam.conjugate(),
        mult=lam.multiplicities(),
        n_stat=lam.n_stat(),
        n2=lam.n2(),
    )


def pochhammer_lambda(x, lam, q):
    """(x)_lambda = (x)_{l1-l2} (x)_{l2-l3} ... with the last difference against 0."""
    result = ONE
    for d in Partition(lam).differences():
        result = qpoch(x, q, d) * result
    return result


def gen_qbinom(n: int, lam, q):
    """(q)_n / ((q)_{n - lambda_1} (q)_lambda), zero when lambda_1 > n."""
    lam = Partition(lam)
    top = lam.part(1)
    if top > n:
        return ZERO
    num = qpoch(q, q, n)
    den = qpoch(q, q, n - top) * pochhammer_lambda(q, lam, q)
    return num * _invert(den)


def coefficient(lam, kind: str, q, k: int | None = None):
    """The coefficient families c, d and their truncated forms.

    ``c_k`` and ``d_k`` take the product over parts i = 1..k-1.
    ``c_k_half`` is the truncated c with (q; q^2)_{m_i/2}, which requires
    m_1..m_{k-1} even.
    """
    lam = Partition(lam)
    mult = lam.multiplicities()
    q2 = q * q
    if kind in ("c_k", "d_k", "c_k_half"):
        if k is None or k < 1:
            raise UsageError(f"kind {kind} needs k >= 1")
        indices = range(1, k)
    elif kind in ("c", "d"):
        indices = sorted(mult)
    else:
        raise UsageError(f"unknown coefficient kind {kind!r}")
    result = ONE
    for i in indices:
        mi = mult.get(i, 0)
        if kind == "c" or kind == "c_k_half":
            if mi % 2:
                raise PreconditionError(f"part {i} of {tuple(lam)} has odd multiplicity")
            result = qpoch(q, q2, mi // 2) * result
        elif kind == "c_k":
            result = qpoch(q, q2, mi) * result
        else:
            result = qpoch(q, q, mi) * _invert(qpoch(q2, q2, mi // 2)) * result
    return result


def enumerate_bounded(max_length, degree_fn, bound: int):
    """Partitions with at most max_length parts and degree_fn(lambda) <= bound.

    ``max_length`` None means unlimited.  Relies on degree_fn being
    non-decreasing when a single part grows, so a failing extension prunes
    everything beyond it.  Output is sorted by (weight, parts).
    """
    found = []

    def grow(parts):
        # parts is a valid partition with degree <= bound; try appending
        found.append(Partition(parts))
        if max_length is not None and len(parts) >= max_length:
            return
        cap = parts[-1] if parts else None
        p = 1
        while cap is None or p <= cap:
            candidate = parts + [p]
            if degree_fn(Partition(candidate)) > bound:
                break
            grow(candidate)
            p += 1

    if degree_fn(EMPTY) <= bound:
        grow([])
    found.sort(key=lambda lam: (lam.weight, tuple(lam)))
    return found


def partitions_of(n: int, max_part: int | None = None):
    """All partitions of n, largest part first, in decreasing lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield EMPTY
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + tuple(rest))


def partitions_in_box(rows: int, cols: int):
    """Partitions with at most ``rows`` parts, each at most ``cols``."""
    out = []
    for k in range(rows + 1):
        for parts in combinations_with_replacement(range(cols, 0, -1), k):
            out.append(Partition(parts))
    out.sort(key=lambda lam: (lam.weight, tuple(lam)))
    return out


def horizontal_strips(mu, m: int):
    """All lambda with lambda/mu a horizontal m-strip (interlacing)."""
    mu = Partition(mu)
    rows = list(mu) + [0]
    results = []

    def place(i, remaining, acc):
        if i == len(rows):
            if remaining == 0:
                results.append(Partition.from_parts(acc))
            return
        upper = None if i == 0 else rows[i - 1]
        low = rows[i]
        top = low + remaining if upper is None else min(upper, low + remaining)
        for value in range(low, top + 1):
            place(i + 1, remaining - (value - low), acc + [value])

    place(0, m, [])
    return results


def strips(mu, m: int, direction: str = "horizontal"):
    """Partitions lambda containing mu with |lambda/mu| = m added as a strip."""
    if direction == "horizontal":
        found = horizontal_strips(mu, m)
    elif direction == "vertical":
        found = [lam.conjugate() for lam in horizontal_strips(Partition(mu).conjugate(), m)]
    else:
        raise UsageError(f"unknown strip direction {direction!r}")
    return sorted(set(found), reverse=True)
