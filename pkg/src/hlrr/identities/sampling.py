"""Deterministic random rational points for the point-evaluation strategy."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from ..errors import PreconditionError, UsageError

DEFAULT_MAX_RESAMPLES = 1000


def case_rng(seed: int, case_id: str) -> random.Random:
    """A generator seeded from (seed, case id) only, so parallel schedules agree."""
    digest = hashlib.sha256(f"{int(seed)}:{case_id}".encode()).digest()
    return random.Random(int.from_bytes(digest[:16], "big"))


@dataclass(frozen=True)
class RandomPointSpec:
    """How to draw ``count`` rationals and which constraints they must meet.

    Constraint names: ``distinct`` (pairwise distinct), ``pair_not_one``
    (x_i x_j != 1 for i < j), ``not_unit`` (x_i != +-1), and ``q_admissible``
    applied to the separately drawn q (q not in {0, 1, -1}).
    """

    count: int
    numerators: tuple = tuple(i for i in range(-9, 10) if i)
    denominators: tuple = tuple(range(1, 10))
    constraints: frozenset = field(default_factory=lambda: frozenset({"distinct"}))
    max_resamples: int = DEFAULT_MAX_RESAMPLES

    def __post_init__(self):
        if self.count < 0:
            raise UsageError("negative variable count")
        if not self.numerators or not self.denominators:
            raise UsageError("empty sampling range")
        if any(d <= 0 for d in self.denominators):
            raise UsageError("denominators must be positive")


def random_rational(rng: random.Random, spec: RandomPointSpec | None = None) -> mpq:
    spec = spec or RandomPointSpec(1)
    return mpq(rng.choice(spec.numerators), rng.choice(spec.denominators))


def violations(xs, constraints) -> list:
    found = []
    if "distinct" in constraints and len(set(xs)) != len(xs):
        found.append("distinct")
    if "not_unit" in constraints and any(x in (1, -1) for x in xs):
        found.append("not_unit")
    if "pair_not_one" in constraints:
        if any(xs[i] * xs[j] == 1 for i in range(len(xs)) for j in range(i + 1, len(xs))):
            found.append("pair_not_one")
    return found


def random_points(spec: RandomPointSpec, rng) -> tuple:
    """Draw ``spec.count`` rationals meeting the constraints.

    ``rng`` may be a Random instance or an integer seed.  Raises
    PreconditionError once max_resamples draws have all been rejected.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    for _ in range(spec.max_resamples):
        xs = tuple(random_rational(rng, spec) for _ in range(spec.count))
        if not violations(xs, spec.constraints):
            return xs
    raise PreconditionError(f"no admissible sample after {spec.max_resamples} draws")


def random_q(rng: random.Random, spec: RandomPointSpec | None = None) -> mpq:
    """A random q outside {0, 1, -1}."""
    spec = spec or RandomPointSpec(1)
    for _ in range(spec.max_resamples):
        q = random_rational(rng, spec)
        if q not in (0, 1, -1):
            return q
    raise PreconditionError("no admissible q")
