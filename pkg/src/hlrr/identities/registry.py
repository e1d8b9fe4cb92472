"""The catalog of verification cases.

Every case names the identity it checks, its strategy (``point`` for exact
rational identities checked at random rational points, ``series`` for
coefficientwise equality of truncated series), its default parameter grid,
and an ``evaluate`` callable producing the comparisons for one trial.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from gmpy2 import mpq

from .. import bailey
from ..errors import UsageError
from ..exactnum import ONE, PowerSeries, is_scalar, rational_text
from ..hlpoly import (
    N_CONVENTIONS,
    PointConfig,
    hl_symmetrization,
    pieri_sides,
    principal_sides,
    specialization_sides,
)
from ..partitions import Partition, partitions_in_box, partitions_of, strips
from ..qtools import Mono, alt_qbinom_sum_check, congruence_product, jacobi_triple, qbinom_theorem_check
from . import forms
from .sampling import RandomPointSpec, random_points, random_q, random_rational

MAX_ORDER = 200
MAX_POINT_N = 7
TEST_CASES_ENV = "HLRR_TEST_CASES"


@dataclass(frozen=True)
class Comparison:
    """One equality (or, with expect="differ", one inequality) to decide.

    ``required`` comparisons decide the case; the others are reported only.
    ``where`` locates the comparison inside a trial; ``hi`` overrides the
    series comparison window (default: the run's order).
    """

    name: str
    lhs: object
    rhs: object
    required: bool = True
    expect: str = "equal"
    where: dict = field(default_factory=dict)
    hi: int | None = None


@dataclass
class Trial:
    comparisons: list
    sample: dict | None = None


@dataclass(frozen=True)
class Context:
    rng: object
    order: int | None


@dataclass(frozen=True)
class IdentityCase:
    id: str
    paper_eq: str
    strategy: str
    evaluate: Callable
    instances: tuple = ({},)
    trials: int = 1
    order: int | None = None
    randomized: bool = False
    notes: tuple = ()
    test_only: bool = False

    def describe(self) -> dict:
        return {
            "id": self.id,
            "paper_eq": self.paper_eq,
            "strategy": self.strategy,
            "params": self.default_params(),
        }

    def default_params(self) -> dict:
        params = {}
        if self.order is not None:
            params["order"] = self.order
        if self.randomized:
            params["trials"] = self.trials
        params.update(grid_summary(self.instances))
        return params


def grid_summary(instances) -> dict:
    """Distinct values per instance key, in first-seen order."""
    keys = {}
    for inst in instances:
        for key, value in inst.items():
            seen = keys.setdefault(key, [])
            if value not in seen:
                seen.append(value)
    return {k: (v[0] if len(v) == 1 else v) for k, v in keys.items()}


# sampling helpers

POINT_CONSTRAINTS = frozenset({"distinct", "not_unit", "pair_not_one"})


def _xs(ctx, n, constraints=POINT_CONSTRAINTS):
    return random_points(RandomPointSpec(n, constraints=constraints), ctx.rng)


def _q(ctx):
    return random_q(ctx.rng)


def _r(ctx, nonzero=True):
    while True:
        x = random_rational(ctx.rng)
        if x or not nonzero:
            return x


def _text(x):
    return rational_text(x) if is_scalar(x) else x


def _sample(**values):
    out = {}
    for key, value in values.items():
        if isinstance(value, (tuple, list)):
            out[key] = [_text(v) for v in value]
        else:
            out[key] = _text(value)
    return out


@lru_cache(maxsize=None)
def _pair(which: int):
    return bailey.slater_pair(which)


# Rogers-Ramanujan opening pair


def _eval_rr_intro(inst, ctx):
    lhs = forms.rr_intro_lhs(inst["a"], ctx.order)
    rhs = forms.rr_intro_rhs(inst["a"], ctx.order)
    comps = [Comparison("series", lhs, rhs)]
    if inst["a"] == 0 and ctx.order >= 4:
        comps.append(Comparison("q4_coefficient_lhs", lhs.coefficient(4), mpq(2)))
        comps.append(Comparison("q4_coefficient_rhs", rhs.coefficient(4), mpq(2)))
    return Trial(comps)


def _eval_mutant(inst, ctx):
    lhs = forms.rr_intro_lhs(0, ctx.order)
    rhs = congruence_product({1, 4}, 5, ctx.order).mul_binomial(1, 3)
    return Trial([Comparison("series", lhs, rhs)])


# full sums of Hall-Littlewood polynomials


def _hl_sum_evaluator(kind):
    def evaluate(inst, ctx):
        cs = _xs(ctx, inst["n"], frozenset({"distinct"}))
        q = _q(ctx)
        lhs = forms.hl_graded_lhs(kind, cs, q, ctx.order)
        rhs = forms.hl_graded_rhs(kind, cs, q, ctx.order)
        return Trial([Comparison("t_series", lhs, rhs)], _sample(c=cs, q=q))

    return evaluate


def _bounded_evaluator(even):
    def evaluate(inst, ctx):
        n, k = inst["n"], inst["k"]
        xs = _xs(ctx, n)
        q = _q(ctx)
        pc = PointConfig(xs, q)
        comps = [Comparison("point", forms.bounded_lhs(even, pc, k), forms.bounded_rhs(even, pc, k))]
        graded_lhs = forms.bounded_graded_lhs(even, xs, q, k, ctx.order)
        graded_rhs = forms.bounded_graded_rhs(even, xs, q, k, ctx.order)
        comps.append(Comparison("t_series", graded_lhs, graded_rhs))
        return Trial(comps, _sample(x=xs, q=q))

    return evaluate


# bounded-part formulas with truncated coefficients


def _theorem1_evaluator(which):
    def evaluate(inst, ctx):
        n, k = inst["n"], inst["k"]
        xs = _xs(ctx, n)
        q = _q(ctx)
        pc = PointConfig(xs, q)
        rhs = forms.theorem1_rhs(which, pc, k)
        comps = [Comparison("point", forms.theorem1_lhs(which, pc, k), rhs)]
        if which == "a":
            printed = forms.theorem1_lhs(which, pc, k, kind="c_k")
            comps.append(Comparison("printed_coefficient", printed, rhs, required=False))
            if n == 2 and k == 1:
                x1, x2 = xs
                comps.append(Comparison("closed_form", comps[0].lhs, 1 + x1 * x2))
                worked = PointConfig((mpq(2), mpq(3)), q)
                comps.append(Comparison("worked_example_lhs", forms.theorem1_lhs("a", worked, 1), mpq(7)))
                comps.append(Comparison("worked_example_rhs", forms.theorem1_rhs("a", worked, 1), mpq(7)))
        return Trial(comps, _sample(x=xs, q=q))

    return evaluate


# the key q-identity


def _eval_t2(inst, ctx):
    k = inst["k"]
    a, b, z = _r(ctx, False), _r(ctx, False), _r(ctx)
    zm = Mono(z, 0)
    lhs = forms.t2_lhs(k, a, b, zm, ctx.order)
    rhs = forms.t2_rhs(k, a, b, zm, ctx.order)
    return Trial([Comparison("series", lhs, rhs)], _sample(a=a, b=b, z=z))


def _eval_t2zq(inst, ctx):
    k = inst["k"]
    a, b = _r(ctx, False), _r(ctx, False)
    zq = Mono(ONE, 1)
    lhs = forms.t2_lhs(k, a, b, zq, ctx.order)
    comps = [
        Comparison("substituted", lhs, forms.t2_rhs(k, a, b, zq, ctx.order)),
        Comparison("display_corrected_r0", lhs, forms.t2zq_display(k, a, b, ctx.order, printed=False)),
        Comparison("display_printed", lhs, forms.t2zq_display(k, a, b, ctx.order, printed=True), required=False),
    ]
    return Trial(comps, _sample(a=a, b=b))


def _eval_jtp(inst, ctx):
    x = Mono(-1, inst["a"])
    total = jacobi_triple(x, inst["M"], ctx.order, side="sum")
    product = jacobi_triple(x, inst["M"], ctx.order, side="product")
    return Trial([Comparison("sum_vs_product", total, product)])


def _t3_evaluator(which):
    def evaluate(inst, ctx):
        k, order = inst["k"], ctx.order
        lhs = forms.t3_lhs(which, k, order)
        jtp = forms.t3_jtp(which, k, order)
        comps = [Comparison("lhs_vs_jtp", lhs, jtp)]
        comps.append(Comparison("printed_vs_jtp", forms.t3_printed(which, k, order), jtp, required=which == 11))
        if which == 15:
            comps.append(Comparison("printed_lhs_vs_jtp", forms.t3_lhs(15, k, order, printed=True), jtp, required=False))
        return Trial(comps)

    return evaluate


def _rr_evaluator(which):
    def evaluate(inst, ctx):
        lhs = forms.rr_lhs(which, ctx.order)
        comps = [Comparison("printed_product", lhs, forms.rr_rhs(which, ctx.order))]
        factor = forms.RR_COLLAPSE_FACTOR[which]
        multisum = forms.t3_lhs(forms.RR_FROM_T3[which], 1, ctx.order)
        comps.append(Comparison("multisum_k1", lhs.scale(factor), multisum))
        return Trial(comps)

    return evaluate


# Pieri rules


def _eval_pieri(inst, ctx):
    xs = _xs(ctx, inst["n"], frozenset({"distinct"}))
    q = _q(ctx)
    lhs, rhs = pieri_sides(Partition(inst["mu"]), inst["m"], PointConfig(xs, q))
    return Trial([Comparison("point", lhs, rhs)], _sample(x=xs, q=q))


def _eval_qpieri(inst, ctx):
    n = inst["n"]
    q = _q(ctx)
    comps = []
    for mu in partitions_in_box(4, n):
        for m in range(5):
            where = {"mu": list(mu), "m": m}
            lhs, rhs = forms.qpieri_sides(mu, m, n, q)
            comps.append(Comparison("point", lhs, rhs, where=where))
            brute = forms.horizontal_strips_brute(mu, m)
            found = strips(mu, m, "horizontal")
            comps.append(Comparison("strips_vs_brute_force", [list(x) for x in found], [list(x) for x in brute], where=where))
    return Trial(comps, _sample(q=q))


# the bounded-part formulas at the principal specialization


def _t4_evaluator(which):
    def evaluate(inst, ctx):
        n, k = inst["n"], inst["k"]
        w, q = _r(ctx), _q(ctx)
        z = w * w if which == "a" else w
        rhs = forms.t4_rhs(which, n, k, z, q)
        lhs = forms.t4_lhs(which, n, k, z, q)
        comps = [Comparison("point", lhs, rhs)]
        if which == "a":
            printed = forms.t4_lhs("a", n, k, z, q, printed=True)
            comps.append(Comparison("printed_coefficient", printed, rhs, required=False))
        if n <= 4:
            comps.append(Comparison("hall_littlewood_lhs", forms.t4_hl_lhs(which, n, k, w, q), lhs))
        return Trial(comps, _sample(w=w, z=z, q=q))

    return evaluate


def _eval_lim1(inst, ctx):
    k = inst["k"]
    z = _r(ctx)
    zm = Mono(z, 0)
    lhs = forms.t2_lhs(k, 0, 0, zm, ctx.order)
    return Trial([Comparison("series", lhs, forms.t2_rhs(k, 0, 0, zm, ctx.order))], _sample(z=z))


def _eval_lim2(inst, ctx):
    k = inst["k"]
    z = _r(ctx)
    zm = Mono(z, 0)
    lhs = forms.lim2_lhs(k, zm, ctx.order)
    return Trial([Comparison("series", lhs, forms.lim2_rhs(k, zm, ctx.order))], _sample(z=z))


def _eval_t4zq(inst, ctx):
    k, order = inst["k"], ctx.order
    zq = Mono(ONE, 1)
    comps = [
        Comparison("odd_parts_product", forms.lim2_lhs(k, zq, order), forms.odd_product_inverse(order)),
        Comparison("first_limit_lhs_is_multisum", forms.t2_lhs(k, 0, 0, zq, order), forms.t3_lhs(11, k, order)),
        Comparison("first_limit_rhs_is_jtp", forms.t2_rhs(k, 0, 0, zq, order), forms.t3_jtp(11, k, order)),
    ]
    return Trial(comps)


def _eval_p28(inst, ctx):
    n = inst["n"]
    w, q = _r(ctx), _q(ctx)
    pinned = forms.pinned_n_convention()
    comps = []
    for size in range(7):
        for lam in partitions_of(size, n):
            where = {"lambda": list(lam)}
            for name in N_CONVENTIONS:
                lhs, rhs = principal_sides(lam, n, w, q, name)
                comps.append(Comparison(f"convention_{name}", lhs, rhs, required=name == pinned, where=where))
    return Trial(comps, _sample(w=w, q=q))


def _specialization_evaluator(which):
    def evaluate(inst, ctx):
        n, r = inst["n"], inst["r"]
        w, q = _r(ctx), _q(ctx)
        comps = [Comparison("principal", *specialization_sides(which, n, r, w, q))]
        sample = _sample(w=w, q=q)
        if which == 29:
            xs = _xs(ctx, n)
            comps.append(Comparison("general_points", *specialization_sides(29, n, r, w, q, xs=xs)))
            sample["x"] = [_text(x) for x in xs]
        return Trial(comps, sample)

    return evaluate


# elementary identities


def _eval_qbt(inst, ctx):
    z, q = _r(ctx), _q(ctx)
    lhs, rhs = qbinom_theorem_check(inst["N"], z, q)
    return Trial([Comparison("point", lhs, rhs)], _sample(z=z, q=q))


def _eval_geom(inst, ctx):
    j = inst["j"]
    q = _q(ctx)
    comps = []
    for i in range(4):
        for r in range(j + 1):
            comps.append(Comparison("point", *forms.geometric_e_sides(r, i, j, q), where={"i": i, "r": r}))
    return Trial(comps, _sample(q=q))


def _eval_alt(inst, ctx):
    lhs, rhs = alt_qbinom_sum_check(inst["m"])
    return Trial([Comparison("polynomial", lhs, rhs, hi=min(lhs.hi, rhs.hi))])


def _lemma6_evaluator(which):
    def evaluate(inst, ctx):
        q = _q(ctx)
        lhs, rhs = forms.lemma6_sides(which, inst["n"], q, ctx.order)
        return Trial([Comparison("z_series", lhs, rhs)], _sample(q=q))

    return evaluate


def _lemma6_limit_evaluator(which):
    def evaluate(inst, ctx):
        c = _r(ctx)
        lhs, rhs = forms.lemma6_limit_sides(which, Mono(c, inst["s"]), ctx.order)
        return Trial([Comparison("series", lhs, rhs)], _sample(c=c))

    return evaluate


def _eval_qg(inst, ctx):
    a, b, c = _r(ctx), _r(ctx), _r(ctx)
    lhs, rhs = forms.qgauss_sides(a, b, Mono(c, inst["s"]), ctx.order)
    return Trial([Comparison("series", lhs, rhs)], _sample(a=a, b=b, c=c))


def _eval_qgterm(inst, ctx):
    a, x, q = _r(ctx), _r(ctx), _q(ctx)
    lhs, rhs = forms.qgauss_terminating_sides(inst["M"], a, x, q)
    return Trial([Comparison("point", lhs, rhs)], _sample(a=a, x=x, q=q))


def _eval_l7(inst, ctx):
    a, b, z = _r(ctx, False), _r(ctx, False), _r(ctx)
    lhs, rhs = forms.lemma7_sides(a, b, z, ctx.order)
    return Trial([Comparison("series", lhs, rhs)], _sample(a=a, b=b, z=z))


# Bailey pairs and chains


def _relation_comparisons(pair, depth, order, name="relation", required=True):
    comps = []
    for n in range(depth + 1):
        lhs, rhs = bailey.relation_sides(pair, n, order)
        comps.append(Comparison(name, lhs, rhs, required=required, where={"n": n}))
    return comps


def _eval_b45(inst, ctx):
    pair = _pair(inst["pair"])
    return Trial(_relation_comparisons(pair, bailey.VALIDATION_DEPTH, ctx.order))


def _eval_slater(inst, ctx):
    which = inst["pair"]
    order = ctx.order
    pair = _pair(which)
    comps = [Comparison("alpha_0", pair.alpha(0, order), PowerSeries.one(order, bailey.VAR))]
    for n in range(bailey.VALIDATION_DEPTH + 1):
        comps.append(Comparison("beta_constant_term", pair.beta(n, order).coefficient(0), ONE, where={"n": n}))
    if which == 1:
        alpha1 = PowerSeries.from_dict({1: 1, 3: 1}, order, lo=0, var=bailey.VAR)
        comps.append(Comparison("alpha_1", pair.alpha(1, order), alpha1))
        literal = bailey.slater_pair(1, literal_alpha0=True, validate=False)
        lhs, rhs = bailey.relation_sides(literal, 0, order)
        comps.append(Comparison("displayed_alpha_0_breaks_relation", lhs, rhs, expect="differ", where={"n": 0}))
    return Trial(comps)


def _eval_btrans(inst, ctx):
    pair = _pair(inst["pair"])
    mode = inst["mode"]
    image = bailey.transform(pair, mode, validate=False)
    comps = _relation_comparisons(image, bailey.TRANSFORM_DEPTH, ctx.order)
    if mode in ("ii", "iii"):
        variant = bailey.transform(pair, mode, validate=False, inner_index=True)
        comps += _relation_comparisons(variant, bailey.TRANSFORM_DEPTH, ctx.order, "inner_index_variant", False)
    return Trial(comps)


def _eval_blim(inst, ctx):
    lhs, rhs = bailey.limit_sides(_pair(inst["pair"]), inst["mode"], ctx.order)
    return Trial([Comparison("series", lhs, rhs)])


def _eval_bchain(inst, ctx):
    pair = _pair(inst["pair"])
    k, mode = inst["k"], inst["mode"]
    lhs = bailey.chain_alpha_side(pair, k, mode, ctx.order)
    rhs = bailey.chain_lambda_side(pair, k, mode, ctx.order)
    return Trial([Comparison("series", lhs, rhs)])


def _derived_evaluator(which):
    def evaluate(inst, ctx):
        k, order = inst["k"], ctx.order
        lhs = bailey.derived_lhs(which, k, order)
        rhs = bailey.derived_rhs(which, k, order)
        comps = [
            Comparison("product", lhs, rhs),
            Comparison("bailey_chain", lhs, bailey.derived_chain(which, k, order)),
        ]
        if which != 55:
            printed = bailey.derived_lhs(which, k, order, printed=True)
            comps.append(Comparison("printed_lhs", printed, rhs, required=False))
        return Trial(comps)

    return evaluate


def _eval_bcompare(inst, ctx):
    k, order = inst["k"], ctx.order
    chain = bailey.chain_lambda_side(_pair(1), k, "an1", order).rename("q")
    comps = [Comparison("pair_chain_equals_multisum", chain, forms.t3_lhs(11, k, order))]
    other = bailey.derived_lhs(55, k, order)
    theta = forms.t3_lhs(13, k, order)
    comps.append(Comparison("differs_from_theta_family", other, theta, expect="differ", required=k > 1))
    return Trial(comps)


# the catalog


def _grid(**axes):
    """Cartesian product of named axes as a tuple of dicts, first axis slowest."""
    out = [{}]
    for key, values in axes.items():
        out = [dict(d, **{key: v}) for d in out for v in values]
    return tuple(out)


K3 = (1, 2, 3)
BAILEY_NOTE = "alpha_0 of the first Slater pair is 1; the displayed formula gives 2, which breaks the relation at n = 0"


def _pieri_grid():
    out = []
    for mu in partitions_in_box(2, 3):
        if not Partition((3, 2)).contains(mu):
            continue
        for m in range(4):
            for n in range(max(1, mu.length), 5):
                out.append({"mu": list(mu), "m": m, "n": n})
    return tuple(out)


def _build():
    cases = [
        IdentityCase("RRintro", "Rogers-Ramanujan pair, a = 0, 1", "series", _eval_rr_intro, _grid(a=(0, 1)), order=60),
        IdentityCase("E1", "sum of all P_lambda", "series", _hl_sum_evaluator("all"), _grid(n=(2, 3)), 5, 12, True),
        IdentityCase("E2", "sum of P_lambda over even lambda", "series", _hl_sum_evaluator("even"), _grid(n=(2, 3)), 5, 12, True),
        IdentityCase(
            "E3", "sum of P_lambda with lambda_1 <= k", "point", _bounded_evaluator(False), _grid(n=(2, 3), k=K3), 10, 12, True
        ),
        IdentityCase(
            "E4", "sum of P_lambda, lambda even, lambda_1 <= 2k", "point", _bounded_evaluator(True), _grid(n=(2, 3), k=K3), 10, 12, True
        ),
        IdentityCase("E5", "sum of c_lambda P_lambda, lambda' even", "series", _hl_sum_evaluator("c"), _grid(n=(2, 3)), 5, 12, True),
        IdentityCase("E6", "sum of d_lambda P_lambda", "series", _hl_sum_evaluator("d"), _grid(n=(2, 3)), 5, 12, True),
        IdentityCase(
            "T1a",
            "bounded sum with c_{lambda,k}, even sign sequences",
            "point",
            _theorem1_evaluator("a"),
            _grid(n=(2, 3, 4), k=K3),
            10,
            None,
            True,
            ("coefficient taken as prod_{i<k} (q;q^2)_{m_i/2}; the displayed (q;q^2)_{m_i} is reported",),
        ),
        IdentityCase(
            "T1b", "bounded sum with d_{lambda,k}", "point", _theorem1_evaluator("b"), _grid(n=(2, 3, 4), k=K3), 10, None, True
        ),
        IdentityCase("T2", "key q-identity with parameters a, b, z", "series", _eval_t2, _grid(k=K3), 5, 40, True),
        IdentityCase(
            "T2zq",
            "key q-identity at z = q",
            "series",
            _eval_t2zq,
            _grid(k=K3),
            3,
            40,
            True,
            ("the displayed leading 1 must be (aq^2, bq^2; q^2)_inf / ((abq^2; q^2)_inf (q^2; q^2)_inf)",),
        ),
        IdentityCase(
            "JTP",
            "Jacobi triple product",
            "series",
            _eval_jtp,
            tuple({"a": a, "M": m} for m in range(2, 13) for a in range(1, m)),
            order=40,
        ),
    ]
    t3_labels = {
        11: "multisum q^{2 n_2}, modulus 8k+8",
        12: "multisum q^{2 n_2 - 2 lambda_1} (1 - q^{2 lambda_1}), modulus 8k+8",
        13: "multisum with (-q; q^2)_{lambda_1}, modulus 4k+2",
        14: "multisum with (-1; q^2)_{lambda_1} (1 - q^{2 lambda_1}), modulus 4k+2",
        15: "multisum with (-1, -q; q^2)_{lambda_1}, modulus 4k",
        16: "multisum with (-1; q^2)_{lambda_1}, modulus 4k+2",
    }
    t3_notes = {
        12: ("the displayed residue list does not match; the theta form decides",),
        14: ("the theta form carries a factor 2 missing from the displayed product",),
        15: ("exponent 2 n_2 - 2 lambda_1^2 + lambda_1; the displayed exponent is reported",),
    }
    for which in forms.T3_IDS:
        cases.append(
            IdentityCase(
                f"T3.{which}", t3_labels[which], "series", _t3_evaluator(which), _grid(k=K3), order=50, notes=t3_notes.get(which, ())
            )
        )
    rr_labels = {
        17: "sum q^{2n^2}/(q)_{2n}",
        18: "sum q^{2n^2+2n}/(q)_{2n+1}",
        19: "sum q^{n^2} (-q; q^2)_n/(q)_{2n}",
        20: "sum q^{n^2+n} (-q^2; q^2)_n/(q)_{2n+1}",
        21: "1 + 2 sum q^n (-q)_{2n-1}/(q)_{2n}",
        22: "1 + 2 sum q^{n(n+1)} (-q^2; q^2)_{n-1}/(q)_{2n}",
    }
    for which in forms.RR_IDS:
        notes = ("the k = 1 multisum is twice this sum",) if forms.RR_COLLAPSE_FACTOR[which] != 1 else ()
        cases.append(IdentityCase(f"RR{which}", rr_labels[which], "series", _rr_evaluator(which), order=60, notes=notes))
    cases += [
        IdentityCase("PIERI", "Pieri rule for P_mu e_m", "point", _eval_pieri, _pieri_grid(), 5, None, True),
        IdentityCase(
            "T4a",
            "principal specialization of the c_{lambda,k} sum",
            "point",
            _t4_evaluator("a"),
            _grid(n=tuple(range(1, 7)), k=K3),
            10,
            None,
            True,
            ("coefficient of (2 lambda)' in half form; the displayed form is reported",),
        ),
        IdentityCase(
            "T4b", "principal specialization of the d_{lambda,k} sum", "point", _t4_evaluator("b"), _grid(n=tuple(range(1, 7)), k=K3), 10, None, True
        ),
        IdentityCase(
            "P28",
            "principal specialization of P_lambda'",
            "point",
            _eval_p28,
            _grid(n=(1, 2, 3, 4)),
            5,
            None,
            True,
        ),
    ]
    for which in (29, 30, 31, 32, 33):
        grid = tuple({"n": n, "r": r} for n in range(1, 6) for r in range(n + 1))
        labels = {
            29: "Phi at twisted points via Psi",
            30: "product of 1 - x_i^2 at the specialization",
            31: "Psi(X^xi; -1) at the specialization",
            32: "product of (1 - q x_i)/(1 - x_i) at the specialization",
            33: "Phi(X^xi; 0, 0) at the specialization",
        }
        cases.append(IdentityCase(f"S{which}", labels[which], "point", _specialization_evaluator(which), grid, 5, None, True))
    cases += [
        IdentityCase("T4lim1", "n -> infinity limit of the c sum", "series", _eval_lim1, _grid(k=K3), 3, 40, True),
        IdentityCase("T4lim2", "n -> infinity limit of the d sum", "series", _eval_lim2, _grid(k=K3), 3, 40, True),
        IdentityCase("T4zq", "limits at z = q", "series", _eval_t4zq, _grid(k=K3), order=40),
        IdentityCase("L5", "q-Pieri rule for generalized q-binomials", "point", _eval_qpieri, _grid(n=(1, 2, 3, 4)), 5, None, True),
        IdentityCase("QBT", "q-binomial theorem", "point", _eval_qbt, _grid(N=tuple(range(9))), 20, None, True),
        IdentityCase("GEOM-E", "elementary symmetric functions of a geometric progression", "point", _eval_geom, _grid(j=(1, 2, 3, 4, 5)), 5, None, True),
        IdentityCase("ALT", "alternating sum of q-binomials", "series", _eval_alt, _grid(m=tuple(range(13)))),
    ]
    l6_labels = {38: "sum z^|l| q^{2n(l)} [n; l]", 39: "sum z^|l| q^{n(l)} [n; l]", 40: "sum (q; q^2)_l z^|l| q^{n(2l)} [n; 2l]"}
    for which in (38, 39, 40):
        cases.append(
            IdentityCase(f"L6.{which}", l6_labels[which], "series", _lemma6_evaluator(which), _grid(n=(1, 2, 3, 4, 5)), 5, 10, True)
        )
    lim_labels = {1: "sum z^|l| q^{2n(l)}/(q)_l", 2: "sum z^|l| q^{n(l)}/(q)_l", 3: "sum z^|l| q^{n(2l)}/(q^2; q^2)_l"}
    for which in (1, 2, 3):
        cases.append(
            IdentityCase(
                f"L6lim.{which}", lim_labels[which], "series", _lemma6_limit_evaluator(which), _grid(s=(1, 2)), 3, 30, True, ("graded by q with z = c q^s",)
            )
        )
    cases += [
        IdentityCase("QG", "q-Gauss sum", "series", _eval_qg, _grid(s=(1, 2)), 5, 30, True, ("graded by q with x = c q^s",)),
        IdentityCase("QGterm", "terminating q-Gauss sum", "point", _eval_qgterm, _grid(M=tuple(range(7))), 5, None, True),
        IdentityCase("L7", "unbounded multisum with (a, b; q^-2)_{lambda_1}", "series", _eval_l7, (), 5, 40, True),
        IdentityCase("B45", "Bailey pair relation", "series", _eval_b45, _grid(pair=(1, 2)), order=40, notes=(BAILEY_NOTE,)),
        IdentityCase("B53", "first Slater pair", "series", _eval_slater, _grid(pair=(1,)), order=40, notes=(BAILEY_NOTE,)),
        IdentityCase("B54", "second Slater pair", "series", _eval_slater, _grid(pair=(2,)), order=40),
        IdentityCase(
            "Btrans",
            "Bailey lemma transforms",
            "series",
            _eval_btrans,
            _grid(pair=(1, 2), mode=("i", "ii", "iii")),
            order=40,
            notes=("in mode ii the factor 1/(-a q^{1/2})_n sits outside the sum; the inner-index variant is reported",),
        ),
        IdentityCase("Blim", "Bailey lemma limits", "series", _eval_blim, _grid(pair=(1, 2), mode=("i", "ii", "iii")), order=40),
        IdentityCase("Bchain", "iterated Bailey lemma", "series", _eval_bchain, _grid(pair=(1, 2), mode=("an1", "an2", "an3"), k=K3), order=40),
        IdentityCase("B55", "multisum from the first pair, mode an2", "series", _derived_evaluator(55), _grid(k=K3), order=40),
        IdentityCase(
            "B56",
            "multisum from the second pair, mode an1",
            "series",
            _derived_evaluator(56),
            _grid(k=K3),
            order=40,
            notes=("denominator (q; q^2)_{lambda_k + 1}; the displayed (q; q^2)_{lambda_k} is reported",),
        ),
        IdentityCase(
            "B57",
            "multisum from the second pair, mode an3",
            "series",
            _derived_evaluator(57),
            _grid(k=K3),
            order=40,
            notes=("denominator (q; q^2)_{lambda_k + 1}; the displayed (q; q^2)_{lambda_k} is reported",),
        ),
        IdentityCase(
            "Bcompare",
            "Bailey-chain multisums against the theta-quotient family",
            "series",
            _eval_bcompare,
            _grid(k=K3),
            order=40,
            notes=("at k = 1 the an2 multisum and the (-q; q^2) multisum are the same series",),
        ),
        IdentityCase("MUTANT", "deliberately corrupted identity", "series", _eval_mutant, order=20, test_only=True),
    ]
    # L7 has no grid axis
    cases = [c if c.instances else _replace(c, instances=({},)) for c in cases]
    return cases


def _replace(case, **changes):
    from dataclasses import replace

    return replace(case, **changes)


@lru_cache(maxsize=None)
def _catalog():
    cases = _build()
    ids = [c.id for c in cases]
    if len(set(ids)) != len(ids):
        raise UsageError("duplicate case id in the catalog")
    return tuple(cases)


def test_cases_enabled() -> bool:
    return os.environ.get(TEST_CASES_ENV, "") not in ("", "0")


def registry(include_test_cases: bool | None = None) -> list:
    """Every catalog case; test-only cases when asked or when HLRR_TEST_CASES is set."""
    if include_test_cases is None:
        include_test_cases = test_cases_enabled()
    return [c for c in _catalog() if include_test_cases or not c.test_only]


def get_case(case_id: str, include_test_cases: bool | None = None) -> IdentityCase:
    for case in registry(include_test_cases):
        if case.id == case_id:
            return case
    raise UsageError(f"unknown case id {case_id!r}")
