"""Executable property suites for the t-extension toolkit.

Each suite draws seeded instances (or walks a fixed census), checks one
statement about t-extensions, and reports violations as JSON artifacts
that replay through ``replay`` or the CLI.  Mutation mode negates one
named predicate per suite so the harness can prove its own suites are
able to fail.

Reports are deterministic functions of (name, trials, seed, max_order).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import corpus
from .duality import dual_extension, dual_group, dual_morphism
from .extcalc import (
    ext_group,
    ext_t_subgroup,
    ext_t_via_free_quotient,
    ext_t_via_torsion_targets,
    fg_t_injective,
    fg_t_projective,
    hom_group,
    pext_group,
    t_injective_counterexample,
    t_projective_counterexample,
)
from .extensions import (
    are_equivalent,
    baer_sum,
    classify,
    direct_sum_ext,
    is_pure_extension,
    is_t_extension,
    pullback,
    pushout,
    realize,
    split_extension,
    splits,
)
from .fgabelian import (
    FgGroup,
    Morphism,
    canonical_from_orders,
    cokernel,
    direct_sum,
    restrict_to_torsion,
    torsion_subgroup,
)
from .intmat import IntMatrix, InvalidInputError
from .jsonio import (
    ext_element_from_json,
    ext_element_to_json,
    extension_from_json,
    extension_to_json,
    group_from_json,
    group_to_json,
    morphism_from_json,
    morphism_to_json,
)
from .oracle import class_count, class_of_table, enumerate_classes, oracle_t_classes

__all__ = ["SuiteReport", "Suite", "SUITES", "suite_names", "run_suite", "replay"]


@dataclass
class SuiteReport:
    name: str
    seed: int
    trials: int
    failures: list = field(default_factory=list)
    elapsed: float = 0.0
    note: str | None = None
    mutated: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        out = {
            "suite": self.name,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "failures": self.failures,
            "elapsed": round(self.elapsed, 6),
        }
        if self.note:
            out["note"] = self.note
        if self.mutated:
            out["mutated"] = True
        return out


@dataclass(frozen=True)
class Suite:
    name: str
    mutant: str
    make_cases: Callable
    check: Callable
    note: str | None = None
    exhaustive: bool = False


def _base_predicates() -> dict:
    return {
        "is_t": is_t_extension,
        "splits": splits,
        "is_pure": is_pure_extension,
        "equivalent": are_equivalent,
        "equal_groups": lambda g, h: g == h,
        "equal_classes": lambda x, y: x == y,
        "is_trivial": lambda g: g.is_trivial(),
        "count_equal": lambda a, b: a == b,
    }


def _small_finite(rng, max_order: int) -> FgGroup:
    return corpus.random_finite_group(rng, max_factors=2, max_factor=8, max_order=max_order)


def _small_mixed(rng, max_order: int, max_rank: int = 1) -> FgGroup:
    g = _small_finite(rng, max_order)
    return FgGroup(rng.randint(0, max_rank), g.invariant_factors)


def _free(rng, max_rank: int = 2) -> FgGroup:
    return FgGroup(rng.randint(1, max_rank), ())


def _nonfree(rng, max_order: int) -> FgGroup:
    while True:
        g = _small_mixed(rng, max_order)
        if not g.is_free():
            return g


def _torsioned(rng, max_order: int) -> FgGroup:
    while True:
        g = _small_finite(rng, max_order)
        if not g.is_trivial():
            return FgGroup(0, g.invariant_factors)


# -- sampled suites --------------------------------------------------


def _gen_pushout_pullback(rng, max_order):
    a = _small_mixed(rng, max_order)
    c = _small_mixed(rng, max_order)
    e = corpus.random_t_extension(rng, a, c)
    a2 = _small_mixed(rng, max_order)
    c2 = _small_mixed(rng, max_order)
    mu = corpus.random_morphism(rng, a, a2, span=3)
    gamma = corpus.random_morphism(rng, c2, c, span=3)
    return {
        "extension": extension_to_json(e),
        "mu": morphism_to_json(mu),
        "gamma": morphism_to_json(gamma),
    }


def _check_pushout_pullback(case, p):
    e = extension_from_json(case["extension"])
    mu = morphism_from_json(case["mu"])
    gamma = morphism_from_json(case["gamma"])
    if not is_t_extension(e):
        return False, "sampled extension is not a t-extension"
    if not p["is_t"](pushout(e, mu)):
        return False, "pushout of a t-extension is not a t-extension"
    if not p["is_t"](pullback(e, gamma)):
        return False, "pullback of a t-extension is not a t-extension"
    return True, ""


def _gen_equivalence_transport(rng, max_order):
    a = _small_mixed(rng, max_order)
    c = _small_mixed(rng, max_order)
    e1 = corpus.random_t_extension(rng, a, c)
    e2 = baer_sum(e1, split_extension(a, c))
    return {"e1": extension_to_json(e1), "e2": extension_to_json(e2)}


def _check_equivalence_transport(case, p):
    e1 = extension_from_json(case["e1"])
    e2 = extension_from_json(case["e2"])
    if not are_equivalent(e1, e2):
        return False, "constructed pair is not equivalent"
    if not is_t_extension(e1):
        return False, "first member is not a t-extension"
    if not p["is_t"](e2):
        return False, "equivalent extension lost the t property"
    return True, ""


def _gen_direct_sum(rng, max_order):
    cases = []
    for _ in range(2):
        a = _small_mixed(rng, max_order)
        c = _small_mixed(rng, max_order)
        cases.append(extension_to_json(corpus.random_t_extension(rng, a, c)))
    return {"e1": cases[0], "e2": cases[1]}


def _check_direct_sum(case, p):
    e1 = extension_from_json(case["e1"])
    e2 = extension_from_json(case["e2"])
    if not p["is_t"](direct_sum_ext(e1, e2)):
        return False, "direct sum of t-extensions is not a t-extension"
    return True, ""


def _gen_baer_group_law(rng, max_order):
    a = _small_finite(rng, max_order)
    c = _small_finite(rng, max_order)
    eg = ext_group(c, a)
    x = eg.random_element(rng)
    y = eg.random_element(rng)
    return {"x": ext_element_to_json(x), "y": ext_element_to_json(y)}


def _check_baer_group_law(case, p):
    x = ext_element_from_json(case["x"])
    y = ext_element_from_json(case["y"])
    ex, ey = realize(x), realize(y)
    if not p["equal_classes"](classify(baer_sum(ex, ey)), x + y):
        return False, "Baer sum does not add classes"
    neutral = split_extension(x.parent.A, x.parent.C)
    if not p["equal_classes"](classify(baer_sum(ex, neutral)), x):
        return False, "split extension is not neutral"
    if not splits(baer_sum(ex, realize(-x))):
        return False, "class inverse does not cancel"
    return True, ""


def _gen_pure_implies_t(rng, max_order):
    a = _small_mixed(rng, max_order)
    c = _small_mixed(rng, max_order)
    e = corpus.random_extension(rng, a, c)
    pure = split_extension(a, c)
    return {"extension": extension_to_json(e), "pure": extension_to_json(pure)}


def _check_pure_implies_t(case, p):
    e = extension_from_json(case["extension"])
    pure = extension_from_json(case["pure"])
    if is_pure_extension(e) and not p["is_t"](e):
        return False, "pure extension is not a t-extension"
    if not p["is_t"](pure):
        return False, "split (hence pure) extension is not a t-extension"
    for inst in (e, pure):
        if is_pure_extension(inst):
            lhs = cokernel(restrict_to_torsion(inst.phi))[0]
            rhs = torsion_subgroup(cokernel(inst.phi)[0])[0]
            if lhs != rhs:
                return False, "tB/phi(tA) differs from t(B/phi(A)) on a pure instance"
    return True, ""


def _gen_ends_collapse(rng, max_order):
    c = _free(rng)
    a = _small_mixed(rng, max_order)
    return {"C": group_to_json(c), "A": group_to_json(a)}


def _check_ends_collapse(case, p):
    c = group_from_json(case["C"])
    a = group_from_json(case["A"])
    eg = ext_group(c, a)
    if not p["is_trivial"](eg.structure):
        return False, "Ext over a free base is nonzero"
    if not p["is_trivial"](ext_t_subgroup(c, a).as_group()):
        return False, "Ext_t over a free base is nonzero"
    if not p["is_trivial"](pext_group(c, a)):
        return False, "Pext over a free base is nonzero"
    return True, ""


def _gen_torsion_free_base_splitting(rng, max_order):
    a = _free(rng)
    c = _torsioned(rng, max_order)
    e = corpus.random_extension(rng, a, c)
    zero = split_extension(a, c)
    return {"extension": extension_to_json(e), "zero": extension_to_json(zero)}


def _check_torsion_free_base_splitting(case, p):
    for key in ("extension", "zero"):
        e = extension_from_json(case[key])
        if not is_t_extension(e):
            continue
        if not p["splits"](e):
            return False, "t-extension with torsion-free kernel does not split"
        decomposition = direct_sum(e.A, torsion_subgroup(e.B)[0]).group
        if decomposition != e.B:
            return False, "middle group is not phi(A) + tB"
    return True, ""


def _gen_pure_torsion_free_splits(rng, max_order):
    a = _free(rng)
    c = _torsioned(rng, max_order)
    e = corpus.random_extension(rng, a, c)
    pure = split_extension(a, c)
    return {"extension": extension_to_json(e), "pure": extension_to_json(pure)}


def _check_pure_torsion_free_splits(case, p):
    first = extension_from_json(case["extension"])
    if not pext_group(first.C, first.A).is_trivial():
        return False, "Pext is not trivial"
    for key in ("extension", "pure"):
        e = extension_from_json(case[key])
        if is_pure_extension(e) and not p["splits"](e):
            return False, "pure extension with torsion-free kernel does not split"
    return True, ""


def _gen_torsion_pair_all_t(rng, max_order):
    a = _torsioned(rng, max_order)
    c = _torsioned(rng, max_order)
    e = corpus.random_extension(rng, a, c)
    return {"extension": extension_to_json(e)}


def _check_torsion_pair_all_t(case, p):
    e = extension_from_json(case["extension"])
    if not p["is_t"](e):
        return False, "extension of torsion groups is not a t-extension"
    sub = ext_t_subgroup(e.C, e.A)
    if sub.as_group() != ext_group(e.C, e.A).structure:
        return False, "Ext_t is smaller than Ext for torsion groups"
    return True, ""


def _gen_torsion_target_reduction(rng, max_order):
    c = _torsioned(rng, max_order)
    a = _small_mixed(rng, max_order, max_rank=2)
    return {"C": group_to_json(c), "A": group_to_json(a)}


def _check_torsion_target_reduction(case, p):
    c = group_from_json(case["C"])
    a = group_from_json(case["A"])
    direct = ext_t_subgroup(c, a).as_group()
    reduced = ext_t_via_torsion_targets(c, a)
    if not p["equal_groups"](direct, reduced):
        return False, "Ext_t(C, A) differs from Ext(C, tA)"
    return True, ""


def _gen_cyclic_base_quotient(rng, max_order):
    m = rng.randint(2, 30)
    a = _small_mixed(rng, max_order, max_rank=2)
    return {"m": m, "A": group_to_json(a)}


def _check_cyclic_base_quotient(case, p):
    m = case["m"]
    a = group_from_json(case["A"])
    c = FgGroup(0, (m,))
    direct = ext_t_subgroup(c, a).as_group()
    t_a = FgGroup(0, a.invariant_factors)
    mult = Morphism(t_a, t_a, IntMatrix.diagonal([m] * t_a.ngens))
    quotient = cokernel(mult)[0]
    if not p["equal_groups"](direct, quotient):
        return False, "Ext_t(Z/m, A) differs from tA/m tA"
    return True, ""


def _gen_finite_additivity(rng, max_order):
    c = _torsioned(rng, max_order)
    a1 = _small_mixed(rng, max_order)
    a2 = _small_mixed(rng, max_order)
    return {"C": group_to_json(c), "A1": group_to_json(a1), "A2": group_to_json(a2)}


def _check_finite_additivity(case, p):
    c = group_from_json(case["C"])
    a1 = group_from_json(case["A1"])
    a2 = group_from_json(case["A2"])
    joint = ext_t_subgroup(c, direct_sum(a1, a2).group).as_group()
    parts = canonical_from_orders(
        list(ext_t_subgroup(c, a1).as_group().invariant_factors)
        + list(ext_t_subgroup(c, a2).as_group().invariant_factors)
    )
    if not p["equal_groups"](joint, parts):
        return False, "Ext_t does not split over a finite direct sum"
    return True, ""


def _gen_free_quotient_reduction(rng, max_order):
    a = _free(rng)
    c = _small_mixed(rng, max_order, max_rank=2)
    return {"C": group_to_json(c), "A": group_to_json(a)}


def _check_free_quotient_reduction(case, p):
    c = group_from_json(case["C"])
    a = group_from_json(case["A"])
    direct = ext_t_subgroup(c, a).as_group()
    reduced = ext_t_via_free_quotient(c, a)
    if not p["equal_groups"](direct, reduced):
        return False, "Ext_t(C, A) differs from Ext(C/tC, A)"
    return True, ""


def _gen_torsion_free_injectivity(rng, max_order):
    free_a = _free(rng)
    torsion_a = _nonfree(rng, max_order)
    c = _small_mixed(rng, max_order)
    return {
        "free_A": group_to_json(free_a),
        "torsion_A": group_to_json(torsion_a),
        "C": group_to_json(c),
    }


def _check_torsion_free_injectivity(case, p):
    free_a = group_from_json(case["free_A"])
    torsion_a = group_from_json(case["torsion_A"])
    c = group_from_json(case["C"])
    if not fg_t_injective(free_a):
        return False, "torsion-free group not recognized as t-injective"
    if not p["is_trivial"](ext_t_subgroup(c, free_a).as_group()):
        return False, "nonzero t-class with torsion-free kernel"
    if fg_t_injective(torsion_a):
        return False, "group with torsion recognized as t-injective"
    witness = t_injective_counterexample(torsion_a)
    if witness is None:
        return False, "missing counterexample for a group with torsion"
    base, x = witness
    if x.is_zero() or not ext_t_subgroup(base, torsion_a).contains(x):
        return False, "counterexample is not a nonzero t-class"
    if splits(realize(x)):
        return False, "counterexample class splits"
    return True, ""


def _gen_free_projectivity(rng, max_order):
    free_c = _free(rng)
    nonfree_c = _nonfree(rng, max_order)
    a = _small_mixed(rng, max_order)
    return {
        "free_C": group_to_json(free_c),
        "nonfree_C": group_to_json(nonfree_c),
        "A": group_to_json(a),
    }


def _check_free_projectivity(case, p):
    free_c = group_from_json(case["free_C"])
    nonfree_c = group_from_json(case["nonfree_C"])
    a = group_from_json(case["A"])
    if not fg_t_projective(free_c):
        return False, "free group not recognized as t-projective"
    if not p["is_trivial"](ext_t_subgroup(free_c, a).as_group()):
        return False, "nonzero t-class over a free base"
    if fg_t_projective(nonfree_c):
        return False, "non-free group recognized as t-projective"
    witness = t_projective_counterexample(nonfree_c)
    if witness is None:
        return False, "missing witness for a non-free base"
    coeff, x = witness
    if x.is_zero() or not ext_t_subgroup(nonfree_c, coeff).contains(x):
        return False, "witness is not a nonzero t-class"
    if splits(realize(x)):
        return False, "witness class splits"
    return True, ""


def _gen_duality_transport(rng, max_order):
    while True:
        a = _small_finite(rng, max_order)
        c = _small_finite(rng, max_order)
        if (a.order() or 1) * (c.order() or 1) <= 64:
            break
    e = corpus.random_extension(rng, a, c)
    return {"extension": extension_to_json(e)}


def _check_duality_transport(case, p):
    e = extension_from_json(case["extension"])
    try:
        de = dual_extension(e)
    except InvalidInputError as exc:
        return False, f"dual extension failed validation: {exc}"
    dde = dual_extension(de)
    if dde.phi.matrix != e.phi.matrix or dde.psi.matrix != e.psi.matrix:
        return False, "double dual is not the identity on normalized data"
    if not are_equivalent(dde, e):
        return False, "double dual is not equivalent to the original"
    if is_pure_extension(e) != p["is_pure"](de):
        return False, "purity is not preserved under duality"
    if ext_group(e.C, e.A).structure != ext_group(e.A, e.C).structure:
        return False, "Ext does not transport across duality"
    if hom_group(e.C, e.A) != hom_group(e.A, e.C):
        return False, "Hom does not transport across duality"
    return True, ""


# -- exhaustive suite -------------------------------------------------


def _cases_oracle_crosscheck(rng, trials, max_order):
    return [
        {"C": group_to_json(c), "A": group_to_json(a)}
        for c, a in corpus.census_pairs()
    ]


def _check_oracle_crosscheck(case, p):
    c = group_from_json(case["C"])
    a = group_from_json(case["A"])
    eg = ext_group(c, a)
    expected = eg.structure.order()
    if not p["count_equal"](class_count(c, a), expected):
        return False, "oracle class count disagrees with Ext"
    classes = enumerate_classes(c, a)
    t_indices = oracle_t_classes(c, a)
    t_coords = {class_of_table(f).coords for f, i in classes if i in t_indices}
    sub_coords = {x.coords for x in ext_t_subgroup(c, a).elements()}
    if t_coords != sub_coords:
        return False, "oracle t-classes disagree with the t-subgroup"
    return True, ""


def _sampled(name, mutant, gen, check, note=None):
    def make_cases(rng, trials, max_order):
        return [gen(rng, max_order) for _ in range(trials)]

    return Suite(name, mutant, make_cases, check, note=note)


SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        _sampled("pushout_pullback", "is_t", _gen_pushout_pullback, _check_pushout_pullback),
        _sampled(
            "equivalence_transport", "is_t", _gen_equivalence_transport, _check_equivalence_transport
        ),
        _sampled("direct_sum", "is_t", _gen_direct_sum, _check_direct_sum),
        _sampled("baer_group_law", "equal_classes", _gen_baer_group_law, _check_baer_group_law),
        _sampled("pure_implies_t", "is_t", _gen_pure_implies_t, _check_pure_implies_t),
        _sampled("ends_collapse", "is_trivial", _gen_ends_collapse, _check_ends_collapse),
        _sampled(
            "torsion_free_base_splitting",
            "splits",
            _gen_torsion_free_base_splitting,
            _check_torsion_free_base_splitting,
        ),
        _sampled(
            "pure_torsion_free_splits",
            "splits",
            _gen_pure_torsion_free_splits,
            _check_pure_torsion_free_splits,
        ),
        _sampled("torsion_pair_all_t", "is_t", _gen_torsion_pair_all_t, _check_torsion_pair_all_t),
        _sampled(
            "torsion_target_reduction",
            "equal_groups",
            _gen_torsion_target_reduction,
            _check_torsion_target_reduction,
        ),
        _sampled(
            "cyclic_base_quotient",
            "equal_groups",
            _gen_cyclic_base_quotient,
            _check_cyclic_base_quotient,
        ),
        _sampled(
            "finite_additivity", "equal_groups", _gen_finite_additivity, _check_finite_additivity
        ),
        _sampled(
            "free_quotient_reduction",
            "equal_groups",
            _gen_free_quotient_reduction,
            _check_free_quotient_reduction,
        ),
        _sampled(
            "torsion_free_injectivity",
            "is_trivial",
            _gen_torsion_free_injectivity,
            _check_torsion_free_injectivity,
            note="f.g. specialization",
        ),
        _sampled(
            "free_projectivity", "is_trivial", _gen_free_projectivity, _check_free_projectivity
        ),
        _sampled(
            "duality_transport", "is_pure", _gen_duality_transport, _check_duality_transport
        ),
        Suite(
            "oracle_crosscheck",
            "count_equal",
            _cases_oracle_crosscheck,
            _check_oracle_crosscheck,
            note="exhaustive census; trial count is ignored",
            exhaustive=True,
        ),
    ]
}


def suite_names() -> list[str]:
    return list(SUITES)


def run_suite(
    name: str,
    trials: int = 200,
    seed: int = 0,
    max_order: int | None = None,
    mutate: bool = False,
) -> SuiteReport:
    """Run one suite; deterministic in all arguments.

    With mutate=True the suite's designated predicate is negated, which
    must surface at least one replayable failure.
    """
    if name not in SUITES:
        raise InvalidInputError(f"unknown suite: {name}")
    suite = SUITES[name]
    rng = random.Random(f"{seed}/{name}")
    bound = max_order if max_order is not None else 12
    predicates = _base_predicates()
    if mutate:
        original = predicates[suite.mutant]
        predicates[suite.mutant] = lambda *args: not original(*args)
    start = time.monotonic()
    cases = suite.make_cases(rng, trials, bound)
    report = SuiteReport(
        name=name,
        seed=seed,
        trials=len(cases),
        note=suite.note,
        mutated=mutate,
    )
    for case in cases:
        ok, detail = suite.check(case, predicates)
        if not ok:
            report.failures.append({"detail": detail, "case": case})
    report.elapsed = time.monotonic() - start
    return report


def replay(name: str, case: dict) -> tuple[bool, str]:
    """Re-run one serialized counterexample with the honest predicates."""
    if name not in SUITES:
        raise InvalidInputError(f"unknown suite: {name}")
    return SUITES[name].check(case, _base_predicates())
