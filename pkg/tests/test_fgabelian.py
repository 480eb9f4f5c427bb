"""Canonical forms, morphisms, torsion, purity, and exactness plumbing."""

from __future__ import annotations

import random

import pytest

from conftest import random_automorphism
from torext.corpus import random_element, random_group, random_morphism
from torext.fgabelian import (
    FgGroup,
    GroupParseError,
    InvalidInputError,
    Morphism,
    canonical_from_orders,
    canonicalize,
    cokernel,
    direct_sum,
    format_group,
    image,
    is_pure,
    kernel,
    left_inverse,
    morphism_inverse,
    parse_group,
    pure_witness,
    relation_matrix,
    restrict_to_torsion,
    solve_in_group,
    torsion_subgroup,
)
from torext.intmat import (
    IntMatrix,
    hstack,
    lattice_intersection,
    sublattice_leq,
    unimodular_inverse,
)


def random_unimodular(rng: random.Random, n: int) -> IntMatrix:
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.randrange(-2, 3)
        for r in range(n):
            m[r][j] += c * m[r][i]
    return IntMatrix.from_rows(m, n)


def subgroup_lattice(incl: Morphism) -> IntMatrix:
    """Preimage in Z^ngens of the image subgroup, as a column lattice."""
    g = incl.codomain
    return hstack(incl.matrix, relation_matrix(g))


def pure_by_definition(incl: Morphism, bound: int) -> int | None:
    """First n <= bound with nH != H intersect nG, or None."""
    g = incl.codomain
    rel = relation_matrix(g)
    h_lat = subgroup_lattice(incl)
    for n in range(2, bound + 1):
        n_h = hstack(incl.matrix.scale(n), rel)
        h_cap_ng = lattice_intersection(
            h_lat, hstack(IntMatrix.identity(g.ngens).scale(n), rel)
        )
        if not (sublattice_leq(h_cap_ng, n_h) and sublattice_leq(n_h, h_cap_ng)):
            return n
    return None


class TestGroupType:
    def test_invalid_chains_rejected(self):
        for bad in [(3, 2), (2, 0), (1,), (4, 6)]:
            with pytest.raises(InvalidInputError):
                FgGroup(0, bad)
        with pytest.raises(InvalidInputError):
            FgGroup(-1, ())

    def test_predicates_and_sizes(self):
        g = FgGroup(0, (2, 12))
        assert g.order() == 24 and g.exponent() == 12
        assert g.is_torsion() and not g.is_torsion_free()
        free = FgGroup(2, ())
        assert free.is_torsion_free() and free.is_free() and free.order() is None
        assert FgGroup(0, ()).is_divisible()
        assert not g.is_divisible() and not free.is_divisible()

    def test_element_reduction_and_arithmetic(self):
        g = FgGroup(1, (4,))
        x = g.element((3, 5))
        y = g.element((2, -1))
        assert (x + y).coords() == (1, 4)
        assert (x - x).is_zero()
        assert x.scale(4).coords() == (0, 20)
        assert g.element((7, 0)) == g.element((3, 0))

    def test_element_orders(self):
        g = FgGroup(0, (2, 12))
        assert g.generator(0).order() == 2
        assert g.generator(1).order() == 12
        assert g.element((1, 6)).order() == 2
        assert FgGroup(1, ()).generator(0).order() is None
        assert FgGroup(1, ()).zero().order() == 1

    def test_elements_enumeration(self):
        g = FgGroup(0, (2, 4))
        elems = list(g.elements())
        assert len(elems) == 8 == len(set(elems))
        with pytest.raises(InvalidInputError):
            list(FgGroup(1, ()).elements())


class TestParsing:
    def test_round_trip(self):
        for text, expect in [
            ("Z^2 + Z/4 + Z/6", FgGroup(2, (2, 12))),
            ("Z/6", FgGroup(0, (6,))),
            ("Z^1", FgGroup(1, ())),
            ("0", FgGroup(0, ())),
            (" Z / 2 + Z ^ 2 ", FgGroup(2, (2,))),
        ]:
            assert parse_group(text) == expect
            assert parse_group(format_group(expect)) == expect

    def test_error_positions(self):
        with pytest.raises(GroupParseError) as exc:
            parse_group("Z/1")
        assert exc.value.position == 2
        for bad in ["", "Z/", "Z^-1", "Q/2", "Z/4 +", "Z/0"]:
            with pytest.raises(GroupParseError):
                parse_group(bad)


class TestCanonicalize:
    def test_frozen_examples(self):
        g, proj = canonicalize(2, IntMatrix.diagonal([2, 3]))
        assert g == FgGroup(0, (6,)) and proj.is_surjective()
        assert canonicalize(2, IntMatrix.zeros(2, 0))[0] == FgGroup(2, ())
        assert canonicalize(1, IntMatrix.from_rows([[1]]))[0] == FgGroup(0, ())

    def test_invariant_under_change_of_generators(self):
        rng = random.Random(21)
        for _ in range(60):
            n = rng.randrange(1, 5)
            k = rng.randrange(0, n + 2)
            rel = IntMatrix.from_rows(
                [[rng.randrange(-6, 7) for _ in range(k)] for _ in range(n)], k
            )
            g, _ = canonicalize(n, rel)
            u = random_unimodular(rng, n)
            w = random_unimodular(rng, k)
            moved = unimodular_inverse(u).transpose() @ rel @ w
            assert canonicalize(n, moved)[0] == g

    def test_projection_kills_exactly_the_relations(self):
        rng = random.Random(22)
        for _ in range(40):
            n = rng.randrange(1, 4)
            k = rng.randrange(0, 3)
            rel = IntMatrix.from_rows(
                [[rng.randrange(-5, 6) for _ in range(k)] for _ in range(n)], k
            )
            g, proj = canonicalize(n, rel)
            for j in range(k):
                assert proj(proj.domain.element(rel.col(j))).is_zero()


class TestTorsion:
    def test_frozen_examples(self):
        t, incl = torsion_subgroup(parse_group("Z^2 + Z/4 + Z/6"))
        assert t == FgGroup(0, (2, 12))
        assert incl.is_injective()
        assert torsion_subgroup(FgGroup(3, ()))[0].is_trivial()
        finite = FgGroup(0, (4, 8))
        t2, incl2 = torsion_subgroup(finite)
        assert t2 == finite and incl2.is_isomorphism()

    def test_inclusion_image_is_all_finite_order_elements(self):
        g = parse_group("Z^1 + Z/2 + Z/4")
        t, incl = torsion_subgroup(g)
        images = {incl(x) for x in t.elements()}
        assert len(images) == t.order()
        assert all(x.order() is not None for x in images)

    def test_additivity(self):
        rng = random.Random(23)
        for _ in range(40):
            g = random_group(rng)
            h = random_group(rng)
            lhs = torsion_subgroup(direct_sum(g, h)[0])[0]
            rhs = direct_sum(torsion_subgroup(g)[0], torsion_subgroup(h)[0])[0]
            assert lhs == rhs

    def test_restriction_is_functorial(self):
        rng = random.Random(24)
        for _ in range(40):
            a, b, c = (random_group(rng) for _ in range(3))
            f = random_morphism(rng, a, b)
            g = random_morphism(rng, b, c)
            assert restrict_to_torsion(g @ f) == restrict_to_torsion(g) @ restrict_to_torsion(f)

    def test_restriction_commutes_with_inclusions(self):
        rng = random.Random(25)
        for _ in range(40):
            a, b = random_group(rng), random_group(rng)
            f = random_morphism(rng, a, b)
            ta, incl_a = torsion_subgroup(a)
            tb, incl_b = torsion_subgroup(b)
            assert incl_b @ restrict_to_torsion(f) == f @ incl_a

    def test_restriction_of_isomorphism_is_isomorphism(self):
        rng = random.Random(26)
        for _ in range(40):
            g = random_group(rng)
            beta = random_automorphism(rng, g)
            r = restrict_to_torsion(beta)
            assert r.is_isomorphism()
            assert kernel(r)[0].is_trivial() and cokernel(r)[0].is_trivial()


class TestKernelImageCokernel:
    def test_multiplication_by_two_on_z(self):
        f = Morphism.multiplication(FgGroup(1, ()), 2)
        assert kernel(f)[0].is_trivial()
        assert image(f)[0] == FgGroup(1, ())
        assert cokernel(f)[0] == FgGroup(0, (2,))

    def test_identity_and_zero(self):
        g = parse_group("Z^1 + Z/6")
        ident = Morphism.identity(g)
        assert kernel(ident)[0].is_trivial() and cokernel(ident)[0].is_trivial()
        z = Morphism.zero(g, g)
        assert kernel(z)[0] == g and image(z)[0].is_trivial() and cokernel(z)[0] == g

    def test_image_equals_kernel_of_cokernel_projection(self):
        rng = random.Random(27)
        for _ in range(50):
            a, b = random_group(rng), random_group(rng)
            f = random_morphism(rng, a, b)
            img, img_incl = image(f)
            _, proj = cokernel(f)
            ker, ker_incl = kernel(proj)
            assert img == ker
            lhs = subgroup_lattice(img_incl)
            rhs = subgroup_lattice(ker_incl)
            assert sublattice_leq(lhs, rhs) and sublattice_leq(rhs, lhs)

    def test_kernel_members_die_and_exhaust(self):
        rng = random.Random(28)
        for _ in range(40):
            a = random_group(rng, max_rank=1)
            b = random_group(rng, max_rank=1)
            f = random_morphism(rng, a, b)
            ker, incl = kernel(f)
            for _ in range(5):
                x = random_element(rng, ker)
                assert f(incl(x)).is_zero()
            if a.order() is not None and a.order() <= 64:
                dead = sum(1 for x in a.elements() if f(x).is_zero())
                assert dead == ker.order()

    def test_solve_in_group_round_trip(self):
        rng = random.Random(29)
        for _ in range(40):
            a, b = random_group(rng, max_rank=1), random_group(rng, max_rank=1)
            f = random_morphism(rng, a, b)
            x = random_element(rng, a)
            target = f(x)
            sol = solve_in_group(f.matrix, b, target.coords())
            assert sol is not None
            assert f(a.element(sol)) == target


class TestDirectSum:
    def test_frozen_examples(self):
        assert direct_sum(FgGroup(0, (2,)), FgGroup(0, (3,)))[0] == FgGroup(0, (6,))
        assert direct_sum(FgGroup(0, (2,)), FgGroup(0, (4,)))[0] == FgGroup(0, (2, 4))
        g = parse_group("Z^1 + Z/9")
        assert direct_sum(g, FgGroup(0, ()))[0] == g

    def test_structure_morphisms(self):
        rng = random.Random(30)
        for _ in range(30):
            g, h = random_group(rng), random_group(rng)
            s, i1, i2, p1, p2 = direct_sum(g, h)
            assert p1 @ i1 == Morphism.identity(g)
            assert p2 @ i2 == Morphism.identity(h)
            assert (p1 @ i2).matrix.is_zero()
            assert (p2 @ i1).matrix.is_zero()
            assert (i1 @ p1 + i2 @ p2) == Morphism.identity(s)


class TestPurity:
    def test_frozen_examples(self):
        two_z = Morphism.multiplication(FgGroup(1, ()), 2)
        assert not is_pure(two_z)
        assert pure_witness(two_z) == 2
        g = parse_group("Z/2 + Z/4")
        full = Morphism.identity(g)
        assert is_pure(full) and pure_witness(full) is None
        summand = Morphism(FgGroup(0, (2,)), g, IntMatrix.from_rows([[1], [0]]))
        assert is_pure(summand)
        non_pure = Morphism(FgGroup(0, (2,)), g, IntMatrix.from_rows([[0], [2]]))
        assert not is_pure(non_pure) and pure_witness(non_pure) == 2

    def test_rejects_non_injective(self):
        g = FgGroup(0, (4,))
        with pytest.raises(InvalidInputError):
            is_pure(Morphism.zero(g, g))

    def test_agrees_with_definition_on_random_inclusions(self):
        rng = random.Random(31)
        seen_pure = seen_impure = 0
        for _ in range(60):
            a = random_group(rng, max_rank=1, max_factors=2, max_factor=8)
            b = random_group(rng, max_rank=1, max_factors=2, max_factor=8)
            f = random_morphism(rng, a, b)
            _, incl = image(f)
            witness = pure_witness(incl, bound=100)
            definitional = pure_by_definition(incl, bound=24)
            if is_pure(incl):
                seen_pure += 1
                assert witness is None and definitional is None
            else:
                seen_impure += 1
                assert witness is not None and witness <= 100
                assert pure_by_definition(incl, bound=witness) == witness
        assert seen_pure > 5 and seen_impure > 5

    def test_witness_bound_from_cokernel_exponent(self):
        rng = random.Random(32)
        for _ in range(40):
            a = random_group(rng, max_rank=0, max_factors=2, max_factor=8)
            b = random_group(rng, max_rank=1, max_factors=2, max_factor=8)
            f = random_morphism(rng, a, b)
            _, incl = image(f)
            witness = pure_witness(incl)
            if witness is not None:
                coker = cokernel(incl)[0]
                assert witness <= max(torsion_subgroup(coker)[0].exponent(), 1)


class TestInverses:
    def test_morphism_inverse_round_trip(self):
        rng = random.Random(33)
        for _ in range(30):
            g = random_group(rng)
            beta = random_automorphism(rng, g)
            inv = morphism_inverse(beta)
            assert inv @ beta == Morphism.identity(g)
            assert beta @ inv == Morphism.identity(g)

    def test_left_inverse_of_split_injection(self):
        rng = random.Random(34)
        for _ in range(30):
            g, h = random_group(rng), random_group(rng)
            i1 = direct_sum(g, h).inject_left
            r = left_inverse(i1)
            assert r is not None and r @ i1 == Morphism.identity(g)

    def test_left_inverse_missing_for_non_split(self):
        two_z = Morphism.multiplication(FgGroup(1, ()), 2)
        assert left_inverse(two_z) is None
        f = Morphism(FgGroup(0, (2,)), FgGroup(0, (4,)), IntMatrix.from_rows([[2]]))
        assert left_inverse(f) is None


class TestMorphismValidation:
    def test_ill_defined_rejected(self):
        z2, z4 = FgGroup(0, (2,)), FgGroup(0, (4,))
        with pytest.raises(InvalidInputError):
            Morphism(z2, z4, IntMatrix.from_rows([[1]]))
        Morphism(z2, z4, IntMatrix.from_rows([[2]]))  # fine: 2 has order 2
        with pytest.raises(InvalidInputError):
            Morphism(z2, FgGroup(1, ()), IntMatrix.from_rows([[1]]))

    def test_matrix_normalized_mod_codomain(self):
        z4 = FgGroup(0, (4,))
        f = Morphism(z4, z4, IntMatrix.from_rows([[5]]))
        assert f.matrix == IntMatrix.from_rows([[1]])

    def test_composition_shapes_checked(self):
        f = Morphism.identity(FgGroup(0, (2,)))
        g = Morphism.identity(FgGroup(0, (3,)))
        with pytest.raises(InvalidInputError):
            g @ f

    def test_canonical_from_orders(self):
        assert canonical_from_orders([2, 3, 1]) == FgGroup(0, (6,))
        assert canonical_from_orders([4, 6]) == FgGroup(0, (2, 12))
        assert canonical_from_orders([], free_rank=2) == FgGroup(2, ())
