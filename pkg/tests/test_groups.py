"""Abelian group arithmetic, enumeration order, and automorphism streams."""

import random

import pytest

from cayleycert.groups import (
    AbelianGroup,
    AutEnumerationError,
    count_automorphisms,
    enumerate_automorphisms,
    make_automorphism,
    parse_group_spec,
)


def brute_force_automorphism_count(G: AbelianGroup) -> int:
    """Oracle: try every generator-image tuple, keep the bijective maps."""
    elems = G.elements()

    def image(images, g):
        out = G.identity
        for r, img in zip(g, images):
            for _ in range(r):
                out = G.add(out, img)
        return out

    count = 0
    stack = [()]
    while stack:
        partial = stack.pop()
        if len(partial) == G.rank:
            seen = {image(partial, g) for g in elems}
            if len(seen) == G.order:
                count += 1
            continue
        pos = len(partial)
        for cand in elems:
            if G.factors[pos] % G.element_order(cand) == 0:
                stack.append(partial + (cand,))
    return count


class TestArithmetic:
    def test_add_examples(self):
        G = AbelianGroup((9, 9))
        assert G.add((2, 7), (8, 5)) == (1, 3)
        Z5 = AbelianGroup((5,))
        assert Z5.add((3,), (2,)) == (0,)

    def test_identity_and_neg(self):
        G = AbelianGroup((4, 6))
        rng = random.Random(7)
        for _ in range(50):
            g = tuple(rng.randrange(n) for n in G.factors)
            assert G.add(g, G.identity) == g
            assert G.neg(G.neg(g)) == g
            assert G.add(g, G.neg(g)) == G.identity

    def test_commutative_associative(self):
        G = AbelianGroup((3, 4, 5))
        rng = random.Random(11)
        for _ in range(100):
            g, h, k = (
                tuple(rng.randrange(n) for n in G.factors) for _ in range(3)
            )
            assert G.add(g, h) == G.add(h, g)
            assert G.add(G.add(g, h), k) == G.add(g, G.add(h, k))

    def test_arity_mismatch(self):
        G = AbelianGroup((5,))
        with pytest.raises(ValueError):
            G.add((1, 2), (0,))

    def test_bad_factors(self):
        with pytest.raises(ValueError):
            AbelianGroup((1, 5))
        with pytest.raises(ValueError):
            AbelianGroup(())


class TestElementOrder:
    def test_examples(self):
        G = AbelianGroup((9, 9))
        assert G.element_order((3, 0)) == 3
        assert G.element_order((1, 4)) == 9
        assert G.element_order(G.identity) == 1

    @pytest.mark.parametrize("factors", [(7,), (2, 2), (4, 3), (9, 9), (2, 5, 6)])
    def test_order_divides_group_order(self, factors):
        G = AbelianGroup(factors)
        if G.order <= 100:
            for g in G.elements():
                m = G.element_order(g)
                assert G.order % m == 0
                assert G.scalar_mul(m, g) == G.identity
                for d in range(1, m):
                    assert G.scalar_mul(d, g) != G.identity


class TestEnumeration:
    def test_examples(self):
        G = AbelianGroup((9, 9))
        assert G.element_of(0) == (0, 0)
        assert G.element_of(13) == (1, 4)
        assert AbelianGroup((5,)).element_of(4) == (4,)

    @pytest.mark.parametrize("factors", [(5,), (9, 9), (2, 3, 4)])
    def test_round_trip(self, factors):
        G = AbelianGroup(factors)
        for i in range(G.order):
            assert G.index_of(G.element_of(i)) == i
        seen = {G.element_of(i) for i in range(G.order)}
        assert len(seen) == G.order

    def test_residue_matrix_matches(self):
        G = AbelianGroup((4, 5))
        res = G.residue_matrix
        for i in range(G.order):
            assert tuple(res[i]) == G.element_of(i)

    def test_add_table(self):
        G = AbelianGroup((3, 4))
        tab = G.add_table
        for i in range(G.order):
            for j in range(G.order):
                assert G.element_of(int(tab[i, j])) == G.add(
                    G.element_of(i), G.element_of(j)
                )


class TestCyclicSubgroup:
    def test_examples(self):
        G = AbelianGroup((9, 9))
        assert G.cyclic_subgroup((1, 1)) == frozenset((m, m) for m in range(9))
        assert G.cyclic_subgroup((3, 0)) == {(0, 0), (3, 0), (6, 0)}
        assert G.cyclic_subgroup(G.identity) == {G.identity}

    def test_cardinality_is_order(self):
        G = AbelianGroup((4, 6))
        for g in G.elements():
            assert len(G.cyclic_subgroup(g)) == G.element_order(g)


class TestAutomorphisms:
    def test_counts_against_brute_force(self):
        for factors in [(3, 3), (5,), (2, 4)]:
            G = AbelianGroup(factors)
            assert count_automorphisms(G) == brute_force_automorphism_count(G)

    def test_frozen_counts(self):
        assert count_automorphisms(AbelianGroup((3, 3))) == 48
        assert count_automorphisms(AbelianGroup((5,))) == 4
        assert count_automorphisms(AbelianGroup((9, 9))) == 3888

    @pytest.mark.parametrize("p,expect", [(2, 6), (3, 48), (5, 480)])
    def test_gl2_formula(self, p, expect):
        assert (p * p - 1) * (p * p - p) == expect
        assert count_automorphisms(AbelianGroup((p, p))) == expect

    def test_z5_images(self):
        autos = list(enumerate_automorphisms(AbelianGroup((5,))))
        assert [a.generator_images for a in autos] == [
            ((1,),),
            ((2,),),
            ((3,),),
            ((4,),),
        ]

    def test_additivity_and_bijectivity(self):
        for factors in [(3, 3), (8,), (2, 2, 2), (9, 9)]:
            G = AbelianGroup(factors)
            if G.order > 81:
                continue
            elems = G.elements()
            for sigma in enumerate_automorphisms(G):
                images = {sigma.apply(g) for g in elems}
                assert len(images) == G.order
                for g in elems[:5]:
                    for h in elems[:5]:
                        assert sigma.apply(G.add(g, h)) == G.add(
                            sigma.apply(g), sigma.apply(h)
                        )

    def test_deterministic_order(self):
        G = AbelianGroup((3, 3))
        first = [a.generator_images for a in enumerate_automorphisms(G)]
        second = [a.generator_images for a in enumerate_automorphisms(G)]
        assert first == second

    def test_apply_examples(self):
        Z13 = AbelianGroup((13,))
        doubling = make_automorphism(Z13, [(2,)])
        assert doubling.apply((3,)) == (6,)
        squares = {(1,), (3,), (4,), (9,), (10,), (12,)}
        assert doubling.apply_set(squares) == {(2,), (6,), (8,), (5,), (7,), (11,)}
        ident = make_automorphism(Z13, [(1,)])
        assert ident.apply((7,)) == (7,)

    def test_permutation_matches_apply(self):
        G = AbelianGroup((4, 3))
        for sigma in enumerate_automorphisms(G):
            perm = sigma.as_permutation()
            for i, g in enumerate(G.elements()):
                assert G.element_of(int(perm[i])) == sigma.apply(g)

    def test_make_automorphism_rejects(self):
        G = AbelianGroup((4, 2))
        with pytest.raises(ValueError):
            make_automorphism(G, [(1, 0)])  # one image only
        with pytest.raises(ValueError):
            make_automorphism(G, [(0, 1), (0, 1)])  # order 2 fine, but not bijective
        with pytest.raises(ValueError):
            make_automorphism(G, [(1, 0), (1, 0)])  # image order 4 does not divide 2

    def test_budget_error(self):
        with pytest.raises(AutEnumerationError):
            next(iter(enumerate_automorphisms(AbelianGroup((65537,)))))


class TestSpecParsing:
    def test_examples(self):
        assert parse_group_spec("Z9xZ9").factors == (9, 9)
        assert parse_group_spec("z5").factors == (5,)
        assert parse_group_spec("Z3xZ3xZ3").factors == (3, 3, 3)
        assert parse_group_spec(" Z2 x Z4 ").factors == (2, 4)

    def test_rejects(self):
        with pytest.raises(ValueError):
            parse_group_spec("9x9")
        with pytest.raises(ValueError):
            parse_group_spec("")
