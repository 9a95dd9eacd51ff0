from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import poly_pairs
from coregular.catalog import (abelian, example32, filiform, heisenberg,
                               panyushev, sl2)
from coregular.grobner import BudgetExceededError
from coregular.invariants import (MODE_ALL, MODE_INVARIANTS, GeneratorSet,
                                  SemiInvariant, WeightVector,
                                  algebraically_independent, find_relations,
                                  gorenstein_invariant, graded_semi_invariants,
                                  minimal_generators, poisson_bracket,
                                  substitute_generators, trdeg_check,
                                  verify_semi_invariant, weight_derivation)
from coregular.poly import (DEGREVLEX, Polynomial, format_polynomial,
                            parse_polynomial)


def fmt(p, g):
    return format_polynomial(p, g.names)


def weights_of(block_list):
    return sorted(tuple(w.values) for w, _ in block_list)


def make_generator_set(g, polys, degree_bound=None):
    zero = WeightVector.zero(g.dim)
    gens = tuple(SemiInvariant(p, zero, p.total_degree()) for p in polys)
    return GeneratorSet(algebra=g, mode=MODE_INVARIANTS,
                        degree_bound=degree_bound or g.dim, order=DEGREVLEX,
                        generators=gens, irrational_degrees=())


class TestGradedSearch:
    def test_panyushev_degree_one(self):
        g = panyushev()
        graded = graded_semi_invariants(g, 1)
        blocks = {tuple(w.values): [fmt(f, g) for f in basis]
                  for w, basis in graded.blocks}
        one = Fraction(1)
        assert blocks == {
            (one, 0, 0, 0): ["v2", "v3"],
            (-one, 0, 0, 0): ["v4"],
        }
        assert graded.weight_zero() == ()
        assert not graded.irrational_flag

    def test_panyushev_degree_two_invariants(self):
        g = panyushev()
        graded = graded_semi_invariants(g, 2)
        assert [fmt(f, g) for f in graded.weight_zero()] == ["v2*v4", "v3*v4"]

    def test_filiform3_degree_one(self):
        g = filiform(3)
        graded = graded_semi_invariants(g, 1)
        assert len(graded.blocks) == 1
        w, basis = graded.blocks[0]
        assert w.is_zero and [fmt(f, g) for f in basis] == ["v3"]

    def test_example32_semi_center_dimensions(self):
        g = example32()
        dims = [graded_semi_invariants(g, d).total_dim() for d in (1, 2, 3)]
        assert dims == [1, 1, 1]
        for d in (1, 2, 3):
            graded = graded_semi_invariants(g, d)
            (w, basis), = graded.blocks
            assert fmt(basis[0], g) == ("v3" if d == 1 else f"v3^{d}")
            assert w.values == (Fraction(d), 0, 0)

    def test_abelian_everything_invariant(self):
        g = abelian(3)
        graded = graded_semi_invariants(g, 2)
        (w, basis), = graded.blocks
        assert w.is_zero and len(basis) == 6

    def test_weights_vanish_on_derived(self, catalog_algebras):
        for g in catalog_algebras:
            graded = graded_semi_invariants(g, 2)
            derived = g.derived_subalgebra()
            for w, _ in graded.blocks:
                for b in derived.basis:
                    assert sum(c * x for c, x in zip(w.values, b)) == 0

    def test_defining_identity_holds(self, catalog_algebras):
        for g in catalog_algebras:
            graded = graded_semi_invariants(g, 2)
            for w, basis in graded.blocks:
                for f in basis:
                    assert verify_semi_invariant(g, f, w)


class TestMinimalGenerators:
    def test_filiform4_invariants(self):
        g = filiform(4)
        gens = minimal_generators(g, 3, MODE_INVARIANTS)
        assert gens.degrees == (1, 2)
        assert fmt(gens.generators[0].poly, g) == "v4"
        # the degree-two generator spans with v2*v4 - 1/2 v3^2 up to scale
        f = gens.generators[1].poly
        target = parse_polynomial("v2*v4 - 1/2*v3^2", g.names)
        scale = f.leading_coefficient() / target.leading_coefficient()
        assert f == target * scale

    def test_filiform6_degree_multiset(self):
        gens = minimal_generators(filiform(6), 6, MODE_INVARIANTS)
        assert sorted(gens.degrees) == [1, 2, 2, 3, 3]
        assert fmt(gens.generators[0].poly, filiform(6)) == "v6"

    def test_abelian_degree_one_only(self):
        g = abelian(2)
        gens = minimal_generators(g, 2, MODE_ALL)
        assert gens.degrees == (1, 1)
        assert [fmt(s.poly, g) for s in gens.generators] == ["v1", "v2"]

    def test_panyushev_modes_differ(self):
        g = panyushev()
        semi = minimal_generators(g, 2, MODE_ALL)
        inv = minimal_generators(g, 2, MODE_INVARIANTS)
        assert semi.degrees == (1, 1, 1) and semi.degree_sum() == 3
        assert inv.degrees == (2, 2) and inv.degree_sum() == 4
        assert semi.has_proper() and not inv.has_proper()

    def test_sl2_casimir(self):
        g = sl2()
        gens = minimal_generators(g, 3, MODE_ALL)
        assert gens.degrees == (2,)
        casimir = gens.generators[0].poly
        # h^2 + 4 e f up to the pivot normalization
        target = parse_polynomial("h^2 + 4*e*f", g.names)
        scale = casimir.leading_coefficient() / target.leading_coefficient()
        assert casimir == target * scale

    def test_heisenberg_generators(self):
        g = heisenberg([[0, 1], [0, 0]])
        gens = minimal_generators(g, 2, MODE_ALL)
        assert gens.degrees == (1, 2)
        assert fmt(gens.generators[0].poly, g) == "c"
        z = parse_polynomial("c*t - w2*u1", g.names)
        second = gens.generators[1].poly
        # equal up to scale modulo the span of c^2
        c2 = parse_polynomial("c^2", g.names)
        diffs = [second * z.leading_coefficient() -
                 z * second.leading_coefficient()]
        from coregular.poly import try_exact_div
        assert diffs[0].is_zero or try_exact_div(diffs[0], c2) is not None

    def test_minimality_no_generator_in_lower_products(self):
        gens = minimal_generators(filiform(6), 4, MODE_INVARIANTS)
        from coregular.linalg import SparseEchelon
        for k, s in enumerate(gens.generators):
            ech = SparseEchelon(lambda keys: max(keys, key=DEGREVLEX.key))
            from coregular.invariants import _exponent_vectors
            lower = gens.generators[:k]
            for exps in _exponent_vectors([t.degree for t in lower], s.degree):
                prod = Polynomial.one(6)
                for i, e in enumerate(exps):
                    prod = prod * lower[i].poly ** e
                ech.add(prod.terms)
            assert ech.reduce(s.poly.terms), \
                "generator lies in the algebra of the earlier ones"


class TestIndependenceAndRelations:
    def test_filiform4_generators_independent(self):
        g = filiform(4)
        gens = minimal_generators(g, 2, MODE_INVARIANTS)
        ok, rank = algebraically_independent(
            [s.poly for s in gens.generators], 4)
        assert ok and rank == 2

    def test_power_relation_detected(self):
        v3 = Polynomial.variable(3, 2)
        ok, rank = algebraically_independent([v3, v3 ** 2], 3)
        assert not ok and rank == 1

    def test_filiform6_rank_four(self):
        gens = minimal_generators(filiform(6), 3, MODE_INVARIANTS)
        ok, rank = algebraically_independent(
            [s.poly for s in gens.generators], 6)
        assert rank == 4 and not ok

    def test_trivial_power_relation_found(self):
        g = abelian(3)
        v3 = Polynomial.variable(3, 2)
        gens = make_generator_set(g, [v3, v3 ** 2])
        rels = find_relations(gens, 2)
        assert len(rels) == 1
        r = rels[0]
        assert r.weighted_degree == 2
        # g2 - g1^2 up to normalization
        expected = parse_polynomial("y2 - y1^2", ["y1", "y2"]).monic()
        assert r.poly == expected or r.poly == -expected

    def test_filiform4_relation_free(self):
        gens = minimal_generators(filiform(4), 4, MODE_INVARIANTS)
        assert find_relations(gens, 6) == []

    def test_filiform6_single_relation_matches_presentation(self):
        g = filiform(6)
        gens = minimal_generators(g, 6, MODE_INVARIANTS)
        rels = find_relations(gens, 6)
        assert len(rels) == 1
        assert rels[0].weighted_degree == 6
        assert substitute_generators(rels[0], gens).is_zero

    def test_budget_cap(self):
        g = abelian(2)
        gens = minimal_generators(g, 2, MODE_ALL)
        with pytest.raises(BudgetExceededError):
            find_relations(gens, 40, max_monomials=5)

    def test_substitution_zero_on_all_found_relations(self):
        gens = minimal_generators(filiform(5), 4, MODE_INVARIANTS)
        for rel in find_relations(gens, 8):
            assert substitute_generators(rel, gens).is_zero


class TestPoissonBracket:
    def test_degree_one_equals_bracket(self):
        g = filiform(3)
        v1, v2 = Polynomial.variable(3, 0), Polynomial.variable(3, 1)
        assert fmt(poisson_bracket(v1, v2, g), g) == "v3"

    def test_filiform4_invariant_commutes(self):
        g = filiform(4)
        f = parse_polynomial("v2*v4 - 1/2*v3^2", g.names)
        v1 = Polynomial.variable(4, 0)
        assert poisson_bracket(f, v1, g).is_zero

    @given(poly_pairs(max_nvars=3))
    @settings(max_examples=40, deadline=None)
    def test_antisymmetry(self, pair):
        a, b = pair
        g = filiform(3) if a.nvars == 3 else abelian(a.nvars)
        assert poisson_bracket(a, b, g) == -poisson_bracket(b, a, g)
        assert poisson_bracket(a, a, g).is_zero

    def test_leibniz_in_each_slot(self):
        g = sl2()
        e, f, h = (Polynomial.variable(3, i) for i in range(3))
        a, b, c = e + h, f * h, e * f - h ** 2
        lhs = poisson_bracket(a, b * c, g)
        rhs = poisson_bracket(a, b, g) * c + b * poisson_bracket(a, c, g)
        assert lhs == rhs

    def test_degree_drop(self):
        g = filiform(5)
        a = parse_polynomial("v2^2*v3", g.names)
        b = parse_polynomial("v1*v4", g.names)
        out = poisson_bracket(a, b, g)
        assert out.is_zero or out.total_degree() <= 4

    def test_semi_invariant_bracket_formula(self):
        # {f, s} = (sum_i w_i d/dv_i f) * s for a semi-invariant s of weight w
        g = panyushev()
        graded = graded_semi_invariants(g, 1)
        for w, basis in graded.blocks:
            for s in basis:
                for f in (parse_polynomial("v1*v2 - v3^2", g.names),
                          parse_polynomial("v1^2*v4", g.names)):
                    assert poisson_bracket(f, s, g) == \
                        weight_derivation(f, w) * s

    def test_found_semi_invariants_pairwise_commute(self, catalog_algebras):
        for g in catalog_algebras:
            gens = minimal_generators(g, 2, MODE_ALL)
            polys = [s.poly for s in gens.generators]
            for i in range(len(polys)):
                for j in range(i, len(polys)):
                    assert poisson_bracket(polys[i], polys[j], g).is_zero


class TestTrdegAndGorenstein:
    def test_heisenberg_consistent(self):
        g = heisenberg([[0, 1], [0, 0]])
        gens = minimal_generators(g, 2, MODE_ALL)
        check = trdeg_check(g, gens)
        assert check.status == "consistent"
        assert check.rank == 2 and check.expected == 2

    def test_filiform5_consistent_at_degree_three(self):
        g = filiform(5)
        gens = minimal_generators(g, 3, MODE_ALL)
        check = trdeg_check(g, gens)
        assert check.status == "consistent" and check.rank == 3

    def test_panyushev_not_applicable(self):
        g = panyushev()
        gens = minimal_generators(g, 2, MODE_ALL)
        assert trdeg_check(g, gens).status == "not-applicable"

    def test_deficient_when_bound_too_small(self):
        g = filiform(5)
        gens = minimal_generators(g, 1, MODE_ALL)
        assert trdeg_check(g, gens).status == "deficient"

    def test_gorenstein_polynomial_ring_case(self):
        gens = minimal_generators(filiform(4), 4, MODE_INVARIANTS)
        result = gorenstein_invariant(gens, [])
        assert result.value == 3 and result.case == "polynomial-ring"
        gens3 = minimal_generators(filiform(3), 3, MODE_INVARIANTS)
        assert gorenstein_invariant(gens3, []).value == 1

    def test_gorenstein_complete_intersection_case(self):
        gens = minimal_generators(filiform(6), 6, MODE_INVARIANTS)
        rels = find_relations(gens, 6)
        result = gorenstein_invariant(gens, rels)
        assert result.value == 5 and result.case == "complete-intersection"

    def test_gorenstein_undefined_case(self):
        gens = minimal_generators(filiform(5), 5, MODE_INVARIANTS)
        result = gorenstein_invariant(gens, [])
        assert not result.defined and result.reason


class TestJacobianRankCrossChecks:
    def test_bareiss_rank_agrees_with_evaluation_probes(self):
        import random
        from coregular.invariants import jacobian_matrix, poly_matrix_rank
        from coregular.linalg import rank as numeric_rank
        rng = random.Random(3)
        cases = [
            (minimal_generators(filiform(5), 3, MODE_INVARIANTS), 5),
            (minimal_generators(filiform(6), 3, MODE_INVARIANTS), 6),
            (minimal_generators(panyushev(), 2, MODE_INVARIANTS), 4),
        ]
        for gens, n in cases:
            jac = jacobian_matrix([s.poly for s in gens.generators], n)
            symbolic = poly_matrix_rank([row[:] for row in jac])
            best = 0
            for _ in range(6):
                point = [Fraction(rng.randint(-7, 7)) for _ in range(n)]
                numeric = numeric_rank(
                    [[entry.evaluate(point) for entry in row] for row in jac])
                assert numeric <= symbolic
                best = max(best, numeric)
            assert best == symbolic

    def test_bareiss_on_known_small_matrices(self):
        from coregular.invariants import poly_matrix_rank
        x = Polynomial.variable(2, 0)
        y = Polynomial.variable(2, 1)
        zero = Polynomial.zero(2)
        assert poly_matrix_rank([[x, y], [y, x]]) == 2
        assert poly_matrix_rank([[x, y], [x * x, x * y]]) == 1
        assert poly_matrix_rank([[zero, zero], [zero, zero]]) == 0
        assert poly_matrix_rank([[zero, x], [zero, y]]) == 1
