import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coregular.catalog import (abelian, example32, filiform, heisenberg,
                               panyushev, sl2)
from coregular.lie import (JacobiViolationError, LieAlgebra, LieAlgebraError,
                           Subspace, is_derivation, jordan_chevalley)
from coregular.linalg import identity, mat_eq_zero, mat_mul, mat_sub
from coregular.poly import Polynomial, format_polynomial, parse_polynomial

rational_vec = lambda n: st.lists(
    st.fractions(min_value=-3, max_value=3, max_denominator=2),
    min_size=n, max_size=n)


class TestValidation:
    def test_filiform_table_is_valid(self):
        g = LieAlgebra(["v1", "v2", "v3", "v4"],
                       {(0, 1): {2: 1}, (0, 2): {3: 1}})
        assert g.dim == 4

    def test_jacobi_violation_reports_triple_and_residual(self):
        with pytest.raises(JacobiViolationError) as err:
            LieAlgebra(["v1", "v2", "v3"],
                       {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})
        assert err.value.indices == (1, 2, 3)
        # residual computed by hand: the Jacobi sum equals v3
        assert err.value.residual == [0, 0, 1]

    def test_empty_table_is_abelian(self):
        g = LieAlgebra(["a", "b", "c", "d"], {})
        assert g.is_abelian and g.is_nilpotent()

    def test_bad_keys_rejected(self):
        with pytest.raises(LieAlgebraError):
            LieAlgebra(["v1", "v2"], {(1, 0): {0: 1}})
        with pytest.raises(LieAlgebraError):
            LieAlgebra(["v1", "v1"], {})

    def test_bracket_antisymmetry_is_structural(self):
        g = filiform(4)
        assert g.bracket_basis(0, 1) == [0, 0, 1, 0]
        assert g.bracket_basis(1, 0) == [0, 0, -1, 0]
        assert g.bracket_basis(2, 2) == [0, 0, 0, 0]


class TestStructureMatrix:
    def test_filiform5_first_row(self):
        b = filiform(5).structure_matrix()
        row = [format_polynomial(b[0, j]) for j in range(5)]
        assert row == ["0", "v3", "v4", "v5", "0"]

    def test_abelian_matrix_is_zero(self):
        assert abelian(3).structure_matrix().is_zero

    def test_panyushev_first_row(self):
        g = panyushev()
        b = g.structure_matrix()
        row = [format_polynomial(b[0, j], g.names) for j in range(4)]
        assert row == ["0", "v2", "v3", "-v4"]

    def test_skew_symmetry(self, catalog_algebras):
        for g in catalog_algebras:
            b = g.structure_matrix()
            for i in range(g.dim):
                assert b[i, i].is_zero
                for j in range(g.dim):
                    assert (b[i, j] + b[j, i]).is_zero


class TestSubspaces:
    def test_center_of_filiform(self):
        for n in (3, 4, 5, 6):
            z = filiform(n).center()
            assert z.dim == 1
            assert z.basis[0][-1] == 1

    def test_center_of_abelian_is_everything(self):
        assert abelian(4).center().dim == 4

    def test_center_of_heisenberg_p_zero_contains_c_and_t(self):
        g = heisenberg([[0]])
        z = g.center()
        assert z.dim == 2
        c_vec = [0, 0, 1, 0]
        t_vec = [0, 0, 0, 1]
        assert z.contains(c_vec) and z.contains(t_vec)

    def test_derived_subalgebras(self):
        g5 = filiform(5)
        d = g5.derived_subalgebra()
        assert d.dim == 3
        for k in (2, 3, 4):
            assert d.contains([1 if i == k else 0 for i in range(5)])
        assert abelian(3).derived_subalgebra().dim == 0
        p = panyushev()
        dp = p.derived_subalgebra()
        assert dp.dim == 3 and not dp.contains([1, 0, 0, 0])

    def test_subspace_canonical_equality(self):
        a = Subspace.from_spanning([[2, 0, 2], [0, 1, 1]], 3)
        b = Subspace.from_spanning([[1, 1, 2], [0, 2, 2], [1, 0, 1]], 3)
        assert a == b


class TestGradedAction:
    def test_filiform3_degree_one_action(self):
        g = filiform(3)
        basis, m = g.ad_on_graded([1, 0, 0], 1)
        # v2 -> v3, everything else -> 0
        idx = {mm: i for i, mm in enumerate(basis)}
        col_v2 = [m[i][idx[(0, 1, 0)]] for i in range(3)]
        assert col_v2 == [0 if mm != (0, 0, 1) else 1
                          for mm in basis]
        col_v1 = [m[i][idx[(1, 0, 0)]] for i in range(3)]
        col_v3 = [m[i][idx[(0, 0, 1)]] for i in range(3)]
        assert all(x == 0 for x in col_v1 + col_v3)

    def test_zero_vector_acts_as_zero(self):
        g = filiform(4)
        _, m = g.ad_on_graded([0, 0, 0, 0], 2)
        assert all(x == 0 for row in m for x in row)

    def test_filiform4_invariant_is_killed_in_degree_two(self):
        g = filiform(4)
        f = parse_polynomial("v2*v4 - 1/2*v3^2", g.names)
        assert g.apply_ad([1, 0, 0, 0], f).is_zero

    def test_degree_preserving(self):
        g = sl2()
        f = Polynomial.variable(3, 0) * Polynomial.variable(3, 2)
        out = g.apply_ad([0, 1, 0], f)
        assert out.is_zero or set(sum(m) for m in out.terms) == {2}

    @given(x=rational_vec(4), y=rational_vec(4))
    @settings(max_examples=30, deadline=None)
    def test_ad_is_a_representation(self, x, y):
        # ad([x,y]) = ad(x) ad(y) - ad(y) ad(x) on degree one
        g = panyushev()
        lhs = g.ad_of_vector(g.bracket(x, y))
        ax, ay = g.ad_of_vector(x), g.ad_of_vector(y)
        rhs = mat_sub(mat_mul(ax, ay), mat_mul(ay, ax))
        assert lhs == rhs

    def test_leibniz_through_monomial_pairs(self):
        g = filiform(4)
        x = [1, 2, 0, Fraction(1, 2)]
        a = parse_polynomial("v2*v3", g.names)
        b = parse_polynomial("v3^2 - v1*v4", g.names)
        assert g.apply_ad(x, a * b) == \
            g.apply_ad(x, a) * b + a * g.apply_ad(x, b)

    def test_center_annihilated_in_degree_one(self, catalog_algebras):
        for g in catalog_algebras:
            for z in g.center().basis:
                for i in range(g.dim):
                    e_i = [1 if t == i else 0 for t in range(g.dim)]
                    f = Polynomial.from_vector(z)
                    assert g.apply_ad(e_i, f).is_zero


class TestUnimodular:
    def test_filiform_is_unimodular(self):
        for n in (3, 5, 7):
            assert filiform(n).unimodular()

    def test_panyushev_is_not(self):
        assert not panyushev().unimodular()

    def test_abelian_is(self):
        assert abelian(2).unimodular()


class TestJordanChevalley:
    def test_nilpotent_input(self):
        g = filiform(4)
        d = g.ad_matrix(0)
        ds, dp = jordan_chevalley(d)
        assert mat_eq_zero(ds) and dp == d

    def test_diagonal_input(self):
        d = [[Fraction(2), 0], [0, Fraction(-3)]]
        ds, dp = jordan_chevalley(d)
        assert ds == d and mat_eq_zero(dp)

    def test_jordan_block(self):
        ds, dp = jordan_chevalley([[Fraction(1), Fraction(1)],
                                   [Fraction(0), Fraction(1)]])
        assert ds == identity(2)
        assert dp == [[0, 1], [0, 0]]

    @given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
                    min_size=3, max_size=3))
    @settings(max_examples=25, deadline=None)
    def test_defining_properties_on_random_matrices(self, rows):
        d = [[Fraction(x) for x in row] for row in rows]
        ds, dp = jordan_chevalley(d)
        assert mat_sub(d, ds) == dp
        assert mat_eq_zero(mat_sub(mat_mul(ds, dp), mat_mul(dp, ds)))
        power = dp
        for _ in range(3):
            power = mat_mul(power, dp)
        assert mat_eq_zero(power)


class TestInducedAndJson:
    def test_induced_subalgebra_closure_check(self):
        g = sl2()
        # [e, f] = h escapes span(e, f)
        with pytest.raises(LieAlgebraError):
            g.induced_algebra([[1, 0, 0], [0, 1, 0]], ["e", "f"])
        h = g.induced_algebra([[1, 0, 0], [0, 0, 1]], ["e", "h"])
        assert h.dim == 2 and not h.is_abelian

    def test_round_trip_catalog(self, catalog_algebras):
        for g in catalog_algebras:
            again = LieAlgebra.from_json(json.dumps(g.to_json_dict()))
            assert again == g

    def test_malformed_json_raises(self):
        with pytest.raises(LieAlgebraError):
            LieAlgebra.from_json("{not json")
        with pytest.raises(LieAlgebraError):
            LieAlgebra.from_json(json.dumps({"basis": ["v1"],
                                             "brackets": [{"i": 0, "j": 1,
                                                           "coeffs": {}}]}))
        with pytest.raises(LieAlgebraError):
            LieAlgebra.from_json(json.dumps({"name": "x"}))

    def test_rational_coefficients_in_json(self):
        data = {"name": "halves", "basis": ["a", "b", "c"],
                "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1/2"}}]}
        g = LieAlgebra.from_json(json.dumps(data))
        assert g.bracket_basis(0, 1) == [0, 0, Fraction(1, 2)]


def test_is_derivation_helper():
    g = example32()
    assert is_derivation(g, g.ad_matrix(0))
    not_der = [[Fraction(1), 0, 0], [0, 0, 0], [0, 0, 0]]
    assert not is_derivation(g, not_der)
