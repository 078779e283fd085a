"""The grid bicomplex, its total complex, and the Künneth convolution."""

import pytest

from lodayhom.algebra import Coefficients, polynomial, truncated_poly
from lodayhom.loday import HomologyTable, build_complex, homology_dims
from lodayhom.oracle import (
    CoefficientMismatch, check_total_square, torus_bicomplex, total_homology,
    wedge_kunneth_dims,
)
from lodayhom.simplicial import build_space
from lodayhom.exactlinalg import make_field

UNIT = Coefficients.unit()


class TestTermDims:
    def test_counts_follow_the_grid_formula(self):
        bicomplex = torus_bicomplex(truncated_poly(3, 2), UNIT, 3)
        assert bicomplex.term_dim(1, 1) == 2 ** 3
        assert bicomplex.term_dim(0, 1) == 2
        assert bicomplex.term_dim(2, 2) == 2 ** 8

    def test_all_terms_present_through_total_degree(self):
        d = 2
        bicomplex = torus_bicomplex(truncated_poly(3, 2), UNIT, d)
        pairs = {(n, m) for (n, m, _) in bicomplex.terms}
        expected = {(n, m) for n in range(d + 2) for m in range(d + 2 - n)}
        assert pairs == expected


class TestSquares:
    @pytest.mark.parametrize("field", [3, 2, "Q"])
    def test_directions_square_and_commute(self, field):
        bicomplex = torus_bicomplex(truncated_poly(field, 2), UNIT, 2)
        assert bicomplex.check_squares() == []

    def test_twisted_total_square_vanishes(self):
        bicomplex = torus_bicomplex(truncated_poly(3, 2), UNIT, 2)
        assert check_total_square(bicomplex)

    def test_polynomial_grid(self):
        bicomplex = torus_bicomplex(polynomial(3), UNIT, 2, weight_bound=3)
        assert bicomplex.check_squares() == []
        assert check_total_square(bicomplex)


class TestTotalHomology:
    def test_odd_prime(self):
        table = total_homology(torus_bicomplex(truncated_poly(3, 2), UNIT, 2), 2)
        assert table.totals() == [1, 2, 3]

    def test_char_two(self):
        table = total_homology(torus_bicomplex(truncated_poly(2, 2), UNIT, 2), 2)
        assert table.totals() == [1, 2, 4]
        assert table.get(2, 2) == 3

    def test_rationals(self):
        table = total_homology(torus_bicomplex(truncated_poly("Q", 2), UNIT, 2), 2)
        assert table.totals() == [1, 2, 3]

    @pytest.mark.parametrize("field", [3, 2, "Q"])
    def test_agrees_with_diagonal_product_blockwise(self, field):
        via_grid = total_homology(
            torus_bicomplex(truncated_poly(field, 2), UNIT, 2), 2)
        direct = homology_dims(build_complex(
            build_space("prod(S1,S1)", 3), truncated_poly(field, 2), UNIT, 2))
        assert via_grid.dims == direct.dims

    def test_polynomial_agrees_with_diagonal(self):
        via_grid = total_homology(
            torus_bicomplex(polynomial(3), UNIT, 2, weight_bound=3), 2)
        direct = homology_dims(build_complex(
            build_space("prod(S1,S1)", 3), polynomial(3), UNIT, 2,
            weight_bound=3))
        assert via_grid.dims == direct.dims


@pytest.fixture(scope="module")
def bicomplex():
    return torus_bicomplex(truncated_poly(3, 2), UNIT, 2)


class TestExplicitBoundaries:
    """Hand-computed pushforwards in the grid over F_3, k[t]/t^2, unit
    coefficients.  Labelings are written over the lexicographic slot lists
    [(0,1),(1,0),(1,1)] at bidegree (1,1) and
    [(0,1),(1,0),(1,1),(2,0),(2,1)] at (2,1); label index 0 is 1, index 1
    is t.
    """

    def test_bidegree_one_one_consists_of_cycles(self, bicomplex):
        # both circle faces at level 1 hit the basepoint, so the two face
        # pushforwards cancel and every (1,1) chain is a cycle
        for w in (1, 2, 3):
            assert bicomplex.horizontal[(1, 1, w)].is_zero
            assert bicomplex.vertical[(1, 1, w)].is_zero

    def column(self, mat, col):
        return {r: v for (r, c), v in mat.entries.items() if c == col}

    def test_collapse_of_the_symmetric_candidate(self, bicomplex):
        # the (2,1) chain with label rows (1 1 / 1 t / 1 t) maps to twice the
        # chain (1 1 / 1 t): only the outer faces survive, the middle face
        # dies on t*t = 0
        src = bicomplex.terms[(2, 1, 2)].index(((0, 0, 1, 0, 1), 0))
        dst = bicomplex.terms[(1, 1, 2)].index(((1, 0, 1), 0))
        col = self.column(bicomplex.horizontal[(2, 1, 2)], src)
        assert col == {dst: 2}
        assert self.column(bicomplex.vertical[(2, 1, 2)], src) == {}

    def test_top_weight_candidate_is_a_boundary(self, bicomplex):
        # (1 1 / 1 t / t t) maps to (1 t / t t) on the nose: two faces die on
        # the augmentation of t, the outer face survives with coefficient 1
        src = bicomplex.terms[(2, 1, 3)].index(((0, 0, 1, 1, 1), 0))
        dst = bicomplex.terms[(1, 1, 3)].index(((1, 1, 1), 0))
        assert self.column(bicomplex.horizontal[(2, 1, 3)], src) == {dst: 1}

    def test_homologous_pair(self, bicomplex):
        # (1 1 / t 1 / 1 t) has boundary (1 t / t 1) - (1 1 / t t), making the
        # two weight-2 candidates homologous
        src = bicomplex.terms[(2, 1, 2)].index(((0, 1, 0, 0, 1), 0))
        plus = bicomplex.terms[(1, 1, 2)].index(((1, 1, 0), 0))
        minus = bicomplex.terms[(1, 1, 2)].index(((0, 1, 1), 0))
        col = self.column(bicomplex.horizontal[(2, 1, 2)], src)
        assert col == {plus: 1, minus: 3 - 1}

    def test_vertical_counterpart(self, bicomplex):
        # (1 1 1 / 1 t t) at bidegree (1,2): slots
        # [(0,1),(0,2),(1,0),(1,1),(1,2)]; its vertical boundary is twice
        # (1 1 / t t)
        src = bicomplex.terms[(1, 2, 2)].index(((0, 0, 0, 1, 1), 0))
        dst = bicomplex.terms[(1, 1, 2)].index(((0, 1, 1), 0))
        assert self.column(bicomplex.vertical[(1, 2, 2)], src) == {dst: 2}
        assert self.column(bicomplex.horizontal[(1, 2, 2)], src) == {}

    def test_factor_of_two_dies_in_characteristic_two(self):
        # the same chains bound nothing mod 2, which is where the extra
        # degree-2 torus class comes from
        char2 = torus_bicomplex(truncated_poly(2, 2), UNIT, 2)
        src = char2.terms[(2, 1, 2)].index(((0, 0, 1, 0, 1), 0))
        assert self.column(char2.horizontal[(2, 1, 2)], src) == {}
        src = char2.terms[(1, 2, 2)].index(((0, 0, 0, 1, 1), 0))
        assert self.column(char2.vertical[(1, 2, 2)], src) == {}


class TestKunneth:
    def table(self, text, field=3, d=2):
        return homology_dims(build_complex(
            build_space(text, d + 1), truncated_poly(field, 2), UNIT, d))

    def test_point_table_is_the_unit(self):
        circle_table = self.table("S1")
        pt = self.table("pt")
        conv = wedge_kunneth_dims(circle_table, pt, 2)
        assert conv.dims == circle_table.dims

    def test_circle_with_circle(self):
        circle_table = self.table("S1")
        conv = wedge_kunneth_dims(circle_table, circle_table, 2)
        assert conv.totals() == [1, 2, 3]
        assert conv.dims == self.table("wedge(S1,S1)").dims

    def test_predicts_the_wedge_of_three(self):
        two_circles = wedge_kunneth_dims(self.table("S1"), self.table("S1"), 2)
        full = wedge_kunneth_dims(two_circles, self.table("sphere(2)"), 2)
        assert full.total(2) == 4
        assert full.dims == self.table("wedge(wedge(S1,S1),sphere(2))").dims

    def test_rejects_non_unit_coefficients(self):
        good = self.table("S1")
        bad = HomologyTable(dict(good.dims), 2, None, "self", good.field)
        with pytest.raises(CoefficientMismatch):
            wedge_kunneth_dims(good, bad, 2)

    def test_rejects_mixed_fields(self):
        left = self.table("S1", field=3)
        right = HomologyTable(dict(left.dims), 2, None, "unit", make_field(5))
        with pytest.raises(CoefficientMismatch):
            wedge_kunneth_dims(left, right, 2)

    def test_weight_bounded_tables_convolve(self):
        circle_table = homology_dims(build_complex(
            build_space("S1", 3), polynomial(3), UNIT, 2, weight_bound=3))
        predicted = wedge_kunneth_dims(circle_table, circle_table, 2)
        direct = homology_dims(build_complex(
            build_space("wedge(S1,S1)", 3), polynomial(3), UNIT, 2,
            weight_bound=3))
        assert predicted.weight_bound == 3
        assert predicted.dims == direct.dims
