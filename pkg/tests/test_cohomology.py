import pytest
from sympy import Matrix

from spinbfv import linalg
from spinbfv.cohomology import (
    Bidegree,
    ComponentBasis,
    betti,
    class_rank,
    d1_on_E1,
    diff_matrix,
    differential_block,
    enumerate_basis,
    window,
)
from spinbfv.errors import ConsistencyError, DomainError
from spinbfv.model import DifferentialKind, X_k, Y_k, apply_diff
from spinbfv.superalg import Element, render

Q0, Q1 = DifferentialKind.Q0, DifferentialKind.Q1


def rendered(basis: ComponentBasis, m):
    return {render(Element(m.table, {mono: 1})) for mono in basis.monomials}


def dense_d1_rank(m, bd):
    """rank([B | Q1 Z]) - rank(B) with dense sympy matrices."""
    Z = diff_matrix(m, Q0, bd).matrix.to_Matrix().nullspace()
    if not Z:
        return 0
    images = diff_matrix(m, Q1, bd).matrix.to_Matrix() * Matrix.hstack(*Z)
    tgt = bd.shifted(Q1.shift)
    B = diff_matrix(m, Q0, Bidegree(tgt.ghost - 1, tgt.tdeg - 1)).matrix.to_Matrix()
    return Matrix.hstack(B, images).rank() - B.rank()


def nonempty_bidegrees(m, tmax):
    for tdeg in range(tmax + 1):
        for ghost in range(-tdeg, tdeg + 1):
            bd = Bidegree(ghost, tdeg)
            if enumerate_basis(m, bd).monomials:
                yield bd


class TestBidegree:
    def test_ordering_and_shift(self):
        assert Bidegree(-1, 3) < Bidegree(0, 0)
        assert Bidegree(0, 2).shifted(Q1.shift) is None
        assert Bidegree(0, 4).shifted(Q1.shift) == Bidegree(1, 1)

    def test_negative_tdeg(self):
        with pytest.raises(DomainError):
            Bidegree(0, -1)


class TestBasis:
    def test_small_components(self, m1):
        assert rendered(enumerate_basis(m1, Bidegree(1, 1)), m1) == {"c", "gamma"}
        assert rendered(enumerate_basis(m1, Bidegree(0, 0)), m1) == {"1"}
        assert rendered(enumerate_basis(m1, Bidegree(-1, 1)), m1) == {"b", "beta"}

    def test_ghost_beyond_degree_is_empty(self, m1):
        assert len(enumerate_basis(m1, Bidegree(3, 2))) == 0
        assert len(enumerate_basis(m1, Bidegree(-3, 2))) == 0

    def test_gamma_floor(self, m1):
        basis = enumerate_basis(m1, Bidegree(-1, 0), gamma_min=-1)
        assert "x1*gamma^-1" in rendered(basis, m1)
        assert len(enumerate_basis(m1, Bidegree(-1, 0))) == 0

    def test_vector_rejects_foreign_terms(self, m1):
        basis = enumerate_basis(m1, Bidegree(0, 1))
        with pytest.raises(ConsistencyError):
            basis.vector(m1.gen("c"))

    def test_vector_drops_hbar(self, m1):
        basis = enumerate_basis(m1, Bidegree(0, 1))
        vec = basis.vector(m1.gen("hbar") * m1.x(1))
        assert list(vec.values()) == [1]


class TestMatrices:
    def test_total_differential_rejected(self, m1):
        with pytest.raises(DomainError):
            diff_matrix(m1, "q", Bidegree(0, 1))

    def test_chain_condition(self, m1):
        for bd in nonempty_bidegrees(m1, 4):
            first = differential_block(m1, Q0, bd, 0)
            second = differential_block(m1, Q0, bd.shifted(Q0.shift), 0)
            assert linalg.is_zero(linalg.matmul(second.matrix, first.matrix)), bd

    def test_anticommutation(self, m1):
        for bd in nonempty_bidegrees(m1, 5):
            after1 = bd.shifted(Q1.shift)
            if after1 is None:
                continue
            after0 = bd.shifted(Q0.shift)
            q0q1 = linalg.matmul(differential_block(m1, Q0, after1, 0).matrix, differential_block(m1, Q1, bd, 0).matrix)
            q1q0 = linalg.matmul(differential_block(m1, Q1, after0, 0).matrix, differential_block(m1, Q0, bd, 0).matrix)
            assert linalg.is_zero(q0q1 + q1q0), bd

    @pytest.mark.parametrize("bd", [Bidegree(0, 2), Bidegree(-1, 3), Bidegree(0, 4), Bidegree(1, 3)])
    def test_rank_matches_dense_oracle(self, m1, bd):
        M = diff_matrix(m1, Q0, bd).matrix
        assert linalg.rank(M) == Matrix(M.to_Matrix()).rank()

    @pytest.mark.parametrize("bd", [Bidegree(-1, 4), Bidegree(0, 5), Bidegree(-2, 6)])
    def test_q1_block_matches_moyal_path(self, m1, bd):
        block = diff_matrix(m1, Q1, bd)
        columns = [
            block.target.vector(apply_diff(m1, Q1, Element(m1.table, {mono: 1}), cross_check=False))
            for mono in block.source.monomials
        ]
        moyal = linalg.from_columns(columns, len(block.target))
        assert block.matrix.to_Matrix() == moyal.to_Matrix()

    def test_rank_independent_of_basis_order(self, m1):
        bd = Bidegree(0, 3)
        basis = enumerate_basis(m1, bd)
        reversed_basis = ComponentBasis(bd, 0, tuple(reversed(basis.monomials)))
        assert linalg.rank(diff_matrix(m1, Q0, bd, source=reversed_basis).matrix) == linalg.rank(
            diff_matrix(m1, Q0, bd).matrix
        )


class TestBetti:
    def test_lowest_negative_class(self, m1):
        row = betti(m1, Q0, Bidegree(-1, 2), with_family=True)
        assert row.betti == 1
        assert row.family == ("Y_2(1)",)
        assert row.family_rank == 1
        assert row.dim == row.rank_out + row.dim_ker

    @pytest.mark.parametrize("tdeg", range(2, 6))
    def test_vanishing_above_ghost_one(self, m1, tdeg):
        for ghost in range(2, tdeg + 1):
            assert betti(m1, Q0, Bidegree(ghost, tdeg)).betti == 0

    @pytest.mark.parametrize("bd", [Bidegree(-1, 3), Bidegree(-1, 4), Bidegree(-2, 4), Bidegree(-2, 5)])
    def test_negative_ghost_matches_family(self, m1, bd):
        row = betti(m1, Q0, bd, with_family=True)
        assert row.betti == row.family_rank

    def test_family_only_for_q0(self, m1):
        with pytest.raises(DomainError):
            betti(m1, Q1, Bidegree(-1, 4), with_family=True)

    def test_class_rank_needs_cocycles(self, m1):
        bd = Bidegree(0, 1)
        basis = enumerate_basis(m1, bd)
        with pytest.raises(ConsistencyError):
            class_rank(m1, bd, [basis.vector(m1.x(1))])

    def test_x_and_y_classes(self, m1):
        bd = Bidegree(-1, 4)
        basis = enumerate_basis(m1, bd)
        vectors = [basis.vector(X_k(m1, 2)), basis.vector(Y_k(m1, 2, m1.x(1) * m1.x(1), sign=-1))]
        assert class_rank(m1, bd, vectors) == 2


class TestSecondPage:
    @pytest.mark.parametrize("bd", [Bidegree(-1, 2), Bidegree(-1, 3), Bidegree(-1, 4), Bidegree(-2, 4)])
    def test_negative_ghost_classes_die(self, m1, bd):
        res = d1_on_E1(m1, bd)
        assert res.e2_betti == 0
        assert res.dim_e1 == betti(m1, Q0, bd).betti

    @pytest.mark.parametrize("bd", [Bidegree(-1, 5), Bidegree(0, 4)])
    def test_d1_rank_matches_dense_oracle(self, m1, bd):
        res = d1_on_E1(m1, bd)
        assert res.rank == dense_d1_rank(m1, bd)
        before = Bidegree(bd.ghost - 1, bd.tdeg + 3)
        assert res.rank_in == d1_on_E1(m1, before).rank

    def test_flat_only(self, m2b):
        with pytest.raises(DomainError):
            d1_on_E1(m2b, Bidegree(-1, 3))


class TestWindow:
    def test_rows_sorted(self, m1):
        report = window(m1, "q0", [0, -1], range(4))
        bds = [row.bidegree for row in report.rows]
        assert bds == sorted(bds)
        assert len(bds) == 8
        rows = report.to_dict()["rows"]
        assert set(rows[0]) == {"kind", "ghost", "tdeg", "dim", "rank_out", "dim_ker", "rank_in", "betti"}

    def test_e2_and_family_columns(self, m1):
        (row,) = window(m1, "q0", [-1], [2], e2=True, with_family=True).rows
        data = row.to_dict()
        assert data["family"] == ["Y_2(1)"]
        assert data["e2_betti"] == 0
        assert data["d1_rank"] == 0
