from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import det as leibniz_det
from oracles import smith_invariants, span_mod

from hopfdual.errors import UnsupportedRing
from hopfdual.linalg import (
    RMatrix,
    charpoly,
    det,
    howell_form,
    inverse,
    kernel,
    kronecker,
    rank,
    row_span_form,
    smith_diagonal,
    smith_normal_form,
    solve,
)
from hopfdual.rings import QQ, ZZ, Fp, Zmod, parse_ring


def mat(R, rows, ncols=None):
    return RMatrix(R, rows, ncols)


def small_matrices(max_dim=4, bound=9):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


# -- rings --------------------------------------------------------------------


def test_parse_ring_spellings():
    assert parse_ring("Z") == ZZ
    assert parse_ring("Q") == QQ
    assert parse_ring("Zmod 4") == Zmod(4)
    assert parse_ring("Z4") == Zmod(4)
    assert parse_ring("Fp 5") == Fp(5)


def test_fp_rejects_composite():
    with pytest.raises(UnsupportedRing):
        Fp(4)


def test_modular_inverse_and_units():
    R = Zmod(6)
    assert R.is_unit(5) and not R.is_unit(2)
    assert R.mul(5, R.inv(5)) == 1
    assert QQ("1/2") == Fraction(1, 2)


# -- Smith normal form --------------------------------------------------------


def test_snf_empty_matrix():
    u, d, v = smith_normal_form(mat(ZZ, [], 0))
    assert d.shape == (0, 0) and u.shape == (0, 0) and v.shape == (0, 0)


def test_snf_identity():
    _, d, _ = smith_normal_form(RMatrix.identity(ZZ, 2))
    assert d == RMatrix.identity(ZZ, 2)


def test_snf_two_by_two():
    m = mat(ZZ, [[2, 4], [6, 8]])
    u, d, v = smith_normal_form(m)
    assert d == RMatrix.diag(ZZ, [2, 4])
    assert u @ m @ v == d
    assert smith_invariants(m.tolist()) == [2, 4]


@settings(max_examples=60, deadline=None)
@given(small_matrices())
def test_snf_matches_determinantal_divisors(rows):
    m = mat(ZZ, rows)
    u, d, v = smith_normal_form(m)
    assert u @ m @ v == d
    assert abs(leibniz_det(u.tolist())) == 1 and abs(leibniz_det(v.tolist())) == 1
    diag = smith_diagonal(m)
    assert diag == smith_invariants(rows)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)


def test_snf_needs_pid():
    with pytest.raises(UnsupportedRing):
        smith_normal_form(mat(Zmod(4), [[2]]))


# -- Howell form --------------------------------------------------------------


def test_howell_identity_and_single_row():
    R = Zmod(4)
    assert howell_form(RMatrix.identity(R, 2)) == RMatrix.identity(R, 2)
    assert howell_form(mat(R, [[2]])) == mat(R, [[2]])


def test_howell_span_of_order_eight():
    R = Zmod(4)
    rows = [[2, 0], [0, 2], [1, 1]]
    form = howell_form(mat(R, rows))
    assert span_mod(form.tolist(), 2, 4) == span_mod(rows, 2, 4)
    assert len(span_mod(rows, 2, 4)) == 8


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([4, 6, 8, 9]), small_matrices(3, 9))
def test_howell_is_a_span_invariant(n, rows):
    R = Zmod(n)
    m = mat(R, rows)
    form = howell_form(m)
    assert span_mod(form.tolist(), m.ncols, n) == span_mod(rows, m.ncols, n)
    # the same span presented differently gives the same form
    twisted = mat(R, [[a + b for a, b in zip(rows[0], r)] for r in rows] + rows[:1])
    assert howell_form(twisted) == form


# -- kernels, solving, inverses ----------------------------------------------


def test_kernel_examples():
    assert kernel(RMatrix.identity(ZZ, 3)).nrows == 0
    k = kernel(mat(Zmod(4), [[2]]))
    assert span_mod(k.tolist(), 1, 4) == {(0,), (2,)}
    # the map Z^2 -> Z, (a, b) -> a + b
    k = kernel(mat(ZZ, [[1], [1]]))
    assert row_span_form(k) == row_span_form(mat(ZZ, [[1, -1]]))


@settings(max_examples=60, deadline=None)
@given(small_matrices(), st.sampled_from([ZZ, QQ, Fp(5), Zmod(6)]))
def test_kernel_rows_are_killed(rows, R):
    m = mat(R, rows)
    for r in kernel(m).rows:
        assert not any(m.vecmul(r))


def test_solve_examples():
    assert solve(RMatrix.identity(ZZ, 2), [3, -1]) == (3, -1)
    assert solve(mat(ZZ, [[2]]), [1]) is None
    x = solve(mat(Zmod(4), [[2]]), [2])
    assert x in ((1,), (3,))


@settings(max_examples=60, deadline=None)
@given(small_matrices(), st.sampled_from([ZZ, Fp(3), Zmod(4)]), st.data())
def test_solve_consistent_systems(rows, R, data):
    m = mat(R, rows)
    x0 = data.draw(st.lists(st.integers(-5, 5), min_size=m.nrows, max_size=m.nrows))
    b = m.vecmul(x0)
    x = solve(m, b)
    assert x is not None and m.vecmul(x) == b


def test_inverse_over_z_and_field():
    m = mat(ZZ, [[2, 1], [1, 1]])
    assert inverse(m) @ m == RMatrix.identity(ZZ, 2)
    assert inverse(mat(ZZ, [[2]])) is None
    assert inverse(mat(Fp(3), [[2]])) == mat(Fp(3), [[2]])


def test_kronecker_examples():
    one = RMatrix.identity(ZZ, 1)
    b = mat(ZZ, [[1, 2], [3, 4]])
    assert kronecker(one, b) == b
    assert kronecker(mat(ZZ, [[2]]), mat(ZZ, [[3]])) == mat(ZZ, [[6]])
    got = kronecker(RMatrix.diag(ZZ, [1, 2]), RMatrix.diag(ZZ, [1, 3]))
    assert got == RMatrix.diag(ZZ, [1, 3, 2, 6])


@settings(max_examples=40, deadline=None)
@given(small_matrices(4, 5))
def test_det_and_rank_agree_with_oracle(rows):
    n = min(len(rows), len(rows[0]))
    sq = [r[:n] for r in rows[:n]]
    m = mat(ZZ, sq)
    assert det(m) == leibniz_det(sq)
    assert (rank(m) == n) == (leibniz_det(sq) != 0)


def test_charpoly_cayley_hamilton():
    m = mat(Zmod(4), [[1, 2, 3], [0, 1, 1], [2, 2, 0]])
    cp = charpoly(m)
    acc = RMatrix.zeros(m.ring, 3, 3)
    power = RMatrix.identity(m.ring, 3)
    for c in cp:
        acc = acc + power.scale(c)
        power = power @ m
    assert acc.is_zero()
