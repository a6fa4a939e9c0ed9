import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfdual.algebras import (
    LaurentAlgebra,
    PolynomialAlgebra,
    PresentedQuotient,
    SCAlgebra,
    find_reversible_generator,
    group_algebra,
    group_algebra_family,
    inverse_of_x,
    is_reversible,
    laurent_poly_iso,
    make_sc_algebra,
    skew_group_algebra,
    tensor_algebra,
    truncated_polynomial_algebra,
)
from hopfdual.errors import (
    InvalidIdeal,
    NotAction,
    NotAssociative,
    NotAutomorphism,
    NotMonic,
    NotReversible,
)
from hopfdual.groups import cyclic, direct_product, group_by_name, symmetric
from hopfdual.linalg import RMatrix
from hopfdual.rings import ZZ, Fp, Zmod

ZX = PolynomialAlgebra(ZZ, ("x",))
LX = LaurentAlgebra(ZZ, ("x",))


def dense_assoc(a):
    n = a.rank
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = a.mul(a.basis_product(i, j), a.basis(k))
                rhs = a.mul(a.basis(i), a.basis_product(j, k))
                if lhs != rhs:
                    return False
    return True


# -- structure constants ------------------------------------------------------


def test_rank_one_algebra():
    a = make_sc_algebra(ZZ, ["1"], [[[1]]], [1])
    assert a.rank == 1 and a.mul((3,), (4,)) == (12,)


def test_group_table_of_c2():
    a = make_sc_algebra(ZZ, ["e", "g"], [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], [1, 0])
    assert a == group_algebra(ZZ, cyclic(2))


def test_non_associative_table_is_rejected():
    # e1 e2 = e3, everything else zero except e3 e1 = e1: (e1 e2) e1 = e1 but e1 (e2 e1) = 0
    mult = {(1, 2): {3: 1}, (3, 1): {1: 1}, (0, 0): {0: 1}}
    for i in range(1, 4):
        mult[(0, i)] = {i: 1}
        mult[(i, 0)] = {i: 1}
    with pytest.raises(NotAssociative):
        make_sc_algebra(ZZ, ["1", "e1", "e2", "e3"], mult, [1, 0, 0, 0])


def test_group_algebras():
    assert group_algebra(ZZ, cyclic(1)).rank == 1
    a = group_algebra(Fp(5), symmetric(3))
    assert a.rank == 6
    assert dense_assoc(a)
    assert not a.is_commutative()


def test_tensor_of_group_algebras_is_group_algebra_of_product():
    c2 = group_algebra(ZZ, cyclic(2))
    assert tensor_algebra(c2, c2) == group_algebra(ZZ, direct_product(cyclic(2), cyclic(2)))
    one = group_algebra(ZZ, cyclic(1))
    assert tensor_algebra(one, c2) == c2


def test_tensor_of_truncations_has_product_rank():
    a = ZX.truncate(ZX.ideal("x^2 - 1")).algebra
    b = ZX.truncate(ZX.ideal("x - 1")).algebra
    assert tensor_algebra(a, b).rank == 2


# -- truncations --------------------------------------------------------------


def test_truncation_at_x_minus_one_is_evaluation():
    t = ZX.truncate(ZX.ideal("x - 1"))
    assert t.algebra.rank == 1
    p = ZX.element("3*x^3 - 2*x + 5")
    assert t.proj(p) == (6,)


def test_truncation_at_x_squared_minus_one():
    t = ZX.truncate(ZX.ideal("x^2 - 1"))
    assert t.algebra.labels == ("1", "x")
    assert t.proj(ZX.element("x^5 + x^2")) == (1, 1)


def test_laurent_inverse_reduces_to_two_minus_x():
    t = LX.truncate(LX.ideal("x^2 - 2*x + 1"))
    assert t.proj({(-1,): 1}) == (2, -1)


def test_non_monic_generator_is_refused():
    with pytest.raises(InvalidIdeal):
        ZX.ideal("2*x - 1")
    with pytest.raises(InvalidIdeal):
        LX.ideal("x - 2")


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.data())
def test_projection_is_multiplicative(coeffs, data):
    q = tuple(coeffs) + (1,)
    ideal = ZX.ideal(q)
    t = ZX.truncate(ideal)
    f = {(data.draw(st.integers(0, 6)),): data.draw(st.integers(-4, 4))}
    g = {(data.draw(st.integers(0, 6)),): data.draw(st.integers(-4, 4))}
    assert t.proj(ZX.mul(f, g)) == t.algebra.mul(t.proj(f), t.proj(g))


# -- reversible polynomials ---------------------------------------------------


def test_reversibility():
    assert is_reversible((-1, 1), ZZ)
    assert not is_reversible((-2, 1), ZZ)
    assert is_reversible((1, 1, 1), Zmod(4))
    with pytest.raises(NotMonic):
        is_reversible((1, 2), ZZ)


def test_laurent_poly_iso_examples():
    assert laurent_poly_iso((-1, 1), ZZ).y_image == (1,)
    assert laurent_poly_iso((-1, 0, 1), ZZ).y_image == (0, 1)
    iso = laurent_poly_iso((1, -3, 1), ZZ)
    assert iso.y_image == (3, -1)
    assert iso.laurent_side.is_algebra_map(iso.poly_side, iso.matrix) is None
    with pytest.raises(NotReversible):
        laurent_poly_iso((-2, 1), ZZ)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([ZZ, Zmod(4), Zmod(6), Fp(5)]), st.lists(st.integers(-4, 4), min_size=1, max_size=4))
def test_inverse_of_x_really_inverts(R, tail):
    unit = next(u for u in (1, -1, 5, 7) if R.is_unit(R(u)))
    q = (unit,) + tuple(tail[1:]) + (1,)
    y = inverse_of_x(q, R)
    a = truncated_polynomial_algebra(R, q)
    n = a.rank
    yv = tuple(list(y) + [0] * (n - len(y)))
    x = a.basis(1) if n > 1 else (R(-q[0]),)
    assert a.mul(x, yv) == a.one


def test_find_reversible_generator_examples():
    assert find_reversible_generator((-1, 1), (-1, 1), ZZ) == (1, -2, 1)
    assert find_reversible_generator((0, 1), (0, 1), ZZ) == (1, 0, 1)
    assert find_reversible_generator((1, 1), (1, 1), ZZ) == (1, 2, 1)


# -- skew group algebras ------------------------------------------------------


def test_trivial_action_of_trivial_group():
    a = truncated_polynomial_algebra(ZZ, (0, 0, 1), "y")
    s = skew_group_algebra(a, cyclic(1), [RMatrix.identity(ZZ, 2)])
    assert s.rank == 2 and dense_assoc(s)


def test_sign_action_gives_rank_four_algebra():
    a = truncated_polynomial_algebra(ZZ, (0, 0, 1), "y")
    sign = RMatrix.diag(ZZ, [1, -1])
    s = skew_group_algebra(a, cyclic(2), [RMatrix.identity(ZZ, 2), sign])
    assert s.rank == 4 and dense_assoc(s)
    assert not s.is_commutative()


def test_trivial_action_gives_tensor_product():
    a = truncated_polynomial_algebra(ZZ, (0, 0, 1), "y")
    ident = RMatrix.identity(ZZ, 2)
    s = skew_group_algebra(a, cyclic(2), [ident, ident])
    t = tensor_algebra(a, group_algebra(ZZ, cyclic(2)))
    assert s.table == t.table and s.unit == t.unit


def test_bad_actions_are_refused():
    a = truncated_polynomial_algebra(ZZ, (0, 0, 1), "y")
    with pytest.raises(NotAutomorphism):
        skew_group_algebra(a, cyclic(2), [RMatrix.identity(ZZ, 2), RMatrix.diag(ZZ, [1, 2])])
    with pytest.raises(NotAction):
        skew_group_algebra(a, cyclic(2), [RMatrix.diag(ZZ, [1, -1]), RMatrix.identity(ZZ, 2)])


# -- free-quotient witnesses --------------------------------------------------


def test_p_ell_witness_examples():
    w = ZX.p_ell_witness(["x - 1", "3"])
    assert w.generators == ((-1, 1),)
    assert ZX.truncate(w).algebra.rank == 1
    assert ZX.p_ell_witness(["x^2"]).generators == ((0, 0, 1),)
    assert LX.p_ell_witness(["x - 1"]).generators == ((1, -2, 1),)


def test_finite_group_family_uses_zero_ideal():
    fam = group_algebra_family(ZZ, group_by_name("C3"))
    w = fam.p_ell_witness()
    assert fam.truncate(w).algebra.rank == 3


def test_presented_quotient_module():
    q = PresentedQuotient(Zmod(4), ["2*x", "x^3"])
    assert q.n == 3
    assert q.module.invariants == (2, 2, 4)
    assert q.mul((0, 1, 0), (0, 1, 0)) == (0, 0, 1)
    assert q.mul((0, 1, 0), (0, 0, 1)) == (0, 0, 0)
    assert q.mul((2, 0, 0), (0, 1, 0)) == (0, 0, 0)


def test_sc_algebra_equality_is_structural():
    a = SCAlgebra(ZZ, ["1"], {(0, 0): {0: 1}}, [1])
    b = SCAlgebra(ZZ, ["one"], {(0, 0): {0: 1}}, [1])
    assert a == b
