from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from laws import coassociativity_failures, comultiplication_failures, counit_failures
from oracles import hankel_rank

from hopfdual.algebras import (
    LaurentAlgebra,
    PolynomialAlgebra,
    TensorFamily,
    counterexample_algebra,
)
from hopfdual.errors import NotContained, PrefixTooShort
from hopfdual.finite_dual import (
    DualStructure,
    SequenceFunctional,
    bimodule_action,
    comultiply_matrix,
    dual_add,
    dual_comultiply,
    dual_element,
    dual_equal,
    dual_scale,
    evaluation_functional,
    membership_annihilator,
    pullback,
    purity_probe,
    refine,
    sequence_dual_element,
    tensor_dual,
    tensor_dual_element,
    tensor_dual_inverse,
    tensor_sum_equal,
    truncation_dual_orders,
    zero_dual,
)
from hopfdual.fixtures import truncation_pairs
from hopfdual.modules import FPModule
from hopfdual.rings import QQ, ZZ

GL = PolynomialAlgebra(ZZ, ("x",), "group_like")
PR = PolynomialAlgebra(ZZ, ("x",), "primitive")
LA = LaurentAlgebra(ZZ, ("x",), "group_like")


def xk(k):
    return {(k,): 1}


def seq(values):
    return SequenceFunctional(ZZ, tuple(values))


# -- elements, refinement, equality -------------------------------------------


def test_evaluation_at_one():
    f = dual_element(GL, ["x - 1"], [1])
    p = GL.element("2*x^3 - x + 7")
    assert f(p) == 8


def test_dual_of_x_modulo_x_squared_minus_one():
    f = dual_element(GL, ["x^2 - 1"], [0, 1])
    assert [f(xk(k)) for k in range(6)] == [k % 2 for k in range(6)]


def test_zero_functional():
    z = zero_dual(GL)
    assert z.is_zero() and z(GL.element("x^4 + 3")) == 0


def test_refine_examples():
    f = dual_element(GL, ["x - 1"], [5])
    assert refine(f, GL.ideal("x - 1")).functional == (5,)
    assert refine(f, GL.ideal("x^2 - 1")).functional == (5, 5)
    g = refine(f, GL.ideal("x^2 - 2*x + 1"))
    # on the basis {1, x - 1} the functional is [5, 0]
    assert (g(GL.one()), g(GL.element("x - 1"))) == (5, 0)


def test_refine_needs_containment():
    f = dual_element(GL, ["x - 1"], [1])
    with pytest.raises(NotContained):
        refine(f, GL.ideal("x + 1"))


def test_dual_equality_examples():
    ev1 = evaluation_functional(GL, [1])
    via = dual_element(GL, ["x^2 - 1"], [1, 1])
    assert dual_equal(ev1, ev1)
    assert dual_equal(ev1, via)
    assert not dual_equal(ev1, evaluation_functional(GL, [-1]))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=2), st.lists(st.integers(-3, 3), min_size=1, max_size=2), st.data())
def test_evaluation_is_refinement_invariant(q, r, data):
    q = tuple(q) + (1,)
    r = tuple(r) + (1,)
    ideal = GL.ideal(q)
    vals = data.draw(st.lists(st.integers(-5, 5), min_size=len(q) - 1, max_size=len(q) - 1))
    f = dual_element(GL, ideal, vals)
    g = refine(f, GL.common_refinement(ideal, GL.ideal(r)))
    for k in range(8):
        assert g(xk(k)) == f(xk(k))


# -- recurrent sequences -------------------------------------------------------


def test_membership_examples():
    assert membership_annihilator(seq([1] * 8)) == (-1, 1)
    assert membership_annihilator(seq([1, 1, 2, 3, 5, 8, 13, 21])) == (-1, -1, 1)
    assert membership_annihilator(seq([factorial(k) for k in range(6)]), bound=2) is None
    with pytest.raises(PrefixTooShort):
        membership_annihilator(seq([1, 2, 3]), bound=2)


def test_sequence_dual_element_reproduces_the_sequence():
    f = sequence_dual_element(GL, seq([1, 1, 2, 3, 5, 8, 13, 21]))
    assert [f(xk(k)) for k in range(12)] == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_annihilator_recurrence_holds_and_is_minimal(coeffs, init):
    d = len(coeffs)
    s = list(init[:d])
    while len(s) < 16:
        s.append(-sum(c * s[-d + i] for i, c in enumerate(coeffs)))
    q = membership_annihilator(seq(s[:6]), bound=3)
    assert q is not None and q[-1] == 1
    m = len(q) - 1
    for k in range(len(s) - m):
        assert sum(q[j] * s[k + j] for j in range(m + 1)) == 0
    # the linear complexity is the rank of a large Hankel matrix
    assert m == hankel_rank(s, 5)


# -- coalgebra structure -------------------------------------------------------


def test_comultiplication_of_evaluation_is_group_like():
    ev = evaluation_functional(GL, [1])
    pairs = dual_comultiply(ev)
    assert len(pairs) == 1
    g, h = pairs[0]
    assert dual_equal(g, ev) and dual_equal(h, ev)


def test_comultiplication_of_x_star_modulo_x_squared_minus_one():
    f = dual_element(GL, ["x^2 - 1"], [0, 1])
    assert comultiply_matrix(f) == [[0, 1], [1, 0]]
    assert not comultiplication_failures(f)


def test_comultiplication_of_zero_is_empty():
    assert dual_comultiply(zero_dual(GL)) == []


@pytest.mark.parametrize("family,ideal", truncation_pairs(), ids=[f"{fam!r}:{i.describe()}" for fam, i in truncation_pairs()])
def test_coalgebra_laws_on_dual_basis(family, ideal):
    n = family.truncate(ideal).algebra.rank
    for i in range(n):
        f = dual_element(family, ideal, [1 if j == i else 0 for j in range(n)])
        assert not comultiplication_failures(f)
        assert not counit_failures(f)
        assert not coassociativity_failures(f)


def test_dual_bialgebra_examples():
    D = DualStructure(GL)
    ev1 = evaluation_functional(GL, [1])
    assert D.counit(ev1) == 1
    ev2, ev3 = evaluation_functional(GL, [2]), evaluation_functional(GL, [3])
    assert dual_equal(D.multiply(ev2, ev3), evaluation_functional(GL, [6]))
    LQ = LaurentAlgebra(QQ, ("x",), "group_like")
    S = DualStructure(LQ).antipode(evaluation_functional(LQ, [2]))
    assert dual_equal(S, evaluation_functional(LQ, [Fraction(1, 2)]))


@pytest.mark.parametrize("q", ["x - 1", "x + 1", "x^2 - 1", "x^2 - 3*x + 1"])
def test_laurent_dual_hopf_laws(q):
    D = DualStructure(LA)
    ideal = LA.ideal(q)
    n = LA.truncate(ideal).algebra.rank
    basis = [dual_element(LA, ideal, [1 if j == i else 0 for j in range(n)]) for i in range(n)]
    unit = D.unit()
    for f in basis:
        assert dual_equal(D.multiply(unit, f), f) and dual_equal(D.multiply(f, unit), f)
        for g in basis:
            fg = D.multiply(f, g)
            for h in basis[:2]:
                assert dual_equal(D.multiply(fg, h), D.multiply(f, D.multiply(g, h)))
        # sum S(f1) f2 = eps(f) u
        acc = None
        for g, h in dual_comultiply(f):
            term = D.multiply(D.antipode(g), h)
            acc = term if acc is None else dual_add(acc, term)
        target = dual_scale(D.counit(f), unit)
        assert dual_equal(acc, target)


# -- bimodule actions ----------------------------------------------------------


def test_hit_actions_examples():
    ev1 = evaluation_functional(GL, [1])
    assert dual_equal(bimodule_action("left", GL.one(), ev1), ev1)
    assert dual_equal(bimodule_action("left", GL.var("x"), ev1), ev1)
    f = dual_element(PR, ["x^2"], [0, 1])
    assert bimodule_action("left", PR.var("x"), f).functional == (1, 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_left_action_is_a_module_action(i, j, vals):
    f = dual_element(GL, ["x^2 - 3*x + 1"], vals)
    a, b = xk(i), xk(j)
    lhs = bimodule_action("left", a, bimodule_action("left", b, f))
    rhs = bimodule_action("left", GL.mul(a, b), f)
    assert dual_equal(lhs, rhs)


# -- tensor products -----------------------------------------------------------


def test_tensor_of_evaluations():
    ev1 = evaluation_functional(GL, [1])
    h = tensor_dual(ev1, ev1)
    T = h.owner
    assert h(T.pure_tensor(GL.element("x^3 + 2"), GL.element("5*x"))) == 15


@pytest.mark.parametrize("family,ideal", truncation_pairs()[:8], ids=[i.describe() for _, i in truncation_pairs()[:8]])
def test_tensor_round_trip(family, ideal):
    ev1 = evaluation_functional(GL, [1])
    n = family.truncate(ideal).algebra.rank
    f = dual_element(family, ideal, list(range(1, n + 1)))
    h = tensor_dual(f, ev1)
    back = tensor_dual_inverse(h)
    assert tensor_sum_equal(back, [(f, ev1)])
    h2 = tensor_dual(*back[0]) if len(back) == 1 else None
    if h2 is not None:
        assert h2.functional == h.functional


def test_tensor_round_trip_with_two_evaluations():
    f, g = evaluation_functional(GL, [1]), evaluation_functional(GL, [-1])
    back = tensor_dual_inverse(tensor_dual(f, g))
    assert len(back) == 1
    assert dual_equal(back[0][0], f) and dual_equal(back[0][1], g)


def test_tensor_dual_from_generators():
    T = TensorFamily(GL, GL)
    gens = [T.pure_tensor(GL.var("x"), GL.one()), T.pure_tensor(GL.one(), GL.var("x"))]
    h = tensor_dual_element(T, gens, [1])
    back = tensor_dual_inverse(h)
    ev0 = evaluation_functional(GL, [0])
    assert tensor_sum_equal(back, [(ev0, ev0)])


def test_pullback_along_squaring():
    ev2 = evaluation_functional(GL, [2])
    f = pullback(ev2, GL, ["x^2"])
    assert dual_equal(f, evaluation_functional(GL, [4]))


# -- probes on non-free truncations ---------------------------------------------


def test_probe_on_free_truncation_is_injective():
    ideal = GL.ideal("x^2 - 1")
    assert purity_probe(GL, ideal, FPModule.cyclic(ZZ, 2)).injective
    assert purity_probe(GL, ideal, FPModule.free(ZZ, 1)).injective


def test_probe_and_orders_on_counterexample():
    q = counterexample_algebra(3)
    R = q.ring
    v = purity_probe(q, None, FPModule.cyclic(R, 2))
    assert v.quotient_invariants == (2, 2, 4)
    assert purity_probe(q, None, FPModule.free(R, 1)).injective
    table = truncation_dual_orders(q)
    assert len(table.entries) == 16
    # the counit takes the value 1 at 1, so it has additive order 4
    assert dict(table.entries)[(1, 0, 0)] == 4
