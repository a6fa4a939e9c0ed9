import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from rat_fixtures import (
    GL,
    LA,
    PR,
    module_fixtures,
    oracle_rational,
    rat_of_submodule,
    sample_elements,
    truncation_regular_module,
)

from hopfdual.algebras import group_algebra
from hopfdual.errors import ProbeInsufficient
from hopfdual.finite_dual import dual_element, dual_equal, evaluation_functional
from hopfdual.fixtures import truncation_pairs
from hopfdual.groups import cyclic
from hopfdual.hopf import group_hopf_algebra
from hopfdual.linalg import RMatrix, smith_diagonal
from hopfdual.modules import FPModule, in_submodule
from hopfdual.rational import (
    AlgebraModule,
    Pairing,
    algebra_dual_pairing,
    alpha_map,
    bilinear_system,
    canonical_pairing,
    check_rational_pairing,
    comodule_from_coalgebra,
    family_module,
    induced_tensor_pairing,
    intersect_spans,
    mock_projective_witness,
    rat_submodule,
    rational_parameters,
    regular_module,
    same_span,
    stable_closure,
    to_comodule,
    to_module,
    truncated_dual_pairing,
)
from hopfdual.rings import ZZ

ZC2 = group_algebra(ZZ, cyclic(2))
TRIVIAL = group_algebra(ZZ, cyclic(1))
MODULES = module_fixtures()


# -- pairings ------------------------------------------------------------------


def test_canonical_pairing_of_group_coalgebra():
    p = canonical_pairing(group_hopf_algebra(ZZ, cyclic(2)).coalg)
    assert check_rational_pairing(p).ok


def test_dual_pairing_of_group_algebra():
    assert check_rational_pairing(algebra_dual_pairing(ZC2)).ok


@pytest.mark.parametrize("family,ideal", truncation_pairs()[:6], ids=[i.describe() for _, i in truncation_pairs()[:6]])
def test_truncated_pairings_are_rational(family, ideal):
    assert check_rational_pairing(truncated_dual_pairing(family, ideal)).ok


def test_swapped_gram_breaks_the_pairing():
    good = algebra_dual_pairing(ZC2)
    bad = Pairing(good.alg, RMatrix(ZZ, [[0, 1], [1, 0]], 2), good.coalg)
    rep = check_rational_pairing(bad)
    assert not rep.ok
    assert "pairing unital" in rep.axioms_failed()


def test_rational_pairings_have_unit_elementary_divisors():
    for family, ideal in truncation_pairs()[:6]:
        d = smith_diagonal(truncated_dual_pairing(family, ideal).gram)
        assert all(abs(x) == 1 for x in d)
    # the toy form 2Z in Z* is not rational, and its gram has divisor 2
    toy = bilinear_system(ZZ, [[2]], TRIVIAL)
    assert smith_diagonal(toy.gram) == [2]
    assert not check_rational_pairing(toy).ok


# -- alpha maps ------------------------------------------------------------------


def test_alpha_for_identity_gram_is_injective():
    p = bilinear_system(ZZ, [[1]], TRIVIAL)
    for X in (FPModule.free(ZZ, 1), FPModule.cyclic(ZZ, 2), FPModule.cyclic(ZZ, 6)):
        assert alpha_map(X, p).injective


def test_alpha_on_zero_module_is_injective():
    assert alpha_map(FPModule(ZZ, 0), bilinear_system(ZZ, [[2]], TRIVIAL)).injective


def test_alpha_for_even_form_has_kernel_on_z2():
    res = alpha_map(FPModule.cyclic(ZZ, 2), bilinear_system(ZZ, [[2]], TRIVIAL))
    assert not res.injective
    assert res.witness == (1,)
    # the witness maps to zero and is nonzero in the source
    f = res.map
    assert not f.source.is_zero(res.witness)
    assert f.target.is_zero(f.matrix.vecmul(res.witness))


def test_induced_tensor_pairing():
    p = algebra_dual_pairing(ZC2)
    t = induced_tensor_pairing(p, p)
    assert t.gram == RMatrix.identity(ZZ, 4)
    assert check_rational_pairing(t).ok
    toy = bilinear_system(ZZ, [[2]], TRIVIAL)
    bad = induced_tensor_pairing(toy, bilinear_system(ZZ, [[1]], TRIVIAL))
    assert smith_diagonal(bad.gram) == [2]
    assert not alpha_map(FPModule.cyclic(ZZ, 2), bad).injective


# -- mock-projective witnesses ---------------------------------------------------


def test_mock_projective_for_empty_family():
    w = mock_projective_witness(ZZ, [])
    assert w.chosen == []


def test_mock_projective_for_evaluation_at_one():
    # ev_1 on the probe {1, x, x^2}
    w = mock_projective_witness(ZZ, [[1, 1, 1]])
    assert w.chosen == [0]
    assert w.g_values == [[1, 1, 1]]
    assert w.verify(ZZ)


def test_mock_projective_for_two_evaluations():
    # ev_1 and ev_-1 on the probe {1, x}
    w = mock_projective_witness(ZZ, [[1, 1], [1, -1]])
    assert w.chosen == [0, 1]
    assert w.verify(ZZ)


def test_mock_projective_holdout_detects_short_probe():
    with pytest.raises(ProbeInsufficient):
        mock_projective_witness(ZZ, [[1, 0], [0, 1]], holdout=1)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=3))
def test_mock_projective_witness_reproduces_values(values):
    w = mock_projective_witness(ZZ, values)
    # an independent recomputation of the identity p_i = sum p_i(a_l) g_l
    for i, row in enumerate(values):
        for t in range(4):
            assert row[t] == sum(row[a] * w.g_values[l][t] for l, a in enumerate(w.chosen))


# -- rational parameters and Rat -----------------------------------------------


def test_rational_parameters_of_regular_module():
    am = regular_module(ZC2)
    params = rational_parameters(am, (1, 0), algebra_dual_pairing(ZC2))
    assert params.pairs == [((1, 0), 0), ((0, 1), 1)]


def test_rational_parameters_of_trivial_module():
    am = AlgebraModule(FPModule.free(ZZ, 1), (RMatrix.identity(ZZ, 1), RMatrix.identity(ZZ, 1)))
    params = rational_parameters(am, (1,), algebra_dual_pairing(ZC2))
    # 1.m = g.m = m, so t = m (x) (e* + g*)
    assert params.pairs == [((1,), 0), ((1,), 1)]


def test_rational_parameters_point_to_evaluation_at_two():
    p = truncated_dual_pairing(GL, GL.ideal("x - 2"))
    am = family_module(GL, FPModule.free(ZZ, 1), [[[2]]], p)
    params = rational_parameters(am, (1,), p)
    assert params.pairs == [((1,), 0)]
    c = dual_element(GL, GL.ideal("x - 2"), [1])
    assert dual_equal(c, evaluation_functional(GL, [2]))


def test_element_not_killed_by_ideal_is_not_rational():
    p = truncated_dual_pairing(GL, GL.ideal("x - 2"))
    am = family_module(GL, FPModule.free(ZZ, 2), [[[2, 0], [0, 3]]], p)
    assert rational_parameters(am, (0, 1), p) is None
    assert rational_parameters(am, (1, 0), p) is not None


def test_rat_of_mixed_module():
    p = truncated_dual_pairing(GL, GL.ideal("x - 2"))
    am = family_module(GL, FPModule.free(ZZ, 2), [[[2, 0], [0, 3]]], p)
    assert rat_submodule(am, p) == [(1, 0)]


def test_rat_against_zero_coalgebra_is_zero():
    p = Pairing(TRIVIAL, RMatrix.zeros(ZZ, 0, 1))
    am = AlgebraModule(FPModule.free(ZZ, 1), (RMatrix.identity(ZZ, 1),))
    assert rat_submodule(am, p) == []


def test_rat_of_finite_regular_module_is_everything():
    am = regular_module(ZC2)
    assert same_span(am.module, rat_submodule(am, algebra_dual_pairing(ZC2)), [(1, 0), (0, 1)])


@pytest.mark.parametrize("name,am,p", MODULES, ids=[n for n, _, _ in MODULES])
def test_rat_matches_annihilator_oracle(name, am, p):
    rat = rat_submodule(am, p)
    for v in sample_elements(am, box=2):
        assert in_submodule(am.module, rat, v) == oracle_rational(am, v), v


@pytest.mark.parametrize("name,am,p", MODULES, ids=[n for n, _, _ in MODULES])
def test_rat_is_idempotent(name, am, p):
    rat = rat_submodule(am, p)
    if not rat:
        return
    assert same_span(am.module, rat_of_submodule(am, p, rat), rat)


@pytest.mark.parametrize("name,am,p", MODULES, ids=[n for n, _, _ in MODULES])
def test_rat_of_submodule_is_intersection(name, am, p):
    rat = rat_submodule(am, p)
    g = am.ngens
    for seed in ([tuple(1 for _ in range(g))], [tuple(1 if i == 0 else 0 for i in range(g))]):
        N = stable_closure(am, seed)
        lhs = rat_of_submodule(am, p, N)
        rhs = intersect_spans(am.module, N, rat)
        assert same_span(am.module, lhs, rhs)


# -- modules and comodules ----------------------------------------------------------


def test_comodule_of_coalgebra_round_trip():
    c = group_hopf_algebra(ZZ, cyclic(2)).coalg
    p = canonical_pairing(c)
    com = comodule_from_coalgebra(c)
    am = to_module(com, p)
    assert to_comodule(am, p).coaction == com.coaction


@pytest.mark.parametrize("family,ideal", [(GL, GL.ideal("x^2 - 1")), (GL, GL.ideal("x^2 - 3*x + 1")), (PR, PR.ideal("x^2")), (LA, LA.ideal("x + 1")), (LA, LA.ideal("x^2 - 3*x + 1"))], ids=["gl-x2-1", "gl-fib", "pr-x2", "la-x+1", "la-fib"])
def test_module_comodule_round_trip(family, ideal):
    am, p = truncation_regular_module(family, ideal)
    com = to_comodule(am, p)
    back = to_module(com, p)
    assert back.same_action(am)
    assert to_comodule(back, p).coaction == com.coaction
