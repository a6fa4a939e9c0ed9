from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfdual.algebras import counterexample_algebra
from hopfdual.errors import HypothesisFailed, NotInjective
from hopfdual.linalg import RMatrix
from hopfdual.modules import (
    FPModule,
    ModuleMap,
    direct_sum,
    dual_module,
    element_order,
    identity_map,
    is_pure_submodule,
    is_x_pure,
    purity_battery,
    quotient,
    quotient_tensor_check,
    submodule,
    tensor_map,
    tensor_module,
)
from hopfdual.rings import QQ, ZZ, Fp, Zmod

Z2 = FPModule.cyclic(ZZ, 2)
Z3 = FPModule.cyclic(ZZ, 3)
Z4 = FPModule.cyclic(ZZ, 4)


def incl(target, gens):
    sub, f = submodule(target, gens)
    return f


def test_describe_and_invariants():
    m = direct_sum(Z2, FPModule.free(ZZ, 1))
    assert m.invariants == (2, 0)
    assert m.describe() == "Z/2 + R"
    assert FPModule(ZZ, 2, [[2, 0], [0, 1]]).isomorphic(Z2)


def test_tensor_examples():
    n = direct_sum(Z2, FPModule.free(ZZ, 2))
    assert tensor_module(FPModule.free(ZZ, 1), n).isomorphic(n)
    assert tensor_module(Z2, Z3).is_zero_module()
    assert tensor_module(Z4, Z2).isomorphic(Z2)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 12), st.integers(0, 12))
def test_tensor_of_cyclic_groups_is_cyclic_of_gcd(a, b):
    t = tensor_module(FPModule.cyclic(ZZ, a), FPModule.cyclic(ZZ, b))
    assert t.isomorphic(FPModule.cyclic(ZZ, gcd(a, b)))


def test_dual_module_examples():
    assert dual_module(FPModule.free(ZZ, 2)).isomorphic(FPModule.free(ZZ, 2))
    assert dual_module(Z2).is_zero_module()
    got = dual_module(FPModule.cyclic(Zmod(4), 2))
    assert got.isomorphic(FPModule.cyclic(Zmod(4), 2))
    assert got.order() == 2


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([4, 6, 8, 9, 12]), st.data())
def test_dual_of_cyclic_over_zn_has_brute_force_order(n, data):
    d = data.draw(st.integers(0, n - 1))
    m = FPModule.cyclic(Zmod(n), d)
    # maps R/(d) -> R are the r with d*r = 0
    expected = sum(1 for r in range(n) if (d * r) % n == 0)
    assert dual_module(m).order() == expected


def test_element_order_examples():
    m = FPModule.free(Zmod(4), 1)
    assert element_order(m, (0,)) == 1
    assert element_order(m, (1,)) == 4
    q = counterexample_algebra(3)
    assert element_order(q.module, (0, 1, 0)) == 2


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 6, 8, 12]), st.data())
def test_element_order_matches_enumeration(n, data):
    m = direct_sum(FPModule.cyclic(ZZ, n), FPModule.cyclic(ZZ, 4))
    v = (data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, 3)))
    k = 1
    while not m.is_zero([k * v[0], k * v[1]]):
        k += 1
    assert element_order(m, v) == k


# -- purity ------------------------------------------------------------------


def test_summand_is_pure():
    assert is_pure_submodule(incl(FPModule.free(ZZ, 2), [(1, 0)])).pure


def test_two_z_in_z_is_not_pure():
    f = incl(FPModule.free(ZZ, 1), [(2,)])
    v = is_pure_submodule(f)
    assert not v.pure
    assert v.witness_module.isomorphic(Z2)
    t = tensor_map(f, identity_map(v.witness_module))
    assert not t.source.is_zero(v.kernel_element)
    assert t.target.is_zero(t.matrix.vecmul(v.kernel_element))


def test_two_z4_in_z4_over_z4_is_not_pure():
    R = Zmod(4)
    f = incl(FPModule.free(R, 1), [(2,)])
    v = is_pure_submodule(f)
    assert not v.pure
    assert v.witness_module.isomorphic(FPModule.cyclic(R, 2))
    assert not is_x_pure(f, v.witness_module)


def test_x_purity_examples():
    z = FPModule.free(ZZ, 1)
    for gens in ([(2,)], [(3,)], [(1,)]):
        assert is_x_pure(incl(z, gens), z)
    assert not is_x_pure(incl(z, [(2,)]), Z2)
    assert is_x_pure(incl(z, [(3,)]), Z2)


def test_non_injective_map_is_refused():
    f = ModuleMap(Z2, FPModule.free(ZZ, 1), RMatrix(ZZ, [[0]], 1))
    with pytest.raises(NotInjective):
        is_pure_submodule(f)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 24), st.data())
def test_cyclic_subgroup_purity_matches_coprimality(n, data):
    # <d> in Z/n has order k = n/gcd(d, n) and is a summand iff gcd(k, n/k) = 1
    d = data.draw(st.integers(1, n - 1))
    k = n // gcd(d, n)
    f = incl(FPModule.cyclic(ZZ, n), [(d,)])
    assert is_pure_submodule(f).pure == (gcd(k, n // k) == 1)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=3).filter(any))
def test_cyclic_submodule_of_free_pure_iff_primitive(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    f = incl(FPModule.free(ZZ, len(v)), [tuple(v)])
    verdict = is_pure_submodule(f)
    assert verdict.pure == (g == 1)
    if verdict.pure:
        assert all(is_x_pure(f, X) for X in purity_battery(ZZ))
    else:
        assert not is_x_pure(f, verdict.witness_module)


def test_over_a_field_every_injection_is_pure():
    for R in (QQ, Fp(3)):
        f = incl(FPModule.free(R, 2), [(1, 2)])
        assert is_pure_submodule(f).pure


def test_quotient_tensor_examples():
    z = FPModule.free(ZZ, 1)
    assert quotient_tensor_check(z, incl(z, [(2,)]), z, incl(z, [(3,)]))
    assert quotient_tensor_check(z, incl(z, []), z, incl(z, []))
    z2 = FPModule.free(ZZ, 2)
    assert quotient_tensor_check(z2, incl(z2, [(1, 0)]), z2, incl(z2, [(0, 1)]))


def test_quotient_tensor_refuses_impure_data():
    z = FPModule.free(ZZ, 1)
    with pytest.raises(HypothesisFailed):
        quotient_tensor_check(z, incl(z, [(2,)]), Z2, incl(Z2, []))


def test_quotient_presentation():
    z = FPModule.free(ZZ, 1)
    assert quotient(z, incl(z, [(6,)])).isomorphic(FPModule.cyclic(ZZ, 6))
