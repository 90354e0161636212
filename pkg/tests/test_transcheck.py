import pytest

from transversal.groebner import FreeModuleElem
from transversal.idealops import (
    HomogeneityError,
    ModulePresentation,
    hilbert_dims,
    ideal,
    ideal_times_module,
    module_intersection,
)
from transversal.polycore import polynomial_ring
from transversal.transcheck import (
    CheckVerdict,
    Status,
    check_flatness_criterion,
    check_intersection_condition,
    check_pi_iso,
    check_rt_tensor_bound,
    check_sigma_iso,
    check_theorem1,
    check_tor2_clause,
)

from corpus import mono_ideal, monomial_pairs

X = polynomial_ring("x")
A = polynomial_ring("x,y")
A3 = polynomial_ring("x,y,z")
A4 = polynomial_ring("x,y,u,v")
Axyu = polynomial_ring("x,y,u")
B = polynomial_ring("z,t", ["z*t"])

HOLDS, FAILS, VIOLATED = Status.HOLDS_UP_TO_BOUND, Status.FAILS, Status.HYPOTHESIS_VIOLATED


def I_(ring, *gens):
    return ideal(ring, *[ring(g) for g in gens])


def test_fails_needs_witness():
    with pytest.raises(ValueError):
        CheckVerdict("x", FAILS, {})


def test_intersection_condition():
    assert check_intersection_condition(I_(A, "x"), I_(A, "y"), None, 3, 3).status is HOLDS
    assert check_intersection_condition(I_(B, "z"), I_(B, "t"), None, 3, 3).status is HOLDS
    v = check_intersection_condition(I_(X, "x"), I_(X, "x"), None, 1, 1)
    assert v.status is FAILS and (v.witness["p"], v.witness["q"]) == (1, 1)


def test_sigma_iso():
    v = check_sigma_iso(I_(B, "z"), I_(B, "t"), None, nmax=4, dmax=6)
    assert v.status is HOLDS
    assert check_sigma_iso(I_(A, "x"), I_(A, "y"), None, 4, 6).status is HOLDS
    v = check_sigma_iso(I_(X, "x"), I_(X, "x"), None, 4, 6)
    assert v.status is FAILS and v.witness["n"] == 1
    with pytest.raises(HomogeneityError):
        check_sigma_iso(I_(A, "x + 1"), I_(A, "y"), None, 2, 4)


def test_pi_iso():
    v = check_pi_iso(I_(B, "z"), I_(B, "t"), None, 3, 3, 8)
    assert v.status is FAILS and (v.witness["p"], v.witness["q"]) == (1, 1)
    assert check_pi_iso(I_(A, "x"), I_(A, "y"), None, 3, 3, 8).status is HOLDS
    assert check_pi_iso(I_(Axyu, "x^2", "x*y", "y^2"), I_(Axyu, "u"), None, 2, 2, 8).status is HOLDS


def test_check_theorem1_examples():
    r = check_theorem1(I_(A, "x"), I_(A, "y"), None, 2, 2, 8)
    assert r.agree and r.condition_i.status is HOLDS and r.condition_ii.status is HOLDS
    r = check_theorem1(I_(B, "z"), I_(B, "t"), None, 2, 2, 8)
    assert r.agree and r.condition_i.status is FAILS and r.condition_ii.status is FAILS
    r = check_theorem1(I_(A4, "x^2", "x*y", "y^2"), I_(A4, "u^2", "u*v", "v^2"), None, 2, 2, 8)
    assert r.agree and r.condition_i.status is HOLDS


def test_tor2_clause():
    tor, iso, agree = check_tor2_clause(I_(A, "x"), I_(A, "y"), 2, 2, 8)
    assert agree and tor.status is HOLDS and iso.status is HOLDS
    tor, iso, agree = check_tor2_clause(I_(B, "z"), I_(B, "t"), 3, 3, 8)
    assert agree and tor.status is FAILS and iso.status is FAILS
    assert tor.witness["index"] == 2
    tor, iso, agree = check_tor2_clause(I_(X, "x"), I_(X, "x"), 2, 2, 6)
    assert agree and tor.status is FAILS and tor.witness["index"] == 1


def test_rt_tensor_bound():
    v = check_rt_tensor_bound(I_(A4, "x^2", "x*y", "y^2"), I_(A4, "u^2", "u*v", "v^2"))
    assert v.status is HOLDS
    assert check_rt_tensor_bound(I_(A, "x"), I_(A, "y")).status is HOLDS
    assert check_rt_tensor_bound(I_(A3, "x"), I_(A3, "y^2", "y*z", "z^2")).status is HOLDS
    assert check_rt_tensor_bound(I_(B, "z"), I_(B, "t")).status is VIOLATED


def test_flatness():
    assert check_flatness_criterion(I_(A, "y"), [A("x")]).status is HOLDS
    assert check_flatness_criterion(I_(A3, "y", "z"), [A3("x")]).status is HOLDS
    v = check_flatness_criterion(I_(B, "t"), [B("z")])
    assert v.status is VIOLATED
    assert v.note or v.witness


def test_principal_regular_element():
    # x regular on A and on gr_(y)(A): transversal
    r = check_theorem1(I_(A, "x"), I_(A, "y^2"), None, 2, 2, 8)
    assert r.agree and r.condition_i.status is HOLDS
    # x is a zero divisor modulo J = (x*y): not transversal
    r = check_theorem1(I_(A, "x"), I_(A, "x*y"), None, 2, 2, 8)
    assert r.agree and r.condition_i.status is FAILS


def test_module_argument():
    M = ModulePresentation.submodule(A, 2, [FreeModuleElem(A, [A("1"), A("0")]),
                                            FreeModuleElem(A, [A("0"), A("x")])])
    r = check_theorem1(I_(A, "x"), I_(A, "y"), M, 2, 2, 6)
    assert r.agree


def test_degree_one_kernel_of_sigma_is_intersection():
    # dims of ker(IM ⊕ JM -> (I+J)M) equal dims of IM ∩ JM
    for I, J in [(I_(X, "x"), I_(X, "x")), (I_(A, "x^2", "x*y"), I_(A, "y")), (I_(B, "z"), I_(B, "t"))]:
        M = ModulePresentation.free(I.ring, 1)
        IM, JM = ideal_times_module(I, M), ideal_times_module(J, M)
        d = 6
        hi = lambda N: hilbert_dims(N, d).as_list()
        kernel = [a + b - c for a, b, c in zip(hi(IM), hi(JM), hi(ideal_times_module(I + J, M)))]
        assert kernel == hi(module_intersection(IM, JM))


corpus = monomial_pairs(A3, 12, seed=5)


@pytest.mark.parametrize("a,b", corpus)
def test_sigma_and_intersection_condition(a, b):
    I, J = mono_ideal(A3, a), mono_ideal(A3, b)
    inter = check_intersection_condition(I, J, None, 3, 3)
    sigma = check_sigma_iso(I, J, None, nmax=6, dmax=8)
    if inter.status is HOLDS:
        assert sigma.status is HOLDS
    if sigma.status is FAILS:
        assert inter.status is FAILS


@pytest.mark.parametrize("a,b", corpus[:6])
def test_failures_persist_with_larger_bounds(a, b):
    I, J = mono_ideal(A3, a), mono_ideal(A3, b)
    small = check_pi_iso(I, J, None, 1, 1, 6)
    big = check_pi_iso(I, J, None, 2, 2, 8)
    if small.status is FAILS:
        assert big.status is FAILS
    small = check_sigma_iso(I, J, None, 2, 6)
    if small.status is FAILS:
        assert check_sigma_iso(I, J, None, 4, 8).status is FAILS
