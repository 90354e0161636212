import random
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from transversal.groebner import FreeModuleElem
from transversal.idealops import (
    HomogeneityError,
    ModulePresentation,
    RepresentationError,
    hilbert_dims,
    ideal,
    ideal_colon,
    ideal_contains,
    ideal_equal,
    ideal_intersection,
    ideal_power,
    membership,
    module_intersection,
    unit_ideal,
)
from transversal.polycore import Polynomial, polynomial_ring

from corpus import count_outside, mono_ideal, random_monomial_gens

A = polynomial_ring("x,y")
B = polynomial_ring("z,t", ["z*t"])
R3 = polynomial_ring("x,y,z")


def I_(ring, *gens):
    return ideal(ring, *[ring(g) for g in gens])


def test_powers():
    assert ideal_equal(ideal_power(I_(A, "x", "y"), 2), I_(A, "x^2", "x*y", "y^2"))
    assert ideal_equal(ideal_power(I_(A, "x"), 3), I_(A, "x^3"))
    assert ideal_equal(ideal_power(I_(B, "z", "z"), 2), I_(B, "z^2"))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert ideal_equal(ideal_power(I_(A, "x"), 0), unit_ideal(A))


def test_intersections():
    assert ideal_equal(ideal_intersection(I_(A, "x"), I_(A, "y")), I_(A, "x*y"))
    assert ideal_equal(ideal_intersection(I_(A, "x", "y"), I_(A, "x")), I_(A, "x"))
    cap = ideal_intersection(I_(B, "z"), I_(B, "t"))
    assert all(membership(g, ideal(B)) for g in cap.generators)


def test_module_intersections():
    X = polynomial_ring("x")
    sub = lambda ring, *rows: ModulePresentation.submodule(
        ring, len(rows[0]), [FreeModuleElem(ring, [ring(c) for c in r]) for r in rows])
    cap = module_intersection(sub(X, ["x^3"]), sub(X, ["x^2"]))
    assert len(cap.generators) == 1
    assert cap.generators[0].components[0] == X("x^3")
    assert module_intersection(sub(A, ["x", "0"]), sub(A, ["0", "y"])).is_zero()
    for p in range(1, 4):
        for q in range(1, 4):
            cap = module_intersection(sub(A, [f"x^{p}"]), sub(A, [f"y^{q}"]))
            gens = [g.components[0] for g in cap.generators]
            assert ideal_equal(ideal(A, *gens), I_(A, f"x^{p}*y^{q}"))


def test_module_intersection_rejects_relations():
    M = ModulePresentation.cokernel(A, 1, [FreeModuleElem(A, [A("x")])])
    with pytest.raises(RepresentationError):
        module_intersection(M, M)


def test_colons():
    assert ideal_equal(ideal_colon(I_(A, "x^2*y"), A("y")), I_(A, "x^2"))
    assert ideal_equal(ideal_colon(I_(A, "x"), A("y")), I_(A, "x"))
    assert ideal_equal(ideal_colon(ideal(B), B("z")), I_(B, "t"))
    with pytest.raises(ValueError):
        ideal_colon(I_(A, "x"), A.zero())


def test_membership_and_equality():
    assert ideal_equal(I_(A, "x", "y"), I_(A, "y", "x + y"))
    assert membership(A("x^2"), I_(A, "x"))
    assert not membership(A("x"), I_(A, "x^2"))


def test_hilbert_examples():
    assert hilbert_dims(I_(A, "x^2", "x*y", "y^2"), 2).as_list() == [1, 2, 0]
    assert hilbert_dims(I_(A, "x^2", "x*y"), 3).as_list() == [1, 2, 1, 1]
    assert hilbert_dims(B, 3).as_list() == [1, 2, 2, 2]
    with pytest.raises(HomogeneityError):
        hilbert_dims(I_(A, "x + 1"), 3)


def monomial_ideals(ring):
    return st.integers(0, 10_000).map(
        lambda s: mono_ideal(ring, random_monomial_gens(random.Random(s), ring.nvars)))


@given(monomial_ideals(R3))
@settings(max_examples=25, deadline=None)
def test_hilbert_matches_monomial_count(I):
    gens = [next(iter(g.terms)) for g in I.generators]
    assert hilbert_dims(I, 6).as_list() == [count_outside(gens, 3, d) for d in range(7)]


@given(monomial_ideals(R3), monomial_ideals(R3))
@settings(max_examples=25, deadline=None)
def test_product_inside_intersection(I, J):
    cap = ideal_intersection(I, J)
    assert ideal_contains(cap, I * J)
    assert ideal_contains(I, cap) and ideal_contains(J, cap)
    # module and ideal intersections agree in rank one
    mcap = module_intersection(I.as_module(), J.as_module())
    assert ideal_equal(ideal(R3, *[g.components[0] for g in mcap.generators]), cap)


@given(monomial_ideals(R3), monomial_ideals(R3))
@settings(max_examples=20, deadline=None)
def test_hilbert_additivity(I, J):
    # dim A/(I∩J) + dim A/(I+J) = dim A/I + dim A/J
    d = 6
    lhs = [a + b for a, b in zip(hilbert_dims(ideal_intersection(I, J), d).as_list(),
                                 hilbert_dims(I + J, d).as_list())]
    rhs = [a + b for a, b in zip(hilbert_dims(I, d).as_list(), hilbert_dims(J, d).as_list())]
    assert lhs == rhs


@given(monomial_ideals(R3))
@settings(max_examples=20, deadline=None)
def test_quotient_plus_ideal_is_ring(I):
    d = 5
    total = [a + b for a, b in zip(hilbert_dims(I, d).as_list(), hilbert_dims(I.as_module(), d).as_list())]
    assert total == hilbert_dims(R3, d).as_list()


@given(monomial_ideals(R3), st.integers(1, 2), st.integers(1, 2))
@settings(max_examples=15, deadline=None)
def test_power_law(I, p, q):
    assert ideal_equal(ideal_power(I, p) * ideal_power(I, q), ideal_power(I, p + q))


@given(monomial_ideals(R3), st.sampled_from(["x", "y", "z", "x*y", "x + y"]))
@settings(max_examples=25, deadline=None)
def test_colon_properties(I, ftext):
    f = R3(ftext)
    C = ideal_colon(I, f)
    assert all(membership(g * f, I) for g in C.generators)
    assert ideal_contains(C, I)


def test_regular_element_colon():
    I = I_(R3, "x^2", "y")
    assert ideal_equal(ideal_colon(I, R3("z")), I)
    assert not ideal_equal(ideal_colon(I, R3("x")), I)
