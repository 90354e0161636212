import pytest

from transversal.arprobe import ContainmentError, NotFound, maximal_ideal, sample_maximal_rt, strong_uniform_number
from transversal.groebner import FreeModuleElem
from transversal.idealops import ModulePresentation, ideal
from transversal.polycore import polynomial_ring

X = polynomial_ring("x")
A = polynomial_ring("x,y")
B = polynomial_ring("z,t", ["z*t"])


def sub(ring, *gens):
    return ModulePresentation.submodule(ring, 1, [FreeModuleElem(ring, [ring(g)]) for g in gens])


def test_artin_rees_numbers():
    m = ideal(X, X("x"))
    r = strong_uniform_number(m, sub(X, "1"), sub(X, "x^2"), 8)
    assert r.s == 2 and r.verified_range == (2, 8)
    assert all(r.weak_containment.values())
    r = strong_uniform_number(m, sub(X, "1"), sub(X, "x"), 8)
    assert r.s == 1
    mB = ideal(B, B("z"), B("t"))
    assert strong_uniform_number(mB, sub(B, "1"), sub(B, "z"), 5).s == 1


def test_report_wording():
    r = strong_uniform_number(ideal(X, X("x")), sub(X, "1"), sub(X, "x^2"), 4)
    assert r.to_json()["note"] == "uniform up to nmax"


def test_small_bounds():
    m = ideal(X, X("x"))
    # true s is 3; with nmax=2 only the trivial s=nmax survives, on a one-point range
    r = strong_uniform_number(m, sub(X, "1"), sub(X, "x^3"), 2)
    assert r.s == 2 and r.verified_range == (2, 2)
    assert strong_uniform_number(m, sub(X, "1"), sub(X, "x^3"), 6).s == 3
    r = strong_uniform_number(m, sub(X, "1"), sub(X, "x^3"), 0)
    assert isinstance(r.s, NotFound) and str(r.s) == "NOT_FOUND_UP_TO(0)"


def test_containment_error():
    with pytest.raises(ContainmentError):
        strong_uniform_number(ideal(X, X("x")), sub(X, "x^2"), sub(X, "x"), 4)


def test_validity_is_monotone():
    # s valid implies s+1 valid: s=2 for N=(x^2), nothing changes when N has a redundant generator
    m = ideal(X, X("x"))
    assert strong_uniform_number(m, sub(X, "1"), sub(X, "x^2", "x^3"), 6).s == 2


def test_generator_order_does_not_matter():
    m1 = ideal(A, A("x"), A("y"))
    m2 = ideal(A, A("y"), A("x"))
    N1, N2 = sub(A, "x^2", "x*y"), sub(A, "x*y", "x^2")
    r1 = strong_uniform_number(m1, sub(A, "1"), N1, 5)
    r2 = strong_uniform_number(m2, sub(A, "1"), N2, 5)
    assert r1.s == r2.s and r1.table == r2.table


def test_maximal_ideal_checks_point():
    with pytest.raises(ValueError):
        maximal_ideal(B, (1, 1))
    assert len(maximal_ideal(B, (1, 0)).generators) == 2


def test_sampling():
    r = sample_maximal_rt(A, None, [(0, 0), (1, 2), (-1, 3)])
    assert set(r["by_point"].values()) == {1} and r["max"] == 1
    r = sample_maximal_rt(B, None, [(0, 0), (1, 0), (0, 2)])
    assert r["by_point"][(0, 0)] == 2 and r["max"] == 2


def test_sampling_module():
    # M = A/(x^2) over Q[x]; rt((x); M) = 2 here, see the notes in the README
    M = ModulePresentation.cokernel(X, 1, [FreeModuleElem(X, [X("x^2")])])
    assert sample_maximal_rt(X, M, [(0,)])["max"] == 2


def test_sampling_parallel_is_deterministic():
    pts = [(0, 0), (1, 2), (-1, 3), (2, 2)]
    assert sample_maximal_rt(A, None, pts, jobs=2) == sample_maximal_rt(A, None, pts)
