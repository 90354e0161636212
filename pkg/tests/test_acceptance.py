"""Acceptance criteria, one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
All comparisons are exact (integer dimensions, statuses); no tolerances apply.
"""

import json
import random
import subprocess
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import brute_tor1_dims, gb_corpus, mono_ideal, monomial_pairs  # noqa: E402
from transversal.arprobe import sample_maximal_rt, strong_uniform_number  # noqa: E402
from transversal.groebner import FreeModuleElem, buchberger, raw_normal_form, s_polynomial  # noqa: E402
from transversal.idealops import ModulePresentation, ideal, ideal_power  # noqa: E402
from transversal.polycore import polynomial_ring  # noqa: E402
from transversal.reeslab import relation_type  # noqa: E402
from transversal.torlab import tor1, tor1_shortcut_oracle, tor2_cyclic  # noqa: E402
from transversal.transcheck import Status, check_pi_iso, check_sigma_iso, check_theorem1  # noqa: E402

B = polynomial_ring("z,t", ["z*t"])
A2 = polynomial_ring("x,y")
A3 = polynomial_ring("x,y,z")
A4 = polynomial_ring("x,y,u,v")
X = polynomial_ring("x")

HOLDS, FAILS = Status.HOLDS_UP_TO_BOUND, Status.FAILS


def I_(ring, *gens):
    return ideal(ring, *[ring(g) for g in gens])


def report(n, ok, detail, capsys=None):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    return ok


def c1():
    I, J = I_(B, "z"), I_(B, "t")
    sigma = check_sigma_iso(I, J, None, nmax=6, dmax=10)
    pi = check_pi_iso(I, J, None, 3, 3, 10)
    th = check_theorem1(I, J, None, 3, 3, 10)
    ok = (sigma.status is HOLDS and pi.status is FAILS and (pi.witness["p"], pi.witness["q"]) == (1, 1)
          and th.agree and th.condition_i.status is FAILS and th.condition_ii.status is FAILS)
    return ok, f"sigma {sigma.status.value}, pi {pi.status.value} at {pi.witness and (pi.witness['p'], pi.witness['q'])}, " \
               f"equivalence sides {th.condition_i.status.value}/{th.condition_ii.status.value}"


def c2():
    z, t = I_(B, "z"), I_(B, "t")
    tor1_zero = all(tor1(ideal_power(z, p), ideal_power(t, q), 10).is_zero
                    for p in range(1, 4) for q in range(1, 4))
    t2 = tor2_cyclic(z, t, 10).graded_dims
    ok = tor1_zero and t2.total() == 1
    return ok, f"Tor1 table zero for p,q<=3: {tor1_zero}; dim Tor2 = {t2.total()}"


def c3():
    got = (relation_type(I_(A2, "x", "y")).rt, relation_type(I_(A2, "x^2", "x*y", "y^2")).rt,
           relation_type(I_(B, "z", "t")).rt)
    return got == (1, 2, 2), f"rt = {got}, expected (1, 2, 2)"


def c4():
    pairs = monomial_pairs(A3, 24, seed=2024)
    bad, failing = [], 0
    for a, b in pairs:
        th = check_theorem1(mono_ideal(A3, a), mono_ideal(A3, b), None, 2, 2, 8)
        if not th.agree:
            bad.append((a, b))
        failing += th.condition_i.status is FAILS
    return not bad, f"{len(pairs)} random monomial pairs ({failing} non-transversal), {len(bad)} disagreements"


def c5():
    pairs = monomial_pairs(A3, 24, seed=2024)
    bad = 0
    for a, b in pairs:
        I, J = mono_ideal(A3, a), mono_ideal(A3, b)
        dims = tor1(I, J, 10).graded_dims.as_list()
        if dims != tor1_shortcut_oracle(I, J, 10).as_list() or dims != brute_tor1_dims(a, b, 3, 10):
            bad += 1
    return bad == 0, f"{len(pairs)} pairs up to degree 10, {bad} mismatches (also against monomial counting)"


RT_PARTS = {  # hand-known relation types in the variables x, y
    "(x)": (["x"], 1), "(x,y)": (["x", "y"], 1), "(x2,y2)": (["x^2", "y^2"], 1),
    "(x2,xy)": (["x^2", "x*y"], 1), "m2": (["x^2", "x*y", "y^2"], 2),
}
RT_PAIRS = [("m2", "m2"), ("m2", "(x)"), ("(x)", "m2"), ("m2", "(x,y)"), ("(x,y)", "(x,y)"),
            ("(x2,y2)", "m2"), ("(x2,xy)", "(x2,y2)"), ("(x)", "(x)"), ("(x2,xy)", "m2"), ("(x,y)", "(x2,y2)")]


def c6():
    swap = str.maketrans({"x": "u", "y": "v"})
    ok, equal2, lines = True, False, []
    for a, b in RT_PAIRS:
        ga, ra = RT_PARTS[a]
        gb, rb = RT_PARTS[b]
        I = I_(A4, *ga)
        J = I_(A4, *[g.translate(swap) for g in gb])
        if (relation_type(I).rt, relation_type(J).rt) != (ra, rb):
            ok = False
        r = relation_type(I + J).rt
        ok &= r <= max(ra, rb)
        equal2 |= r == 2 == max(ra, rb)
        lines.append(r)
    return ok and equal2, f"10 pairs, rt(I+J) = {lines}, equality at 2 seen: {equal2}"


def c7():
    m = I_(X, "x")
    M = ModulePresentation.free(X, 1)
    sub = lambda g: ModulePresentation.submodule(X, 1, [FreeModuleElem(X, [X(g)])])
    r2 = strong_uniform_number(m, M, sub("x^2"), 8)
    r1 = strong_uniform_number(m, M, sub("x"), 8)
    weak = all(r2.weak_containment.values()) and all(r1.weak_containment.values())
    ok = r2.s == 2 and r1.s == 1 and weak and r2.verified_range == (2, 8)
    return ok, f"s = {r2.s} for N=(x^2), s = {r1.s} for N=(x), n <= 8, weak containment {weak}"


def c8():
    pts = [(0, 0), (1, 2), (-1, 3), (5, -7), ("1/2", "2/3")]
    r = sample_maximal_rt(A2, None, pts)
    node = sample_maximal_rt(B, None, [(0, 0), (1, 0), (0, 3)])
    ok = all(v == 1 for v in r["by_point"].values()) and r["max"] == 1 and node["max"] == 2 \
        and node["by_point"][(0, 0)] == 2
    return ok, f"Q[x,y] sample max {r['max']} over {len(pts)} points; node sample max {node['max']}"


def c9():
    cases = gb_corpus(A3, 50, seed=99)
    rng = random.Random(7)
    unsound = nonunique = 0
    for gens in cases:
        G = buchberger(gens)
        polys = G.raw.polys
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                s = s_polynomial(polys[i], polys[j], G.raw.order)
                if s is not None and raw_normal_form(s, G.raw):
                    unsound += 1
        perm = gens[:]
        rng.shuffle(perm)
        if sorted(map(str, buchberger(perm[::-1]).elements)) != sorted(map(str, G.elements)):
            nonunique += 1
    return unsound == nonunique == 0, f"50 cases: {unsound} S-pairs not reducing to 0, {nonunique} permutation mismatches"


def _strip(doc):
    if isinstance(doc, dict):
        return {k: _strip(v) for k, v in doc.items() if k != "wall_time"}
    if isinstance(doc, list):
        return [_strip(v) for v in doc]
    return doc


def c10():
    cmd = [sys.executable, "-m", "transversal", "selftest", "--json"]
    outs = [subprocess.run(cmd, capture_output=True, text=True, check=True).stdout for _ in range(2)]
    docs = [_strip(json.loads(o)) for o in outs]
    same = json.dumps(docs[0], sort_keys=True, indent=2) == json.dumps(docs[1], sort_keys=True, indent=2)
    passed = all(r["passed"] for r in docs[0]["selftest"])
    return same and passed, f"two selftest runs identical modulo timing: {same}; all fixtures pass: {passed}"


CRITERIA = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10]


@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n - 1]()
    assert report(n, ok, detail, capsys), detail


if __name__ == "__main__":
    results = [report(n, *CRITERIA[n - 1]()) for n in range(1, 11)]
    sys.exit(0 if all(results) else 1)
