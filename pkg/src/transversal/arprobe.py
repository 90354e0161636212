"""Uniform Artin-Rees numbers and relation types at sampled maximal ideals.

Results hold on the probed range only: ``s`` is reported as valid for
``s <= n <= nmax``, never beyond.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .idealops import Ambient, IdealHandle, ModulePresentation, RepresentationError
from .polycore import RingDescriptor, RingError


class ContainmentError(ValueError):
    pass


@dataclass
class NotFound:
    nmax: int

    def __str__(self):
        return f"NOT_FOUND_UP_TO({self.nmax})"


@dataclass
class ArResult:
    s: object  # int or NotFound
    verified_range: tuple | None
    table: dict = field(default_factory=dict)
    weak_containment: dict = field(default_factory=dict)

    @property
    def found(self):
        return isinstance(self.s, int)

    @property
    def verifiedRange(self):
        return self.verified_range

    def to_json(self):
        return {
            "s": self.s if self.found else str(self.s),
            "verified_range": list(self.verified_range) if self.verified_range else None,
            "table": self.table,
            "weak_containment": self.weak_containment,
            "note": "uniform up to nmax" if self.found else "no valid s up to nmax",
        }


def _fingerprint(amb: Ambient, rows):
    """Hash of the reduced Groebner basis of ``rows`` (modulo the ring)."""
    gb = amb.gb(rows)
    text = ";".join(sorted(repr(sorted(v.items())) for v in gb.polys))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _power_rows(amb: Ambient, m: IdealHandle, rows, n):
    cur = amb.clean(rows)
    for _ in range(n):
        cur = amb.clean(amb.times_ideal(m.generators, cur))
        cur = _prune(amb, cur)
    return cur


def _prune(amb: Ambient, rows):
    """Drop rows already generated by the others (cheap size control)."""
    if len(rows) <= 1:
        return rows
    gb = amb.gb(rows)
    # keep Groebner basis rows when they are fewer than the raw generators
    return list(gb.polys) if len(gb.polys) < len(rows) else rows


def strong_uniform_number(m: IdealHandle, M: ModulePresentation, N: ModulePresentation, nmax: int) -> ArResult:
    """Least ``s >= 1`` with ``m^n M ∩ N = m^(n-s) (m^s M ∩ N)`` for all ``s <= n <= nmax``."""
    if M.ring != N.ring or M.ring != m.ring:
        raise RingError("inputs over different rings")
    if M.rank != N.rank:
        raise ContainmentError("M and N live in free modules of different rank")
    if M.relations or N.relations:
        raise RepresentationError("M and N must be submodules of a common free module")
    amb = M.ambient()
    Mrows, Nrows = amb.clean(M.gen_rows()), amb.clean(N.gen_rows())
    if not amb.contains(Mrows, Nrows):
        raise ContainmentError("N is not contained in M")
    powers = {n: _power_rows(amb, m, Mrows, n) for n in range(0, nmax + 1)}
    inter = {n: amb.intersection(powers[n], Nrows) for n in range(0, nmax + 1)}
    fp = {n: _fingerprint(amb, inter[n]) for n in range(nmax + 1)}

    def valid(s):
        rows = {}
        for n in range(s, nmax + 1):
            rhs = _power_rows(amb, m, inter[s], n - s)
            rows[n] = rhs
            if not amb.equal(inter[n], rhs):
                return False, rows
        return True, rows

    for s in range(1, nmax + 1):
        ok, rhs = valid(s)
        if ok:
            table = {str(n): {"lhs": fp[n], "rhs": _fingerprint(amb, rhs[n])} for n in range(s, nmax + 1)}
            weak = {}
            for n in range(s, nmax + 1):
                weak[str(n)] = amb.contains(_power_rows(amb, m, Nrows, n - s), inter[n])
            return ArResult(s, (s, nmax), table, weak)
    return ArResult(NotFound(nmax), None, {str(n): {"lhs": fp[n]} for n in range(nmax + 1)})


def maximal_ideal(A: RingDescriptor, point) -> IdealHandle:
    """``(x_1 - a_1, ..., x_k - a_k)`` for a rational point lying on ``A``."""
    point = [Fraction(a) for a in point]
    if len(point) != A.nvars:
        raise ValueError(f"point needs {A.nvars} coordinates")
    for q in A.quotient_relations:
        val = sum(c * _eval_mono(mono, point) for mono, c in q.terms.items())
        if val != 0:
            raise ValueError(f"point {tuple(map(str, point))} does not satisfy {q}")
    gens = []
    for i, a in enumerate(point):
        gens.append(A.var(A.variables[i]) - A.const(a))
    return IdealHandle(A, gens)


def _eval_mono(mono, point):
    out = Fraction(1)
    for e, a in zip(mono, point):
        out *= a ** e
    return out


def _rt_at(args):
    from .reeslab import relation_type

    A, M, point = args
    return relation_type(maximal_ideal(A, point), M).rt


def sample_maximal_rt(A: RingDescriptor, M: ModulePresentation | None, points, jobs=None) -> dict:
    """Relation type of each sampled maximal ideal (with respect to ``M``).

    Returns ``{"by_point": {point: rt}, "max": ...}``.
    """
    pts = [tuple(Fraction(a) for a in p) for p in points]
    if M is not None and M.ring != A:
        raise RingError("module over a different ring")
    args = [(A, M, p) for p in pts]
    if jobs and jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rts = list(ex.map(_rt_at, args))
    else:
        rts = [_rt_at(a) for a in args]
    by_point = {p: r for p, r in zip(pts, rts)}
    return {"by_point": by_point, "max": max(rts) if rts else None}


__all__ = ["ArResult", "ContainmentError", "NotFound", "maximal_ideal", "sample_maximal_rt",
           "strong_uniform_number"]
