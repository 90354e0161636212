"""Rees algebras, multi-Rees algebras, associated graded objects and relation type.

Defining ideals are computed by elimination: the Rees algebra of
``I = (f_1..f_r)`` is the image of ``k[x, T] -> A[s]``, ``T_i -> f_i*s``, so
its defining ideal is ``((T_i - f_i*s) + Q) ∩ k[x, T]``.

Relation type is read from a Groebner basis in an order that compares the
T-degree first.  The defining ideal is T-homogeneous, so its reduced basis
consists of T-homogeneous elements, and an element of T-degree ``d`` is
reduced only by basis elements of T-degree ``<= d``.  A greedy pass over the
basis sorted by (T-degree, internal degree) then keeps an irredundant
generating set whose largest T-degree is the relation type.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .groebner import ModuleOrder, GroebnerBasis, raw_buchberger, raw_normal_form, quotient_rows, FreeModuleElem
from .idealops import (
    Ambient,
    GradedDims,
    HomogeneityError,
    IdealHandle,
    ModulePresentation,
    subquotient_dims,
)
from .polycore import DEGREVLEX, Polynomial, RingDescriptor, _drl


# --------------------------------------------------------------------------
# orders used for elimination
# --------------------------------------------------------------------------

class _EliminationOrder:
    """Monomial order: eliminated-variable degree, then T-degree, then degrevlex."""

    kind = "elim_tdeg"

    def __init__(self, elim_idx, t_block):
        self.elim_idx = tuple(elim_idx)
        self.t_block = t_block

    def key(self, e):
        a, b = self.t_block
        return (sum(e[i] for i in self.elim_idx), sum(e[a:b])) + _drl(e)

    def __str__(self):
        return f"elim{self.elim_idx}/tdeg{self.t_block}"


class _TDegOrder:
    kind = "tdeg_first_local"

    def __init__(self, t_block):
        self.t_block = t_block

    def key(self, e):
        a, b = self.t_block
        return (sum(e[a:b]),) + _drl(e)

    def __str__(self):
        return f"tdeg{self.t_block}"


def _fresh_names(prefix, count, taken):
    taken = set(taken)
    names = [f"{prefix}{i + 1}" for i in range(count)]
    while any(n in taken for n in names):
        prefix = prefix + "_"
        names = [f"{prefix}{i + 1}" for i in range(count)]
    return names


def _fresh_name(base, taken):
    name = base
    while name in taken:
        name += "_"
    return name


def _pad(m, before=0, after=0):
    return (0,) * before + tuple(m) + (0,) * after


# --------------------------------------------------------------------------
# types
# --------------------------------------------------------------------------

@dataclass
class BigradedIdealHandle:
    """Defining ideal of a Rees-type algebra inside ``k[x, T]``.

    ``weights`` maps every variable of the extended ring to
    ``(internal degree, T-degree)`` (or ``(internal, u-degree, v-degree)``
    for the two-block case).  ``groebner_rows`` holds a reduced Groebner
    basis (raw vectors) in the T-degree-first order.
    """

    base_ring: RingDescriptor
    ring: RingDescriptor
    t_variables: tuple
    weights: dict
    defining_ideal: IdealHandle
    groebner_rows: list = field(default_factory=list, repr=False)

    @property
    def t_block(self):
        n = self.base_ring.nvars
        return (n, n + len(self.t_variables))

    def tdegree(self, m):
        a, b = self.t_block
        return sum(m[a:b])

    def internal_weights(self):
        return tuple(self.weights[v][0] for v in self.ring.variables)

    def is_zero(self):
        """True when the ideal has no element of positive T-degree."""
        return all(self.tdegree(m) == 0 for g in self.defining_ideal.generators for m in g.terms)

    def positive_part(self):
        """Generators of positive T-degree."""
        return [g for g in self.defining_ideal.generators if any(self.tdegree(m) for m in g.terms)]

    def __str__(self):
        return str(self.defining_ideal)


@dataclass
class RelationTypeResult:
    rt: int
    minimal_generator_tdegrees: tuple
    effective_dims: GradedDims
    bound: int | None = None

    @property
    def minimalGeneratorTDegrees(self):
        return self.minimal_generator_tdegrees

    @property
    def effectiveDims(self):
        return self.effective_dims


# --------------------------------------------------------------------------
# Rees ideals
# --------------------------------------------------------------------------

def _generator_weights(I: IdealHandle):
    degs = [g.degree() for g in I.generators]
    low = min(degs) if degs else 0
    return degs, low


def _extended_ring(base: RingDescriptor, tnames):
    return RingDescriptor(base.variables + tuple(tnames))


def rees_ideal(I: IdealHandle, cancel=None) -> BigradedIdealHandle:
    """Defining ideal of the Rees algebra of ``I`` in ``k[x, T_1..T_r]``."""
    base = I.ring
    n = base.nvars
    gens = list(I.generators)
    r = len(gens)
    tnames = _fresh_names("T", r, base.variables)
    ext = _extended_ring(base, tnames)
    degs, _ = _generator_weights(I)
    weights = {v: (1, 0) for v in base.variables}
    for name, d in zip(tnames, degs):
        weights[name] = (d, 1)
    # elimination ring: x, T, s
    N = n + r + 1
    s_idx = n + r
    rows = []
    for i, f in enumerate(gens):
        row = {(0, _pad((), n) + tuple(1 if j == i else 0 for j in range(r)) + (0,)): Fraction(1)}
        for m, c in f.terms.items():
            row[(0, tuple(m) + (0,) * r + (1,))] = -c
        rows.append(row)
    for q in base.quotient_relations:
        rows.append({(0, tuple(m) + (0,) * (r + 1)): c for m, c in q.terms.items()})
    order = ModuleOrder(_EliminationOrder([s_idx], (n, n + r)))
    out_rows = []
    if rows:
        gb = raw_buchberger(rows, order, N, cancel=cancel)
        for v, lt in zip(gb.polys, gb.lts):
            if lt[1][s_idx] == 0:
                out_rows.append({(0, e[:s_idx]): c for (_, e), c in v.items()})
    polys = [Polynomial(ext, {e: c for (_, e), c in v.items()}) for v in out_rows]
    return BigradedIdealHandle(base, ext, tuple(tnames), weights, IdealHandle(ext, polys), out_rows)


def multi_rees_ideal(I: IdealHandle, J: IdealHandle, cancel=None) -> BigradedIdealHandle:
    """Defining ideal of ``A[I*u, J*v]`` in ``k[x, U, V]``, bigraded by (u, v)-degree."""
    if I.ring != J.ring:
        raise ValueError("ideals over different rings")
    base = I.ring
    n = base.nvars
    f, g = list(I.generators), list(J.generators)
    r, s = len(f), len(g)
    unames = _fresh_names("U", r, base.variables)
    vnames = _fresh_names("V", s, base.variables + tuple(unames))
    ext = _extended_ring(base, unames + vnames)
    weights = {v: (1, 0, 0) for v in base.variables}
    for name, p in zip(unames, f):
        weights[name] = (p.degree(), 1, 0)
    for name, p in zip(vnames, g):
        weights[name] = (p.degree(), 0, 1)
    N = n + r + s + 2
    a_idx, b_idx = n + r + s, n + r + s + 1
    rows = []
    for i, p in enumerate(f):
        e = [0] * N
        e[n + i] = 1
        row = {(0, tuple(e)): Fraction(1)}
        for m, c in p.terms.items():
            row[(0, tuple(m) + (0,) * (r + s) + (1, 0))] = -c
        rows.append(row)
    for j, p in enumerate(g):
        e = [0] * N
        e[n + r + j] = 1
        row = {(0, tuple(e)): Fraction(1)}
        for m, c in p.terms.items():
            row[(0, tuple(m) + (0,) * (r + s) + (0, 1))] = -c
        rows.append(row)
    for q in base.quotient_relations:
        rows.append({(0, tuple(m) + (0,) * (r + s + 2)): c for m, c in q.terms.items()})
    order = ModuleOrder(_EliminationOrder([a_idx, b_idx], (n, n + r + s)))
    out_rows = []
    if rows:
        gb = raw_buchberger(rows, order, N, cancel=cancel)
        for v, lt in zip(gb.polys, gb.lts):
            if lt[1][a_idx] == 0 and lt[1][b_idx] == 0:
                out_rows.append({(0, e[:a_idx]): c for (_, e), c in v.items()})
    polys = [Polynomial(ext, {e: c for (_, e), c in v.items()}) for v in out_rows]
    return BigradedIdealHandle(base, ext, tuple(unames + vnames), weights, IdealHandle(ext, polys), out_rows)


@dataclass
class ReesModule:
    """Presentation of the Rees module ``⊕ I^n M t^n`` over ``k[x, T]``.

    ``presentation`` is a cokernel of ``k[x,T]^g`` (one basis vector per
    generator of ``M``); ``groebner_rows`` is a reduced basis of its
    relation module in the T-degree-first order.
    """

    base_ring: RingDescriptor
    ring: RingDescriptor
    t_variables: tuple
    generator_degrees: tuple
    t_weights: tuple
    presentation: ModulePresentation
    groebner_rows: list = field(default_factory=list, repr=False)

    @property
    def t_block(self):
        n = self.base_ring.nvars
        return (n, n + len(self.t_variables))


def rees_module_ideal(I: IdealHandle, M: ModulePresentation, cancel=None) -> ReesModule:
    """Relation module of the Rees module of ``I`` with respect to ``M``.

    ``M = (U + W)/W`` inside ``A^r``.  In ``k[x,T,s]^(r+g)`` the vectors
    ``(m_j, e_j)``, ``(w, 0)`` and ``((T_i - f_i s) e_k, 0)`` are reduced
    under an order eliminating the first ``r`` positions and ``s``; what is
    left in the last ``g`` positions without ``s`` is the kernel of
    ``k[x,T]^g -> M[s]``.
    """
    if I.ring != M.ring:
        raise ValueError("ideal and module over different rings")
    base = I.ring
    n = base.nvars
    f = list(I.generators)
    k = len(f)
    tnames = _fresh_names("T", k, base.variables)
    ext = _extended_ring(base, tnames)
    amb = M.ambient()
    gens = amb.clean(M.gen_rows())
    rels = amb.clean(M.rel_rows())
    r, g = M.rank, len(gens)
    if g == 0:
        pres = ModulePresentation.cokernel(ext, 1, [FreeModuleElem(ext, [ext.one()])])
        return ReesModule(base, ext, tuple(tnames), (0,), tuple(p.degree() for p in f), pres, [])
    N = n + k + 1
    s_idx = n + k
    zero_tail = (0,) * (k + 1)
    rows = []
    for j, m in enumerate(gens):
        row = {(p, tuple(e) + zero_tail): c for (p, e), c in m.items()}
        row[(r + j, (0,) * N)] = Fraction(1)
        rows.append(row)
    for w in rels + amb.qrows:
        rows.append({(p, tuple(e) + zero_tail): c for (p, e), c in w.items()})
    for i, p in enumerate(f):
        t = [0] * N
        t[n + i] = 1
        for pos in range(r):
            row = {(pos, tuple(t)): Fraction(1)}
            for m, c in p.terms.items():
                row[(pos, tuple(m) + (0,) * k + (1,))] = -c
            rows.append(row)
    for q in base.quotient_relations:
        for j in range(g):
            rows.append({(r + j, tuple(m) + zero_tail): c for m, c in q.terms.items()})
    order = ModuleOrder(_EliminationOrder([s_idx], (n, n + k)), "top", elim=r)
    gb = raw_buchberger(rows, order, N, cancel=cancel)
    out_rows = []
    for v, lt in zip(gb.polys, gb.lts):
        if lt[0] >= r and lt[1][s_idx] == 0:
            out_rows.append({(p - r, e[:s_idx]): c for (p, e), c in v.items()})
    gdeg = tuple(max(amb.degree(m), 0) for m in gens)
    pres = ModulePresentation.cokernel(ext, g, [FreeModuleElem.from_raw(ext, g, v) for v in out_rows], gdeg)
    return ReesModule(base, ext, tuple(tnames), gdeg, tuple(p.degree() for p in f), pres, out_rows)


# --------------------------------------------------------------------------
# relation type
# --------------------------------------------------------------------------

def _greedy_generators(rows, nvars, t_block, weights=None):
    """Irredundant generating subset of the module spanned by ``rows``.

    ``rows`` must be a reduced Groebner basis in the T-degree-first order.
    Returns the kept rows, sorted by (T-degree, internal degree).
    """
    order = ModuleOrder(_TDegOrder(t_block))
    a, b = t_block

    def tdeg(v):
        return max(sum(e[a:b]) for (_, e) in v)

    def ideg(v):
        if weights is None:
            return max(sum(e[:a]) + sum(e[b:]) for (_, e) in v)
        return max(sum(x * w for x, w in zip(e, weights)) for (_, e) in v)

    cand = sorted(rows, key=lambda v: (tdeg(v), ideg(v), sorted(v.items())))
    kept = []
    basis = None
    for v in cand:
        if basis is not None and not raw_normal_form(v, basis):
            continue
        kept.append(v)
        basis = raw_buchberger([v], order, nvars, start=basis.polys if basis else None)
    return kept, [tdeg(v) for v in kept]


def generation_tdegree(rows, nvars, t_block, cancel=None):
    """Least ``r >= 1`` such that the T-homogeneous module spanned by ``rows``
    is generated in T-degrees ``<= r``, with the T-degrees of an irredundant
    generating set of positive T-degree."""
    rows = [v for v in rows if v]
    if not rows:
        return 1, ()
    order = ModuleOrder(_TDegOrder(t_block))
    gb = raw_buchberger(rows, order, nvars, cancel=cancel)
    kept, degs = _greedy_generators(gb.polys, nvars, t_block)
    pos = tuple(sorted(d for d in degs if d > 0))
    return max((1,) + pos), pos


def _tdeg_rows(rows, nvars, t_block):
    """Reduced basis in the T-degree-first order (rows may come from another order)."""
    if not rows:
        return []
    return raw_buchberger(rows, ModuleOrder(_TDegOrder(t_block)), nvars).polys


def relation_type(I: IdealHandle, M: ModulePresentation | None = None, dmax=None) -> RelationTypeResult:
    """Relation type of ``I`` (with respect to ``M`` when given).

    With ``dmax`` set and homogeneous input, the effective-relation
    dimensions ``E_n`` for ``1 <= n <= rt + 1`` are filled in, keyed by
    ``(n, internal degree)``.
    """
    if M is None:
        R = rees_ideal(I)
        nvars = R.ring.nvars
        rows = R.groebner_rows
        tb = R.t_block
    else:
        R = rees_module_ideal(I, M)
        nvars = R.ring.nvars
        rows = R.groebner_rows
        tb = R.t_block
    rt, degs = generation_tdegree(rows, nvars, tb)
    edims = GradedDims({}, None)
    if dmax is not None:
        data = {}
        for n in range(1, rt + 2):
            dims = effective_relations_dims(I, M, n, dmax, _rees=R)
            for (d,), v in dims.items():
                data[(n, d)] = v
        edims = GradedDims(data, dmax)
    return RelationTypeResult(rt, degs, edims, None)


def _t_monomials(k, n):
    out = []
    for combo in combinations_with_replacement(range(k), n):
        e = [0] * k
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def effective_relations_dims(I: IdealHandle, M: ModulePresentation | None, n: int, dmax: int,
                             _rees=None) -> GradedDims:
    """Graded dimensions of ``E_n = Q_n / (T_1..T_r) Q_(n-1)``.

    ``Q_n`` is the T-degree ``n`` part of the defining ideal (module), an
    ``A``-submodule of the free module on the T-monomials of degree ``n``
    (times the generators of ``M``).  ``T_i`` carries internal degree
    ``deg f_i - min deg f``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    base = I.ring
    if not I.is_homogeneous():
        raise HomogeneityError("effective relations need a homogeneous ideal")
    if M is not None and not M.is_homogeneous():
        raise HomogeneityError("effective relations need a homogeneous module")
    R = _rees if _rees is not None else (rees_ideal(I) if M is None else rees_module_ideal(I, M))
    nb = base.nvars
    degs, low = _generator_weights(I)
    tw = [d - low for d in degs]
    k = len(degs)
    a, b = nb, nb + k
    if M is None:
        gdeg = (0,)
        rows = R.groebner_rows
    else:
        gdeg = R.generator_degrees
        rows = R.groebner_rows
    g = len(gdeg)
    monos = _t_monomials(k, n)
    index = {}
    shifts = []
    for alpha in monos:
        wa = sum(x * w for x, w in zip(alpha, tw))
        for j in range(g):
            index[(alpha, j)] = len(shifts)
            shifts.append(wa + gdeg[j])
    if not monos:
        return GradedDims({}, dmax)
    amb = Ambient(base, len(shifts), shifts)
    top, low_rows = [], []
    for v in rows:
        td = max(sum(e[a:b]) for (_, e) in v)
        if td > n:
            continue
        for beta in _t_monomials(k, n - td) if k else [()]:
            out = {}
            for (p, e), c in v.items():
                alpha = tuple(x + y for x, y in zip(e[a:b], beta))
                out[(index[(alpha, p)], tuple(e[:a]) + tuple(e[b:]))] = c
            (top if td == n else low_rows).append(out)
    top, low_rows = amb.clean(top), amb.clean(low_rows)
    return GradedDims.from_list(subquotient_dims(amb, top, low_rows, dmax))


# --------------------------------------------------------------------------
# associated graded objects
# --------------------------------------------------------------------------

def assoc_graded_presentation(I: IdealHandle, M: ModulePresentation | None = None):
    """Defining data of ``gr_I(A)`` (a :class:`BigradedIdealHandle`) or of
    ``gr_I(M)`` (a cokernel presentation over ``k[x, T]``)."""
    if M is None:
        R = rees_ideal(I)
        ext = R.ring
        extra = [Polynomial(ext, {_pad(m, after=len(R.t_variables)): c for m, c in f.terms.items()})
                 for f in I.generators]
        polys = list(R.defining_ideal.generators) + extra
        rows = [{(0, m): c for m, c in p.terms.items()} for p in polys]
        gb = _tdeg_rows(rows, ext.nvars, R.t_block)
        polys = [Polynomial(ext, {e: c for (_, e), c in v.items()}) for v in gb]
        return BigradedIdealHandle(R.base_ring, ext, R.t_variables, dict(R.weights), IdealHandle(ext, polys), gb)
    R = rees_module_ideal(I, M)
    ext = R.ring
    g = R.presentation.rank
    k = len(R.t_variables)
    rows = list(R.groebner_rows)
    for f in I.generators:
        for j in range(g):
            rows.append({(j, _pad(m, after=k)): c for m, c in f.terms.items()})
    gb = _tdeg_rows(rows, ext.nvars, R.t_block)
    pres = ModulePresentation.cokernel(ext, g, [FreeModuleElem.from_raw(ext, g, v) for v in gb],
                                       R.generator_degrees)
    return ReesModule(R.base_ring, ext, R.t_variables, R.generator_degrees, R.t_weights, pres, gb)


def graded_hilbert_dims(B: BigradedIdealHandle, maxDegree: int) -> GradedDims:
    """dims of ``k[x,T]/B`` graded by internal degree (``T_i`` has weight ``deg f_i``)."""
    w = B.internal_weights()
    if any(x <= 0 for x in w):
        raise HomogeneityError("internal weights must be positive")
    amb = Ambient(B.ring, 1, weights=w)
    for v in B.groebner_rows:
        if not amb.is_homogeneous(v):
            raise HomogeneityError("defining ideal is not homogeneous for the internal grading")
    return GradedDims.from_list(amb.quotient_dims(B.groebner_rows, maxDegree))


def gr_generation_tdegree(I: IdealHandle, M: ModulePresentation | None = None):
    """Generation T-degree of the defining data of ``gr_I`` (equals the relation type)."""
    G = assoc_graded_presentation(I, M)
    return generation_tdegree(G.groebner_rows, G.ring.nvars, G.t_block)[0]


__all__ = [
    "BigradedIdealHandle", "ReesModule", "RelationTypeResult", "assoc_graded_presentation",
    "effective_relations_dims", "generation_tdegree", "gr_generation_tdegree", "graded_hilbert_dims",
    "multi_rees_ideal", "rees_ideal", "rees_module_ideal", "relation_type",
]
