"""Ideals, submodules of free modules and their algebra.

Everything over a quotient ring ``A = P/Q`` is lifted to the ambient
polynomial ring ``P``: an ideal ``I`` of ``A`` is handled as ``I + Q`` and a
submodule ``U`` of ``A^r`` as ``U + Q*P^r``.  Graded dimensions are read off
leading terms of Groebner bases.
"""

from __future__ import annotations

import threading
import warnings
from fractions import Fraction
from math import comb

from .groebner import (
    FreeModuleElem,
    GroebnerBasis,
    ModuleOrder,
    RawBasis,
    _to_raw,
    quotient_rows,
    raw_buchberger,
    raw_intersection,
    raw_normal_form,
    raw_preimage,
    vec_degree,
    vec_is_homogeneous,
    vec_mul_poly,
)
from .polycore import DEGREVLEX, DimensionError, Polynomial, RingDescriptor, RingError, TermOrder


class HomogeneityError(ValueError):
    pass


class RepresentationError(ValueError):
    pass


# --------------------------------------------------------------------------
# graded dimensions
# --------------------------------------------------------------------------

class GradedDims:
    """Finitely supported map from degree tuples to dimensions.

    Keys are tuples of one to three integers; a missing key means 0.
    ``bound`` records the largest (first) degree that was computed.
    """

    def __init__(self, data=None, bound=None):
        self._d = {}
        for k, v in (data or {}).items():
            if not isinstance(k, tuple):
                k = (k,)
            if v < 0:
                raise ValueError("negative dimension")
            if v:
                self._d[k] = int(v)
        self.bound = bound

    @classmethod
    def from_list(cls, values, bound=None):
        return cls({(i,): v for i, v in enumerate(values)},
                   len(values) - 1 if bound is None else bound)

    def __getitem__(self, k):
        if not isinstance(k, tuple):
            k = (k,)
        return self._d.get(k, 0)

    def items(self):
        return sorted(self._d.items())

    def keys(self):
        return sorted(self._d)

    def as_list(self, upto=None):
        upto = self.bound if upto is None else upto
        return [self[(i,)] for i in range(upto + 1)]

    def total(self):
        return sum(self._d.values())

    def is_zero(self):
        return not self._d

    def first_nonzero(self):
        return min(self._d) if self._d else None

    def __eq__(self, other):
        if isinstance(other, GradedDims):
            return self._d == other._d
        return NotImplemented

    def __add__(self, other):
        d = dict(self._d)
        for k, v in other._d.items():
            d[k] = d.get(k, 0) + v
        return GradedDims(d, self.bound)

    def to_json(self):
        return {",".join(map(str, k)): v for k, v in self.items()}

    def __repr__(self):
        return f"GradedDims({dict(self.items())})"


# --------------------------------------------------------------------------
# Hilbert series of monomial ideals
# --------------------------------------------------------------------------

def _minimal_monomials(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _numerator(gens, weights, D):
    """Numerator of the Hilbert series of ``k[x]/(gens)`` modulo ``t^(D+1)``.

    Pivot recursion: N(L) = N(L + (p)) + t^deg(p) N(L : p) for a pure
    power ``p`` of a variable that occurs in a mixed generator.
    """

    def wdeg(m):
        return sum(a * w for a, w in zip(m, weights))

    def rec(L):
        L = _minimal_monomials([g for g in L if wdeg(g) <= D])
        out = [0] * (D + 1)
        mixed = [g for g in L if sum(1 for a in g if a) > 1]
        if not mixed:
            out[0] = 1
            for g in L:
                d = wdeg(g)
                for i in range(D, d - 1, -1):
                    out[i] -= out[i - d]
            return out
        counts = [0] * len(weights)
        for g in mixed:
            for i, a in enumerate(g):
                if a:
                    counts[i] += 1
        var = max(range(len(counts)), key=lambda i: (counts[i], -i))
        exps = sorted(g[var] for g in mixed if g[var])
        e = exps[(len(exps) - 1) // 2]
        p = tuple(e if i == var else 0 for i in range(len(weights)))
        a = rec(L + [p])
        colon = [tuple(max(x - y, 0) for x, y in zip(g, p)) for g in L]
        b = rec(colon)
        d = wdeg(p)
        for i in range(D + 1):
            out[i] = a[i] + (b[i - d] if i >= d else 0)
        return out

    return rec(list(gens))


def _series_denominator(weights, D):
    """Coefficients of prod 1/(1 - t^w) up to t^D."""
    s = [1] + [0] * D
    for w in weights:
        if w <= 0:
            raise ValueError("variable weights must be positive")
        for i in range(w, D + 1):
            s[i] += s[i - w]
    return s


def monomial_quotient_dims(lead_by_pos, nvars, shifts, D, weights=None):
    """dim_k of each degree 0..D of ``P^r / (monomial submodule)``.

    ``lead_by_pos[i]`` lists the leading monomials at position ``i``.
    """
    weights = tuple(weights) if weights else (1,) * nvars
    den = _series_denominator(weights, D)
    dims = [0] * (D + 1)
    for pos, sh in enumerate(shifts):
        if sh > D:
            continue
        if sh < 0:
            raise ValueError("negative degree shifts are not supported")
        num = _numerator(lead_by_pos.get(pos, []), weights, D - sh)
        for i, c in enumerate(num):
            if c:
                for j in range(D - sh - i + 1):
                    dims[sh + i + j] += c * den[j]
    return dims


# --------------------------------------------------------------------------
# ambient free modules (raw layer)
# --------------------------------------------------------------------------

_GB_MEMO = {}
_GB_MEMO_LOCK = threading.Lock()
_GB_MEMO_MAX = 4096


def _row_key(v):
    return tuple(sorted(v.items()))


class Ambient:
    """The free module ``A^rank`` with degree shifts, as seen from ``P``.

    ``weights`` grades the variables (default: all 1).
    """

    def __init__(self, ring: RingDescriptor, rank, shifts=None, weights=None):
        self.ring = ring
        self.rank = rank
        self.shifts = tuple(shifts) if shifts else (0,) * rank
        if len(self.shifts) != rank:
            raise DimensionError("one shift per ambient position is required")
        self.weights = tuple(weights) if weights else None
        self.nvars = ring.nvars
        self.qrows = quotient_rows(ring, rank)
        self.order = ModuleOrder(DEGREVLEX, "top", self.shifts)

    def key(self):
        return (self.ring.canonical(), self.rank, self.shifts, self.weights)

    # -- rows --------------------------------------------------------------
    def degree(self, v):
        return vec_degree(v, self.shifts, self.weights)

    def is_homogeneous(self, v):
        return vec_is_homogeneous(v, self.shifts, self.weights)

    def reduce(self, v):
        """Normal form of a row modulo the quotient relations."""
        if not self.ring.is_quotient():
            return v
        rb = self.ring.relation_basis()
        out = {}
        by_pos = {}
        for (p, e), c in v.items():
            by_pos.setdefault(p, {})[(0, e)] = c
        for p, f in by_pos.items():
            for (_, e), c in raw_normal_form(f, rb).items():
                out[(p, e)] = c
        return out

    def clean(self, rows):
        """Reduce modulo the ring, drop zeros and duplicates; canonical order."""
        seen = {}
        for v in rows:
            v = self.reduce(v)
            if v:
                seen.setdefault(_row_key(v), v)
        return [seen[k] for k in sorted(seen, key=lambda k: (self.degree(dict(k)), k))]

    def times_ideal(self, polys, rows):
        out = []
        for f in polys:
            ft = f.terms if isinstance(f, Polynomial) else f
            for v in rows:
                out.append(vec_mul_poly(v, ft))
        return self.clean(out)

    # -- Groebner bases ------------------------------------------------------
    def gb(self, rows, dmax=None, cancel=None) -> RawBasis:
        rows = [v for v in rows if v]
        mkey = (self.key(), frozenset(_row_key(v) for v in rows), dmax)
        with _GB_MEMO_LOCK:
            hit = _GB_MEMO.get(mkey)
        if hit is not None:
            return hit
        gb = raw_buchberger(list(rows) + self.qrows, self.order, self.nvars,
                            degree_bound=dmax, weights=self.weights, cancel=cancel)
        with _GB_MEMO_LOCK:
            if len(_GB_MEMO) > _GB_MEMO_MAX:
                _GB_MEMO.clear()
            _GB_MEMO[mkey] = gb
        return gb

    def quotient_dims(self, rows, dmax, cancel=None):
        """dim_k of degrees 0..dmax of ``A^rank / <rows>``."""
        for v in rows:
            if v and not self.is_homogeneous(v):
                raise HomogeneityError("graded dimensions need homogeneous input")
        gb = self.gb(rows, dmax, cancel)
        lead = {}
        for p, m in gb.lts:
            lead.setdefault(p, []).append(m)
        return monomial_quotient_dims(lead, self.nvars, self.shifts, dmax, self.weights)

    def contains(self, big, small, dmax=None):
        gb = self.gb(big, dmax)
        return all(not raw_normal_form(v, gb) for v in small
                   if dmax is None or self.degree(v) <= dmax)

    def equal(self, a, b, dmax=None):
        return self.contains(a, b, dmax) and self.contains(b, a, dmax)

    def minimalize(self, rows, mod=(), dmax=None):
        """A minimal subset of homogeneous ``rows`` generating ``<rows> + <mod>`` modulo ``<mod>``.

        Rows are scanned by increasing degree; a row is kept when it is not
        already in the span of the kept rows and ``mod``.
        """
        rows = self.clean(rows)
        if dmax is not None:
            rows = [v for v in rows if self.degree(v) <= dmax]
        if not rows:
            return []
        top = max(self.degree(v) for v in rows)
        bound = top if dmax is None else min(top, dmax)
        basis = self.gb(list(mod), bound)
        kept = []
        for v in rows:
            nf = raw_normal_form(v, basis)
            if nf:
                kept.append(v)
                basis = raw_buchberger([nf], self.order, self.nvars, degree_bound=bound,
                                       weights=self.weights, start=basis.polys)
        return kept

    def intersection(self, us, vs, dmax=None, cancel=None):
        qs = self.qrows
        out = raw_intersection(list(us) + qs, list(vs) + qs, self.rank, self.nvars,
                               self.shifts, degree_bound=dmax, cancel=cancel)
        return self.clean(out)

    def preimage(self, us, ws, dmax=None, cancel=None):
        """Rows ``c`` of ``A^len(us)`` with ``sum c_i u_i`` in ``<ws>``, plus the tag shifts."""
        rows, tag_shifts = raw_preimage(list(us), list(ws) + self.qrows, self.rank, self.nvars,
                                        self.shifts, degree_bound=dmax, cancel=cancel)
        return rows, tag_shifts


# --------------------------------------------------------------------------
# ideals
# --------------------------------------------------------------------------

class IdealHandle:
    """An ideal of ``ring`` given by generators, with a per-order GB cache.

    Generators are reduced modulo the ring relations; zero generators are
    dropped.  The cache is filled at most once per order (guarded by a lock).
    """

    def __init__(self, ring: RingDescriptor, generators=()):
        self.ring = ring
        gens = []
        seen = set()
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring(g)
            elif g.ring.variables != ring.variables:
                raise RingError("generator from a different ring")
            else:
                g = Polynomial(ring, g.terms)
            if ring.is_quotient():
                from .polycore import reduce_mod_ring
                g = reduce_mod_ring(g)
            if g and g not in seen:
                seen.add(g)
                gens.append(g)
        self.generators = tuple(gens)
        self._gb_cache = {}
        self._lock = threading.Lock()

    def groebner(self, order: TermOrder = None) -> GroebnerBasis:
        order = order or self.ring.default_order
        with self._lock:
            gb = self._gb_cache.get(order)
            if gb is None:
                morder = ModuleOrder(order)
                raw = [{(0, m): c for m, c in g.terms.items()} for g in self.generators]
                rb = raw_buchberger(raw + quotient_rows(self.ring), morder, self.ring.nvars)
                gb = GroebnerBasis(self.ring, morder, rb)
                self._gb_cache[order] = gb
        return gb

    def rows(self):
        return [{(0, m): c for m, c in g.terms.items()} for g in self.generators]

    def is_zero(self):
        return not self.generators

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.generators) and \
            all(q.is_homogeneous() for q in self.ring.quotient_relations)

    def degrees(self):
        return [g.degree() for g in self.generators]

    def minimal_generators(self):
        """A minimal generating set (homogeneous ideals only)."""
        if not self.is_homogeneous():
            raise HomogeneityError("minimal generators need a homogeneous ideal")
        amb = Ambient(self.ring, 1)
        rows = amb.minimalize(self.rows())
        return IdealHandle(self.ring, [_row_poly(self.ring, v) for v in rows])

    def as_module(self) -> "ModulePresentation":
        return ModulePresentation.submodule(self.ring, 1, [FreeModuleElem(self.ring, [g]) for g in self.generators])

    def __add__(self, other):
        _same_ring(self, other)
        return IdealHandle(self.ring, self.generators + other.generators)

    def __mul__(self, other):
        _same_ring(self, other)
        return IdealHandle(self.ring, [f * g for f in self.generators for g in other.generators])

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"IdealHandle{self}"


def _same_ring(a, b):
    if a.ring != b.ring:
        raise RingError("operands live in different rings")


def _row_poly(ring, v):
    return Polynomial(ring, {m: c for (_, m), c in v.items()})


def ideal(ring, *gens) -> IdealHandle:
    if len(gens) == 1 and isinstance(gens[0], (list, tuple)):
        gens = gens[0]
    return IdealHandle(ring, gens)


def unit_ideal(ring):
    return IdealHandle(ring, [ring.one()])


def ideal_power(I: IdealHandle, p: int) -> IdealHandle:
    """``I^p`` generated by all ``p``-fold products of the generators."""
    if p < 0:
        raise ValueError("power must be nonnegative")
    if p == 0:
        warnings.warn("I^0 is the unit ideal", stacklevel=2)
        return unit_ideal(I.ring)
    gens = [I.ring.one()]
    for _ in range(p):
        nxt = {}
        for a in gens:
            for g in I.generators:
                h = a * g
                nxt.setdefault(h, None)
        gens = list(nxt)
    return IdealHandle(I.ring, gens)


def ideal_sum(I, J):
    return I + J


def ideal_product(I, J):
    return I * J


def ideal_intersection(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    """``I ∩ J`` by eliminating ``t`` from ``t*I + (1-t)*J`` (quotient relations appended)."""
    _same_ring(I, J)
    ring = I.ring
    n = ring.nvars
    # the auxiliary variable is placed first and eliminated by a block order
    order = ModuleOrder(TermOrder("block", k=1))
    rows = []
    for f in I.generators:
        rows.append({(0, (1,) + m): c for m, c in f.terms.items()})
    for g in J.generators:
        row = {(0, (0,) + m): c for m, c in g.terms.items()}
        for m, c in g.terms.items():
            t = (0, (1,) + m)
            row[t] = row.get(t, 0) - c
            if not row[t]:
                del row[t]
        rows.append(row)
    for q in ring.quotient_relations:
        rows.append({(0, (0,) + m): c for m, c in q.terms.items()})
    if not I.generators or not J.generators:
        return IdealHandle(ring, [])
    gb = raw_buchberger(rows, order, n + 1)
    out = []
    for v, lt in zip(gb.polys, gb.lts):
        if lt[1][0] == 0:
            out.append(Polynomial(ring, {m[1:]: c for (_, m), c in v.items()}))
    return IdealHandle(ring, out)


def ideal_colon(I: IdealHandle, f: Polynomial) -> IdealHandle:
    """``(I : f)`` via ``I ∩ (f)`` followed by exact division by ``f``."""
    if not isinstance(f, Polynomial):
        f = I.ring(f)
    from .polycore import reduce_mod_ring
    if not reduce_mod_ring(Polynomial(I.ring, f.terms)):
        raise ValueError("colon by the zero element")
    if I.ring.is_quotient():
        # over A = P/Q: (I : f) = ((I + Q) : f) in P, read back in A
        P = I.ring.ambient
        lifted = IdealHandle(P, [Polynomial(P, g.terms) for g in I.generators] +
                             list(I.ring.quotient_relations))
        res = ideal_colon(lifted, Polynomial(P, f.terms))
        return IdealHandle(I.ring, [Polynomial(I.ring, g.terms) for g in res.generators])
    inter = ideal_intersection(I, IdealHandle(I.ring, [f]))
    return IdealHandle(I.ring, [_exact_div(g, f) for g in inter.generators])


def _exact_div(g: Polynomial, f: Polynomial) -> Polynomial:
    key = DEGREVLEX.key
    lf = max(f.terms, key=key)
    cf = f.terms[lf]
    rem = dict(g.terms)
    q = {}
    while rem:
        lt = max(rem, key=key)
        if not all(a >= b for a, b in zip(lt, lf)):
            raise ValueError("division is not exact")
        m = tuple(a - b for a, b in zip(lt, lf))
        c = rem[lt] / cf
        q[m] = c
        for e, d in f.terms.items():
            t = tuple(a + b for a, b in zip(e, m))
            v = rem.get(t, 0) - c * d
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return Polynomial(g.ring, q)


def membership(f, I: IdealHandle) -> bool:
    if not isinstance(f, Polynomial):
        f = I.ring(f)
    gb = I.groebner(DEGREVLEX)
    return not raw_normal_form({(0, m): c for m, c in f.terms.items()}, gb.raw)


def ideal_equal(I: IdealHandle, J: IdealHandle) -> bool:
    _same_ring(I, J)
    a, b = I.groebner(DEGREVLEX).raw, J.groebner(DEGREVLEX).raw
    return sorted(map(_row_key, a.polys)) == sorted(map(_row_key, b.polys))


def ideal_contains(I: IdealHandle, J: IdealHandle) -> bool:
    """True when ``J ⊆ I``."""
    return all(membership(g, I) for g in J.generators)


# --------------------------------------------------------------------------
# modules
# --------------------------------------------------------------------------

class ModulePresentation:
    """The subquotient ``(<generators> + <relations>) / <relations>`` of ``A^rank``.

    ``submodule`` gives ``<generators>`` (no relations); ``cokernel`` gives
    ``A^rank / <relations>``.  ``shifts`` are the degrees of the basis
    vectors of ``A^rank``.
    """

    def __init__(self, ring: RingDescriptor, rank: int, generators=(), relations=(), shifts=None):
        if rank < 1:
            raise DimensionError("ambient rank must be positive")
        self.ring = ring
        self.rank = rank
        self.shifts = tuple(shifts) if shifts else (0,) * rank
        if len(self.shifts) != rank:
            raise DimensionError("one shift per ambient position is required")
        self.generators = tuple(self._elem(g) for g in generators)
        self.relations = tuple(self._elem(g) for g in relations)
        self._amb = None

    def _elem(self, g):
        if isinstance(g, dict):
            return FreeModuleElem.from_raw(self.ring, self.rank, g)
        if not isinstance(g, FreeModuleElem):
            g = FreeModuleElem(self.ring, list(g))
        if g.ambient_rank != self.rank:
            raise DimensionError(f"expected rank {self.rank}, got {g.ambient_rank}")
        if g.ring.variables != self.ring.variables:
            raise RingError("element from a different ring")
        return g

    @classmethod
    def submodule(cls, ring, rank, generators, shifts=None):
        return cls(ring, rank, generators, (), shifts)

    @classmethod
    def cokernel(cls, ring, rank, relations, shifts=None):
        units = []
        for i in range(rank):
            units.append([ring.one() if j == i else ring.zero() for j in range(rank)])
        return cls(ring, rank, units, relations, shifts)

    @classmethod
    def free(cls, ring, rank=1, shifts=None):
        return cls.cokernel(ring, rank, (), shifts)

    @classmethod
    def from_raw(cls, ring, rank, gens, rels=(), shifts=None):
        return cls(ring, rank, [FreeModuleElem.from_raw(ring, rank, v) for v in gens],
                   [FreeModuleElem.from_raw(ring, rank, v) for v in rels], shifts)

    # -- raw access ----------------------------------------------------------
    def ambient(self, weights=None) -> Ambient:
        if weights is not None:
            return Ambient(self.ring, self.rank, self.shifts, weights)
        if self._amb is None:
            self._amb = Ambient(self.ring, self.rank, self.shifts)
        return self._amb

    def gen_rows(self):
        return [g.to_raw() for g in self.generators]

    def rel_rows(self):
        return [g.to_raw() for g in self.relations]

    def is_submodule(self):
        return not self.relations

    def is_homogeneous(self):
        amb = self.ambient()
        return all(amb.is_homogeneous(v) for v in self.gen_rows() + self.rel_rows() if v) and \
            all(q.is_homogeneous() for q in self.ring.quotient_relations)

    def validate(self):
        """Check that the relations lie in the span of the generators."""
        amb = self.ambient()
        if not amb.contains(self.gen_rows(), self.rel_rows()):
            raise RepresentationError("relations are not contained in the span of the generators")
        return True

    def is_zero(self):
        """True when every generator lies in the span of the relations."""
        amb = self.ambient()
        return amb.contains(self.rel_rows(), self.gen_rows())

    def canonical(self):
        g = ", ".join(sorted(str(x) for x in self.generators))
        r = ", ".join(sorted(str(x) for x in self.relations))
        return f"{self.ring.canonical()}^{self.rank}{list(self.shifts)} <{g}> / <{r}>"

    def __str__(self):
        if not self.relations:
            return f"submodule(A^{self.rank}; " + ", ".join(map(str, self.generators)) + ")"
        return (f"subquotient(A^{self.rank}; " + ", ".join(map(str, self.generators)) +
                " / " + ", ".join(map(str, self.relations)) + ")")

    __repr__ = __str__


def _check_module_pair(U: ModulePresentation, V: ModulePresentation):
    if U.ring != V.ring:
        raise RingError("modules over different rings")
    if U.rank != V.rank:
        raise DimensionError("modules in free modules of different rank")


def module_intersection(U: ModulePresentation, V: ModulePresentation, dmax=None) -> ModulePresentation:
    """``U ∩ V`` inside ``A^r`` for two submodules."""
    _check_module_pair(U, V)
    if U.relations or V.relations:
        raise RepresentationError("intersection is only defined for submodules (no relations)")
    amb = U.ambient()
    rows = amb.intersection(U.gen_rows(), V.gen_rows(), dmax)
    return ModulePresentation.from_raw(U.ring, U.rank, rows, (), U.shifts)


def module_equal(U: ModulePresentation, V: ModulePresentation) -> bool:
    """Equality of the submodules ``<gens> + <rels>`` and of the relation modules."""
    _check_module_pair(U, V)
    amb = U.ambient()
    return amb.equal(U.gen_rows() + U.rel_rows(), V.gen_rows() + V.rel_rows()) and \
        amb.equal(U.rel_rows(), V.rel_rows())


def module_membership(v, U: ModulePresentation) -> bool:
    if isinstance(v, FreeModuleElem):
        v = v.to_raw()
    return U.ambient().contains(U.gen_rows() + U.rel_rows(), [v])


def module_contains(U: ModulePresentation, V: ModulePresentation) -> bool:
    """True when the submodule ``<V gens>`` lies in ``<U gens> + <U rels>``."""
    _check_module_pair(U, V)
    return U.ambient().contains(U.gen_rows() + U.rel_rows(), V.gen_rows())


def ideal_times_module(I: IdealHandle, M: ModulePresentation) -> ModulePresentation:
    """``I*M`` as a subquotient of the same ambient free module."""
    if I.ring != M.ring:
        raise RingError("ideal and module over different rings")
    amb = M.ambient()
    rows = amb.times_ideal(I.generators, M.gen_rows())
    return ModulePresentation.from_raw(M.ring, M.rank, rows, M.rel_rows(), M.shifts)


def presentation(M: ModulePresentation, dmax=None, minimal=True):
    """A presentation ``A^n / K`` of ``M``.

    Returns ``(gens, K, shifts)``: raw generator rows of ``M`` in its
    ambient, raw rows of ``K`` in ``A^n`` and the degrees of the ``n``
    generators.  For homogeneous ``M`` the generators are minimal (and
    truncated at ``dmax`` when given).
    """
    amb = M.ambient()
    rels = amb.clean(M.rel_rows())
    gens = M.gen_rows()
    if minimal and M.is_homogeneous():
        gens = amb.minimalize(gens, rels, dmax)
    else:
        gens = amb.clean(gens)
    if not gens:
        return [], [], ()
    K, shifts = amb.preimage(gens, rels, dmax)
    F0 = Ambient(M.ring, len(gens), shifts)
    if minimal and M.is_homogeneous():
        K = F0.minimalize(K, (), dmax)
    else:
        K = F0.clean(K)
    return gens, K, shifts


def presentation_module(M: ModulePresentation, dmax=None) -> ModulePresentation:
    """``M`` rewritten as a cokernel ``A^n / K``."""
    gens, K, shifts = presentation(M, dmax)
    if not gens:
        return ModulePresentation.cokernel(M.ring, 1, [FreeModuleElem(M.ring, [M.ring.one()])])
    return ModulePresentation.cokernel(M.ring, len(gens), [FreeModuleElem.from_raw(M.ring, len(gens), v) for v in K],
                                       shifts)


def subquotient_dims(amb: Ambient, top, bottom, dmax):
    """dims of ``(<top> + <bottom>) / <bottom>`` in degrees 0..dmax."""
    a = amb.quotient_dims(list(bottom), dmax)
    b = amb.quotient_dims(list(top) + list(bottom), dmax)
    return [x - y for x, y in zip(a, b)]


def hilbert_dims(X, maxDegree: int) -> GradedDims:
    """Graded dimensions of ``A/I`` (ideal) or of the module ``X`` in degrees 0..maxDegree."""
    if maxDegree < 0:
        raise ValueError("maxDegree must be nonnegative")
    if isinstance(X, IdealHandle):
        if not X.is_homogeneous():
            raise HomogeneityError("hilbert_dims needs homogeneous generators")
        amb = Ambient(X.ring, 1)
        return GradedDims.from_list(amb.quotient_dims(X.rows(), maxDegree))
    if isinstance(X, ModulePresentation):
        if not X.is_homogeneous():
            raise HomogeneityError("hilbert_dims needs homogeneous generators and relations")
        amb = X.ambient()
        return GradedDims.from_list(subquotient_dims(amb, X.gen_rows(), X.rel_rows(), maxDegree))
    if isinstance(X, RingDescriptor):
        return hilbert_dims(IdealHandle(X, []), maxDegree)
    raise TypeError(f"cannot take graded dimensions of {type(X).__name__}")


def free_dims(nvars, shifts, dmax):
    """dims of ``P^r`` with the given shifts (no relations)."""
    out = [0] * (dmax + 1)
    for s in shifts:
        for d in range(max(s, 0), dmax + 1):
            out[d] += comb(d - s + nvars - 1, nvars - 1)
    return out


def to_rows(elems):
    return [e.to_raw() if isinstance(e, FreeModuleElem) else e for e in elems]


__all__ = [
    "Ambient", "GradedDims", "HomogeneityError", "IdealHandle", "ModulePresentation",
    "RepresentationError", "hilbert_dims", "ideal", "ideal_colon", "ideal_contains", "ideal_equal",
    "ideal_intersection", "ideal_power", "ideal_product", "ideal_sum", "ideal_times_module",
    "membership", "module_contains", "module_equal", "module_intersection", "module_membership",
    "presentation", "presentation_module", "subquotient_dims", "unit_ideal",
]
