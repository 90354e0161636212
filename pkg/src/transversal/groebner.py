"""Normal forms, Buchberger's algorithm and syzygies.

The engine works on *raw vectors*: dicts mapping a term ``(pos, exponents)``
to a Fraction.  An ideal is a submodule of the rank-one free module, so
every term of a polynomial sits at position 0.  Public wrappers convert
between raw vectors and :class:`~transversal.polycore.Polynomial` /
:class:`FreeModuleElem`.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from operator import add, le, sub

from .polycore import DEGREVLEX, DimensionError, Polynomial, RingDescriptor, RingError, TermOrder


class Cancelled(RuntimeError):
    """Raised when a cooperative cancellation token fires mid-computation."""


# --------------------------------------------------------------------------
# module orders
# --------------------------------------------------------------------------

class ModuleOrder:
    """Extension of a :class:`TermOrder` to terms ``(pos, exponents)``.

    ``mode='top'`` compares terms first, positions second (position 0 is
    largest); ``mode='pot'`` does the opposite.  ``shifts`` adds a degree
    shift per position to the leading degree component of degree-based
    orders.  ``elim=k`` makes every term at a position ``< k`` larger than
    any term at a position ``>= k``; this is how tag components are
    eliminated.
    """

    def __init__(self, order: TermOrder = DEGREVLEX, mode="top", shifts=None, elim=0):
        if mode not in ("top", "pot"):
            raise ValueError(f"unknown module order mode {mode!r}")
        self.order = order
        self.mode = mode
        self.shifts = tuple(shifts) if shifts else ()
        self.elim = elim
        self._cache = {}
        self._shift_first = order.kind in ("degrevlex", "tdeg_first") and bool(self.shifts)

    def key(self, term):
        k = self._cache.get(term)
        if k is not None:
            return k
        pos, e = term
        mk = self.order.key(e)
        if self._shift_first and pos < len(self.shifts):
            if self.order.kind == "degrevlex":
                mk = (mk[0] + self.shifts[pos],) + mk[1:]
            else:
                mk = (mk[0], mk[1] + self.shifts[pos]) + mk[2:]
        if self.mode == "top":
            k = mk + (-pos,)
        else:
            k = (-pos,) + mk
        if self.elim:
            k = (1 if pos < self.elim else 0,) + k
        self._cache[term] = k
        return k

    def __repr__(self):
        return f"ModuleOrder({self.order}, {self.mode}, shifts={self.shifts}, elim={self.elim})"


# --------------------------------------------------------------------------
# raw vectors
# --------------------------------------------------------------------------

def vec_from_poly(f: Polynomial, pos=0):
    return {(pos, m): c for m, c in f.terms.items()}


def vec_scale_mono(v, mono, coeff=1, pos_shift=0):
    out = {}
    for (p, e), c in v.items():
        out[(p + pos_shift, tuple(map(add, e, mono)))] = c * coeff
    return out


def vec_mul_poly(v, f_terms):
    """Multiply a raw vector by a polynomial given as a terms dict."""
    out = {}
    for m, c in f_terms.items():
        for (p, e), d in v.items():
            t = (p, tuple(map(add, e, m)))
            val = out.get(t, 0) + c * d
            if val:
                out[t] = val
            else:
                out.pop(t, None)
    return out


def vec_add(a, b, cb=1):
    out = dict(a)
    for t, c in b.items():
        v = out.get(t, 0) + cb * c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def vec_degree(v, shifts=(), weights=None):
    """Maximal (weighted, shifted) degree of the terms of ``v``; -1 for zero."""
    best = -1
    for (p, e) in v:
        d = sum(e) if weights is None else sum(map(lambda a, w: a * w, e, weights))
        if p < len(shifts):
            d += shifts[p]
        if d > best:
            best = d
    return best


def vec_is_homogeneous(v, shifts=(), weights=None):
    degs = set()
    for (p, e) in v:
        d = sum(e) if weights is None else sum(map(lambda a, w: a * w, e, weights))
        degs.add(d + (shifts[p] if p < len(shifts) else 0))
    return len(degs) <= 1


def _monic(v, lt):
    c = v[lt]
    if c == 1:
        return v
    inv = 1 / c
    return {t: inv * d for t, d in v.items()}


# --------------------------------------------------------------------------
# reduction
# --------------------------------------------------------------------------

class RawBasis:
    """Monic raw vectors with their leading terms and a per-position index."""

    __slots__ = ("order", "polys", "lts", "_by_pos")

    def __init__(self, order: ModuleOrder, polys):
        key = order.key
        self.order = order
        self.polys = list(polys)
        self.lts = [max(p, key=key) for p in self.polys]
        self._by_pos = {}
        for lt, p in zip(self.lts, self.polys):
            self._by_pos.setdefault(lt[0], []).append((lt[1], p))

    def __len__(self):
        return len(self.polys)

    def find(self, term):
        for m, p in self._by_pos.get(term[0], ()):
            if all(map(le, m, term[1])):
                return m, p
        return None

    def lead_monomials(self, pos):
        return [m for m, _ in self._by_pos.get(pos, ())]

    def positions(self):
        return sorted(self._by_pos)


def _reduce(f, find, key, full=True):
    f = dict(f)
    rem = {}
    while f:
        t = max(f, key=key)
        c = f[t]
        hit = find(t)
        if hit is None:
            if not full:
                return f
            rem[t] = c
            del f[t]
            continue
        m, g = hit
        q = tuple(map(sub, t[1], m))
        for (gp, ge), gc in g.items():
            tt = (gp, tuple(map(add, ge, q)))
            v = f.get(tt, 0) - c * gc
            if v:
                f[tt] = v
            else:
                f.pop(tt, None)
    return rem


def raw_normal_form(f, basis: RawBasis):
    """Fully reduced remainder of ``f`` modulo ``basis``."""
    return _reduce(f, basis.find, basis.order.key, full=True)


# --------------------------------------------------------------------------
# Buchberger
# --------------------------------------------------------------------------

def raw_buchberger(gens, order: ModuleOrder, nvars, *, degree_bound=None, weights=None,
                   start=None, cancel=None) -> RawBasis:
    """Reduced Groebner basis of the submodule generated by raw vectors ``gens``.

    Pairs are taken by the normal strategy on sugar degree and pruned with
    the Gebauer-Moeller criteria; the product criterion is used only when
    every term sits at position 0.  ``start`` may hold a list of vectors
    that already form a Groebner basis: their mutual pairs are skipped.

    With ``degree_bound`` set, generators and pairs of (sugar) degree above
    the bound are discarded.  For homogeneous input this yields a basis
    that is correct in every degree up to the bound.
    """
    key = order.key
    shifts = order.shifts

    def deg(v):
        return vec_degree(v, shifts, weights)

    polys, lts, sugar = [], [], []
    active = []
    by_pos = {}
    heap = []
    counter = itertools.count()
    gens = [g for g in gens if g]
    start = [s for s in (start or []) if s]
    product_ok = all(p == 0 for g in itertools.chain(gens, start) for (p, _) in g)

    def find(t):
        for m, i in by_pos.get(t[0], ()):
            if all(map(le, m, t[1])):
                return m, polys[i]
        return None

    def rebuild_index():
        by_pos.clear()
        for i in active:
            lt = lts[i]
            by_pos.setdefault(lt[0], []).append((lt[1], i))

    def lcm_of(a, b):
        return tuple(map(max, a, b))

    def add_poly(v, sug):
        lt = max(v, key=key)
        v = _monic(v, lt)
        polys.append(v)
        lts.append(lt)
        sugar.append(sug)
        return len(polys) - 1

    def update(h, pairs_ok=True):
        nonlocal heap, active
        ph, mh = lts[h]
        cand = []
        for g in active:
            pg, mg = lts[g]
            if pg != ph:
                continue
            cand.append((g, lcm_of(mg, mh), product_ok and not any(a and b for a, b in zip(mg, mh))))
        kept = []
        for idx, (g, L, coprime) in enumerate(cand):
            if coprime:
                kept.append((g, L, coprime))
                continue
            dominated = False
            for jdx, (g2, L2, _) in enumerate(cand):
                if jdx == idx:
                    continue
                if all(map(le, L2, L)) and (L2 != L or jdx < idx):
                    # a pair with a (weakly) smaller lcm makes this one redundant
                    if L2 != L or jdx < idx:
                        dominated = True
                        break
            if not dominated:
                kept.append((g, L, coprime))
        new_pairs = [(g, L) for g, L, coprime in kept if not coprime]
        # Gebauer-Moeller pruning of old pairs
        pruned = []
        changed = False
        for item in heap:
            if item[3] < 0:
                pruned.append(item)
                continue
            _, _, _, i, j, L = item
            if lts[i][0] == ph and all(map(le, mh, L)):
                Li = lcm_of(lts[i][1], mh)
                Lj = lcm_of(lts[j][1], mh)
                if Li != L and Lj != L:
                    changed = True
                    continue
            pruned.append(item)
        if changed:
            heap = pruned
            heapq.heapify(heap)
        if pairs_ok:
            for g, L in new_pairs:
                term = (ph, L)
                s = max(sugar[g] + sum(L) - sum(lts[g][1]), sugar[h] + sum(L) - sum(mh)) \
                    if weights is None else \
                    max(sugar[g] + _wdeg(L, weights) - _wdeg(lts[g][1], weights),
                        sugar[h] + _wdeg(L, weights) - _wdeg(mh, weights))
                if degree_bound is not None and s > degree_bound:
                    continue
                heapq.heappush(heap, (s, key(term), next(counter), g, h, L))
        active = [g for g in active if not (lts[g][0] == ph and all(map(le, mh, lts[g][1])))]
        active.append(h)
        rebuild_index()

    for v in start:
        i = add_poly(v, deg(v))
        active.append(i)
    rebuild_index()

    for v in gens:
        d = deg(v)
        if degree_bound is not None and d > degree_bound:
            continue
        heapq.heappush(heap, (d, (), next(counter), -1, -1, v))

    while heap:
        if cancel is not None and cancel.is_set():
            raise Cancelled("Groebner basis computation cancelled")
        s, _, _, i, j, payload = heapq.heappop(heap)
        if i < 0:
            h = payload
        else:
            L = payload
            pos = lts[i][0]
            gi, gj = polys[i], polys[j]
            qi = tuple(map(sub, L, lts[i][1]))
            qj = tuple(map(sub, L, lts[j][1]))
            h = vec_scale_mono(gi, qi)
            for (p, e), c in gj.items():
                t = (p, tuple(map(add, e, qj)))
                val = h.get(t, 0) - c
                if val:
                    h[t] = val
                else:
                    h.pop(t, None)
        h = _reduce(h, find, key, full=True)
        if h:
            idx = add_poly(h, s)
            update(idx)

    # interreduce
    final = [polys[i] for i in active]
    final_lts = [lts[i] for i in active]
    out = []
    for idx, (v, lt) in enumerate(zip(final, final_lts)):
        others = RawBasis.__new__(RawBasis)
        others.order = order
        others._by_pos = {}
        for jdx, (w, lw) in enumerate(zip(final, final_lts)):
            if jdx != idx:
                others._by_pos.setdefault(lw[0], []).append((lw[1], w))
        tail = dict(v)
        del tail[lt]
        tail = _reduce(tail, others.find, key, full=True)
        tail[lt] = Fraction(1)
        out.append(tail)
    out.sort(key=lambda v: key(max(v, key=key)), reverse=True)
    return RawBasis(order, out)


def _wdeg(e, weights):
    return sum(map(lambda a, w: a * w, e, weights))


def s_polynomial(f, g, order: ModuleOrder):
    """S-vector of two raw vectors whose leading terms share a position (else None)."""
    key = order.key
    lf, lg = max(f, key=key), max(g, key=key)
    if lf[0] != lg[0]:
        return None
    L = tuple(map(max, lf[1], lg[1]))
    a = vec_scale_mono(f, tuple(map(sub, L, lf[1])), 1 / f[lf])
    b = vec_scale_mono(g, tuple(map(sub, L, lg[1])), 1 / g[lg])
    return vec_add(a, b, -1)


def is_groebner(basis: RawBasis):
    """Buchberger criterion: every S-vector reduces to zero."""
    polys = basis.polys
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            s = s_polynomial(polys[i], polys[j], basis.order)
            if s is not None and raw_normal_form(s, basis):
                return False
    return True


# --------------------------------------------------------------------------
# raw derived constructions
# --------------------------------------------------------------------------

def unit_vector(pos, nvars, coeff=Fraction(1)):
    return {(pos, (0,) * nvars): coeff}


def raw_preimage(us, ws, rank, nvars, shifts=(), degree_bound=None, cancel=None):
    """Generators of ``{c in P^n : sum c_i u_i in <ws>}``.

    ``us`` and ``ws`` are raw vectors in ``P^rank`` (with the given degree
    shifts).  The tagged module ``(u_i, e_i), (w, 0)`` is eliminated with
    respect to the first ``rank`` positions.
    """
    n = len(us)
    shifts = tuple(shifts) if shifts else (0,) * rank
    tag_shifts = tuple(max(vec_degree(u, shifts), 0) for u in us)
    gens = []
    zero = (0,) * nvars
    for i, u in enumerate(us):
        v = dict(u)
        v[(rank + i, zero)] = Fraction(1)
        gens.append(v)
    gens.extend(dict(w) for w in ws)
    order = ModuleOrder(DEGREVLEX, "top", shifts + tag_shifts, elim=rank)
    gb = raw_buchberger(gens, order, nvars, degree_bound=degree_bound, cancel=cancel)
    out = []
    for v, lt in zip(gb.polys, gb.lts):
        if lt[0] >= rank:
            out.append({(p - rank, e): c for (p, e), c in v.items()})
    return out, tag_shifts


def raw_intersection(us, vs, rank, nvars, shifts=(), degree_bound=None, cancel=None):
    """Generators of ``<us> ∩ <vs>`` inside ``P^rank`` via the tagged module
    ``(u, u), (v, 0)`` in ``P^rank ⊕ P^rank``."""
    shifts = tuple(shifts) if shifts else (0,) * rank
    gens = []
    for u in us:
        v = dict(u)
        for (p, e), c in u.items():
            v[(p + rank, e)] = c
        gens.append(v)
    gens.extend(dict(v) for v in vs)
    order = ModuleOrder(DEGREVLEX, "top", shifts + shifts, elim=rank)
    gb = raw_buchberger(gens, order, nvars, degree_bound=degree_bound, cancel=cancel)
    out = []
    for v, lt in zip(gb.polys, gb.lts):
        if lt[0] >= rank:
            out.append({(p - rank, e): c for (p, e), c in v.items()})
    return out


# --------------------------------------------------------------------------
# public API
# --------------------------------------------------------------------------

class FreeModuleElem:
    """Element of the free module ``ring^rank``."""

    __slots__ = ("ring", "components")

    def __init__(self, ring: RingDescriptor, components):
        comps = []
        for c in components:
            if not isinstance(c, Polynomial):
                c = ring(c)
            elif c.ring.variables != ring.variables:
                raise RingError("component from a different ring")
            comps.append(Polynomial(ring, c.terms))
        if not comps:
            raise DimensionError("free module elements need rank >= 1")
        self.ring = ring
        self.components = tuple(comps)

    @property
    def ambient_rank(self):
        return len(self.components)

    @classmethod
    def from_raw(cls, ring, rank, v):
        comps = [dict() for _ in range(rank)]
        for (p, e), c in v.items():
            comps[p][e] = c
        return cls(ring, [Polynomial(ring, t) for t in comps])

    def to_raw(self):
        out = {}
        for i, c in enumerate(self.components):
            for m, v in c.terms.items():
                out[(i, m)] = v
        return out

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def __add__(self, other):
        self._check(other)
        return FreeModuleElem(self.ring, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        self._check(other)
        return FreeModuleElem(self.ring, [a - b for a, b in zip(self.components, other.components)])

    def __rmul__(self, f):
        if not isinstance(f, Polynomial):
            f = self.ring.const(f)
        return FreeModuleElem(self.ring, [f * a for a in self.components])

    def _check(self, other):
        if not isinstance(other, FreeModuleElem) or other.ambient_rank != self.ambient_rank:
            raise DimensionError("free module elements of different rank")

    def __eq__(self, other):
        return isinstance(other, FreeModuleElem) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.components) + "]"

    __repr__ = __str__


@dataclass
class GroebnerBasis:
    """A Groebner basis of an ideal (``rank is None``) or submodule of ``ring^rank``.

    For quotient rings the basis is that of the lifted object in the
    ambient polynomial ring (quotient relations appended).
    """

    ring: RingDescriptor
    order: ModuleOrder
    raw: RawBasis
    rank: int | None = None
    reduced: bool = True

    @property
    def elements(self):
        if self.rank is None:
            return [Polynomial(self.ring, {m: c for (_, m), c in v.items()}) for v in self.raw.polys]
        return [FreeModuleElem.from_raw(self.ring, self.rank, v) for v in self.raw.polys]

    @property
    def term_order(self):
        return self.order.order

    def __len__(self):
        return len(self.raw)

    def __str__(self):
        return "{" + ", ".join(str(e) for e in self.elements) + "}"


def _to_raw(x, ring, rank):
    if isinstance(x, Polynomial):
        if rank is not None:
            raise DimensionError("polynomial given where a module element was expected")
        if x.ring.variables != ring.variables:
            raise RingError("polynomial from a different ring")
        return vec_from_poly(x)
    if isinstance(x, FreeModuleElem):
        if x.ambient_rank != rank:
            raise DimensionError(f"expected rank {rank}, got {x.ambient_rank}")
        if x.ring.variables != ring.variables:
            raise RingError("module element from a different ring")
        return x.to_raw()
    raise TypeError(f"cannot use {type(x).__name__} here")


def quotient_rows(ring: RingDescriptor, rank=None):
    """Raw rows ``q * e_i`` for the quotient relations ``q`` of ``ring``."""
    rows = []
    for q in ring.quotient_relations:
        for i in range(rank or 1):
            rows.append({(i, m): c for m, c in q.terms.items()})
    return rows


def buchberger(gens, order=None, *, cancel=None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal or submodule generated by ``gens``.

    ``order`` is a :class:`TermOrder` (or a :class:`ModuleOrder` for
    submodules).  Over a quotient ring the quotient relations are appended
    first.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator to fix the ring")
    ring = gens[0].ring
    rank = gens[0].ambient_rank if isinstance(gens[0], FreeModuleElem) else None
    if order is None:
        order = ring.default_order
    morder = order if isinstance(order, ModuleOrder) else ModuleOrder(order)
    raw = [_to_raw(g, ring, rank) for g in gens] + quotient_rows(ring, rank)
    rb = raw_buchberger(raw, morder, ring.nvars, cancel=cancel)
    return GroebnerBasis(ring, morder, rb, rank)


def normal_form(f, G: GroebnerBasis):
    """Remainder of ``f`` on full division by ``G``."""
    rank = G.rank
    if isinstance(f, Polynomial) and rank is not None:
        raise DimensionError("polynomial reduced against a module basis")
    if isinstance(f, FreeModuleElem) and rank is None:
        raise DimensionError("module element reduced against an ideal basis")
    raw = _to_raw(f, G.ring, rank)
    nf = raw_normal_form(raw, G.raw)
    if rank is None:
        return Polynomial(f.ring, {m: c for (_, m), c in nf.items()})
    return FreeModuleElem.from_raw(f.ring, rank, nf)


def syzygy_module(G):
    """First syzygies of a generator list (or of the elements of a Groebner basis).

    Returns a :class:`~transversal.idealops.ModulePresentation` whose
    generators live in the free module on the input generators.  Over a
    quotient ring ``A`` these are the syzygies over ``A``.
    """
    from .idealops import ModulePresentation

    if isinstance(G, GroebnerBasis):
        gens = G.elements
        ring = G.ring
    else:
        gens = list(G)
        ring = gens[0].ring
    rank = gens[0].ambient_rank if isinstance(gens[0], FreeModuleElem) else None
    r = rank or 1
    us = [_to_raw(g, ring, rank) for g in gens]
    ws = quotient_rows(ring, r)
    syz, tag_shifts = raw_preimage(us, ws, r, ring.nvars)
    n = len(gens)
    rows = [FreeModuleElem.from_raw(ring, n, v) for v in syz]
    rows = [v for v in rows if not v.is_zero()]
    return ModulePresentation.submodule(ring, n, rows, shifts=tag_shifts)
