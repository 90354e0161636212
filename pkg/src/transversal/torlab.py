"""Tor_1 and Tor_2 against cyclic modules ``A/I``.

For ``X = F0/K`` with ``F0`` free,

    Tor_1(A/I, X) = (K ∩ I*F0) / (I*K).

Graded dimensions come from inclusion-exclusion on quotients of ``F0``
(``dim (K ∩ IF0) = dim K + dim IF0 - dim (K + IF0)``), which avoids an
elimination; the explicit subquotient is built only when asked for.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import syzygy_module
from .idealops import (
    Ambient,
    GradedDims,
    HomogeneityError,
    IdealHandle,
    ModulePresentation,
    ideal_intersection,
    presentation,
)


@dataclass
class TorResult:
    index: int
    graded_dims: GradedDims | None
    _builder: object = field(default=None, repr=False)
    _presentation: ModulePresentation | None = field(default=None, repr=False)
    _is_zero: bool | None = None

    @property
    def presentation(self) -> ModulePresentation:
        if self._presentation is None:
            self._presentation = self._builder()
        return self._presentation

    @property
    def is_zero(self) -> bool:
        """Exact test: every generator reduces into the relation module.

        For homogeneous input the graded dims (all degrees up to ``dmax``)
        decide this within the bound; the presentation test is used otherwise.
        """
        if self._is_zero is None:
            if self.graded_dims is not None:
                self._is_zero = self.graded_dims.is_zero()
            else:
                self._is_zero = self.presentation.is_zero()
        return self._is_zero

    @property
    def isZero(self):
        return self.is_zero

    @property
    def gradedDims(self):
        return self.graded_dims


def tor1_parts(I: IdealHandle, F0: Ambient, K, dmax):
    """Graded dims of ``Tor_1(A/I, F0/K)`` in degrees 0..dmax."""
    IF0 = F0.times_ideal(I.generators, [{(j, (0,) * F0.nvars): 1} for j in range(F0.rank)])
    IK = F0.times_ideal(I.generators, K)
    a = F0.quotient_dims(IK, dmax)
    b = F0.quotient_dims(K, dmax)
    c = F0.quotient_dims(IF0, dmax)
    d = F0.quotient_dims(list(K) + IF0, dmax)
    # dim (K∩IF0)/IK = dim F0/IK - dim F0/(K∩IF0)
    #               = a - (b + c - d)
    return [w - (x + y - z) for w, x, y, z in zip(a, b, c, d)]


def _tor1_subquotient(I, F0: Ambient, K, dmax=None):
    IF0 = F0.times_ideal(I.generators, [{(j, (0,) * F0.nvars): 1} for j in range(F0.rank)])
    inter = F0.intersection(K, IF0, dmax)
    IK = F0.times_ideal(I.generators, K)
    return ModulePresentation.from_raw(F0.ring, F0.rank, inter, IK, F0.shifts)


def _homogeneous(I: IdealHandle, X):
    ok = I.is_homogeneous()
    if isinstance(X, ModulePresentation):
        ok = ok and X.is_homogeneous()
    elif isinstance(X, IdealHandle):
        ok = ok and X.is_homogeneous()
    return ok


def _as_cokernel(X, dmax):
    """``(F0, K)`` presenting ``X`` (a ModulePresentation or ``A/J`` for an ideal ``J``)."""
    if isinstance(X, IdealHandle):
        F0 = Ambient(X.ring, 1)
        return F0, F0.clean(X.rows())
    gens, K, shifts = presentation(X, dmax)
    if not gens:
        return None, []
    return Ambient(X.ring, len(gens), shifts), K


def tor1(I: IdealHandle, X, dmax=None) -> TorResult:
    """``Tor_1(A/I, X)``.

    ``X`` is a :class:`ModulePresentation` (normalised to ``F0/K`` first) or
    an ideal ``J`` standing for ``A/J``.  Graded dims up to ``dmax`` are
    filled in for homogeneous input.
    """
    if I.ring != X.ring:
        raise ValueError("arguments over different rings")
    homog = _homogeneous(I, X)
    bound = dmax if homog else None
    F0, K = _as_cokernel(X, bound)
    if F0 is None:
        zero = ModulePresentation.submodule(I.ring, 1, [])
        return TorResult(1, GradedDims({}, dmax) if homog and dmax is not None else None,
                         None, zero, True)
    dims = None
    if homog and dmax is not None:
        dims = GradedDims.from_list(tor1_parts(I, F0, K, dmax))
    return TorResult(1, dims, lambda: _tor1_subquotient(I, F0, K, bound))


def ideal_presentation(J: IdealHandle, dmax=None) -> ModulePresentation:
    """``J`` as an ``A``-module: ``A^n / syz`` with generator degrees as shifts."""
    gens = list(J.generators)
    if J.is_homogeneous():
        gens = list(J.minimal_generators().generators)
    if not gens:
        return ModulePresentation.submodule(J.ring, 1, [])
    syz = syzygy_module(gens)
    shifts = tuple(g.degree() for g in gens)
    return ModulePresentation.cokernel(J.ring, len(gens), syz.generators, shifts)


def tor2_cyclic(I: IdealHandle, J: IdealHandle, dmax=None) -> TorResult:
    """``Tor_2(A/I, A/J) = Tor_1(A/J, I)``, with ``I`` presented by its syzygies."""
    if I.ring != J.ring:
        raise ValueError("arguments over different rings")
    Ipres = ideal_presentation(I, dmax)
    res = tor1(J, Ipres, dmax)
    res.index = 2
    return res


def tor1_shortcut_oracle(I: IdealHandle, J: IdealHandle, dmax) -> GradedDims:
    """Graded dims of ``(I ∩ J) / IJ``, computed through the auxiliary-variable intersection."""
    if not (I.is_homogeneous() and J.is_homogeneous()):
        raise HomogeneityError("graded dimensions need homogeneous ideals")
    inter = ideal_intersection(I, J)
    prod = I * J
    amb = Ambient(I.ring, 1)
    a = amb.quotient_dims(prod.rows(), dmax)
    b = amb.quotient_dims(inter.rows() + prod.rows(), dmax)
    return GradedDims.from_list([x - y for x, y in zip(a, b)])


__all__ = ["TorResult", "ideal_presentation", "tor1", "tor1_shortcut_oracle", "tor2_cyclic"]
