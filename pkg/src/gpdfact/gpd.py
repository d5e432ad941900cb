"""Internal groupoids and functors in FinSet.

Composition is diagrammatic: ``m(g, h)`` is defined when ``c(g) = d(h)`` and
runs from ``d(g)`` to ``c(h)``.  ``m`` is a FinMap out of the canonical
pullback ``H1 x_(c,d) H1`` of composable pairs.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field
from functools import cached_property
from typing import Mapping, NamedTuple, Sequence

from .setcore import (
    BoundaryError,
    FinMap,
    FinSet,
    coequalizer,
    compose,
    factor_through_quotient,
    identity,
    image_factorize,
    is_bijective,
    is_jointly_monic,
    is_mono,
    is_regular_epi,
    pair_lookup,
    pairing,
    product,
    product_map,
    pullback,
    pullback_induce,
    same_set,
)


class ConsistencyError(RuntimeError):
    """A construction that must be representative-independent was not."""


class InvalidFunctor(ValueError):
    pass


@dataclass(frozen=True)
class Groupoid:
    obj: FinSet
    arr: FinSet
    d: FinMap
    c: FinMap
    e: FinMap
    m: FinMap
    i: FinMap
    pairs: FinSet = field(init=False, repr=False, compare=False)
    p1: FinMap = field(init=False, repr=False, compare=False)
    p2: FinMap = field(init=False, repr=False, compare=False)
    _lookup: dict = field(init=False, repr=False, compare=False)
    composable_pairs: InitVar[tuple | None] = None

    def __post_init__(self, composable_pairs):
        for name, f, dom, cod in (("d", self.d, self.arr, self.obj),
                                  ("c", self.c, self.arr, self.obj),
                                  ("e", self.e, self.obj, self.arr),
                                  ("i", self.i, self.arr, self.arr)):
            if not (same_set(f.dom, dom) and same_set(f.cod, cod)):
                raise BoundaryError(f"structure map {name} has the wrong boundary")
        pairs, p1, p2 = composable_pairs or pullback(self.c, self.d)
        if not (same_set(self.m.dom, pairs) and same_set(self.m.cod, self.arr)):
            raise BoundaryError("m must be defined on exactly the composable pairs")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)
        object.__setattr__(self, "_lookup", pair_lookup(p1, p2))

    def comp(self, g: int, h: int) -> int:
        k = self._lookup.get((g, h))
        if k is None:
            raise BoundaryError(
                f"{self.arr[g]!r} and {self.arr[h]!r} are not composable")
        return self.m.table[k]

    def composable(self, g: int, h: int) -> bool:
        return (g, h) in self._lookup

    def pair_map(self, u: FinMap, v: FinMap) -> FinMap:
        """Induced map into the composable pairs from legs ``u``, ``v``."""
        return pullback_induce(self.p1, self.p2, u, v, self._lookup)

    @cached_property
    def _components(self):
        return coequalizer(self.d, self.c)

    def __repr__(self):
        return f"Groupoid({len(self.obj)} objects, {len(self.arr)} arrows)"


@dataclass(frozen=True)
class InternalFunctor:
    dom: Groupoid
    cod: Groupoid
    f0: FinMap
    f1: FinMap

    def __post_init__(self):
        if not (same_set(self.f0.dom, self.dom.obj) and same_set(self.f0.cod, self.cod.obj)):
            raise BoundaryError("object part has the wrong boundary")
        if not (same_set(self.f1.dom, self.dom.arr) and same_set(self.f1.cod, self.cod.arr)):
            raise BoundaryError("arrow part has the wrong boundary")

    def __repr__(self):
        return f"InternalFunctor({self.dom!r} -> {self.cod!r})"


def groupoid_from_tables(objects: Sequence[str],
                         arrows: Sequence[tuple[str, str, str]],
                         units: Mapping[str, str],
                         inv: Mapping[str, str],
                         comp: Mapping[tuple[str, str], str]) -> Groupoid:
    """Build a groupoid from label tables; ``comp`` maps ``(g, h)`` to ``gh``."""
    obj = FinSet(objects)
    arr = FinSet(a for a, _, _ in arrows)
    d = FinMap(arr, obj, tuple(obj.index(x) for _, x, _ in arrows))
    c = FinMap(arr, obj, tuple(obj.index(y) for _, _, y in arrows))
    e = FinMap.from_labels(obj, arr, units)
    i = FinMap.from_labels(arr, arr, inv)
    pairs, p1, p2 = pullback(c, d)
    table = []
    for g, h in zip(p1.table, p2.table):
        key = (arr[g], arr[h])
        if key not in comp:
            raise ValueError(f"no composite given for {key}")
        table.append(arr.index(comp[key]))
    return Groupoid(obj, arr, d, c, e, FinMap(pairs, arr, tuple(table)), i, (pairs, p1, p2))


def relation_groupoid(obj: FinSet, arr: FinSet, r1: FinMap, r2: FinMap) -> Groupoid:
    """The unique groupoid structure on an equivalence relation ``(r1, r2)``."""
    if not is_jointly_monic(r1, r2):
        raise ValueError("relation legs are not jointly monic")
    look = pair_lookup(r1, r2)
    try:
        e = FinMap(obj, arr, tuple(look[(x, x)] for x in obj))
        i = FinMap(arr, arr, tuple(look[(y, x)] for x, y in zip(r1.table, r2.table)))
        pairs, q1, q2 = pullback(r2, r1)
        m = FinMap(pairs, arr, tuple(look[(r1.table[a], r2.table[b])]
                                     for a, b in zip(q1.table, q2.table)))
    except KeyError as exc:
        raise ValueError(f"not an equivalence relation: missing pair {exc}") from None
    return Groupoid(obj, arr, r1, r2, e, m, i, (pairs, q1, q2))


def identity_functor(h: Groupoid) -> InternalFunctor:
    return InternalFunctor(h, h, identity(h.obj), identity(h.arr))


def compose_functors(f: InternalFunctor, g: InternalFunctor) -> InternalFunctor:
    """``g`` after ``f``."""
    return InternalFunctor(f.dom, g.cod, compose(f.f0, g.f0), compose(f.f1, g.f1))


def functors_equal(f: InternalFunctor, g: InternalFunctor) -> bool:
    return (f.dom == g.dom and f.cod == g.cod
            and f.f0.table == g.f0.table and f.f1.table == g.f1.table)


def is_isomorphism(f: InternalFunctor) -> bool:
    return is_bijective(f.f0) and is_bijective(f.f1)


def validate_groupoid(h: Groupoid) -> list[str]:
    """Every violated groupoid axiom, as readable messages (empty when valid)."""
    errs = []
    ol, al = h.obj.labels, h.arr.labels
    d, c, e, i = h.d.table, h.c.table, h.e.table, h.i.table
    for x in h.obj:
        if d[e[x]] != x or c[e[x]] != x:
            errs.append(f"unit {al[e[x]]} of {ol[x]} has the wrong boundary")
    for k, (g, f) in enumerate(zip(h.p1.table, h.p2.table)):
        gf = h.m.table[k]
        if d[gf] != d[g] or c[gf] != c[f]:
            errs.append(f"composite of ({al[g]},{al[f]}) has the wrong boundary")
    for g in h.arr:
        if h.composable(e[d[g]], g) and h.comp(e[d[g]], g) != g:
            errs.append(f"left unit law fails at {al[g]}")
        if h.composable(g, e[c[g]]) and h.comp(g, e[c[g]]) != g:
            errs.append(f"right unit law fails at {al[g]}")
        gi = i[g]
        if d[gi] != c[g] or c[gi] != d[g]:
            errs.append(f"inverse of {al[g]} has the wrong boundary")
            continue
        if h.comp(g, gi) != e[d[g]]:
            errs.append(f"{al[g]} composed with its inverse is not a unit")
        if h.comp(gi, g) != e[c[g]]:
            errs.append(f"inverse of {al[g]} composed with it is not a unit")
    out_of: dict[int, list[int]] = {}
    for g in h.arr:
        out_of.setdefault(d[g], []).append(g)
    for k, (f, g) in enumerate(zip(h.p1.table, h.p2.table)):
        fg = h.m.table[k]
        for x in out_of.get(c[g], ()):
            gx = h.comp(g, x)
            if not (h.composable(fg, x) and h.composable(f, gx)) \
                    or h.comp(fg, x) != h.comp(f, gx):
                errs.append(f"associativity fails at ({al[f]},{al[g]},{al[x]})")
    return errs


def validate_functor(f: InternalFunctor) -> list[str]:
    h, g = f.dom, f.cod
    errs = []
    f0, f1 = f.f0.table, f.f1.table
    al = h.arr.labels
    for a in h.arr:
        if f0[h.d.table[a]] != g.d.table[f1[a]]:
            errs.append(f"f0 d != d f1 at {al[a]}")
        if f0[h.c.table[a]] != g.c.table[f1[a]]:
            errs.append(f"f0 c != c f1 at {al[a]}")
    for x in h.obj:
        if f1[h.e.table[x]] != g.e.table[f0[x]]:
            errs.append(f"unit of {h.obj[x]} is not preserved")
    for k, (a, b) in enumerate(zip(h.p1.table, h.p2.table)):
        fa, fb = f1[a], f1[b]
        if not g.composable(fa, fb):
            errs.append(f"images of ({al[a]},{al[b]}) are not composable")
        elif g.comp(fa, fb) != f1[h.m.table[k]]:
            errs.append(f"composition not preserved at ({al[a]},{al[b]})")
    return errs


def _require_valid(f: InternalFunctor) -> None:
    errs = validate_functor(f)
    if errs:
        raise InvalidFunctor("; ".join(errs))


def is_discrete_fibration(f: InternalFunctor, side: str = "c") -> bool:
    """Unique lifting: ``(c, f1): H1 -> H0 x_G0 G1`` is a bijection.

    ``side="d"`` tests the square built on the domain maps instead; for
    groupoids the two agree.
    """
    _require_valid(f)
    h, g = f.dom, f.cod
    hb, gb = (h.c, g.c) if side == "c" else (h.d, g.d)
    p, q1, q2 = pullback(f.f0, gb)
    comparison = pullback_induce(q1, q2, hb, f.f1)
    return is_bijective(comparison)


def _lift_data(f: FinMap, g: Groupoid):
    x = f.dom
    xx, x1, x2 = product(x, x)
    gg = product(g.obj, g.obj)[0]
    p, pr1, pr2 = pullback(product_map(f, f, xx, gg), pairing(g.d, g.c, gg))
    return xx, x1, x2, p, pr1, pr2


def cartesian_lift(f: FinMap, g: Groupoid) -> tuple[Groupoid, InternalFunctor]:
    """``f*G``: arrows are pairs ``((x, x'), a)`` with ``a: f x -> f x'``."""
    if not same_set(f.cod, g.obj):
        raise BoundaryError(f"lift needs a map into the objects {g.obj}, got {f.cod}")
    x = f.dom
    xx, x1, x2, p, pr1, pr2 = _lift_data(f, g)
    look = pair_lookup(pr1, pr2)
    d = compose(pr1, x1)
    c = compose(pr1, x2)
    diag = pairing(identity(x), identity(x), xx)
    e = pullback_induce(pr1, pr2, diag, compose(f, g.e), look)
    swap = pairing(x2, x1, xx)
    i = pullback_induce(pr1, pr2, compose(pr1, swap), compose(pr2, g.i), look)
    pairs, q1, q2 = pullback(c, d)
    ends = pairing(compose(q1, d), compose(q2, c), xx)
    arrows = compose(g.pair_map(compose(q1, pr2), compose(q2, pr2)), g.m)
    m = pullback_induce(pr1, pr2, ends, arrows, look)
    lifted = Groupoid(x, p, d, c, e, m, i, (pairs, q1, q2))
    return lifted, InternalFunctor(lifted, g, f, pr2)


def comparison_map(f: InternalFunctor) -> FinMap:
    """phi_F: ``h -> ((d h, c h), f1 h)`` into the arrows of ``f0*G``."""
    h = f.dom
    xx, _, _, p, pr1, pr2 = _lift_data(f.f0, f.cod)
    return pullback_induce(pr1, pr2, pairing(h.d, h.c, xx), f.f1)


def boff_factorize(f: InternalFunctor) -> tuple[InternalFunctor, InternalFunctor, FinMap]:
    """(bijective on objects, fully faithful) factorization through ``f0*G``."""
    lifted, ff = cartesian_lift(f.f0, f.cod)
    phi = comparison_map(f)
    bo = InternalFunctor(f.dom, lifted, identity(f.dom.obj), phi)
    return bo, ff, phi


def is_full(f: InternalFunctor) -> bool:
    return is_regular_epi(comparison_map(f))


def is_faithful(f: InternalFunctor) -> bool:
    return is_mono(comparison_map(f))


def es_witness(f: InternalFunctor) -> tuple[FinSet, FinMap, FinMap]:
    """``E0 = H0 x_(f0, d) G1`` with its leg to ``G1`` and ``c`` after that leg."""
    e0, _, fbar0 = pullback(f.f0, f.cod.d)
    return e0, fbar0, compose(fbar0, f.cod.c)


def is_essentially_surjective(f: InternalFunctor) -> bool:
    return is_regular_epi(es_witness(f)[2])


@dataclass(frozen=True)
class SupportData:
    relation: Groupoid
    sigma: FinMap
    r1: FinMap
    r2: FinMap


@dataclass(frozen=True)
class Pi0Data:
    components: FinSet
    q: FinMap


def support(h: Groupoid) -> SupportData:
    hh, pi1, pi2 = product(h.obj, h.obj)
    sigma, mono = image_factorize(pairing(h.d, h.c, hh))
    r1, r2 = compose(mono, pi1), compose(mono, pi2)
    return SupportData(relation_groupoid(h.obj, sigma.cod, r1, r2), sigma, r1, r2)


def support_functor(f: InternalFunctor, sh: SupportData | None = None,
                    sg: SupportData | None = None) -> InternalFunctor:
    """Sigma F: ``(x, y) -> (f0 x, f0 y)`` between supports."""
    sh = sh or support(f.dom)
    sg = sg or support(f.cod)
    f1 = pullback_induce(sg.r1, sg.r2, compose(sh.r1, f.f0), compose(sh.r2, f.f0))
    return InternalFunctor(sh.relation, sg.relation, f.f0, f1)


def is_equivalence_relation(h: Groupoid) -> bool:
    return is_jointly_monic(h.d, h.c)


def pi0(h: Groupoid) -> Pi0Data:
    return Pi0Data(*h._components)


def pi0_map(f: InternalFunctor) -> FinMap:
    qh, qg = pi0(f.dom).q, pi0(f.cod).q
    k = factor_through_quotient(qh, compose(f.f0, qg))
    if k is None:
        raise ConsistencyError("pi0 of a functor is not well defined")
    return k


def pullback_groupoid(f: InternalFunctor, fp: InternalFunctor
                      ) -> tuple[Groupoid, InternalFunctor, InternalFunctor]:
    """Levelwise pullback of ``F: H -> G`` and ``F': H' -> G``.

    Returns ``(H x_G H', Fbar, Fbar')`` where ``Fbar`` goes to ``H'`` and
    ``Fbar'`` goes to ``H``.
    """
    if f.cod != fp.cod:
        raise BoundaryError("functors in a pullback need a common codomain")
    h, hp = f.dom, fp.dom
    p0, a0, b0 = pullback(f.f0, fp.f0)
    p1, a1, b1 = pullback(f.f1, fp.f1)
    lk0, lk1 = pair_lookup(a0, b0), pair_lookup(a1, b1)
    d = pullback_induce(a0, b0, compose(a1, h.d), compose(b1, hp.d), lk0)
    c = pullback_induce(a0, b0, compose(a1, h.c), compose(b1, hp.c), lk0)
    e = pullback_induce(a1, b1, compose(a0, h.e), compose(b0, hp.e), lk1)
    i = pullback_induce(a1, b1, compose(a1, h.i), compose(b1, hp.i), lk1)
    pairs, q1, q2 = pullback(c, d)
    left = compose(h.pair_map(compose(q1, a1), compose(q2, a1)), h.m)
    right = compose(hp.pair_map(compose(q1, b1), compose(q2, b1)), hp.m)
    m = pullback_induce(a1, b1, left, right, lk1)
    p = Groupoid(p0, p1, d, c, e, m, i, (pairs, q1, q2))
    return p, InternalFunctor(p, hp, b0, b1), InternalFunctor(p, h, a0, a1)


def induce_into_pullback(fbar: InternalFunctor, fbar_prime: InternalFunctor,
                         to_h_prime: InternalFunctor, to_h: InternalFunctor) -> InternalFunctor:
    """The functor into a pullback groupoid with the given two legs."""
    p = fbar.dom
    f0 = pullback_induce(fbar_prime.f0, fbar.f0, to_h.f0, to_h_prime.f0)
    f1 = pullback_induce(fbar_prime.f1, fbar.f1, to_h.f1, to_h_prime.f1)
    return InternalFunctor(to_h.dom, p, f0, f1)


class PsiData(NamedTuple):
    pullback: FinSet
    psi: FinMap
    sigma_leg: FinMap
    arrow_leg: FinMap


def psi(f: InternalFunctor) -> PsiData:
    """``psi_F = <sigma_H, f1>: H1 -> Sigma H1 x_(Sigma G1) G1``."""
    sh, sg = support(f.dom), support(f.cod)
    sf = support_functor(f, sh, sg)
    p, s_leg, g_leg = pullback(sf.f1, sg.sigma)
    return PsiData(p, pullback_induce(s_leg, g_leg, sh.sigma, f.f1), s_leg, g_leg)
