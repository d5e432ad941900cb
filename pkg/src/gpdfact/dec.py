"""Décalage, its counit, and the (final, discrete fibration) factorization.

``dec(H)`` has the arrows of ``H`` as objects and the kernel pair of ``c`` as
arrows; ``epsilon(H)`` sends an arrow ``(g, g')`` of it to ``g . g'^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .gpd import (
    ConsistencyError,
    Groupoid,
    InternalFunctor,
    compose_functors,
    functors_equal,
    induce_into_pullback,
    is_essentially_surjective,
    is_full,
    pi0,
    pi0_map,
    psi,
    pullback_groupoid,
    relation_groupoid,
)
from .setcore import (
    BoundaryError,
    FinMap,
    coequalizer,
    compose,
    compose_all,
    factor_through_quotient,
    is_bijective,
    is_jointly_monic,
    is_regular_epi,
    kernel_pair,
    pair_lookup,
    pullback,
    pullback_induce,
)


@lru_cache(maxsize=512)
def dec(h: Groupoid) -> Groupoid:
    rc, r1, r2 = kernel_pair(h.c)
    return relation_groupoid(h.arr, rc, r1, r2)


@lru_cache(maxsize=512)
def dec_functor(f: InternalFunctor) -> InternalFunctor:
    dh, dg = dec(f.dom), dec(f.cod)
    f1 = pullback_induce(dg.d, dg.c, compose(dh.d, f.f1), compose(dh.c, f.f1))
    return InternalFunctor(dh, dg, f.f1, f1)


@lru_cache(maxsize=512)
def epsilon(h: Groupoid) -> InternalFunctor:
    dh = dec(h)
    dbar = compose(h.pair_map(dh.d, compose(dh.c, h.i)), h.m)
    return InternalFunctor(dh, h, h.d, dbar)


def exact_fork_check(h: Groupoid) -> bool:
    """Levelwise: the two maps ``Dec^2 H => Dec H`` are the kernel pair of
    ``epsilon(H)``, and ``epsilon(H)`` is their coequalizer."""
    eps = epsilon(h)
    top = epsilon(eps.dom)
    shifted = dec_functor(eps)
    for a, b, q in ((top.f0, shifted.f0, eps.f0), (top.f1, shifted.f1, eps.f1)):
        if compose(a, q).table != compose(b, q).table:
            return False
        _, k1, k2 = kernel_pair(q)
        try:
            comparison = pullback_induce(k1, k2, a, b)
        except BoundaryError:
            return False
        if not is_bijective(comparison):
            return False
        _, coeq = coequalizer(a, b)
        induced = factor_through_quotient(coeq, q)
        if induced is None or not is_bijective(induced):
            return False
    return True


@dataclass(frozen=True)
class FactorizationResult:
    E: Groupoid
    Fbar: InternalFunctor
    Delta: InternalFunctor
    RDelta: Groupoid
    par1: InternalFunctor
    par2: InternalFunctor
    T: Groupoid
    J: InternalFunctor
    K: InternalFunctor


def _single(values, what: str):
    values = set(values)
    if len(values) != 1:
        raise ConsistencyError(f"{what} depends on the choice of representative")
    return values.pop()


def _classes(q: FinMap) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in q.cod]
    for x, k in enumerate(q.table):
        out[k].append(x)
    return out


def _components_groupoid(rd: Groupoid, par1: InternalFunctor, par2: InternalFunctor,
                         e_groupoid: Groupoid):
    """pi0 of the relation ``RDelta => E``, with structure induced on classes."""
    t0, q_e = pi0(e_groupoid).components, pi0(e_groupoid).q
    t1, q_r = pi0(rd).components, pi0(rd).q
    d_t, c_t = pi0_map(par1), pi0_map(par2)
    a, b = par1.f0.table, par2.f0.table
    if not is_jointly_monic(par1.f0, par2.f0):
        raise ConsistencyError("RDelta is not a relation on the objects of E")
    look = pair_lookup(par1.f0, par2.f0)
    qr = q_r.table

    try:
        unit = [_single((qr[look[(p, p)]] for p in cls), "unit")
                for cls in _classes(q_e)]
        inv = [_single((qr[look[(b[r], a[r])]] for r in cls), "inverse")
               for cls in _classes(q_r)]
    except KeyError:
        raise ConsistencyError("RDelta is not reflexive and symmetric") from None

    by_src: dict[int, list[int]] = {}
    for r in rd.obj:
        by_src.setdefault(a[r], []).append(r)
    composites: dict[tuple[int, int], int] = {}
    for r in rd.obj:
        for s in by_src.get(b[r], ()):
            key = (qr[r], qr[s])
            k = look.get((a[r], b[s]))
            if k is None:
                raise ConsistencyError("RDelta is not transitive")
            if composites.setdefault(key, qr[k]) != qr[k]:
                raise ConsistencyError("composition depends on the choice of representative")

    e_t = FinMap(t0, t1, tuple(unit))
    i_t = FinMap(t1, t1, tuple(inv))
    pairs, s1, s2 = pullback(c_t, d_t)
    try:
        m_t = FinMap(pairs, t1, tuple(composites[(x, y)]
                                      for x, y in zip(s1.table, s2.table)))
    except KeyError:
        raise ConsistencyError("a composable pair of classes has no representatives") from None
    return Groupoid(t0, t1, d_t, c_t, e_t, m_t, i_t, (pairs, s1, s2)), q_e, q_r


def comprehensive_factorize(f: InternalFunctor) -> FactorizationResult:
    h, g = f.dom, f.cod
    eps_g = epsilon(g)
    dg = eps_g.dom
    e_gpd, fbar, delta = pullback_groupoid(f, eps_g)
    eps_dg = epsilon(dg)
    shifted = dec_functor(eps_g)
    rd, to_dec2, par1 = pullback_groupoid(fbar, eps_dg)
    par2 = induce_into_pullback(fbar, delta,
                                compose_functors(to_dec2, shifted),
                                compose_functors(par1, delta))

    t, q_e, q_r = _components_groupoid(rd, par1, par2, e_gpd)

    # pi0(Dec G) ~ G0 via c, pi0(Dec^2 G) ~ G1 via (g1, g2) -> g2^-1
    k0 = factor_through_quotient(q_e, compose(fbar.f0, g.c))
    k1 = factor_through_quotient(q_r, compose_all(to_dec2.f0, dg.c, g.i))
    if k0 is None or k1 is None:
        raise ConsistencyError("K is not well defined on components")
    k = InternalFunctor(t, g, k0, k1)

    dh = dec(h)
    u = induce_into_pullback(fbar, delta, dec_functor(f), epsilon(h))
    w = induce_into_pullback(to_dec2, par1, dec_functor(dec_functor(f)),
                             compose_functors(epsilon(dh), u))
    j0 = compose_all(h.e, u.f0, q_e)
    reps = pullback_induce(dh.d, dh.c, compose(h.d, h.e), h.i)
    j1 = compose_all(reps, w.f0, q_r)
    j = InternalFunctor(h, t, j0, j1)

    if not functors_equal(compose_functors(j, k), f):
        raise ConsistencyError("K . J does not reproduce F")
    return FactorizationResult(e_gpd, fbar, delta, rd, par1, par2, t, j, k)


def is_final_lemma(f: InternalFunctor) -> bool:
    """pi0 inverts the pullback of ``F`` along ``epsilon(G)``."""
    _, fbar, _ = pullback_groupoid(f, epsilon(f.cod))
    return is_bijective(pi0_map(fbar))


def is_final_theorem(f: InternalFunctor) -> bool:
    return is_full(f) and is_essentially_surjective(f)


def is_final_corollary(f: InternalFunctor) -> bool:
    return is_bijective(pi0_map(f)) and is_regular_epi(psi(f).psi)
