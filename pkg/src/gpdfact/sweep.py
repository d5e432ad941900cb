"""Exhaustive checks over enumerated groupoids and functors.

Every check returns plain tallies so the CLI and the acceptance tests can
report them the same way.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice

from .dec import (
    comprehensive_factorize,
    exact_fork_check,
    is_final_corollary,
    is_final_lemma,
    is_final_theorem,
)
from .gpd import (
    ConsistencyError,
    Groupoid,
    InternalFunctor,
    comparison_map,
    compose_functors,
    functors_equal,
    is_discrete_fibration,
    is_equivalence_relation,
    is_essentially_surjective,
    is_isomorphism,
    pi0_map,
    pullback_groupoid,
    validate_functor,
    validate_groupoid,
)
from .oracle import (
    EnumerationBounds,
    elements_factorization,
    enumerate_functors,
    enumerate_groupoids,
    is_final_comma,
    iso_search,
    orthogonal_fill,
)
from .setcore import is_bijective, is_mono, is_regular_epi, pullback, pullback_induce

log = logging.getLogger(__name__)

CRITERIA = (
    "finality_agreement",
    "factorization_soundness",
    "oracle_equivalence",
    "exact_fork",
    "prop_pbff",
    "prop_ff_mono",
    "prop_es",
    "cor_full_mono",
)


@dataclass
class Tally:
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, what: str) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(what)


@dataclass
class SweepReport:
    groupoids: int = 0
    functors: int = 0
    squares: int = 0
    tallies: dict[str, Tally] = field(default_factory=lambda: {k: Tally() for k in CRITERIA})
    consistency_errors: list[str] = field(default_factory=list)

    @property
    def disagreements(self) -> int:
        return sum(len(t.failures) for t in self.tallies.values())

    def merge(self, other: SweepReport) -> None:
        self.functors += other.functors
        self.squares += other.squares
        for k, t in other.tallies.items():
            mine = self.tallies[k]
            mine.checked += t.checked
            mine.failures.extend(t.failures)
        self.consistency_errors.extend(other.consistency_errors)

    def lines(self) -> list[str]:
        out = [f"groupoids: {self.groupoids}", f"functors: {self.functors}",
               f"pullback squares (up to isomorphism): {self.squares}"]
        for k in CRITERIA:
            t = self.tallies[k]
            out.append(f"{k}: {t.checked} checked, {len(t.failures)} failures")
        out.append(f"internal consistency errors: {len(self.consistency_errors)}")
        out.append(f"disagreements: {self.disagreements}")
        return out


def finality_verdicts(f: InternalFunctor) -> dict[str, bool]:
    return {
        "comma": is_final_comma(f),
        "lemma": is_final_lemma(f),
        "theorem": is_final_theorem(f),
        "corollary": is_final_corollary(f),
    }


def factorization_problems(f: InternalFunctor, fact=None) -> list[str]:
    """Soundness of ``F = K . J``; empty when everything holds."""
    r = fact or comprehensive_factorize(f)
    probs = []
    if validate_groupoid(r.T):
        probs.append("T is not a groupoid")
    if validate_functor(r.J) or validate_functor(r.K):
        probs.append("J or K is not a functor")
        return probs
    if not functors_equal(compose_functors(r.J, r.K), f):
        probs.append("K . J != F")
    if not is_discrete_fibration(r.K):
        probs.append("K is not a discrete fibration")
    if not is_final_lemma(r.J):
        probs.append("J is not final")
    _, t0, g1 = pullback(r.K.f0, f.cod.d)
    if not is_bijective(pullback_induce(t0, g1, r.T.d, r.K.f1)):
        probs.append("(d_T, k1) is not a bijection onto T0 x_G0 G1")
    return probs


def _describe(f: InternalFunctor) -> str:
    return f"{f.dom!r} -> {f.cod!r} f0={f.f0.table} f1={f.f1.table}"


def check_functor(f: InternalFunctor, report: SweepReport) -> None:
    t = report.tallies
    name = _describe(f)
    report.functors += 1
    try:
        verdicts = finality_verdicts(f)
        t["finality_agreement"].record(len(set(verdicts.values())) == 1,
                                       f"{name}: {verdicts}")
        fact = comprehensive_factorize(f)
        probs = factorization_problems(f, fact)
        t["factorization_soundness"].record(not probs, f"{name}: {probs}")
        tp, jp, kp = elements_factorization(f)
        phi = iso_search(fact.T, tp, over=(fact.K, kp), under=(fact.J, jp))
        t["oracle_equivalence"].record(phi is not None, name)
    except ConsistencyError as exc:
        report.consistency_errors.append(f"{name}: {exc}")
        return

    p0 = pi0_map(f)
    full = is_regular_epi(comparison_map(f))
    t["prop_es"].record(is_essentially_surjective(f) == is_regular_epi(p0), name)
    converse = is_equivalence_relation(f.cod)
    t["cor_full_mono"].record((not full or is_mono(p0)) and
                              (not converse or not is_mono(p0) or full), name)
    if is_equivalence_relation(f.dom) and is_equivalence_relation(f.cod):
        ff = full and is_mono(comparison_map(f))
        t["prop_ff_mono"].record(ff == is_mono(p0), name)


def square_problems(f: InternalFunctor, fp: InternalFunctor) -> list[str]:
    """Pullback stability of fullness/faithfulness, read in both directions."""
    _, fbar, fbar_p = pullback_groupoid(f, fp)
    probs = []
    for base, other, lifted in ((f, fp, fbar), (fp, f, fbar_p)):
        phi_base, phi_lift = comparison_map(base), comparison_map(lifted)
        full, lfull = is_regular_epi(phi_base), is_regular_epi(phi_lift)
        if full and not lfull:
            probs.append("full functor has a non-full pullback")
        if lfull and is_regular_epi(other.f1) and not full:
            probs.append("full pullback along a surjective leg, base not full")
        if is_mono(phi_base) and not is_mono(phi_lift):
            probs.append("faithful functor has a non-faithful pullback")
    return probs


def automorphisms(h: Groupoid) -> list[InternalFunctor]:
    return [a for a in enumerate_functors(h, h) if is_isomorphism(a)]


def _twisted(f: InternalFunctor, pre: InternalFunctor | None, post: InternalFunctor | None):
    f0, f1 = f.f0.table, f.f1.table
    if pre is not None:
        f0 = tuple(f0[x] for x in pre.f0.table)
        f1 = tuple(f1[x] for x in pre.f1.table)
    if post is not None:
        f0 = tuple(post.f0.table[x] for x in f0)
        f1 = tuple(post.f1.table[x] for x in f1)
    return f0, f1


def square_representatives(g: Groupoid, legs: list[InternalFunctor], auts: dict):
    """Cospans into ``g`` up to automorphisms of the three corners.

    Pullback squares of isomorphic cospans are isomorphic, and fullness and
    faithfulness are invariant under isomorphism, so one cospan per class
    covers every square.  Each yielded pair is meant to be checked in both
    directions; classes are yielded only with first-leg orbit index at most
    the second's, the swapped class being covered by the reverse reading.
    """
    dom_index = {}
    for f in legs:
        dom_index.setdefault(f.dom, len(dom_index))
    reps, keys = [], {}

    def canon(f, post=None):
        return (dom_index[f.dom],
                min(_twisted(f, a, post) for a in auts[f.dom]))

    for f in legs:
        k = canon(f)
        if k not in keys:
            keys[k] = len(reps)
            reps.append(f)
    ag = auts[g]
    act = [[keys[canon(f, gam)] for gam in ag] for f in reps]
    orbit_of = [-1] * len(reps)
    firsts = []
    for r in range(len(reps)):
        if orbit_of[r] < 0:
            for s in act[r]:
                orbit_of[s] = len(firsts)
            firsts.append(r)
    for r in firsts:
        stab = [j for j in range(len(ag)) if act[r][j] == r]
        seen = set()
        for r2 in range(len(reps)):
            if r2 in seen:
                continue
            seen.update(act[r2][j] for j in stab)
            if orbit_of[r2] >= orbit_of[r]:
                yield reps[r], reps[r2]


def _functor_chunk(args):
    h, g = args
    report = SweepReport()
    for f in enumerate_functors(h, g):
        check_functor(f, report)
    return report


def _square_chunk(args):
    g, legs, auts = args
    report = SweepReport()
    for f, fp in square_representatives(g, legs, auts):
        report.squares += 1
        probs = square_problems(f, fp)
        report.tallies["prop_pbff"].record(not probs, f"{_describe(f)} | {_describe(fp)}: {probs}")
    return report


def run_sweep(bounds: EnumerationBounds, jobs: int = 1, functors: bool = True,
              squares: bool = True) -> SweepReport:
    groupoids = list(enumerate_groupoids(bounds))
    report = SweepReport(groupoids=len(groupoids))
    pairs, square_jobs = [], []
    if functors:
        for h in groupoids:
            report.tallies["exact_fork"].record(exact_fork_check(h), repr(h))
        pairs = [(h, g) for h in groupoids for g in groupoids]
    if squares:
        auts = {h: automorphisms(h) for h in groupoids}
        for g in groupoids:
            legs = [f for h in groupoids for f in enumerate_functors(h, g)]
            square_jobs.append((g, legs, auts))

    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_functor_chunk, pairs))
            parts += list(pool.map(_square_chunk, square_jobs))
    else:
        parts = [_functor_chunk(p) for p in pairs]
        parts += [_square_chunk(s) for s in square_jobs]
    for part in parts:
        report.merge(part)
    log.info("sweep done: %d functors, %d squares", report.functors, report.squares)
    return report


def orthogonality_triples(bounds: EnumerationBounds, count: int = 100, max_arrows: int = 16):
    """Deterministic commutative squares from a final ``J`` to a fibration ``K``.

    Factorizations come from the first functor of each (domain, codomain)
    pair of the sweep; the non-invertible ``J`` and ``K`` parts are paired
    round-robin, so the squares spread over many different functors.
    """
    groupoids = list(enumerate_groupoids(bounds))
    js, ks = [], []
    for h in groupoids:
        for g in groupoids:
            for f in islice(enumerate_functors(h, g), 1):
                r = comprehensive_factorize(f)
                if len(r.T.arr) > max_arrows:
                    continue
                if not is_isomorphism(r.J):
                    js.append((f, r.J))
                if not is_isomorphism(r.K):
                    ks.append((f, r.K))
    out = []
    for shift in range(len(ks)):
        for n, (fj, j) in enumerate(js):
            fk, k = ks[(n + shift) % len(ks)]
            if fj == fk:
                continue
            for bottom in enumerate_functors(j.cod, k.cod):
                jb = compose_functors(j, bottom)
                allowed = [{v for v in k.dom.obj if k.f0.table[v] == jb.f0.table[x]}
                           for x in j.dom.obj]

                def arrow_ok(a, v, jb=jb, k=k):
                    return k.f1.table[v] == jb.f1.table[a]

                top = next(enumerate_functors(j.dom, k.dom, allowed, arrow_ok), None)
                if top is not None:
                    out.append((j, k, top, bottom))
                    break
            if len(out) >= count:
                return out
    return out


def check_orthogonality(triples) -> Tally:
    tally = Tally()
    for j, k, top, bottom in triples:
        try:
            orthogonal_fill(j, k, top, bottom)
            tally.record(True, "")
        except Exception as exc:  # noqa: BLE001 - any failure is a failed triple
            tally.record(False, f"{j!r} / {k!r}: {exc}")
    return tally


def functor_census(groupoids: list[Groupoid]) -> dict[tuple[int, int], int]:
    counts = defaultdict(int)
    for a, h in enumerate(groupoids):
        for b, g in enumerate(groupoids):
            counts[(a, b)] = sum(1 for _ in enumerate_functors(h, g))
    return dict(counts)
