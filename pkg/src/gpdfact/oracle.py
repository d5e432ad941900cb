"""Independent set-level ground truth.

Nothing here goes through the internal constructions (Dec, supports, pi0 via
coequalizers); it works directly with arrows, connectivity searches and
exhaustive backtracking, so it can check those constructions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Iterator

from .catalog import GROUP_ORDER, GROUP_TABLES, skeletal_groupoid
from .gpd import (
    ConsistencyError,
    Groupoid,
    InternalFunctor,
    compose_functors,
    functors_equal,
    groupoid_from_tables,
)
from .setcore import FinMap


def _components(n: int, edges) -> list[int]:
    """Component id per vertex, ids numbered in order of least member."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    comp = [-1] * n
    count = 0
    for start in range(n):
        if comp[start] >= 0:
            continue
        comp[start] = count
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if comp[w] < 0:
                    comp[w] = count
                    queue.append(w)
        count += 1
    return comp


@dataclass(frozen=True)
class CommaGroupoid:
    base_object: int
    objects: tuple[tuple[int, int], ...]  # (g, x): g from y to f0(x)
    arrows: tuple[tuple[int, int], ...]   # (g, h): (g, d h) -> (g . f1 h, c h)
    groupoid: Groupoid


def comma_groupoid(y, f: InternalFunctor) -> CommaGroupoid:
    """``(y | F)`` with objects ``(g: y -> F x, x)``."""
    h, g = f.dom, f.cod
    if isinstance(y, str):
        if not g.obj.has(y):
            raise ValueError(f"{y!r} is not an object of the codomain")
        y = g.obj.index(y)
    elif not 0 <= y < len(g.obj):
        raise ValueError(f"{y!r} is not an object of the codomain")
    f0, f1 = f.f0.table, f.f1.table
    gl, hl = g.arr.labels, h.arr.labels
    objs = [(a, x) for a in g.arr if g.d.table[a] == y
            for x in h.obj if f0[x] == g.c.table[a]]
    obj_set = set(objs)
    arrs = [(a, k) for a in g.arr for k in h.arr if (a, h.d.table[k]) in obj_set]

    def olab(a, x):
        return f"({gl[a]},{h.obj[x]})"

    def alab(a, k):
        return f"({gl[a]},{hl[k]})"

    def target(a, k):
        return g.comp(a, f1[k]), h.c.table[k]

    arrows = [(alab(a, k), olab(a, h.d.table[k]), olab(*target(a, k))) for a, k in arrs]
    units = {olab(a, x): alab(a, h.e.table[x]) for a, x in objs}
    inv = {alab(a, k): alab(g.comp(a, f1[k]), h.i.table[k]) for a, k in arrs}
    comp = {}
    for a, k in arrs:
        a2, _ = target(a, k)
        for k2 in h.arr:
            if h.d.table[k2] == h.c.table[k]:
                comp[(alab(a, k), alab(a2, k2))] = alab(a, h.comp(k, k2))
    gpd = groupoid_from_tables([olab(a, x) for a, x in objs], arrows, units, inv, comp)
    return CommaGroupoid(y, tuple(objs), tuple(arrs), gpd)


def is_final_comma(f: InternalFunctor) -> bool:
    """Every comma groupoid ``(y | F)`` is non-empty and connected."""
    for y in f.cod.obj:
        cg = comma_groupoid(y, f).groupoid
        if len(cg.obj) == 0:
            return False
        edges = zip(cg.d.table, cg.c.table)
        if max(_components(len(cg.obj), edges)) != 0:
            return False
    return True


def elements_factorization(f: InternalFunctor):
    """Classical factorization through the groupoid of components of ``(F | y)``.

    Returns ``(T', J', K')`` with ``K'`` a discrete fibration by construction.
    """
    h, g = f.dom, f.cod
    f0, f1 = f.f0.table, f.f1.table
    pts = [(x, a) for x in h.obj for a in g.arr if g.d.table[a] == f0[x]]
    where = {p: k for k, p in enumerate(pts)}
    edges = []
    for (x, a), k in where.items():
        for hk in h.arr:
            if h.d.table[hk] == x:
                moved = (h.c.table[hk], g.comp(g.i.table[f1[hk]], a))
                edges.append((k, where[moved]))
    comp_of = _components(len(pts), edges)
    n_t = max(comp_of, default=-1) + 1
    first = [None] * n_t
    for k, cid in enumerate(comp_of):
        if first[cid] is None:
            first[cid] = pts[k]
    cls = lambda p: comp_of[where[p]]  # noqa: E731

    k0 = [None] * n_t
    for (_, a), k in where.items():
        y = g.c.table[a]
        if k0[comp_of[k]] not in (None, y):
            raise ConsistencyError("k0 is not constant on a component")
        k0[comp_of[k]] = y

    tlab = [f"[{h.obj[x]},{g.arr[a]}]" for x, a in first]
    t_arrows = [(t, gam) for t in range(n_t) for gam in g.arr if g.d.table[gam] == k0[t]]

    def alab(t, gam):
        return f"({tlab[t]},{g.arr[gam]})"

    def act(t, gam):
        results = {cls((x, g.comp(a, gam))) for (x, a), k in where.items()
                   if comp_of[k] == t}
        if len(results) != 1:
            raise ConsistencyError("transport along an arrow is not well defined")
        return results.pop()

    target = {(t, gam): act(t, gam) for t, gam in t_arrows}
    arrows = [(alab(t, gam), tlab[t], tlab[target[(t, gam)]]) for t, gam in t_arrows]
    units = {tlab[t]: alab(t, g.e.table[k0[t]]) for t in range(n_t)}
    inv = {alab(t, gam): alab(target[(t, gam)], g.i.table[gam]) for t, gam in t_arrows}
    comp = {}
    for t, gam in t_arrows:
        t2 = target[(t, gam)]
        for gam2 in g.arr:
            if g.d.table[gam2] == k0[t2]:
                comp[(alab(t, gam), alab(t2, gam2))] = alab(t, g.comp(gam, gam2))
    tp = groupoid_from_tables(tlab, arrows, units, inv, comp)

    j0 = {h.obj[x]: tlab[cls((x, g.e.table[f0[x]]))] for x in h.obj}
    j1 = {h.arr[k]: alab(cls((h.d.table[k], g.e.table[f0[h.d.table[k]]])), f1[k])
          for k in h.arr}
    jp = InternalFunctor(h, tp, FinMap.from_labels(h.obj, tp.obj, j0),
                         FinMap.from_labels(h.arr, tp.arr, j1))
    kp = InternalFunctor(tp, g, FinMap(tp.obj, g.obj, tuple(k0)),
                         FinMap(tp.arr, g.arr, tuple(gam for _, gam in t_arrows)))
    if not functors_equal(compose_functors(jp, kp), f):
        raise ConsistencyError("K' . J' does not reproduce F")
    return tp, jp, kp


@dataclass(frozen=True)
class EnumerationBounds:
    max_components: int = 2
    max_objects_per_component: int = 2
    max_vertex_group_order: int = 4
    max_total_arrows: int = 8

    def __post_init__(self):
        if min(self.max_components, self.max_objects_per_component,
               self.max_vertex_group_order) < 1 or self.max_total_arrows < 0:
            raise ValueError("enumeration bounds must be positive")
        if self.max_vertex_group_order > 6:
            raise ValueError("the built-in group table stops at order 6")


def connected_shapes(b: EnumerationBounds) -> list[tuple[int, str]]:
    return [(n, name) for n in range(1, b.max_objects_per_component + 1)
            for name in GROUP_ORDER
            if len(GROUP_TABLES[name]) <= b.max_vertex_group_order
            and n * n * len(GROUP_TABLES[name]) <= b.max_total_arrows]


def enumerate_groupoid_shapes(b: EnumerationBounds) -> Iterator[tuple[tuple[int, str], ...]]:
    shapes = connected_shapes(b)
    for k in range(1, b.max_components + 1):
        for combo in combinations_with_replacement(shapes, k):
            if sum(n * n * len(GROUP_TABLES[name]) for n, name in combo) <= b.max_total_arrows:
                yield combo


def enumerate_groupoids(b: EnumerationBounds) -> Iterator[Groupoid]:
    """One groupoid per isomorphism class within the bounds (non-empty ones)."""
    for combo in enumerate_groupoid_shapes(b):
        yield skeletal_groupoid(list(combo))


def _arrow_search(h: Groupoid, g: Groupoid, f0: list[int], arrow_ok=None,
                  injective: bool = False) -> Iterator[list[int]]:
    """All arrow maps over the object map ``f0`` that make a functor."""
    hd, hc, gd, gc = h.d.table, h.c.table, g.d.table, g.c.table
    hom: dict[tuple[int, int], list[int]] = {}
    for a in g.arr:
        hom.setdefault((gd[a], gc[a]), []).append(a)
    order = list(h.arr)
    pos = {a: k for k, a in enumerate(order)}
    triples = list(zip(h.p1.table, h.p2.table, h.m.table))
    check_at: list[list[tuple[int, int, int]]] = [[] for _ in order]
    forced_by: list[list[tuple[int, int]]] = [[] for _ in order]
    for a, b, ab in triples:
        check_at[max(pos[a], pos[b], pos[ab])].append((a, b, ab))
        if pos[ab] > max(pos[a], pos[b]):
            forced_by[pos[ab]].append((a, b))
    units = set(h.e.table)
    f1 = [-1] * len(order)
    used: set[int] = set()

    def rec(k):
        if k == len(order):
            yield list(f1)
            return
        a = order[k]
        if a in units:
            cands = [g.e.table[f0[hd[a]]]]
        elif forced_by[k]:
            x, y = forced_by[k][0]
            cands = [g.comp(f1[x], f1[y])] if g.composable(f1[x], f1[y]) else []
        else:
            cands = hom.get((f0[hd[a]], f0[hc[a]]), [])
        for v in cands:
            if gd[v] != f0[hd[a]] or gc[v] != f0[hc[a]]:
                continue
            if injective and v in used:
                continue
            if arrow_ok is not None and not arrow_ok(a, v):
                continue
            f1[a] = v
            ok = True
            for x, y, xy in check_at[k]:
                fx, fy = f1[x], f1[y]
                if not g.composable(fx, fy) or g.comp(fx, fy) != f1[xy]:
                    ok = False
                    break
            if ok:
                used.add(v)
                yield from rec(k + 1)
                used.discard(v)
            f1[a] = -1

    yield from rec(0)


def enumerate_functors(h: Groupoid, g: Groupoid, obj_allowed=None,
                       arrow_ok=None) -> Iterator[InternalFunctor]:
    """Every functor ``H -> G`` (optionally restricted per object / arrow)."""
    choices = [list(g.obj) if obj_allowed is None else sorted(obj_allowed[x])
               for x in h.obj]
    for f0 in product(*choices):
        f0 = list(f0)
        for f1 in _arrow_search(h, g, f0, arrow_ok):
            yield InternalFunctor(h, g, FinMap(h.obj, g.obj, tuple(f0)),
                                  FinMap(h.arr, g.arr, tuple(f1)))


def iso_search(a: Groupoid, b: Groupoid, over=None, under=None) -> InternalFunctor | None:
    """An isomorphism ``A -> B``, or None.

    ``over=(KA, KB)`` demands ``KB . phi = KA``; ``under=(JA, JB)`` demands
    ``phi . JA = JB``.
    """
    if len(a.obj) != len(b.obj) or len(a.arr) != len(b.arr):
        return None
    pinned: dict[int, int] = {}
    pinned_arr: dict[int, int] = {}
    if under is not None:
        ja, jb = under
        for x, y in zip(ja.f0.table, jb.f0.table):
            if pinned.setdefault(x, y) != y:
                return None
        for x, y in zip(ja.f1.table, jb.f1.table):
            if pinned_arr.setdefault(x, y) != y:
                return None
    ka0 = kb0 = ka1 = kb1 = None
    if over is not None:
        ka, kb = over
        ka0, kb0, ka1, kb1 = ka.f0.table, kb.f0.table, ka.f1.table, kb.f1.table

    # breadth-first object order so every non-root object has a parent arrow
    parent: dict[int, int | None] = {}
    order: list[int] = []
    roots = list(pinned) + [x for x in a.obj if x not in pinned]
    out_of: dict[int, list[int]] = {}
    for k in a.arr:
        out_of.setdefault(a.d.table[k], []).append(k)
    for r in roots:
        if r in parent:
            continue
        parent[r] = None
        queue = deque([r])
        while queue:
            v = queue.popleft()
            order.append(v)
            for k in out_of.get(v, ()):
                w = a.c.table[k]
                if w not in parent:
                    parent[w] = k
                    queue.append(w)
    b_out: dict[int, list[int]] = {}
    for k in b.arr:
        b_out.setdefault(b.d.table[k], []).append(k)

    f0 = [-1] * len(a.obj)
    used: set[int] = set()

    def arrow_ok(k, v):
        if k in pinned_arr and pinned_arr[k] != v:
            return False
        return ka1 is None or kb1[v] == ka1[k]

    def rec(n):
        if n == len(order):
            for f1 in _arrow_search(a, b, f0, arrow_ok, injective=True):
                return InternalFunctor(a, b, FinMap(a.obj, b.obj, tuple(f0)),
                                       FinMap(a.arr, b.arr, tuple(f1)))
            return None
        x = order[n]
        if x in pinned:
            cands = [pinned[x]]
        elif parent[x] is not None:
            k = parent[x]
            cands = sorted({b.c.table[v] for v in b_out.get(f0[a.d.table[k]], ())
                            if arrow_ok(k, v)})
        else:
            cands = list(b.obj)
        for y in cands:
            if y in used or (ka0 is not None and kb0[y] != ka0[x]):
                continue
            f0[x] = y
            used.add(y)
            found = rec(n + 1)
            if found is not None:
                return found
            used.discard(y)
            f0[x] = -1
        return None

    return rec(0)


class NoDiagonalError(ValueError):
    def __init__(self, square):
        super().__init__("commutative square has no diagonal filler")
        self.square = square


def orthogonal_fill(j: InternalFunctor, dfib: InternalFunctor, top: InternalFunctor,
                    bottom: InternalFunctor) -> InternalFunctor:
    """The unique ``L: B -> X`` with ``L . J = top`` and ``D . L = bottom``.

    Found by exhaustive functor search; raises NoDiagonalError when there is
    none and ConsistencyError when there are several.
    """
    if not functors_equal(compose_functors(top, dfib), compose_functors(j, bottom)):
        raise ValueError("square does not commute")
    b, x = j.cod, dfib.dom
    allowed = [{v for v in x.obj if dfib.f0.table[v] == bottom.f0.table[u]} for u in b.obj]
    for a_obj, u in enumerate(j.f0.table):
        allowed[u] &= {top.f0.table[a_obj]}
    top_of = {}
    for a_arr, u in enumerate(j.f1.table):
        top_of.setdefault(u, set()).add(top.f1.table[a_arr])

    def arrow_ok(u, v):
        return dfib.f1.table[v] == bottom.f1.table[u] and top_of.get(u, {v}) == {v}

    found = []
    for cand in enumerate_functors(b, x, allowed, arrow_ok):
        found.append(cand)
        if len(found) > 1:
            raise ConsistencyError("square has more than one diagonal filler")
    if not found:
        raise NoDiagonalError((j, dfib, top, bottom))
    return found[0]
