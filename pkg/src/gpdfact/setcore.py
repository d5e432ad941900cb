"""Finite sets, total maps, and the finite limits/colimits of FinSet.

Elements of a :class:`FinSet` are the indices ``0..n-1``; ``labels[i]`` names
element ``i``.  Derived sets get synthesized labels (``"(a,b)"`` for pairs,
the least member's label for quotient classes) and a canonical element
order, so rebuilding anything from equal inputs gives identical values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping


class BoundaryError(ValueError):
    """Maps do not share the domain/codomain an operation requires."""


class CompositionError(BoundaryError):
    pass


def pair_label(a: str, b: str) -> str:
    return f"({a},{b})"


@dataclass(frozen=True)
class FinSet:
    labels: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        index = dict(zip(labels, range(len(labels))))
        if len(index) != len(labels):
            seen = set()
            dups = [lab for lab in labels if lab in seen or seen.add(lab)]
            raise ValueError(f"duplicate labels in finite set: {dups}")
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(range(len(self.labels)))

    def __getitem__(self, k: int) -> str:
        return self.labels[k]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{label!r} is not an element of {self}") from None

    def has(self, label: str) -> bool:
        return label in self._index

    def __repr__(self):
        return "{" + ", ".join(self.labels) + "}"


EMPTY = FinSet(())


@dataclass(frozen=True)
class FinMap:
    dom: FinSet
    cod: FinSet
    table: tuple[int, ...]

    def __post_init__(self):
        table = self.table
        if type(table) is not tuple:
            table = tuple(table)
            object.__setattr__(self, "table", table)
        if len(table) != len(self.dom.labels):
            raise ValueError(
                f"table has {len(table)} entries for a domain of size {len(self.dom)}")
        n = len(self.cod.labels)
        if table and (min(table) < 0 or max(table) >= n):
            k = next(k for k, v in enumerate(table) if not 0 <= v < n)
            raise ValueError(
                f"image of {self.dom[k]!r} is outside the codomain {self.cod}")

    def __call__(self, k: int) -> int:
        return self.table[k]

    @classmethod
    def from_labels(cls, dom: FinSet, cod: FinSet, mapping: Mapping[str, str]) -> FinMap:
        missing = [lab for lab in dom.labels if lab not in mapping]
        if missing:
            raise ValueError(f"map is not total: no image for {missing}")
        return cls(dom, cod, tuple(cod.index(mapping[lab]) for lab in dom.labels))

    def as_dict(self) -> dict[str, str]:
        return {self.dom[k]: self.cod[v] for k, v in enumerate(self.table)}

    def __repr__(self):
        body = ", ".join(f"{a}->{b}" for a, b in self.as_dict().items())
        return f"FinMap({body})"


def same_set(a: FinSet, b: FinSet) -> bool:
    return a is b or a.labels == b.labels


def compose(f: FinMap, g: FinMap) -> FinMap:
    """``g`` after ``f`` (diagrammatic order: first ``f``, then ``g``)."""
    if not same_set(f.cod, g.dom):
        raise CompositionError(f"cannot compose: codomain {f.cod} != domain {g.dom}")
    return FinMap(f.dom, g.cod, tuple(map(g.table.__getitem__, f.table)))


def compose_all(*maps: FinMap) -> FinMap:
    out = maps[0]
    for g in maps[1:]:
        out = compose(out, g)
    return out


def identity(a: FinSet) -> FinMap:
    return FinMap(a, a, tuple(range(len(a))))


def is_mono(f: FinMap) -> bool:
    return len(set(f.table)) == len(f.table)


def is_regular_epi(f: FinMap) -> bool:
    # every epi in FinSet is regular
    return len(set(f.table)) == len(f.cod)


def is_bijective(f: FinMap) -> bool:
    return len(f.dom) == len(f.cod) and is_mono(f)


def inverse(f: FinMap) -> FinMap:
    if not is_bijective(f):
        raise ValueError(f"{f} is not a bijection")
    table = [0] * len(f.cod)
    for k, v in enumerate(f.table):
        table[v] = k
    return FinMap(f.cod, f.dom, tuple(table))


def constant(a: FinSet, b: FinSet, k: int) -> FinMap:
    return FinMap(a, b, (k,) * len(a))


@lru_cache(maxsize=1024)
def product(a: FinSet, b: FinSet) -> tuple[FinSet, FinMap, FinMap]:
    """Cartesian product in A-major lexicographic order, with projections."""
    nb = len(b)
    p = FinSet(pair_label(x, y) for x in a.labels for y in b.labels)
    p1 = FinMap(p, a, tuple(k // nb for k in range(len(p))))
    p2 = FinMap(p, b, tuple(k % nb for k in range(len(p))))
    return p, p1, p2


def pairing(f: FinMap, g: FinMap, prod: FinSet | None = None) -> FinMap:
    """The map ``z -> (f z, g z)`` into ``cod(f) x cod(g)``."""
    if not same_set(f.dom, g.dom):
        raise BoundaryError(f"pairing needs a common domain: {f.dom} vs {g.dom}")
    if prod is None:
        prod = product(f.cod, g.cod)[0]
    nb = len(g.cod)
    return FinMap(f.dom, prod, tuple(x * nb + y for x, y in zip(f.table, g.table)))


def product_map(f: FinMap, g: FinMap, dom: FinSet | None = None,
                cod: FinSet | None = None) -> FinMap:
    """``f x g`` between the canonical products."""
    if dom is None:
        dom = product(f.dom, g.dom)[0]
    if cod is None:
        cod = product(f.cod, g.cod)[0]
    nb, nb2 = len(g.dom), len(g.cod)
    table = []
    for k in range(len(dom)):
        x, y = divmod(k, nb)
        table.append(f.table[x] * nb2 + g.table[y])
    return FinMap(dom, cod, tuple(table))


def pullback(f: FinMap, g: FinMap) -> tuple[FinSet, FinMap, FinMap]:
    """``{(a, b) : f(a) = g(b)}`` in lexicographic order, with both projections."""
    if not same_set(f.cod, g.cod):
        raise BoundaryError(f"pullback needs a common codomain: {f.cod} vs {g.cod}")
    fibres: dict[int, list[int]] = {}
    for b, v in enumerate(g.table):
        fibres.setdefault(v, []).append(b)
    pairs = [(a, b) for a, v in enumerate(f.table) for b in fibres.get(v, ())]
    left, right = (tuple(t) for t in zip(*pairs)) if pairs else ((), ())
    al, bl = f.dom.labels, g.dom.labels
    p = FinSet([f"({al[a]},{bl[b]})" for a, b in pairs])
    return p, FinMap(p, f.dom, left), FinMap(p, g.dom, right)


def kernel_pair(f: FinMap) -> tuple[FinSet, FinMap, FinMap]:
    return pullback(f, f)


def pair_lookup(p1: FinMap, p2: FinMap) -> dict[tuple[int, int], int]:
    return {(a, b): k for k, (a, b) in enumerate(zip(p1.table, p2.table))}


def pullback_induce(p1: FinMap, p2: FinMap, u: FinMap, v: FinMap,
                    lookup: dict[tuple[int, int], int] | None = None) -> FinMap:
    """The map ``z -> (u z, v z)`` into a pullback given by its projections."""
    if not same_set(u.dom, v.dom):
        raise BoundaryError(f"cone legs need a common domain: {u.dom} vs {v.dom}")
    if lookup is None:
        lookup = pair_lookup(p1, p2)
    table = tuple(map(lookup.get, zip(u.table, v.table)))
    if None in table:
        z = table.index(None)
        raise BoundaryError(
            f"cone does not commute at {u.dom[z]!r}: no element over "
            f"{(u.table[z], v.table[z])}")
    return FinMap(u.dom, p1.dom, table)


def equalizer(f: FinMap, g: FinMap) -> tuple[FinSet, FinMap]:
    if not (same_set(f.dom, g.dom) and same_set(f.cod, g.cod)):
        raise BoundaryError("equalizer needs parallel maps")
    keep = [x for x in f.dom if f.table[x] == g.table[x]]
    sub = FinSet(f.dom.labels[x] for x in keep)
    return sub, FinMap(sub, f.dom, tuple(keep))


class UnionFind:
    """Union-find over ``range(n)`` whose roots are always least members."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx < ry:
            self.parent[ry] = rx
        elif ry < rx:
            self.parent[rx] = ry


def quotient(b: FinSet, pairs: Iterable[tuple[int, int]]) -> tuple[FinSet, FinMap]:
    """Quotient of ``b`` by the equivalence relation generated by ``pairs``."""
    uf = UnionFind(len(b))
    for x, y in pairs:
        uf.union(x, y)
    roots = [uf.find(x) for x in b]
    reps = sorted(set(roots))
    cls = {r: k for k, r in enumerate(reps)}
    q_set = FinSet(b.labels[r] for r in reps)
    return q_set, FinMap(b, q_set, tuple(cls[r] for r in roots))


def coequalizer(f: FinMap, g: FinMap) -> tuple[FinSet, FinMap]:
    if not (same_set(f.dom, g.dom) and same_set(f.cod, g.cod)):
        raise BoundaryError("coequalizer needs parallel maps")
    return quotient(f.cod, zip(f.table, g.table))


def factor_through_quotient(q: FinMap, h: FinMap) -> FinMap | None:
    """The map ``k`` with ``k . q = h``, or None when ``h`` is not constant on classes."""
    if not same_set(q.dom, h.dom):
        raise BoundaryError("maps out of a quotient need the same domain")
    table: list[int | None] = [None] * len(q.cod)
    for x, cls in enumerate(q.table):
        if table[cls] is None:
            table[cls] = h.table[x]
        elif table[cls] != h.table[x]:
            return None
    if any(v is None for v in table):
        raise BoundaryError("first map is not surjective")
    return FinMap(q.cod, h.cod, tuple(table))


def image_factorize(f: FinMap) -> tuple[FinMap, FinMap]:
    """``f = mono . repi``; image ordered by first preimage occurrence."""
    order: dict[int, int] = {}
    for v in f.table:
        if v not in order:
            order[v] = len(order)
    im = FinSet(f.cod.labels[v] for v in order)
    repi = FinMap(f.dom, im, tuple(order[v] for v in f.table))
    mono = FinMap(im, f.cod, tuple(order))
    return repi, mono


def is_jointly_monic(f: FinMap, g: FinMap) -> bool:
    if not same_set(f.dom, g.dom):
        raise BoundaryError(f"jointly monic check needs a common domain: {f.dom} vs {g.dom}")
    return len(set(zip(f.table, g.table))) == len(f.table)
