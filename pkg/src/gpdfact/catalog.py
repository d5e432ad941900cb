"""Small named groupoids and the skeletal builder used by the enumerator."""

from __future__ import annotations

from .gpd import Groupoid, InternalFunctor, groupoid_from_tables
from .setcore import FinMap

# Multiplication tables, element 0 the identity, row a / column b holds a*b.
GROUP_TABLES: dict[str, list[list[int]]] = {
    "Z1": [[0]],
    "Z2": [[0, 1],
           [1, 0]],
    "Z3": [[0, 1, 2],
           [1, 2, 0],
           [2, 0, 1]],
    "Z4": [[0, 1, 2, 3],
           [1, 2, 3, 0],
           [2, 3, 0, 1],
           [3, 0, 1, 2]],
    "V4": [[0, 1, 2, 3],
           [1, 0, 3, 2],
           [2, 3, 0, 1],
           [3, 2, 1, 0]],
    "Z5": [[0, 1, 2, 3, 4],
           [1, 2, 3, 4, 0],
           [2, 3, 4, 0, 1],
           [3, 4, 0, 1, 2],
           [4, 0, 1, 2, 3]],
    "Z6": [[0, 1, 2, 3, 4, 5],
           [1, 2, 3, 4, 5, 0],
           [2, 3, 4, 5, 0, 1],
           [3, 4, 5, 0, 1, 2],
           [4, 5, 0, 1, 2, 3],
           [5, 0, 1, 2, 3, 4]],
    "S3": [[0, 1, 2, 3, 4, 5],
           [1, 2, 0, 4, 5, 3],
           [2, 0, 1, 5, 3, 4],
           [3, 5, 4, 0, 2, 1],
           [4, 3, 5, 1, 0, 2],
           [5, 4, 3, 2, 1, 0]],
}

# one entry per isomorphism class, ordered by group order
GROUP_ORDER = ["Z1", "Z2", "Z3", "Z4", "V4", "Z5", "Z6", "S3"]


def skeletal_groupoid(shapes: list[tuple[int, str]]) -> Groupoid:
    """Disjoint union of codiscrete-times-group components.

    Each ``(n, name)`` contributes ``n`` objects with every hom-set a copy of
    the group ``name``; arrow ``x{i}->x{j}:{k}`` composes by multiplying
    group elements.
    """
    objects, arrows, units, inv, comp = [], [], {}, {}, {}
    offset = 0
    for n, name in shapes:
        table = GROUP_TABLES[name]
        order = len(table)
        inverse = [row.index(0) for row in table]
        xs = [f"x{offset + k}" for k in range(n)]
        objects.extend(xs)

        def lab(a, b, g, xs=xs):
            return f"{xs[a]}->{xs[b]}:{g}"

        for a in range(n):
            units[xs[a]] = lab(a, a, 0)
            for b in range(n):
                for g in range(order):
                    arrows.append((lab(a, b, g), xs[a], xs[b]))
                    inv[lab(a, b, g)] = lab(b, a, inverse[g])
                    for c in range(n):
                        for h in range(order):
                            comp[(lab(a, b, g), lab(b, c, h))] = lab(a, c, table[g][h])
        offset += n
    return groupoid_from_tables(objects, arrows, units, inv, comp)


def empty() -> Groupoid:
    return groupoid_from_tables([], [], {}, {}, {})


def terminal() -> Groupoid:
    """The one-object, one-arrow groupoid."""
    return groupoid_from_tables(["*"], [("1", "*", "*")], {"*": "1"}, {"1": "1"},
                                {("1", "1"): "1"})


def bz2() -> Groupoid:
    """One object whose arrows form the group of order two."""
    comp = {("1", "1"): "1", ("1", "s"): "s", ("s", "1"): "s", ("s", "s"): "1"}
    return groupoid_from_tables(["*"], [("1", "*", "*"), ("s", "*", "*")],
                                {"*": "1"}, {"1": "1", "s": "s"}, comp)


def discrete(n: int = 2) -> Groupoid:
    names = "abcdefghijklmnopqrstuvwxyz"[:n]
    return groupoid_from_tables(
        list(names), [(f"1{x}", x, x) for x in names],
        {x: f"1{x}" for x in names}, {f"1{x}": f"1{x}" for x in names},
        {(f"1{x}", f"1{x}"): f"1{x}" for x in names})


def codiscrete(n: int = 2) -> Groupoid:
    names = "abcdefghijklmnopqrstuvwxyz"[:n]

    def lab(x, y):
        return f"1{x}" if x == y else f"{x}{y}"

    arrows = [(lab(x, y), x, y) for x in names for y in names]
    comp = {(lab(x, y), lab(y, z)): lab(x, z)
            for x in names for y in names for z in names}
    return groupoid_from_tables(list(names), arrows, {x: lab(x, x) for x in names},
                                {lab(x, y): lab(y, x) for x in names for y in names}, comp)


def functor_from_labels(dom: Groupoid, cod: Groupoid, f0: dict[str, str],
                        f1: dict[str, str]) -> InternalFunctor:
    return InternalFunctor(dom, cod, FinMap.from_labels(dom.obj, cod.obj, f0),
                           FinMap.from_labels(dom.arr, cod.arr, f1))


def point_into_bz2() -> InternalFunctor:
    return functor_from_labels(terminal(), bz2(), {"*": "*"}, {"1": "1"})
