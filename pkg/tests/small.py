"""A small deterministic sweep shared by the module tests."""

from functools import lru_cache

from gpdfact.oracle import EnumerationBounds, enumerate_functors, enumerate_groupoids

SMALL = EnumerationBounds(2, 2, 2, 6)


@lru_cache(maxsize=None)
def groupoids():
    return tuple(enumerate_groupoids(SMALL))


@lru_cache(maxsize=None)
def functors():
    gs = groupoids()
    return tuple(f for h in gs for g in gs for f in enumerate_functors(h, g))
