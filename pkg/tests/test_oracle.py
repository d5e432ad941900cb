from itertools import combinations_with_replacement, product

import pytest

import small
from gpdfact import catalog as C
from gpdfact.dec import comprehensive_factorize, epsilon
from gpdfact.gpd import (
    ConsistencyError,
    InternalFunctor,
    compose_functors,
    functors_equal,
    identity_functor,
    is_essentially_surjective,
    is_isomorphism,
    validate_functor,
    validate_groupoid,
)
from gpdfact.oracle import (
    EnumerationBounds,
    NoDiagonalError,
    comma_groupoid,
    elements_factorization,
    enumerate_functors,
    enumerate_groupoids,
    is_final_comma,
    iso_search,
    orthogonal_fill,
)
from gpdfact.setcore import FinMap

ONE, BZ2, D2, I2 = C.terminal(), C.bz2(), C.discrete(2), C.codiscrete(2)
GROUP_SIZES = {"Z1": 1, "Z2": 2, "Z3": 3, "Z4": 4, "V4": 4, "Z5": 5, "Z6": 6, "S3": 6}


def census(max_components, max_objects, max_order, max_arrows):
    """Count skeletal groupoids by hand: multisets of (objects, group) blocks."""
    blocks = [n * n * k for n in range(1, max_objects + 1)
              for k in GROUP_SIZES.values() if k <= max_order]
    total = 0
    for size in range(1, max_components + 1):
        total += sum(1 for combo in combinations_with_replacement(range(len(blocks)), size)
                     if sum(blocks[i] for i in combo) <= max_arrows)
    return total


def test_comma_examples():
    c = comma_groupoid("*", identity_functor(BZ2))
    assert len(c.groupoid.obj) == 2
    assert is_final_comma(identity_functor(BZ2))
    c = comma_groupoid("*", C.point_into_bz2())
    assert len(c.groupoid.obj) == 2 and len(c.groupoid.arr) == 2  # units only
    empty_into = InternalFunctor(C.empty(), BZ2, FinMap(C.empty().obj, BZ2.obj, ()),
                                 FinMap(C.empty().arr, BZ2.arr, ()))
    assert len(comma_groupoid(0, empty_into).groupoid.obj) == 0
    with pytest.raises(ValueError):
        comma_groupoid("nope", identity_functor(BZ2))


def test_final_comma_examples():
    assert is_final_comma(identity_functor(D2))
    assert not is_final_comma(C.point_into_bz2())
    assert is_final_comma(identity_functor(C.empty()))


def test_elements_factorization_examples():
    t, j, k = elements_factorization(C.point_into_bz2())
    assert (len(t.obj), len(t.arr)) == (2, 4)
    t, j, k = elements_factorization(C.functor_from_labels(ONE, I2, {"*": "a"}, {"1": "1a"}))
    assert is_isomorphism(k)
    t, j, k = elements_factorization(identity_functor(BZ2))
    assert iso_search(t, BZ2) is not None


def test_enumerate_groupoid_examples():
    gs = list(enumerate_groupoids(EnumerationBounds(1, 1, 2, 8)))
    assert len(gs) == 2
    assert iso_search(gs[0], ONE) is not None and iso_search(gs[1], BZ2) is not None
    gs = list(enumerate_groupoids(EnumerationBounds(2, 1, 1, 8)))
    assert any(iso_search(g, D2) is not None for g in gs)
    assert list(enumerate_groupoids(EnumerationBounds(2, 2, 4, 0))) == []


@pytest.mark.parametrize("bounds", [(2, 2, 2, 8), (2, 2, 4, 8), (1, 2, 6, 24), (3, 1, 3, 6)])
def test_census_matches_hand_count(bounds):
    gs = list(enumerate_groupoids(EnumerationBounds(*bounds)))
    assert len(gs) == census(*bounds)
    for g in gs:
        assert validate_groupoid(g) == []


def test_enumerated_groupoids_pairwise_non_isomorphic():
    gs = list(enumerate_groupoids(EnumerationBounds(2, 2, 2, 8)))
    for a in range(len(gs)):
        for b in range(a + 1, len(gs)):
            if (len(gs[a].obj), len(gs[a].arr)) == (len(gs[b].obj), len(gs[b].arr)):
                assert iso_search(gs[a], gs[b]) is None


def test_bounds_are_validated():
    with pytest.raises(ValueError):
        EnumerationBounds(0, 1, 1, 1)
    with pytest.raises(ValueError):
        EnumerationBounds(1, 1, 7, 8)


def test_functor_counts():
    bz3 = C.skeletal_groupoid([(1, "Z3")])
    assert sum(1 for _ in enumerate_functors(ONE, BZ2)) == 1
    assert sum(1 for _ in enumerate_functors(BZ2, BZ2)) == 2
    assert sum(1 for _ in enumerate_functors(BZ2, bz3)) == 1


def _naive_functors(h, g):
    out = set()
    for f0 in product(range(len(g.obj)), repeat=len(h.obj)):
        for f1 in product(range(len(g.arr)), repeat=len(h.arr)):
            f = InternalFunctor(h, g, FinMap(h.obj, g.obj, f0), FinMap(h.arr, g.arr, f1))
            if not validate_functor(f):
                out.add((f0, f1))
    return out


def test_functor_enumeration_is_exhaustive():
    gs = [g for g in enumerate_groupoids(EnumerationBounds(2, 2, 4, 4))]
    for h in gs:
        for g in gs:
            found = {(f.f0.table, f.f1.table) for f in enumerate_functors(h, g)}
            assert found == _naive_functors(h, g), (h, g)


def test_iso_search_examples():
    from gpdfact.dec import dec
    assert iso_search(dec(BZ2), I2) is not None
    bz4 = C.skeletal_groupoid([(1, "Z4")])
    two = C.skeletal_groupoid([(1, "Z2"), (1, "Z2")])
    assert iso_search(bz4, two) is None
    phi = iso_search(BZ2, BZ2)
    assert phi is not None and is_isomorphism(phi)


def _squares(j, k):
    for bottom in enumerate_functors(j.cod, k.cod):
        for top in enumerate_functors(j.dom, k.dom):
            if functors_equal(compose_functors(top, k), compose_functors(j, bottom)):
                yield top, bottom


def test_fill_identity():
    k = epsilon(BZ2)
    j = identity_functor(I2)
    for top, bottom in _squares(j, k):
        assert functors_equal(orthogonal_fill(j, k, top, bottom), top)


def test_fill_final_against_cover():
    j = C.functor_from_labels(ONE, I2, {"*": "a"}, {"1": "1a"})
    k = epsilon(BZ2)
    squares = list(_squares(j, k))
    assert squares
    for top, bottom in squares:
        orthogonal_fill(j, k, top, bottom)


def test_fill_fails_for_non_final():
    j, k = C.point_into_bz2(), epsilon(BZ2)
    failures = 0
    for top, bottom in _squares(j, k):
        try:
            orthogonal_fill(j, k, top, bottom)
        except (NoDiagonalError, ConsistencyError):
            failures += 1
    assert failures > 0


def test_fill_rejects_non_commuting_square():
    j = C.functor_from_labels(ONE, I2, {"*": "a"}, {"1": "1a"})
    k = identity_functor(D2)
    top = C.functor_from_labels(ONE, D2, {"*": "b"}, {"1": "1b"})
    bottom = C.functor_from_labels(I2, D2, {"a": "a", "b": "a"},
                                   {"1a": "1a", "ab": "1a", "ba": "1a", "1b": "1a"})
    with pytest.raises(ValueError, match="does not commute"):
        orthogonal_fill(j, k, top, bottom)


def test_comma_nonempty_iff_essentially_surjective():
    for f in small.functors():
        nonempty = all(len(comma_groupoid(y, f).groupoid.obj) > 0 for y in f.cod.obj)
        assert nonempty == is_essentially_surjective(f)


def test_elements_match_factorization_small():
    for f in small.functors():
        r = comprehensive_factorize(f)
        t, j, k = elements_factorization(f)
        assert iso_search(r.T, t, over=(r.K, k), under=(r.J, j)) is not None
