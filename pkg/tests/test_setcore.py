import pytest

import exhaustive
from gpdfact.setcore import (
    EMPTY,
    BoundaryError,
    CompositionError,
    FinMap,
    FinSet,
    coequalizer,
    compose,
    compose_all,
    constant,
    equalizer,
    factor_through_quotient,
    identity,
    image_factorize,
    inverse,
    is_bijective,
    is_jointly_monic,
    is_mono,
    is_regular_epi,
    kernel_pair,
    pairing,
    product,
    pullback,
    pullback_induce,
    quotient,
)

AB = FinSet(["a", "b"])
ZERO = FinSet(["0"])
ZO = FinSet(["0", "1"])


def fmap(dom, cod, **kv):
    return FinMap.from_labels(dom, cod, kv)


def test_finset_labels():
    s = FinSet(["x", "y"])
    assert len(s) == 2 and list(s) == [0, 1] and s[1] == "y" and s.index("x") == 0
    assert s.has("y") and not s.has("z")
    with pytest.raises(ValueError):
        FinSet(["x", "x"])
    with pytest.raises(KeyError):
        s.index("z")
    assert FinSet(["x", "y"]) == s and FinSet(["y", "x"]) != s


def test_finmap_must_be_total_and_in_range():
    with pytest.raises(ValueError, match="outside the codomain"):
        FinMap(AB, ZERO, (0, 1))
    with pytest.raises(ValueError, match="entries"):
        FinMap(AB, ZERO, (0,))
    with pytest.raises(ValueError):
        FinMap.from_labels(AB, ZERO, {"a": "0"})


def test_compose_examples():
    f = FinMap(FinSet(["a"]), ZERO, (0,))
    g = FinMap(ZERO, FinSet(["z"]), (0,))
    assert compose(f, g).as_dict() == {"a": "z"}
    f = fmap(AB, ZO, a="0", b="1")
    g = fmap(ZO, FinSet(["z"]), **{"0": "z", "1": "z"})
    assert compose(f, g).as_dict() == {"a": "z", "b": "z"}
    assert compose(identity(AB), f) == f == compose(f, identity(ZO))
    with pytest.raises(CompositionError):
        compose(g, f)
    assert compose_all(f, g) == compose(f, g)


def test_identity():
    assert identity(AB).as_dict() == {"a": "a", "b": "b"}
    assert identity(EMPTY).table == ()
    assert compose(identity(AB), identity(AB)) == identity(AB)


def test_mono_and_repi():
    f = fmap(AB, ZERO, a="0", b="0")
    assert not is_mono(f) and is_regular_epi(f)
    assert is_mono(identity(AB)) and is_regular_epi(identity(AB))
    incl = FinMap(FinSet(["a"]), ZO, (0,))
    assert is_mono(incl) and not is_regular_epi(incl)
    assert is_bijective(identity(AB))
    swap = fmap(AB, AB, a="b", b="a")
    assert compose(swap, inverse(swap)) == identity(AB)
    with pytest.raises(ValueError):
        inverse(f)


def test_product_examples():
    p, _, _ = product(FinSet(["x"]), FinSet(["y"]))
    assert p.labels == ("(x,y)",)
    p, p1, p2 = product(AB, FinSet(["c"]))
    assert p.labels == ("(a,c)", "(b,c)")
    assert p1.as_dict() == {"(a,c)": "a", "(b,c)": "b"}
    assert len(product(AB, EMPTY)[0]) == 0
    k = pairing(identity(AB), constant(AB, ZERO, 0))
    assert k.cod.labels == ("(a,0)", "(b,0)")


def test_pullback_examples():
    f = fmap(AB, ZO, a="0", b="1")
    g = FinMap(FinSet(["c"]), ZO, (0,))
    p, _, _ = pullback(f, g)
    assert p.labels == ("(a,c)",)
    graph, p1, p2 = pullback(f, identity(ZO))
    assert is_bijective(p1) and compose(p1, f) == p2
    const = fmap(AB, ZERO, a="0", b="0")
    assert len(kernel_pair(const)[0]) == 4


def test_pullback_induce_rejects_non_cone():
    f = fmap(AB, ZO, a="0", b="1")
    _, p1, p2 = pullback(f, f)
    one = FinSet(["*"])
    with pytest.raises(BoundaryError):
        pullback_induce(p1, p2, FinMap(one, AB, (0,)), FinMap(one, AB, (1,)))


def test_equalizer_examples():
    f = fmap(AB, ZO, a="0", b="1")
    e, incl = equalizer(f, f)
    assert is_bijective(incl)
    e, incl = equalizer(identity(AB), fmap(AB, AB, a="a", b="a"))
    assert e.labels == ("a",)
    e, _ = equalizer(fmap(AB, ZO, a="0", b="0"), fmap(AB, ZO, a="1", b="1"))
    assert len(e) == 0


def test_coequalizer_examples():
    f = fmap(AB, ZO, a="0", b="1")
    qs, q = coequalizer(f, f)
    assert is_bijective(q)
    b = FinSet(["0", "1", "2"])
    xy = FinSet(["x", "y"])
    qs, q = coequalizer(fmap(xy, b, x="0", y="1"), fmap(xy, b, x="1", y="2"))
    assert qs.labels == ("0",)
    qs, q = coequalizer(FinMap(EMPTY, b, ()), FinMap(EMPTY, b, ()))
    assert qs == b and is_bijective(q)


def test_quotient_uses_least_member_labels():
    b = FinSet(["p", "q", "r", "s"])
    qs, q = quotient(b, [(3, 1), (2, 0)])
    assert qs.labels == ("p", "q")
    assert q.table == (0, 1, 0, 1)


def test_factor_through_quotient():
    const = fmap(AB, ZERO, a="0", b="0")
    qs, q = coequalizer(*kernel_pair(const)[1:])
    assert factor_through_quotient(q, identity(AB)) is None
    k = factor_through_quotient(q, const)
    assert compose(q, k) == const


def test_kernel_pair_examples():
    f = fmap(AB, ZO, a="0", b="1")
    r, r1, r2 = kernel_pair(f)
    assert r1 == r2 and is_bijective(r1)
    assert len(kernel_pair(fmap(AB, ZERO, a="0", b="0"))[0]) == 4


def test_image_examples():
    e, m = image_factorize(fmap(AB, ZO, a="1", b="1"))
    assert len(e.cod) == 1
    e, _ = image_factorize(fmap(AB, ZO, a="0", b="1"))
    assert is_bijective(e)
    ba = FinSet(["b", "a"])
    e, m = image_factorize(fmap(ba, ZO, b="1", a="0"))
    assert e.cod.labels == ("1", "0")


def test_jointly_monic():
    assert is_jointly_monic(identity(AB), identity(AB))
    c = fmap(AB, ZERO, a="0", b="0")
    assert not is_jointly_monic(c, c)
    assert is_jointly_monic(identity(AB), c)


def test_labels_are_deterministic():
    f = fmap(AB, ZO, a="0", b="0")
    assert pullback(f, f)[0].labels == pullback(f, f)[0].labels
    assert coequalizer(*kernel_pair(f)[1:])[0].labels == ("a",)


def test_lift_counter_sees_non_unique_maps():
    # sanity check on the counting helper itself
    one, two = exhaustive.SETS[1], exhaustive.SETS[2]
    both = FinMap(two, one, (0, 0))
    assert exhaustive.count_lifts(one, two, [(both, FinMap(one, one, (0,)))]) == 2
    assert exhaustive.count_descents(identity(two), one, FinMap(two, one, (0, 0))) == 1


def test_small_universal_properties():
    assert exhaustive.check_pullback(2, 2) > 0
    assert exhaustive.check_coequalizer(2, 3) > 0
