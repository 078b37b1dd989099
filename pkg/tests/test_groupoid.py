import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grgrad.errors import InputError, ValidationError
from grgrad.groupoid import (
    UNDEFINED,
    Groupoid,
    cyclic_table,
    group_groupoid,
    pair_groupoid,
    product_groupoid,
    trivial_groupoid,
)


def test_pair_composition():
    g = pair_groupoid([1, 2, 3])
    assert g.name(g.compose("(3,2)", "(2,1)")) == "(3,1)"
    assert g.compose("(3,2)", "(1,1)") is None


def test_group_composition():
    g = group_groupoid(cyclic_table(2), ["e", "s"])
    assert g.name(g.compose("s", "s")) == "e"


def test_inverses():
    g = pair_groupoid([1, 2, 3])
    assert g.name(g.inverse("(2,3)")) == "(3,2)"
    e = g.index("(2,2)")
    assert g.inverse(e) == e


def test_product_groupoid_inverse_and_objects():
    g = product_groupoid([1, 2], cyclic_table(2))
    assert len(g) == 8
    assert sorted(g.names[e] for e in g.objects) == ["(1,g0,1)", "(2,g0,2)"]
    assert g.name(g.inverse("(1,g1,2)")) == "(2,g1,1)"
    assert g.validate().ok


def test_product_groupoid_triples_exhaustively():
    # independent check of the composition rule (z,h,y)(y,g,x) = (z,hg,x)
    g = product_groupoid([1, 2], cyclic_table(2))
    for a, b in itertools.product(range(len(g)), repeat=2):
        za, ha, ya = g.names[a].strip("()").split(",")
        zb, hb, yb = g.names[b].strip("()").split(",")
        out = g.compose(a, b)
        if ya != zb:
            assert out is None
        else:
            h = (int(ha[1:]) + int(hb[1:])) % 2
            assert g.names[out] == f"({za},g{h},{yb})"


def test_sizes():
    g = pair_groupoid([1, 2])
    assert len(g) == 4 and len(g.objects) == 2
    c3 = group_groupoid(cyclic_table(3))
    assert len(c3) == 3 and len(c3.objects) == 1
    assert len(trivial_groupoid()) == 1


def test_corrupted_inverse_names_the_morphism():
    g = pair_groupoid([1, 2])
    inv = g.inv.copy()
    i = g.index("(1,2)")
    inv[i] = i
    bad = Groupoid(g.names, g.source, g.target, g.comp, inv)
    rep = bad.validate()
    assert not rep.ok
    assert any("(1,2)" in v.where for v in rep.violations)
    with pytest.raises(ValidationError):
        rep.raise_if_invalid()


def test_corrupted_composition_detected():
    g = pair_groupoid([1, 2])
    comp = g.comp.copy()
    comp[g.index("(1,2)"), g.index("(2,1)")] = g.index("(2,2)")
    assert not Groupoid(g.names, g.source, g.target, comp, g.inv).validate().ok


def test_bad_group_tables():
    with pytest.raises(InputError):
        group_groupoid([[0, 1], [0, 1]])
    with pytest.raises(InputError):
        group_groupoid([])


def test_full_subgroupoid():
    g = pair_groupoid([1, 2, 3])
    sub, kept = g.full_subgroupoid(["(1,1)", "(3,3)"])
    assert len(sub) == 4 and sub.validate().ok
    assert sorted(g.names[k] for k in kept) == ["(1,1)", "(1,3)", "(3,1)", "(3,3)"]


def test_hom_sets():
    g = pair_groupoid([1, 2])
    # hom(f, e) lists the morphisms e -> f
    assert [g.names[x] for x in g.hom("(1,1)", "(2,2)")] == ["(1,2)"]


@given(st.integers(1, 6))
def test_pair_groupoids_validate(n):
    assert pair_groupoid(list(range(n))).validate().ok


@st.composite
def groupoids(draw):
    kind = draw(st.sampled_from(["pair", "group", "product"]))
    if kind == "pair":
        return pair_groupoid(list(range(draw(st.integers(1, 4)))))
    if kind == "group":
        return group_groupoid(cyclic_table(draw(st.integers(1, 5))))
    return product_groupoid(list(range(draw(st.integers(1, 3)))), cyclic_table(draw(st.integers(1, 3))))


@given(groupoids(), st.data())
def test_inverse_laws(g, data):
    x = data.draw(st.integers(0, len(g) - 1))
    assert g.compose(g.inverse(x), x) == g.d(x)
    assert g.compose(x, g.inverse(x)) == g.r(x)


@given(groupoids(), st.data())
def test_associativity_both_or_neither(g, data):
    a, b, c = (data.draw(st.integers(0, len(g) - 1)) for _ in range(3))
    ab, bc = g.compose(a, b), g.compose(b, c)
    left = g.compose(ab, c) if ab is not None else None
    right = g.compose(a, bc) if bc is not None else None
    assert left == right
    if ab is not None and bc is not None:
        assert left is not None
