import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grgrad import exactla as la
from grgrad.chains import (
    CONDITIONS,
    LEVELS,
    SIDES,
    FamilyProfile,
    Unbounded,
    chain_types,
    classify_ut,
    is_tight,
    parse_poset,
    profile_of_module,
    strong_classify,
    witness_chain,
)
from grgrad.errors import InputError
from grgrad.module import map_kernel, regular_module
from grgrad.radical import ideal_power, module_times, rad_gr_ring
from grgrad.ring import build_ut, chain_order, field_algebra
from grgrad.samples import ZOO, random_endomorphism, random_module
from grgrad.structure import gamma0_length

ALL_TRUE = {f"{s}_{c}": True for s in SIDES for c in CONDITIONS}


# -- parsing -------------------------------------------------------------------------


def test_parse_ordinals():
    I = parse_poset("ordinal:w*1+1")
    assert (I.omegas, I.tail, I.reversed) == (1, 1, False)
    assert parse_poset("ordinal:w").omegas == 1
    assert parse_poset("ordinal:w*2+3:reversed").reversed
    assert parse_poset("ordinal:4").is_finite


def test_parse_finite():
    I = parse_poset("finite:a<b,b<c,a<d")
    assert I.less("a", "c") and not I.less("c", "d")
    assert not I.is_total()
    assert parse_poset("finite:1<2<3").is_total()


@pytest.mark.parametrize("text", ["ordinal:", "ordinal:w*0+0", "finite:", "finite:a<b,b<a", "cyclic:3", "ordinal:w:upside"])
def test_parse_errors(text):
    with pytest.raises(InputError):
        parse_poset(text)


# -- verdict tables --------------------------------------------------------------------


def test_omega_plus_one():
    v = classify_ut(parse_poset("ordinal:w*1+1"))
    assert not v.get("right", "artinian")
    assert not v.get("left", "noetherian")
    assert v.get("right", "noetherian")
    assert v.get("left", "artinian")


def test_naturals():
    v = classify_ut(parse_poset("ordinal:w"))
    assert v.get("left", "noetherian")
    assert not v.get("right", "artinian")
    assert v.get("right", "noetherian") and v.get("left", "artinian")


def test_finite_chain_all_true():
    v = classify_ut(parse_poset("finite:1<2<3"))
    assert all(v.verdicts.values())


def test_coefficient_flags_propagate():
    v = classify_ut(parse_poset("ordinal:w*1+1"), {"left_artinian": False})
    assert not v.get("left", "artinian")
    assert "coefficient" in v.reasons[("left", "artinian")]


def test_counterexample_with_left_artinian_coefficients():
    # left artinian A that is not left noetherian is not needed: the poset alone breaks left noetherian
    v = classify_ut(parse_poset("ordinal:w*1+1"), {"right_artinian": False, "right_noetherian": False})
    assert v.get("left", "artinian") and not v.get("left", "noetherian")


@st.composite
def posets(draw):
    if draw(st.booleans()):
        k = draw(st.integers(0, 3))
        m = draw(st.integers(0 if k else 1, 3))
        rev = ":reversed" if draw(st.booleans()) else ""
        return parse_poset(f"ordinal:w*{k}+{m}{rev}")
    n = draw(st.integers(1, 4))
    edges = [f"{a}<{b}" for a in range(n) for b in range(a + 1, n) if draw(st.booleans())]
    return parse_poset("finite:" + ",".join(edges or [str(i) for i in range(n)]))


flags_st = st.fixed_dictionaries({k: st.booleans() for k in ALL_TRUE})


@given(posets(), flags_st)
def test_level_implications(I, flags):
    v = classify_ut(I, flags)
    for side in SIDES:
        for cond in CONDITIONS:
            gr, strong, g0 = (v.get(side, cond, lvl) for lvl in LEVELS)
            assert (not gr or strong) and (not strong or g0)


@given(posets())
def test_reversal_swaps_sides(I):
    a, b = classify_ut(I), classify_ut(I.reverse())
    for cond in CONDITIONS:
        for lvl in LEVELS:
            assert a.get("right", cond, lvl) == b.get("left", cond, lvl)
            assert a.get("left", cond, lvl) == b.get("right", cond, lvl)


# -- witness chains -----------------------------------------------------------------------


def test_naturals_right_artinian_witness():
    w = witness_chain(parse_poset("ordinal:w"), "right", "artinian", 4, base="1")
    assert w.as_text() == "E_{1,2} R > E_{1,3} R > E_{1,4} R > E_{1,5} R"
    assert w.certified and w.truncation == ["1", "2", "3", "4", "5"]


def test_omega_plus_one_left_noetherian_witness():
    w = witness_chain(parse_poset("ordinal:w*1+1"), "left", "noetherian", 3, base="w")
    assert w.as_text() == "R E_{0,w} < R E_{1,w} < R E_{2,w}"
    assert w.certified


def test_witness_on_finite_poset_rejected():
    with pytest.raises(InputError):
        witness_chain(parse_poset("finite:1<2<3"), "right", "artinian", 4)


@pytest.mark.parametrize("poset", ["ordinal:w", "ordinal:w*1+1", "ordinal:w*2", "ordinal:w*1+1:reversed", "ordinal:w:reversed"])
@pytest.mark.parametrize("side", SIDES)
@pytest.mark.parametrize("cond", CONDITIONS)
def test_every_witness_certifies(poset, side, cond):
    I = parse_poset(poset)
    if classify_ut(I).get(side, cond):
        with pytest.raises(InputError):
            witness_chain(I, side, cond, 10)
        return
    w = witness_chain(I, side, cond, 10)
    assert w.certified and len(w.dims) == 10
    assert len(set(w.dims)) == 10


# -- strong profiles ----------------------------------------------------------------------------


def test_constant_profile():
    v = strong_classify(FamilyProfile("constant", 1))
    assert v["strongly-gamma0-artinian"] and v["strongly-gamma0-noetherian"]
    assert not v["gr-artinian"] and not v["gr-noetherian"]


def test_identity_profile():
    v = strong_classify(FamilyProfile("identity"))
    assert v["gamma0-artinian"] and v["gamma0-noetherian"]
    assert not v["strongly-gamma0-artinian"] and not v["strongly-gamma0-noetherian"]


def test_finite_profile_all_true():
    v = strong_classify(FamilyProfile("finite", exceptions={"a": 2, "b": 5}))
    assert all(v.values()) and len(v) == 6


def test_unbounded_component():
    v = strong_classify(FamilyProfile("tail", 1, {"x": Unbounded(artinian=True)}))
    assert v["gamma0-artinian"] and not v["gamma0-noetherian"]


def test_profile_of_finite_module_matches_lemma():
    R = ZOO["ut_chain3_f2"]()
    M = regular_module(R)
    v = strong_classify(profile_of_module(M, gamma0_length(M)))
    assert v["gr-artinian"] == v["strongly-gamma0-artinian"] is True


def test_bad_profiles():
    with pytest.raises(InputError):
        FamilyProfile("wavy")
    with pytest.raises(InputError):
        FamilyProfile("constant", 0)


# -- tight chains -----------------------------------------------------------------------------------


def test_radical_power_chain_is_tight():
    R = ZOO["ut_chain3_f2"]()
    M = regular_module(R)
    J = rad_gr_ring(R).space
    chain = [module_times(M, M.whole(), ideal_power(R, J, n)) if n else M.whole() for n in range(4)]
    assert is_tight(M, chain).value


def test_kernel_chain_is_tight():
    rng = random.Random(3)
    R = ZOO["ut_chain3_trunc_f2"]()
    M = regular_module(R)
    for e in R.groupoid.objects:
        G = random_endomorphism(M, e, rng)
        powers = [G]
        for _ in range(3):
            powers.append(powers[-1] @ G % 2)
        chain = [map_kernel(P, 2) for P in powers]
        assert is_tight(M, chain, descending=False).value


def test_chain_gaining_an_object_is_not_tight():
    R = build_ut(field_algebra(2), [1, 2], chain_order([1, 2]))
    M = regular_module(R)
    second_row = M.component(R.groupoid.index("(2,2)"))
    res = is_tight(M, [M.whole(), second_row, M.zero()])
    assert not res.value


def test_non_nested_chain_rejected():
    R = build_ut(field_algebra(2), [1, 2], chain_order([1, 2]))
    M = regular_module(R)
    with pytest.raises(InputError):
        is_tight(M, [M.zero(), M.whole()])


@given(st.sampled_from(["ut_chain3_f2", "pair_trunc_f2_n2", "ut_v_f2"]), st.integers(0, 10**6))
def test_image_chains_are_tight(name, seed):
    R = ZOO[name]()
    rng = random.Random(seed)
    M = random_module(R, rng, max_dim=8)
    e = rng.choice(R.groupoid.objects)
    G = random_endomorphism(M, e, rng)
    if G is None:
        return
    chain, P = [], np.eye(M.dim, dtype=np.int64)
    for _ in range(4):
        P = P @ G % M.p
        chain.append(la.row_space(P, M.p, M.dim))
    assert is_tight(M, chain).value
