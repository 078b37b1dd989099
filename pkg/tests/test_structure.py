import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grgrad import exactla as la
from grgrad.errors import InputError
from grgrad.module import (
    GradedModule,
    direct_sum,
    hom_gamma,
    is_module_map,
    quotient,
    regular_module,
    submodule_as_module,
)
from grgrad.radical import full_lattice, loewy_series, rad_gr_ring, soc_gr_module, soc_gr_ring
from grgrad.ring import (
    build_block_matrix_ring,
    build_category_ring,
    build_pair_matrix_ring,
    build_ut,
    chain_order,
    field_algebra,
    truncated_polynomial,
)
from grgrad.samples import ZOO, projective_cover_of_object, random_endomorphism, random_module
from grgrad.structure import (
    baer_gr_injective,
    composition_series,
    fitting,
    gamma0_length,
    gr_dedekind_witness,
    gr_inverse_endomorphism,
    gr_length,
    identity_endomorphism,
    injective_or_surjective_on_component,
    is_gr_essential,
    is_gr_semilocal,
    is_gr_semisimple,
    is_gr_superfluous,
    jordan_holder_equivalent,
    projective_category_radical_check,
)

SMALL_RINGS = ["pair_f2_n2", "ut_chain3_f2", "ut_chain2_f3", "trunc_f2_k2", "block_trunc_f2_1_2", "ut_v_f2"]


def ut(n, p=2):
    items = list(range(1, n + 1))
    return build_ut(field_algebra(p), items, chain_order(items))


def first_row(R):
    return projective_cover_of_object(R, R.groupoid.index("(1,1)"))


def a_mod_x(A):
    act = np.zeros((A.dim, 1, 1), dtype=np.int64)
    act[0, 0, 0] = 1
    return GradedModule(A, ["v"], [0], act)


# -- composition series -----------------------------------------------------------


def test_first_row_of_ut3_series():
    R = ut(3)
    P = first_row(R)
    s = composition_series(P)
    assert len(s) == 3
    g = R.groupoid
    assert [[g.names[e] for e in f.sources] for f in s.factors] == [["(3,3)"], ["(2,2)"], ["(1,1)"]]
    assert all(f.support == [g.index("(1,1)")] for f in s.factors)
    # every factor is gr-simple: its lattice is {0, whole}
    assert all(len(full_lattice(f.module)) == 2 for f in s.factors)


def test_gr_simple_has_length_one():
    R = build_pair_matrix_ring(field_algebra(2), [1, 2])
    assert gr_length(first_row(R)) == 1


def test_m3_f2_profile():
    R = build_pair_matrix_ring(field_algebra(2), [1, 2, 3])
    # each row 1_e R is gr-simple
    assert gamma0_length(regular_module(R)) == {e: 1 for e in R.groupoid.objects}
    assert gr_length(regular_module(R)) == 3


def test_jordan_holder_examples():
    R = ut(3)
    P = first_row(R)
    s0 = composition_series(P, seed=0)
    s1 = composition_series(P, seed=1)
    assert jordan_holder_equivalent(s0, s1)
    assert jordan_holder_equivalent(s0, s0)
    S = submodule_as_module(P, soc_gr_module(P))
    assert not jordan_holder_equivalent(s0, composition_series(direct_sum([P, S])))


def test_jordan_holder_distinguishes_factors():
    R = ut(2)
    P1 = first_row(R)
    P2 = projective_cover_of_object(R, R.groupoid.index("(2,2)"))
    D = direct_sum([P2, P2])
    # lengths agree (2 each) but the factors differ
    assert len(composition_series(P1)) == len(composition_series(D)) == 2
    assert not jordan_holder_equivalent(composition_series(P1), composition_series(D))


# -- semisimple and semilocal -------------------------------------------------------


def test_semisimple_examples():
    assert is_gr_semisimple(build_pair_matrix_ring(field_algebra(2), [1, 2])).value
    U = ut(2)
    assert not is_gr_semisimple(U).value
    assert is_gr_semilocal(U).value
    assert not is_gr_semisimple(truncated_polynomial(5, 2)).value


@pytest.mark.parametrize("name", sorted(ZOO))
def test_semisimple_iff_zero_radical_and_full_socle(name):
    R = ZOO[name]()
    v = is_gr_semisimple(R)
    assert v.value == (rad_gr_ring(R).dim == 0)
    assert v.value == (soc_gr_ring(R).dim == R.dim)
    s = is_gr_semilocal(R)
    assert s.via_quotient == s.via_components


# -- Fitting ---------------------------------------------------------------------------


def test_fitting_nilpotent():
    R = build_ut(truncated_polynomial(2, 2), [1, 2], chain_order([1, 2]))
    M = regular_module(R)
    e = R.groupoid.index("(1,1)")
    G = R.left_matrix(R.basis_vector("x*E11"))  # m -> (x E11) m
    assert is_module_map(M, M, G, e) and not (G @ G % 2).any()
    res = fitting(M, G, e)
    assert res.n <= 2 and res.image.dim == 0 and res.kernel == M.whole()


def test_fitting_identity():
    R = ut(2)
    M = first_row(R)
    e = R.groupoid.index("(1,1)")
    res = fitting(M, identity_endomorphism(M, e), e)
    assert (res.n, res.kernel.dim, res.image) == (1, 0, M.whole())


def test_fitting_block_map():
    R = build_pair_matrix_ring(truncated_polynomial(2, 2), [1])
    M = regular_module(R)
    D = direct_sum([M, M])
    e = R.groupoid.objects[0]
    x = R.basis_vector(R.names.index("x*E11"))
    left_x = np.einsum("i,ijk->jk", x, R.table) % 2  # m -> x m
    G = np.zeros((4, 4), dtype=np.int64)
    G[:2, :2] = left_x
    G[2:, 2:] = np.eye(2, dtype=np.int64)
    assert is_module_map(D, D, G, e)
    res = fitting(D, G, e)
    assert res.kernel == la.span(np.eye(4, dtype=np.int64)[:2], 4, 2)
    assert res.image == la.span(np.eye(4, dtype=np.int64)[2:], 4, 2)


def test_fitting_rejects_non_maps():
    R = ut(2)
    M = regular_module(R)
    with pytest.raises(InputError):
        fitting(M, np.ones((3, 3), dtype=np.int64), "(1,1)")
    with pytest.raises(InputError):
        fitting(M, np.zeros((3, 3), dtype=np.int64), "(1,2)")


@st.composite
def module_with_endomorphism(draw):
    R = ZOO[draw(st.sampled_from(SMALL_RINGS))]()
    rng = random.Random(draw(st.integers(0, 10**6)))
    M = random_module(R, rng, max_dim=8)
    e = rng.choice(R.groupoid.objects)
    G = random_endomorphism(M, e, rng)
    return M, e, G


@given(module_with_endomorphism())
def test_fitting_properties(data):
    M, e, G = data
    if G is None:
        return
    p = M.p
    res = fitting(M, G, e)
    assert (res.kernel & res.image).dim == 0 and (res.kernel + res.image) == M.whole()
    if res.image.dim:
        img = la.row_space(res.image.basis @ G % p, p, M.dim)
        assert img == res.image
    if res.kernel.dim:
        assert res.kernel.contains_space(la.row_space(res.kernel.basis @ G % p, p, M.dim))
    inj, surj = injective_or_surjective_on_component(M, G, e)
    inverse = gr_inverse_endomorphism(M, G, e)
    if inj or surj:
        assert inverse is not None
        P = identity_endomorphism(M, e)
        assert ((G @ inverse) % p == P).all() and ((inverse @ G) % p == P).all()


# -- superfluous and essential -------------------------------------------------------------


def test_predicate_examples():
    P = first_row(ut(3))
    soc = soc_gr_module(P)
    sup, ess = is_gr_superfluous(P, soc), is_gr_essential(P, soc)
    assert sup.value and sup.verified and ess.value and ess.verified
    whole, zero = P.whole(), P.zero()
    assert not is_gr_superfluous(P, whole).value and is_gr_essential(P, whole).value
    assert is_gr_superfluous(P, zero).value and not is_gr_essential(P, zero).value


def test_socle_of_first_row_is_e13():
    R = ut(3)
    P = first_row(R)
    soc = soc_gr_module(P)
    assert la.row_space(soc.basis @ P.inclusion % 2, 2, R.dim) == la.span([R.basis_vector("E13")], R.dim, 2)


@given(st.sampled_from(SMALL_RINGS), st.integers(0, 10**6))
def test_predicates_match_lattice(name, seed):
    R = ZOO[name]()
    M = random_module(R, random.Random(seed), max_dim=6)
    lattice = full_lattice(M)
    rng = random.Random(seed)
    for N in rng.sample(lattice, min(4, len(lattice))):
        sup = is_gr_superfluous(M, N)
        ess = is_gr_essential(M, N)
        assert sup.verified and sup.value == sup.oracle
        assert ess.verified and ess.value == ess.oracle
    assert is_gr_essential(M, soc_gr_module(M)).value


@given(st.sampled_from(SMALL_RINGS), st.integers(0, 10**6))
def test_length_additivity(name, seed):
    R = ZOO[name]()
    M = random_module(R, random.Random(seed), max_dim=6)
    c = gr_length(M)
    for N in full_lattice(M):
        assert c == gr_length(submodule_as_module(M, N)) + gr_length(quotient(M, N))


@given(st.sampled_from(SMALL_RINGS), st.integers(0, 10**6))
def test_length_from_loewy_layers(name, seed):
    R = ZOO[name]()
    M = random_module(R, random.Random(seed), max_dim=8)
    ls = loewy_series(M)
    # c_gr(soc^n / soc^(n-1)) = c_gr(M / soc^(n-1)) - c_gr(M / soc^n)
    total = sum(
        gr_length(quotient(M, lo)) - gr_length(quotient(M, hi)) for lo, hi in zip(ls.terms, ls.terms[1:])
    )
    assert total == gr_length(M)


@given(st.sampled_from(SMALL_RINGS), st.integers(0, 10**6))
def test_jordan_holder_random_seeds(name, seed):
    R = ZOO[name]()
    M = random_module(R, random.Random(seed), max_dim=10)
    assert jordan_holder_equivalent(composition_series(M, seed=seed), composition_series(M, seed=seed + 1))


# -- Baer ----------------------------------------------------------------------------------


def test_baer_rejects_a_mod_x():
    A = truncated_polynomial(2, 2)
    res = baer_gr_injective(a_mod_x(A))
    assert not res.value
    assert res.ideal == la.span([A.basis_vector("x")], 2, 2)


def test_baer_accepts_over_a_field_and_regular_frobenius():
    F = field_algebra(5)
    assert baer_gr_injective(regular_module(F)).value
    # F_2[x]/(x^2) is self-injective
    assert baer_gr_injective(regular_module(truncated_polynomial(2, 2))).value


@given(st.sampled_from(["pair_f2_n2", "block_f2_12_3", "group_alg_f3_c2", "ut_antichain2_f2"]), st.integers(0, 10**6))
def test_baer_over_semisimple_rings(name, seed):
    R = ZOO[name]()
    assert is_gr_semisimple(R).value
    assert baer_gr_injective(random_module(R, random.Random(seed), max_dim=6)).value


# -- category rings ---------------------------------------------------------------------------


def test_projective_check_single_module():
    A = truncated_polynomial(5, 2)
    RC = build_category_ring(A, [regular_module(A)])
    res = projective_category_radical_check(RC)
    assert res.value
    assert [c["engine_dim"] for c in res.components.values()] == [1]


def test_projective_check_semisimple_coefficients():
    F = field_algebra(5)
    RC = build_category_ring(F, [regular_module(F), direct_sum([regular_module(F)] * 2)])
    res = projective_category_radical_check(RC)
    assert res.value and all(c["engine_dim"] == 0 == c["image_in_radical_dim"] for c in res.components.values())


def test_projective_check_a_and_a2():
    res = projective_category_radical_check(ZOO["category_f5_a_a2"]())
    assert res.value and len(res.components) == 4


def test_projective_check_needs_category_ring():
    with pytest.raises(InputError):
        projective_category_radical_check(ut(2))


# -- Dedekind finiteness ---------------------------------------------------------------------


def test_dedekind_counterexample():
    R = build_block_matrix_ring(field_algebra(2), [[1, 2], [3]])
    assert is_gr_semisimple(R).value
    gamma, a, b = gr_dedekind_witness(R, "(2,1)")
    g = R.groupoid
    assert (R.mul(a, b) == R.units[g.index("(2,2)")]).all()
    assert not (R.mul(b, a) == R.units[g.index("(1,1)")]).all()
    assert gr_dedekind_witness(build_pair_matrix_ring(field_algebra(2), [1, 2])) is None
