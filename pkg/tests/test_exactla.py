import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grgrad import exactla as la
from grgrad.errors import InputError, ResourceBudgetError
from grgrad.exactla import Subspace

PRIMES = [2, 3, 5]


@st.composite
def matrices(draw, max_rows=5, max_cols=5, primes=PRIMES):
    p = draw(st.sampled_from(primes))
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return np.array(rows, dtype=np.int64), p


def brute_row_space(m, p):
    """Every vector of the row space, by running over all coefficient tuples."""
    out = set()
    for coeffs in itertools.product(range(p), repeat=m.shape[0]):
        out.add(tuple(int(x) for x in np.array(coeffs) @ m % p))
    return out


# -- worked examples ----------------------------------------------------------


def test_rref_example_f5():
    assert la.rref([[2, 4], [1, 2]], 5).tolist() == [[1, 2], [0, 0]]
    assert la.rank([[2, 4], [1, 2]], 5) == 1


def test_kernel_of_identity_is_zero():
    assert la.kernel(np.eye(3, dtype=np.int64), 7).dim == 0


def test_solve_back_substitution_f2():
    assert la.solve([[1, 1], [0, 1]], [0, 1], 2).tolist() == [1, 1]


def test_inconsistent_solve_returns_none():
    assert la.solve([[1, 1], [1, 1]], [0, 1], 3) is None


def test_intersection_of_distinct_lines_in_f2_plane():
    a = la.span([[1, 0]], 2, 2)
    b = la.span([[1, 1]], 2, 2)
    assert (a & b).dim == 0
    common = {tuple(v) for v in a.enumerate().tolist()} & {tuple(v) for v in b.enumerate().tolist()}
    assert common == {(0, 0)}


def test_sum_of_axes_is_plane():
    assert la.span([[1, 0]], 2, 3) + la.span([[0, 1]], 2, 3) == Subspace.full(2, 3)


def test_enumerate_line_over_f3():
    got = sorted(tuple(v) for v in la.span([[1, 0]], 2, 3).enumerate().tolist())
    assert got == [(0, 0), (1, 0), (2, 0)]


def test_enumerate_respects_budget():
    with pytest.raises(ResourceBudgetError):
        Subspace.full(10, 5).enumerate(limit=1000)


def test_inverse_and_singular():
    m = np.array([[1, 2], [3, 4]])
    inv = la.inverse(m, 5)
    assert (m @ inv % 5 == np.eye(2, dtype=np.int64)).all()
    assert la.inverse([[1, 2], [2, 4]], 5) is None


def test_non_prime_rejected():
    with pytest.raises(InputError):
        la.check_prime(4)


def test_projective_points_count():
    for p, k in [(2, 3), (3, 2), (5, 2)]:
        pts = la.projective_points(p, k)
        assert len(pts) == (p**k - 1) // (p - 1)
        assert len({la.span([v], k, p).key() for v in pts}) == len(pts)


def test_inverse_table():
    for p in [2, 3, 31, 65521]:
        t = la.inverse_table(p)
        x = np.arange(1, min(p, 2000))
        assert (x * t[x] % p == 1).all()


# -- properties ---------------------------------------------------------------


@given(matrices(max_rows=4, max_cols=4))
def test_rank_matches_enumerated_row_space(mp):
    m, p = mp
    assert p ** la.rank(m, p) == len(brute_row_space(m, p))


@given(matrices())
def test_rank_nullity(mp):
    m, p = mp
    ker = la.kernel(m, p)
    assert la.rank(m, p) + ker.dim == m.shape[1]
    if ker.dim:
        assert not (m @ ker.basis.T % p).any()


@given(matrices())
def test_left_kernel_annihilates(mp):
    m, p = mp
    lk = la.left_kernel(m, p)
    assert lk.dim + la.rank(m, p) == m.shape[0]
    if lk.dim:
        assert not (lk.basis @ m % p).any()


@given(matrices())
def test_rref_idempotent(mp):
    m, p = mp
    r = la.rref(m, p)
    assert (la.rref(r, p) == r).all()


@given(matrices(), st.data())
def test_solve_recovers_a_preimage(mp, data):
    m, p = mp
    v = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=m.shape[1], max_size=m.shape[1])))
    w = la.solve(m, m @ v % p, p)
    assert w is not None
    assert (m @ w % p == m @ v % p).all()


@given(matrices(max_rows=4, max_cols=6), matrices(max_rows=4, max_cols=6))
def test_modular_law(a, b):
    (ma, p), (mb, _) = a, b
    n = min(ma.shape[1], mb.shape[1])
    U = la.row_space(ma[:, :n] % p, p, n)
    V = la.row_space(mb[:, :n] % p, p, n)
    assert (U + V).dim + (U & V).dim == U.dim + V.dim
    assert U & V <= U and U <= U + V


@given(matrices(max_rows=3, max_cols=4), matrices(max_rows=3, max_cols=4))
def test_intersection_matches_enumeration(a, b):
    (ma, p), (mb, _) = a, b
    n = min(ma.shape[1], mb.shape[1])
    U = la.row_space(ma[:, :n] % p, p, n)
    V = la.row_space(mb[:, :n] % p, p, n)
    brute = brute_row_space(ma[:, :n] % p, p) & brute_row_space(mb[:, :n] % p, p)
    assert {tuple(v) for v in (U & V).enumerate().tolist()} == brute


@given(matrices(max_rows=4, max_cols=4))
def test_equality_is_canonical(mp):
    m, p = mp
    U = la.row_space(m, p)
    shuffled = la.row_space(np.vstack([m[::-1], (2 * m) % p]), p, m.shape[1])
    assert U == shuffled
    assert (U.basis == shuffled.basis).all()


@given(matrices(max_rows=4, max_cols=4), st.data())
def test_reduce_and_contains(mp, data):
    m, p = mp
    U = la.row_space(m, p)
    c = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=m.shape[0], max_size=m.shape[0])))
    v = c @ m % p
    assert U.contains(v)
    assert not U.reduce(v).any()
    assert (U.coordinates(v) @ U.basis % p == v).all()


@given(st.sampled_from([2, 3, 5, 31]), st.integers(1, 4), st.data())
def test_batch_nonsingular_matches_rank(p, n, data):
    count = data.draw(st.integers(1, 12))
    mats = np.array(
        data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n * n, max_size=n * n), min_size=count, max_size=count))
    ).reshape(count, n, n)
    got = la.batch_nonsingular(mats, p)
    assert got.tolist() == [la.rank(x, p) == n for x in mats]
