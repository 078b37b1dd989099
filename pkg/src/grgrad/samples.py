"""Named small rings and random graded modules/quotients for tests and the CLI."""

from __future__ import annotations

import random
from typing import Callable, Optional

import numpy as np

from . import exactla as la
from .errors import InputError
from .groupoid import cyclic_table
from .module import GradedModule, direct_sum, quotient, regular_module, shift, spin, submodule_as_module
from .ring import (
    GradedRing,
    antichain_order,
    build_block_matrix_ring,
    build_category_ring,
    build_pair_matrix_ring,
    build_ut,
    chain_order,
    field_algebra,
    group_algebra,
    ideal_generated,
    matrix_algebra,
    quotient_ring,
    truncated_polynomial,
)


def _category_a_a2(p: int, k: int = 2) -> GradedRing:
    A = truncated_polynomial(p, k)
    RA = regular_module(A)
    return build_category_ring(A, [RA, direct_sum([RA, RA])], labels=["A", "A2"])


def _v_order() -> set:
    # 1 below both 2 and 3
    return {(1, 1), (2, 2), (3, 3), (1, 2), (1, 3)}


ZOO: dict[str, Callable[[], GradedRing]] = {
    "field_f2": lambda: field_algebra(2),
    "field_f5": lambda: field_algebra(5),
    "trunc_f2_k2": lambda: truncated_polynomial(2, 2),
    "trunc_f3_k3": lambda: truncated_polynomial(3, 3),
    "matrix_alg_f2_n2": lambda: matrix_algebra(2, 2),
    "group_alg_f2_c2": lambda: group_algebra(2, cyclic_table(2)),
    "group_alg_f3_c2": lambda: group_algebra(3, cyclic_table(2)),
    "group_alg_f2_c3": lambda: group_algebra(2, cyclic_table(3)),
    "pair_f2_n2": lambda: build_pair_matrix_ring(field_algebra(2), [1, 2]),
    "pair_trunc_f2_n2": lambda: build_pair_matrix_ring(truncated_polynomial(2, 2), [1, 2]),
    "pair_trunc_f5_n3": lambda: build_pair_matrix_ring(truncated_polynomial(5, 2), [1, 2, 3]),
    "ut_chain2_f3": lambda: build_ut(field_algebra(3), [1, 2], chain_order([1, 2])),
    "ut_chain3_f2": lambda: build_ut(field_algebra(2), [1, 2, 3], chain_order([1, 2, 3])),
    "ut_chain3_trunc_f2": lambda: build_ut(truncated_polynomial(2, 2), [1, 2, 3], chain_order([1, 2, 3])),
    "ut_v_f2": lambda: build_ut(field_algebra(2), [1, 2, 3], _v_order()),
    "ut_antichain2_f2": lambda: build_ut(field_algebra(2), [1, 2], antichain_order([1, 2])),
    "block_f2_12_3": lambda: build_block_matrix_ring(field_algebra(2), [[1, 2], [3]]),
    "block_trunc_f2_1_2": lambda: build_block_matrix_ring(truncated_polynomial(2, 2), [[1], [2]]),
    "category_f5_a_a2": lambda: _category_a_a2(5),
    "category_f2_a_a2": lambda: _category_a_a2(2),
}


def zoo(names: Optional[list] = None) -> dict[str, GradedRing]:
    names = list(ZOO) if names is None else names
    return {n: ZOO[n]() for n in names}


def random_homogeneous(rng: random.Random, R_or_M, degree: int) -> np.ndarray:
    """Random vector supported on the basis vectors of one degree."""
    idx = np.flatnonzero(R_or_M.degrees == degree)
    v = np.zeros(len(R_or_M.degrees), dtype=np.int64)
    for i in idx:
        v[i] = rng.randrange(R_or_M.p)
    return v


def random_quotient_ring(R: GradedRing, rng: random.Random, generators: int = 1) -> GradedRing:
    """``R / I`` for ``I`` generated by a few random homogeneous elements (kept proper)."""
    for _ in range(20):
        gens = []
        for _ in range(generators):
            gamma = int(R.degrees[rng.randrange(R.dim)])
            gens.append(random_homogeneous(rng, R, gamma))
        I = ideal_generated(R, gens)
        if 0 < I.dim < R.dim:
            return quotient_ring(R, I)
    return quotient_ring(R, la.Subspace.zero(R.dim, R.p))


def projective_cover_of_object(R: GradedRing, e: int) -> GradedModule:
    """``1_e R`` as a right module."""
    M = regular_module(R)
    return submodule_as_module(M, M.component(e))


def random_module(R: GradedRing, rng: random.Random, max_dim: int = 12, summands: int = 3) -> GradedModule:
    """A random finite graded module: shifted ``1_e R`` summands modulo a random spun submodule.

    Every module built this way satisfies the axioms by construction; the
    caller may still validate it.
    """
    g = R.groupoid
    objs = [e for e in R.gamma0_support()]
    if not objs:
        raise InputError("ring has no nonzero object components")
    for _ in range(50):
        parts = []
        for _ in range(rng.randint(1, summands)):
            e = rng.choice(objs)
            P = projective_cover_of_object(R, e)
            sigmas = [s for s in range(len(g)) if g.r(s) == e]
            parts.append(shift(P, rng.choice(sigmas)) if rng.random() < 0.5 else P)
        parts = [P for P in parts if P.dim]
        if not parts:
            continue
        D = direct_sum(parts) if len(parts) > 1 else parts[0]
        gens = []
        for _ in range(rng.randint(0, 2)):
            gens.append(random_homogeneous(rng, D, int(D.degrees[rng.randrange(D.dim)])))
        N = spin(D, gens) if gens else D.zero()
        if N.dim == D.dim:
            continue
        Q = quotient(D, N) if N.dim else D
        if 0 < Q.dim <= max_dim:
            return Q
    raise InputError("could not draw a module within the dimension bound")


def random_endomorphism(M: GradedModule, e: int, rng: random.Random) -> Optional[np.ndarray]:
    """Random element of ``END(M)_e`` (``None`` if that space is zero)."""
    from .module import hom_gamma

    basis = hom_gamma(M, M, e)
    if not basis:
        return None
    out = np.zeros((M.dim, M.dim), dtype=np.int64)
    for H in basis:
        out = (out + rng.randrange(M.p) * H) % M.p
    return out
