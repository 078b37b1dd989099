"""Composition series, semisimplicity, Fitting decompositions, and related predicates."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import exactla as la
from .errors import ConsistencyError, InputError, ResourceBudgetError
from .exactla import DEFAULT_ENUM_BUDGET, Subspace
from .module import (
    GradedModule,
    hom_gamma,
    is_gr_isomorphic,
    is_module_map,
    preimage,
    quotient,
    regular_module,
    spin,
    submodule_as_module,
)
from .radical import (
    _homogeneous_lines,
    algebra_radical,
    annihilator,
    component_algebra,
    full_lattice,
    rad_gr_module,
    rad_gr_ring,
    soc_gr_module,
)
from .ring import GradedRing, quotient_ring


# -- composition series -------------------------------------------------------


@dataclass
class Factor:
    """A gr-simple factor ``M_j / M_(j-1)`` on its own basis."""

    module: GradedModule
    generator_degree: int
    degrees: list
    support: list
    sources: list

    def fingerprint(self) -> tuple:
        return tuple(sorted(self.module.degree_dims().items()))


@dataclass
class CompositionSeries:
    module: GradedModule
    terms: list
    factors: list

    def __len__(self):
        return len(self.factors)

    def describe(self) -> list[dict]:
        g = self.module.ring.groupoid
        return [
            {
                "step": j + 1,
                "dim": self.terms[j + 1].dim,
                "degrees": [g.names[d] for d in f.degrees],
                "support": [g.names[e] for e in f.support],
                "sources": [g.names[e] for e in f.sources],
            }
            for j, f in enumerate(self.factors)
        ]


def _ring_radical(R: GradedRing, J: Optional[Subspace], budget: int) -> Subspace:
    return rad_gr_ring(R, budget=budget).space if J is None else J


def composition_series(
    M: GradedModule,
    J: Optional[Subspace] = None,
    seed: Optional[int] = None,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> CompositionSeries:
    """Peel a gr-simple submodule off each successive quotient.

    Candidates are the cyclic submodules spun from homogeneous lines of the
    quotient's socle; one of minimal dimension is gr-simple.  Ties go to the
    lexicographically first generator, or to a seeded random pick.
    """
    J = _ring_radical(M.ring, J, budget)
    rng = random.Random(seed) if seed is not None else None
    g = M.ring.groupoid
    terms = [M.zero()]
    factors = []
    while terms[-1] != M.whole():
        Q = quotient(M, terms[-1])
        soc = annihilator(Q, J)
        lines = _homogeneous_lines(Q, soc, budget)
        spun = {}
        for v in lines:
            c = spin(Q, [v])
            spun.setdefault(c.key(), (c, tuple(int(x) for x in v)))
        best = min(c.dim for c, _ in spun.values())
        ties = sorted((v, c) for c, v in spun.values() if c.dim == best)
        gen, C = rng.choice(ties) if rng else ties[0]
        nxt = preimage(Q, C)
        S = submodule_as_module(Q, C)
        degs = sorted(set(S.degrees.tolist()))
        factors.append(
            Factor(
                module=S,
                generator_degree=Q.degree_of(np.array(gen)),
                degrees=degs,
                support=sorted({int(g.target[d]) for d in degs}),
                sources=sorted({int(g.source[d]) for d in degs}),
            )
        )
        terms.append(nxt)
    return CompositionSeries(M, terms, factors)


def gr_length(M: GradedModule, J: Optional[Subspace] = None, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    return len(composition_series(M, J, budget=budget))


def gamma0_length(M: GradedModule, J: Optional[Subspace] = None, budget: int = DEFAULT_ENUM_BUDGET) -> dict[int, int]:
    """``e -> c_gr(M(e))`` over every object of the groupoid."""
    J = _ring_radical(M.ring, J, budget)
    out = {}
    for e in M.ring.groupoid.objects:
        comp = M.component(e)
        out[e] = gr_length(submodule_as_module(M, comp), J, budget) if comp.dim else 0
    return out


def jordan_holder_equivalent(s1: CompositionSeries, s2: CompositionSeries) -> bool:
    """Same length and a bijection of factors by gr-isomorphism."""
    if len(s1) != len(s2):
        return False
    unmatched = list(s2.factors)
    for f in s1.factors:
        for k, h in enumerate(unmatched):
            if f.fingerprint() == h.fingerprint() and is_gr_isomorphic(f.module, h.module, simple=True)[0]:
                del unmatched[k]
                break
        else:
            return False
    return True


# -- semisimple and semilocal verdicts -----------------------------------------


@dataclass
class SemisimpleVerdict:
    value: bool
    radical_dim: int
    engine: str


def is_gr_semisimple(R: GradedRing, budget: int = DEFAULT_ENUM_BUDGET) -> SemisimpleVerdict:
    """``rad^gr(R) = 0`` (finite dimension makes the artinian half automatic)."""
    rep = rad_gr_ring(R, budget=budget)
    return SemisimpleVerdict(rep.dim == 0, rep.dim, rep.engine)


@dataclass
class SemilocalVerdict:
    value: bool
    via_quotient: bool
    via_components: bool
    components: dict = field(default_factory=dict)


def is_gr_semilocal(R: GradedRing, budget: int = DEFAULT_ENUM_BUDGET) -> SemilocalVerdict:
    """Decide gr-semilocality by two routes that must agree.

    Route one checks that ``R / rad^gr(R)`` has zero radical.  Route two
    checks each ``R_e / rad(R_e)`` with the one-object engines.
    """
    J = rad_gr_ring(R, budget=budget).space
    Q = quotient_ring(R, J)
    via_quotient = is_gr_semisimple(Q, budget).value
    components = {}
    for e in R.gamma0_support():
        A = component_algebra(R, e)
        radA, how = algebra_radical(A, budget)
        B = quotient_ring(A, radA)
        radB, how_b = algebra_radical(B, budget)
        components[e] = {"rad_dim": radA.dim, "engine": how, "semisimple_quotient": radB.dim == 0}
    via_components = all(c["semisimple_quotient"] for c in components.values())
    if via_quotient != via_components:
        raise ConsistencyError("semilocal verdicts disagree between the quotient and the components")
    return SemilocalVerdict(via_quotient, via_quotient, via_components, components)


# -- Fitting ------------------------------------------------------------------


@dataclass
class FittingResult:
    n: int
    kernel: Subspace
    image: Subspace


def _check_loop_endomorphism(M: GradedModule, G, gamma) -> tuple[np.ndarray, int]:
    g = M.ring.groupoid
    gamma = g.index(gamma)
    if g.d(gamma) != g.r(gamma):
        raise InputError("Fitting needs a degree with equal source and range")
    G = la.as_matrix(G, M.p)
    if not is_module_map(M, M, G, gamma):
        raise InputError(f"matrix is not a module map of degree {g.names[gamma]}")
    return G, gamma


def identity_endomorphism(M: GradedModule, e) -> np.ndarray:
    """``1_e`` in ``END(M)``: the projection onto ``M(e)``."""
    e = M.ring.groupoid.index(e)
    return np.diag((M.range_objects() == e).astype(np.int64))


def fitting(M: GradedModule, G, gamma) -> FittingResult:
    """Smallest ``n >= 1`` with stable ``ker g^n`` and ``im g^n``, plus the checked splitting."""
    G, gamma = _check_loop_endomorphism(M, G, gamma)
    p = M.p
    power = G.copy()
    ker, im = la.left_kernel(power, p), la.row_space(power, p, M.dim)
    n = 1
    while True:
        nxt = power @ G % p
        ker2, im2 = la.left_kernel(nxt, p), la.row_space(nxt, p, M.dim)
        if ker2 == ker and im2 == im:
            break
        power, ker, im, n = nxt, ker2, im2, n + 1
    if (ker & im).dim != 0 or (ker + im) != M.whole():
        raise ConsistencyError("kernel and image of g^n do not split M")
    if im.dim and (la.rank(im.basis @ G % p, p) != im.dim or not im.contains_space(la.row_space(im.basis @ G % p, p, M.dim))):
        raise ConsistencyError("g is not bijective on im g^n")
    if ker.dim and not ker.contains_space(la.row_space(ker.basis @ G % p, p, M.dim)):
        raise ConsistencyError("g does not preserve ker g^n")
    return FittingResult(n, ker, im)


def gr_inverse_endomorphism(M: GradedModule, G, gamma) -> Optional[np.ndarray]:
    """``H`` of degree ``gamma^-1`` with ``h g = g h = 1_e`` in ``END(M)``, if any."""
    G, gamma = _check_loop_endomorphism(M, G, gamma)
    g = M.ring.groupoid
    e = g.r(gamma)
    p = M.p
    P = identity_endomorphism(M, e)
    basis = hom_gamma(M, M, g.inverse(gamma))
    if not basis:
        return None if P.any() else np.zeros_like(G)
    # h o g has matrix G @ H; g o h has matrix H @ G
    rows = np.array([np.concatenate([(G @ H % p).ravel(), (H @ G % p).ravel()]) for H in basis])
    c = la.solve_left(rows, np.concatenate([P.ravel(), P.ravel()]), p)
    if c is None:
        return None
    return np.einsum("k,kab->ab", c, np.array(basis)) % p


def injective_or_surjective_on_component(M: GradedModule, G, gamma) -> tuple[bool, bool]:
    G, gamma = _check_loop_endomorphism(M, G, gamma)
    comp = M.component(M.ring.groupoid.r(gamma))
    injective = la.rank(comp.basis @ G % M.p, M.p) == comp.dim if comp.dim else True
    surjective = la.rank(G, M.p) == comp.dim
    return injective, surjective


# -- superfluous and essential --------------------------------------------------


@dataclass
class PredicateVerdict:
    value: bool
    fast: bool
    oracle: Optional[bool]

    @property
    def verified(self) -> bool:
        return self.oracle is not None


def _oracle_lattice(M: GradedModule, budget: int) -> Optional[list]:
    try:
        return full_lattice(M, budget)
    except ResourceBudgetError:
        return None


def is_gr_superfluous(
    M: GradedModule,
    N: Subspace,
    J: Optional[Subspace] = None,
    oracle: bool = True,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> PredicateVerdict:
    """``N + X = M`` forces ``X = M``; fast path ``N <= rad M``."""
    M.check_submodule(N)
    fast = rad_gr_module(M, J, budget=budget).contains_space(N)
    lit = None
    lattice = _oracle_lattice(M, budget) if oracle else None
    if lattice is not None:
        whole = M.whole()
        lit = all(x == whole for x in lattice if (N + x) == whole)
        if lit != fast:
            raise ConsistencyError("superfluous fast path disagrees with the lattice")
    return PredicateVerdict(fast, fast, lit)


def is_gr_essential(
    M: GradedModule,
    N: Subspace,
    J: Optional[Subspace] = None,
    oracle: bool = True,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> PredicateVerdict:
    """``N & X = 0`` forces ``X = 0``; fast path ``N >= soc M``."""
    M.check_submodule(N)
    fast = N.contains_space(soc_gr_module(M, J, budget=budget))
    lit = None
    lattice = _oracle_lattice(M, budget) if oracle else None
    if lattice is not None:
        lit = all(x.dim == 0 for x in lattice if (N & x).dim == 0)
        if lit != fast:
            raise ConsistencyError("essential fast path disagrees with the lattice")
    return PredicateVerdict(fast, fast, lit)


# -- Baer criterion -----------------------------------------------------------------


@dataclass
class BaerResult:
    value: bool
    ideal: Optional[Subspace] = None
    degree: Optional[int] = None
    checked_ideals: int = 0


def baer_gr_injective(E: GradedModule, budget: int = DEFAULT_ENUM_BUDGET) -> BaerResult:
    """Every degree-``gamma`` map from a graded right ideal into ``E`` extends to ``R``.

    Extension is linear, so it suffices to compare the dimension of the
    restricted ``HOM(R, E)_gamma`` with ``HOM(U, E)_gamma``.
    """
    R = E.ring
    Rr = regular_module(R)
    g = R.groupoid
    ideals = full_lattice(Rr, budget)
    hom_R = {gamma: hom_gamma(Rr, E, gamma) for gamma in range(len(g))}
    checked = 0
    for U in ideals:
        if U.dim == 0 or U.dim == R.dim:
            continue
        checked += 1
        Um = submodule_as_module(Rr, U)
        for gamma in range(len(g)):
            target = hom_gamma(Um, E, gamma)
            if not target:
                continue
            restricted = [U.basis @ F % R.p for F in hom_R[gamma]]
            got = la.rank(np.array([F.ravel() for F in restricted]), R.p) if restricted else 0
            if got < len(target):
                return BaerResult(False, U, gamma, checked)
    return BaerResult(True, None, None, checked)


# -- category rings built from projectives --------------------------------------------


@dataclass
class ProjectiveRadicalCheck:
    value: bool
    components: dict


def projective_category_radical_check(RC: GradedRing, budget: int = DEFAULT_ENUM_BUDGET) -> ProjectiveRadicalCheck:
    """Compare ``rad^gr(R_C)_(Q,P)`` with ``{g : im g <= rad Q}`` for every pair of modules."""
    if not hasattr(RC, "hom_blocks"):
        raise InputError("ring was not built by build_category_ring")
    J = rad_gr_ring(RC, budget=budget).space
    g = RC.groupoid
    labels = RC.index_set
    out = {}
    ok = True
    for (a, b), idx in sorted(RC.hom_blocks.items()):
        degree = g.index(f"({labels[a]},{labels[b]})")
        engine = J & RC.component_space(degree)
        Qmod = RC.category_modules[a]
        radQ = rad_gr_module(Qmod, budget=budget)
        if idx:
            red = np.array([radQ.reduce_rows(RC.morphism_matrices[i]).ravel() for i in idx])
            coeffs = la.left_kernel(red, RC.p).basis
            vecs = np.zeros((coeffs.shape[0], RC.dim), dtype=np.int64)
            vecs[:, idx] = coeffs
            rhs = Subspace(vecs, RC.dim, RC.p)
        else:
            rhs = Subspace.zero(RC.dim, RC.p)
        same = engine == rhs
        ok &= same
        out[g.names[degree]] = {"engine_dim": engine.dim, "image_in_radical_dim": rhs.dim, "equal": same}
    return ProjectiveRadicalCheck(ok, out)


# -- Dedekind finiteness ----------------------------------------------------------------


def gr_dedekind_witness(R: GradedRing, gamma=None, budget: int = DEFAULT_ENUM_BUDGET) -> Optional[tuple]:
    """Exhaustively find ``a`` of degree ``gamma`` and ``b`` of degree ``gamma^-1``
    with ``a b = 1_r(gamma)`` but ``b a != 1_d(gamma)``.

    Without ``gamma`` every non-object degree is searched.  Returns
    ``(gamma, a, b)`` or ``None``.
    """
    g = R.groupoid
    degrees = [g.index(gamma)] if gamma is not None else [x for x in range(len(g)) if x not in g.objects]
    p = R.p
    for gam in degrees:
        a_idx, b_idx = R.component(gam), R.component(g.inverse(gam))
        if not a_idx or not b_idx:
            continue
        if p ** (len(a_idx) + len(b_idx)) > budget:
            raise ResourceBudgetError("Dedekind search exceeds budget")
        A = np.zeros((p ** len(a_idx), R.dim), dtype=np.int64)
        A[:, a_idx] = la.all_coefficients(p, len(a_idx))
        B = np.zeros((p ** len(b_idx), R.dim), dtype=np.int64)
        B[:, b_idx] = la.all_coefficients(p, len(b_idx))
        ab = np.einsum("ai,bj,ijk->abk", A, B, R.table) % p
        ba = np.einsum("bi,aj,ijk->abk", B, A, R.table) % p
        one_r, one_d = R.units[g.r(gam)], R.units[g.d(gam)]
        hit = (ab == one_r).all(axis=2) & ~(ba == one_d).all(axis=2)
        found = np.argwhere(hit)
        if found.size:
            i, j = found[0]
            return gam, A[i], B[j]
    return None
