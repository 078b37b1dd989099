"""Graded right modules over a :class:`GradedRing`.

``action[j]`` is the matrix of ``m -> m * b_j`` acting on row vectors, so a
module map ``g`` is stored as a matrix ``G`` with ``g(m) = m @ G``.
Submodules are plain :class:`Subspace` values checked against their module.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

import numpy as np

from . import exactla as la
from .errors import InputError, ResourceBudgetError
from .exactla import DEFAULT_ENUM_BUDGET, Subspace
from .groupoid import ValidationReport
from .ring import GradedRing, graded_row_degrees, spin_space


class GradedModule:
    def __init__(
        self,
        ring: GradedRing,
        names: Sequence[str],
        degrees: Sequence,
        action,
        validate: bool = True,
    ):
        self.ring = ring
        self.p = ring.p
        self.names = [str(n) for n in names]
        g = ring.groupoid
        self.degrees = np.array([g.index(d) for d in degrees], dtype=np.int64)
        n = len(self.names)
        a = np.array(action, dtype=np.int64)
        if a.size == 0:
            a = np.zeros((ring.dim, n, n), dtype=np.int64)
        if a.shape != (ring.dim, n, n) or len(self.degrees) != n:
            raise InputError(f"action must have shape {(ring.dim, n, n)}, got {a.shape}")
        self.action = a % self.p
        self.action.setflags(write=False)
        if len(set(self.names)) != n:
            raise InputError("module basis names must be unique")
        if validate:
            self.validate().raise_if_invalid()

    @property
    def dim(self) -> int:
        return len(self.names)

    def __repr__(self):
        return f"GradedModule(dim={self.dim}, over {self.ring!r})"

    def act(self, v, a) -> np.ndarray:
        """``v * a`` for a module vector ``v`` and a ring element ``a``."""
        v = la.as_vector(v, self.p, self.dim)
        a = la.as_vector(a, self.p, self.ring.dim)
        return np.einsum("i,j,jik->k", v, a, self.action) % self.p

    def action_of(self, a) -> np.ndarray:
        a = la.as_vector(a, self.p, self.ring.dim)
        return np.einsum("j,jik->ik", a, self.action) % self.p

    def validate(self) -> ValidationReport:
        report = ValidationReport("graded module")
        R, g, p = self.ring, self.ring.groupoid, self.p
        deg = self.degrees
        target = g.comp[deg[:, None], R.degrees[None, :]]  # (n, r)
        allowed = target.T[:, :, None] == deg[None, None, :]
        for j, i, k in np.argwhere((self.action != 0) & ~allowed):
            report.add(
                "grading",
                (self.names[i], R.names[j], self.names[k]),
                f"{self.names[i]}*{R.names[j]} has a component on {self.names[k]} outside its degree",
            )
        lhs = np.einsum("iab,jbc->ijac", self.action, self.action) % p
        rhs = np.einsum("ijk,kac->ijac", R.table, self.action) % p
        for i, j, a in {tuple(x[:3]) for x in np.argwhere(lhs != rhs)}:
            report.add(
                "associativity",
                (self.names[a], R.names[i], R.names[j]),
                f"({self.names[a]}*{R.names[i]})*{R.names[j]} != {self.names[a]}*({R.names[i]}*{R.names[j]})",
            )
        eye = np.eye(self.dim, dtype=np.int64)
        unit_action = {e: self.action_of(u) for e, u in R.units.items()}
        for i in range(self.dim):
            d = int(g.source[deg[i]])
            if not np.array_equal(unit_action[d][i], eye[i]):
                report.add("unit-law", (self.names[i], g.names[d]), f"{self.names[i]}*1_{g.names[d]} != {self.names[i]}")
        return report

    # -- graded bookkeeping -------------------------------------------

    def range_objects(self) -> np.ndarray:
        """``r(deg)`` for every basis vector."""
        return self.ring.groupoid.target[self.degrees]

    def component(self, e) -> Subspace:
        """``M(e)``: the span of basis vectors whose degree has range ``e``."""
        e = self.ring.groupoid.index(e)
        idx = np.flatnonzero(self.range_objects() == e)
        return Subspace(np.eye(self.dim, dtype=np.int64)[idx], self.dim, self.p, _reduced=True)

    def degree_component(self, gamma) -> Subspace:
        gamma = self.ring.groupoid.index(gamma)
        idx = np.flatnonzero(self.degrees == gamma)
        return Subspace(np.eye(self.dim, dtype=np.int64)[idx], self.dim, self.p, _reduced=True)

    def gamma0_support(self) -> list[int]:
        return sorted(set(self.range_objects().tolist()))

    def degree_of(self, v) -> Optional[int]:
        v = la.as_vector(v, self.p, self.dim)
        degs = set(self.degrees[np.flatnonzero(v)].tolist())
        if not degs:
            return None
        if len(degs) > 1:
            raise InputError("vector is not homogeneous")
        return degs.pop()

    def row_degrees(self, space: Subspace) -> list[int]:
        return graded_row_degrees(space, self.degrees)

    def degree_dims(self, space: Optional[Subspace] = None) -> dict[int, int]:
        degs = self.degrees.tolist() if space is None else self.row_degrees(space)
        out: dict[int, int] = {}
        for d in degs:
            out[d] = out.get(d, 0) + 1
        return out

    def object_dims(self, space: Optional[Subspace] = None) -> dict[int, int]:
        out: dict[int, int] = {}
        g = self.ring.groupoid
        for d, c in self.degree_dims(space).items():
            e = int(g.target[d])
            out[e] = out.get(e, 0) + c
        return out

    def is_submodule(self, space: Subspace) -> bool:
        if space.ambient != self.dim:
            return False
        try:
            self.row_degrees(space)
        except InputError:
            return False
        if space.dim == 0:
            return True
        images = np.einsum("vi,jik->jvk", space.basis, self.action).reshape(-1, self.dim) % self.p
        return not space.reduce_rows(images).any()

    def check_submodule(self, space: Subspace) -> Subspace:
        if not self.is_submodule(space):
            raise InputError("not a graded submodule")
        return space

    def zero(self) -> Subspace:
        return Subspace.zero(self.dim, self.p)

    def whole(self) -> Subspace:
        return Subspace.full(self.dim, self.p)


# -- constructions ---------------------------------------------------------


def regular_module(R: GradedRing) -> GradedModule:
    """``R_R``: the ring acting on itself by right multiplication."""
    return GradedModule(R, R.names, R.degrees.tolist(), R.right_matrices(), validate=False)


def zero_module(R: GradedRing) -> GradedModule:
    return GradedModule(R, [], [], np.zeros((R.dim, 0, 0), dtype=np.int64), validate=False)


def component_module(M: GradedModule, e) -> Subspace:
    return M.component(e)


def gamma0_support(M: GradedModule) -> list[int]:
    return M.gamma0_support()


def spin(M: GradedModule, generators: Iterable) -> Subspace:
    """Smallest graded submodule containing the homogeneous generators."""
    gens = [la.as_vector(v, M.p, M.dim) for v in generators]
    for v in gens:
        M.degree_of(v)
    start = la.span(gens, M.dim, M.p) if gens else M.zero()
    return spin_space(start, M.action, M.p)


def submodule_as_module(M: GradedModule, N: Subspace) -> GradedModule:
    """``N`` as a module in its own echelon basis.

    ``result.inclusion`` maps its coordinates back into ``M``.
    """
    M.check_submodule(N)
    degs = M.row_degrees(N)
    piv = list(N.pivots)
    act = np.einsum("vi,jik->jvk", N.basis, M.action)[:, :, piv] % M.p if N.dim else np.zeros((M.ring.dim, 0, 0), dtype=np.int64)
    names = [f"v{i}" for i in range(N.dim)]
    S = GradedModule(M.ring, names, degs, act, validate=False)
    S.inclusion = N.basis
    S.parent = M
    return S


def quotient(M: GradedModule, N: Subspace) -> GradedModule:
    """``M/N`` on the non-pivot basis vectors of ``N``.

    ``result.project(v)`` sends a vector of ``M`` to its coset coordinates and
    ``result.lift(w)`` returns the chosen representative in ``M``.
    """
    M.check_submodule(N)
    keep = N.complement_indices()
    act = np.zeros((M.ring.dim, len(keep), len(keep)), dtype=np.int64)
    for j in range(M.ring.dim):
        rows = M.action[j][keep]
        act[j] = N.reduce_rows(rows)[:, keep] if len(keep) else rows[:, keep]
    Q = GradedModule(M.ring, [M.names[i] for i in keep], M.degrees[keep].tolist(), act, validate=False)
    Q.parent = M
    Q.kernel = N
    Q.kept = keep
    Q.project = lambda v: N.reduce(v)[keep]
    Q.project_rows = lambda vs: N.reduce_rows(vs)[:, keep]

    def lift_rows(ws):
        ws = np.array(ws, dtype=np.int64).reshape(-1, len(keep))
        out = np.zeros((ws.shape[0], M.dim), dtype=np.int64)
        out[:, keep] = ws
        return out

    Q.lift_rows = lift_rows
    Q.lift = lambda w: lift_rows(w)[0]
    return Q


def preimage(Q: GradedModule, S: Subspace) -> Subspace:
    """Preimage in ``Q.parent`` of a submodule of the quotient ``Q``."""
    lifted = Subspace(Q.lift_rows(S.basis), Q.parent.dim, Q.p) if S.dim else Q.parent.zero()
    return lifted + Q.kernel


def image_in_quotient(Q: GradedModule, N: Subspace) -> Subspace:
    if N.dim == 0:
        return Q.zero()
    return Subspace(Q.project_rows(N.basis), Q.dim, Q.p)


def direct_sum(modules: Sequence[GradedModule]) -> GradedModule:
    mods = list(modules)
    if not mods:
        raise InputError("direct sum of an empty family")
    R = mods[0].ring
    for M in mods:
        if M.ring is not R:
            raise InputError("summands live over different rings")
    n = sum(M.dim for M in mods)
    act = np.zeros((R.dim, n, n), dtype=np.int64)
    names, degs, offsets = [], [], []
    off = 0
    for s, M in enumerate(mods):
        act[:, off : off + M.dim, off : off + M.dim] = M.action
        names += [f"{s}:{nm}" for nm in M.names]
        degs += M.degrees.tolist()
        offsets.append(off)
        off += M.dim
    D = GradedModule(R, names, degs, act, validate=False)
    D.offsets = offsets
    D.summands = mods
    return D


def embed_summand(D: GradedModule, s: int, N: Subspace) -> Subspace:
    """Image of a subspace of summand ``s`` inside the direct sum."""
    off = D.offsets[s]
    rows = np.zeros((N.dim, D.dim), dtype=np.int64)
    rows[:, off : off + N.ambient] = N.basis
    return Subspace(rows, D.dim, D.p)


def shift(M: GradedModule, sigma) -> GradedModule:
    """``M(sigma)``: keep ``M(r(sigma))`` and relabel degree ``sigma.gamma`` as ``gamma``."""
    g = M.ring.groupoid
    sigma = g.index(sigma)
    keep = [int(i) for i in np.flatnonzero(M.range_objects() == g.r(sigma))]
    inv = g.inverse(sigma)
    new_deg = [int(g.comp[inv, M.degrees[i]]) for i in keep]
    act = M.action[:, keep][:, :, keep]
    S = GradedModule(M.ring, [M.names[i] for i in keep], new_deg, act, validate=False)
    S.kept = keep
    S.parent = M
    return S


def restrict_to_kept(S: GradedModule, N: Subspace) -> Subspace:
    """A subspace of ``S.parent`` lying in the kept coordinates, seen inside ``S``."""
    if N.dim == 0:
        return S.zero()
    rows = N.basis
    drop = [i for i in range(N.ambient) if i not in set(S.kept)]
    if rows[:, drop].any():
        raise InputError("subspace leaves the kept coordinates")
    return Subspace(rows[:, S.kept], S.dim, S.p)


# -- hom-spaces ------------------------------------------------------------


def _intertwiners(M: GradedModule, N: GradedModule, allowed: np.ndarray) -> list[np.ndarray]:
    """Basis of ``{G : A^M_j G = G A^N_j for all j}`` with support in ``allowed``.

    Constraints are imposed one ring basis element at a time, shrinking the
    solution space as we go.
    """
    p = M.p
    pos = np.argwhere(allowed)
    v = len(pos)
    if v == 0:
        return []
    rows_i, cols_k = pos[:, 0], pos[:, 1]
    m, n = M.dim, N.dim
    sol = np.eye(v, dtype=np.int64)
    ar = np.arange(v)
    for j in range(M.ring.dim):
        am, an = M.action[j], N.action[j]
        if not am.any() and not an.any():
            continue
        c = np.zeros((v, m, n), dtype=np.int64)
        c[ar, :, cols_k] = am[:, rows_i].T
        c[ar, rows_i, :] -= an[cols_k, :]
        cur = sol @ c.reshape(v, m * n) % p
        if not cur.any():
            continue
        ker = la.left_kernel(cur, p)
        sol = ker.basis @ sol % p
        if sol.shape[0] == 0:
            return []
    sol = la.Subspace(sol, v, p).basis
    out = np.zeros((sol.shape[0], m, n), dtype=np.int64)
    out[:, rows_i, cols_k] = sol
    return list(out)


def _check_same_ring(M: GradedModule, N: GradedModule):
    if M.ring is not N.ring:
        raise InputError("modules live over different rings")


def hom_gamma(M: GradedModule, N: GradedModule, gamma) -> list[np.ndarray]:
    """Basis of ``HOM_R(M, N)_gamma``: maps with ``g(M_sigma) <= N_(gamma.sigma)``."""
    _check_same_ring(M, N)
    g = M.ring.groupoid
    gamma = g.index(gamma)
    target = g.comp[gamma, M.degrees]
    allowed = target[:, None] == N.degrees[None, :]
    return _intertwiners(M, N, allowed)


def homgr(M: GradedModule, N: GradedModule) -> list[np.ndarray]:
    """Basis of degree-preserving module maps ``Homgr(M, N)``."""
    _check_same_ring(M, N)
    allowed = M.degrees[:, None] == N.degrees[None, :]
    return _intertwiners(M, N, allowed)


def is_module_map(M: GradedModule, N: GradedModule, G, gamma=None) -> bool:
    """Does ``G`` commute with the action (and shift degrees by ``gamma`` if given)?"""
    G = la.as_matrix(G, M.p)
    if G.shape != (M.dim, N.dim):
        return False
    lhs = np.einsum("jab,bc->jac", M.action, G) % M.p
    rhs = np.einsum("ab,jbc->jac", G, N.action) % M.p
    if not np.array_equal(lhs, rhs):
        return False
    if gamma is None:
        allowed = M.degrees[:, None] == N.degrees[None, :]
    else:
        g = M.ring.groupoid
        allowed = g.comp[g.index(gamma), M.degrees][:, None] == N.degrees[None, :]
    return not (G[~allowed]).any()


def map_kernel(G, p: int) -> Subspace:
    return la.left_kernel(G, p)


def map_image(G, p: int, n: Optional[int] = None) -> Subspace:
    G = la.as_matrix(G, p)
    return la.row_space(G, p, G.shape[1] if n is None else n)


def is_gr_isomorphic(
    M: GradedModule,
    N: GradedModule,
    simple: bool = False,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> tuple[bool, Optional[np.ndarray]]:
    """Decide ``M ~ N`` by a degree-preserving bijection; returns ``(verdict, witness)``.

    With ``simple=True`` both modules are known gr-simple and any nonzero
    gr-map is an isomorphism.  Otherwise the hom-space is searched
    exhaustively within ``budget``.
    """
    _check_same_ring(M, N)
    if M.degree_dims() != N.degree_dims():
        return False, None
    if M.dim == 0:
        return True, np.zeros((0, 0), dtype=np.int64)
    basis = homgr(M, N)
    if not basis:
        return False, None
    if simple:
        return True, basis[0]
    p = M.p
    stack = np.array(basis)
    # cheap tries first: each basis map and the plain sum
    for G in list(basis) + [stack.sum(axis=0) % p]:
        if la.rank(G, p) == M.dim:
            return True, G
    if p ** len(basis) > budget:
        raise ResourceBudgetError(f"isomorphism search over {p}^{len(basis)} maps exceeds budget {budget}")
    coeffs = la.all_coefficients(p, len(basis))
    maps = np.einsum("ck,kab->cab", coeffs, stack) % p
    ok = la.batch_nonsingular(maps, p)
    hit = np.flatnonzero(ok)
    if hit.size:
        return True, maps[hit[0]]
    return False, None


def random_vector(rng: np.random.Generator, space: Subspace) -> np.ndarray:
    if space.dim == 0:
        return np.zeros(space.ambient, dtype=np.int64)
    c = rng.integers(0, space.p, size=space.dim)
    return c @ space.basis % space.p
