"""Graded Jacobson radical and socle, with independent engines that check each other.

Engines
-------
``lattice``
    Enumerate every graded submodule of each ``R(e)`` (spin every
    homogeneous line, close under sums) and intersect the maximal ones.
``carac``
    Exhaustive quasi-regularity per degree: ``a`` in ``R_gamma`` qualifies
    when ``1 - a x`` is right invertible in ``R_r(gamma)`` for all ``x`` in
    ``R_gamma^-1``.
``trace``
    Dickson's trace-form kernel for a one-object algebra, valid when ``p``
    exceeds the algebra's dimension.
``diagonal``
    Radicals of the diagonal algebras ``R_e`` by power traces of integer
    lifts (works in any characteristic), extended to ``R_gamma`` as the
    ``a`` with ``a R_gamma^-1`` inside ``rad R_r(gamma)``.  No enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import exactla as la
from .errors import ConsistencyError, InputError, ResourceBudgetError
from .exactla import DEFAULT_ENUM_BUDGET, Subspace
from .module import GradedModule, preimage, quotient, regular_module, spin
from .ring import GradedRing, algebra


# -- submodule lattices -----------------------------------------------------


@dataclass
class Lattice:
    """All graded submodules of ``top`` (a submodule of ``module``), sorted by dimension."""

    module: GradedModule
    top: Subspace
    elements: list
    cyclic: list

    def maximal(self) -> list[Subspace]:
        proper = [x for x in self.elements if x != self.top]
        return [x for x in proper if not any(x < y for y in proper)]

    def minimal(self) -> list[Subspace]:
        nonzero = [x for x in self.elements if x.dim > 0]
        return [x for x in nonzero if not any(y < x for y in nonzero)]

    def radical(self) -> Subspace:
        maxes = self.maximal()
        if not maxes:
            return Subspace.zero(self.top.ambient, self.top.p)
        out = maxes[0]
        for x in maxes[1:]:
            out = out & x
        return out

    def socle(self) -> Subspace:
        out = Subspace.zero(self.top.ambient, self.top.p)
        for x in self.minimal():
            out = out + x
        return out

    def __len__(self):
        return len(self.elements)


def _homogeneous_lines(M: GradedModule, within: Subspace, budget: int) -> list[np.ndarray]:
    """One vector per homogeneous line of ``within`` (a graded subspace)."""
    degs = M.row_degrees(within)
    by_degree: dict[int, list[np.ndarray]] = {}
    for d, row in zip(degs, within.basis):
        by_degree.setdefault(d, []).append(row)
    total = sum(M.p ** len(rows) for rows in by_degree.values())
    if total > budget:
        raise ResourceBudgetError(f"lattice oracle needs {total} homogeneous vectors, budget {budget}")
    out = []
    for d in sorted(by_degree):
        rows = np.array(by_degree[d])
        pts = la.projective_points(M.p, rows.shape[0])
        out.extend(pts @ rows % M.p)
    return out


def submodule_lattice(
    M: GradedModule,
    within: Optional[Subspace] = None,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> Lattice:
    """Every graded submodule of ``within`` (default ``M``).

    Every graded submodule is a sum of cyclic submodules generated by
    homogeneous vectors, so closing the cyclic ones under sums is complete.
    """
    top = M.whole() if within is None else M.check_submodule(within)
    cyclic = {}
    for v in _homogeneous_lines(M, top, budget):
        c = spin(M, [v])
        cyclic.setdefault(c.key(), c)
    cyc = sorted(cyclic.values(), key=lambda s: (s.dim, s.key()))
    zero = M.zero()
    seen = {zero.key(): zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for c in cyc:
                if x.contains_space(c):
                    continue
                y = x + c
                if y.key() not in seen:
                    seen[y.key()] = y
                    nxt.append(y)
                    if len(seen) > budget:
                        raise ResourceBudgetError(f"lattice has more than {budget} elements")
        frontier = nxt
    elements = sorted(seen.values(), key=lambda s: (s.dim, s.key()))
    return Lattice(M, top, elements, cyc)


def object_lattices(M: GradedModule, budget: int = DEFAULT_ENUM_BUDGET) -> dict[int, Lattice]:
    """Lattice of each nonzero ``M(e)``; graded submodules of ``M`` are sums over ``e``."""
    return {e: submodule_lattice(M, M.component(e), budget) for e in M.gamma0_support()}


def full_lattice(M: GradedModule, budget: int = DEFAULT_ENUM_BUDGET) -> list[Subspace]:
    """All graded submodules of ``M`` as sums of one submodule from each ``M(e)``."""
    parts = list(object_lattices(M, budget).values())
    size = 1
    for lat in parts:
        size *= len(lat)
    if size > budget:
        raise ResourceBudgetError(f"product lattice has {size} elements, budget {budget}")
    out = [M.zero()]
    for lat in parts:
        out = [x + y for x in out for y in lat.elements]
    return out


# -- reports ----------------------------------------------------------------


@dataclass
class RadicalReport:
    space: Subspace
    degree_dims: dict
    engine: str
    oracle: Optional[str] = None
    oracle_agrees: Optional[bool] = None
    notes: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.space.dim

    def as_dict(self, groupoid) -> dict:
        return {
            "dim": self.dim,
            "degree_dims": {groupoid.names[d]: c for d, c in sorted(self.degree_dims.items())},
            "engine": self.engine,
            "oracle": self.oracle,
            "oracle_agrees": self.oracle_agrees,
            "notes": list(self.notes),
        }


def _report(M: GradedModule, space: Subspace, engine: str) -> RadicalReport:
    return RadicalReport(space, M.degree_dims(space), engine)


# -- ring radical -------------------------------------------------------------


def _lattice_radical(M: GradedModule, budget: int) -> Subspace:
    out = M.zero()
    for lat in object_lattices(M, budget).values():
        out = out + lat.radical()
    return out


def _lattice_socle(M: GradedModule, budget: int) -> Subspace:
    out = M.zero()
    for lat in object_lattices(M, budget).values():
        out = out + lat.socle()
    return out


ENGINES = ("lattice", "carac", "diagonal")


def _engine_radical(R: GradedRing, engine: str, budget: int) -> Subspace:
    if engine == "lattice":
        return _lattice_radical(regular_module(R), budget)
    if engine == "carac":
        return carac_radical(R, budget)
    if engine == "diagonal":
        return diagonal_radical(R)
    raise InputError(f"unknown radical engine {engine!r}")


def rad_gr_ring(
    R: GradedRing,
    engine: str = "auto",
    budget: int = DEFAULT_ENUM_BUDGET,
    check: bool = False,
) -> RadicalReport:
    """``rad^gr(R)`` as a checked two-sided graded ideal.

    ``auto`` uses the lattice oracle when it fits the budget and the
    diagonal engine otherwise.  ``check=True`` recomputes with every other
    engine that fits and raises :class:`ConsistencyError` on disagreement.
    """
    if engine == "auto":
        try:
            J, used = _engine_radical(R, "lattice", budget), "lattice"
        except ResourceBudgetError:
            J, used = _engine_radical(R, "diagonal", budget), "diagonal"
    else:
        J, used = _engine_radical(R, engine, budget), engine
    if not R.is_ideal(J):
        raise ConsistencyError("computed radical is not a two-sided graded ideal")
    rep = _report(regular_module(R), J, used)
    if check:
        agreed = []
        for other in ENGINES:
            if other == used:
                continue
            try:
                alt = _engine_radical(R, other, budget)
            except ResourceBudgetError as exc:
                rep.notes.append(f"{other} skipped: {exc}")
                continue
            if alt != J:
                raise ConsistencyError(f"{used} and {other} radicals disagree")
            agreed.append(other)
        rep.oracle = "+".join(agreed) if agreed else None
        rep.oracle_agrees = True if agreed else None
    return rep


def soc_gr_ring(R: GradedRing, budget: int = DEFAULT_ENUM_BUDGET) -> RadicalReport:
    """Socle of ``R_R``: lattice atoms when they fit, else the left annihilator of the radical."""
    M = regular_module(R)
    try:
        return _report(M, _lattice_socle(M, budget), "lattice")
    except ResourceBudgetError:
        J = rad_gr_ring(R, budget=budget).space
        return _report(M, annihilator(M, J), "annihilator")


def _component_left_matrices(R: GradedRing, e: int) -> tuple[list[int], np.ndarray]:
    """Basis indices of ``R_e`` and ``L[k]`` = left multiplication by its k-th basis vector on ``R_e``."""
    idx = R.component(e)
    L = R.table[np.ix_(idx, idx, idx)]
    return idx, L


def carac_component_oracle(R: GradedRing, gamma, budget: int = DEFAULT_ENUM_BUDGET) -> Subspace:
    """All ``a`` in ``R_gamma`` such that ``1 - a x`` is right invertible for every ``x`` in ``R_gamma^-1``.

    Exhaustive over both components.  The qualifying set is returned as a
    subspace after checking that it really is one.
    """
    g = R.groupoid
    gamma = g.index(gamma)
    e = g.r(gamma)
    p = R.p
    a_idx = R.component(gamma)
    x_idx = R.component(g.inverse(gamma))
    na, nx = len(a_idx), len(x_idx)
    if p ** (na + nx) > budget:
        raise ResourceBudgetError(f"carac oracle needs {p}^{na + nx} pairs, budget {budget}")
    if na == 0:
        return Subspace.zero(R.dim, p)
    e_idx, L = _component_left_matrices(R, e)
    unit = R.units[e][e_idx]
    a_all = la.all_coefficients(p, na)
    x_all = la.all_coefficients(p, nx)
    # products a*x land in R_e; coordinates over e_idx
    block = R.table[np.ix_(a_idx, x_idx, e_idx)]
    prods = np.einsum("ai,xj,ijk->axk", a_all, x_all, block) % p
    u = (unit[None, None, :] - prods) % p
    mats = np.einsum("axk,kij->axij", u, L) % p
    ne = len(e_idx)
    ok = la.batch_nonsingular(mats.reshape(-1, ne, ne), p).reshape(len(a_all), len(x_all))
    good = a_all[ok.all(axis=1)]
    vecs = np.zeros((good.shape[0], R.dim), dtype=np.int64)
    vecs[:, a_idx] = good
    space = Subspace(vecs, R.dim, p)
    if space.count() != good.shape[0]:
        raise ConsistencyError(f"qualifying elements of degree {g.names[gamma]} do not form a subspace")
    return space


def carac_radical(R: GradedRing, budget: int = DEFAULT_ENUM_BUDGET) -> Subspace:
    out = Subspace.zero(R.dim, R.p)
    for gamma in R.support():
        out = out + carac_component_oracle(R, gamma, budget)
    return out


# -- one-object algebras ------------------------------------------------------


def component_algebra(R: GradedRing, e) -> GradedRing:
    """``R_e`` as a unital algebra over the trivial groupoid."""
    e = R.groupoid.index(e)
    idx, L = _component_left_matrices(R, e)
    A = algebra(R.p, [R.names[i] for i in idx], L, R.units[e][idx], object_name=R.groupoid.names[e])
    A.parent_indices = idx
    return A


def trace_form_radical(A: GradedRing) -> Subspace:
    """``{x : tr(L_(x y)) = 0 for all y}``; needs ``p > dim A``."""
    if len(A.groupoid) != 1:
        raise InputError("trace form needs a one-object algebra")
    if A.p <= A.dim:
        raise InputError(
            f"trace-form radical needs p > dim A (p={A.p}, dim={A.dim}); use the lattice or carac engine"
        )
    traces = np.einsum("kjj->k", A.table) % A.p
    gram = np.einsum("ijk,k->ij", A.table, traces) % A.p
    return la.left_kernel(gram, A.p)


def quasi_regular_radical(A: GradedRing, budget: int = DEFAULT_ENUM_BUDGET) -> Subspace:
    """``{a : 1 - a y is right invertible for all y}`` by exhaustive search."""
    if len(A.groupoid) != 1:
        raise InputError("quasi-regularity search needs a one-object algebra")
    return carac_component_oracle(A, A.groupoid.objects[0], budget)


def algebra_radical(A: GradedRing, budget: int = DEFAULT_ENUM_BUDGET) -> tuple[Subspace, str]:
    """``rad(A)`` by the trace form when ``p > dim A``, else by quasi-regularity.

    When the exhaustive search is over budget, the power-trace ideal is used
    and named as such.
    """
    if A.p > A.dim:
        return trace_form_radical(A), "trace"
    try:
        return quasi_regular_radical(A, budget), "quasi-regular"
    except ResourceBudgetError:
        return power_trace_radical(A), "power-trace"


def _lift_power_trace(mat: np.ndarray, e: int, mod: int) -> int:
    """``trace(mat^e) mod mod`` for an integer matrix."""
    out = np.eye(mat.shape[0], dtype=np.int64)
    base = mat % mod
    while e:
        if e & 1:
            out = out @ base % mod
        base = base @ base % mod
        e >>= 1
    return int(np.trace(out)) % mod


def power_trace_radical(A: GradedRing) -> Subspace:
    """``rad(A)`` in any characteristic from traces of powers of integer lifts.

    With ``L`` the left regular representation and ``l = floor(log_p dim A)``,
    set ``I_-1 = A`` and
    ``I_i = {a in I_(i-1) : g_i(a b) = 0 for all b}`` where
    ``g_i(c) = (tr(L_c^(p^i)) mod p^(i+1)) / p^i`` on integer lifts.  Each
    ``g_i`` is linear on ``I_(i-1)`` and ``I_l`` is the radical (Cohen,
    Ivanyos and Wales, 1997).  For ``p > dim A`` this is the trace form.
    """
    if len(A.groupoid) != 1:
        raise InputError("power traces need a one-object algebra")
    p, n = A.p, A.dim
    if n == 0:
        return Subspace.zero(0, p)
    levels = 0
    while p ** (levels + 1) <= n:
        levels += 1
    current = Subspace.full(n, p)
    for i in range(levels + 1):
        if current.dim == 0:
            break
        mod, step = p ** (i + 1), p**i
        # products a_k * b_j for a_k in the current ideal and b_j in A
        prods = np.einsum("ai,ijk->ajk", current.basis, A.table) % p
        values = np.zeros((current.dim, n), dtype=np.int64)
        for a in range(current.dim):
            for j in range(n):
                c = prods[a, j]
                if not c.any():
                    continue
                Lc = np.einsum("k,kxy->xy", c, A.table) % p
                values[a, j] = (_lift_power_trace(Lc, step, mod) // step) % p
        coeffs = la.left_kernel(values, p).basis
        current = Subspace(coeffs @ current.basis % p, n, p) if coeffs.size else Subspace.zero(n, p)
    return current


def diagonal_radical(R: GradedRing) -> Subspace:
    """``rad^gr(R)`` from ``rad(R_e)`` on the diagonal, extended degree by degree."""
    g = R.groupoid
    p = R.p
    diag = {}
    for e in g.objects:
        idx = R.component(e)
        if not idx:
            diag[e] = Subspace.zero(R.dim, p)
            continue
        A = component_algebra(R, e)
        rad = power_trace_radical(A)
        vecs = np.zeros((rad.dim, R.dim), dtype=np.int64)
        vecs[:, idx] = rad.basis
        diag[e] = Subspace(vecs, R.dim, p, _reduced=True) if rad.dim else Subspace.zero(R.dim, p)
    out = Subspace.zero(R.dim, p)
    for gamma in R.support():
        if gamma in g.objects:
            out = out + diag[gamma]
            continue
        a_idx = R.component(gamma)
        x_idx = R.component(g.inverse(gamma))
        if not x_idx:
            out = out + R.component_space(gamma)
            continue
        target = diag[g.r(gamma)]
        prods = R.table[np.ix_(a_idx, x_idx)]  # (a, x, dim)
        red = target.reduce_rows(prods.reshape(-1, R.dim)).reshape(len(a_idx), -1)
        coeffs = la.left_kernel(red, p).basis
        if coeffs.size:
            vecs = np.zeros((coeffs.shape[0], R.dim), dtype=np.int64)
            vecs[:, a_idx] = coeffs
            out = out + Subspace(vecs, R.dim, p)
    return out


def nilpotent_radical_oracle(A: GradedRing, budget: int = DEFAULT_ENUM_BUDGET) -> Subspace:
    """``{a : a y is nilpotent for all y}`` by exhaustive search."""
    p, n = A.p, A.dim
    if p ** (2 * n) > budget:
        raise ResourceBudgetError(f"nilpotency oracle needs {p}^{2 * n} pairs, budget {budget}")
    elems = la.all_coefficients(p, n)
    prods = np.einsum("ai,yj,ijk->ayk", elems, elems, A.table) % p
    mats = np.einsum("ayk,kij->ayij", prods, A.table) % p
    power = mats.copy()
    for _ in range(max(1, n.bit_length())):
        power = np.einsum("...ij,...jk->...ik", power, power) % p
    nil = ~power.reshape(len(elems), len(elems), -1).any(axis=2)
    good = elems[nil.all(axis=1)]
    return Subspace(good, n, p)


# -- module radical and socle ---------------------------------------------------


def _ring_radical_space(R: GradedRing, J: Optional[Subspace], budget: int) -> Subspace:
    if J is None:
        J = rad_gr_ring(R, budget=budget).space
    return J


def module_times(M: GradedModule, N: Subspace, I: Subspace) -> Subspace:
    """``N * I``: span of ``n * a`` for basis vectors of both."""
    if N.dim == 0 or I.dim == 0:
        return M.zero()
    ops = np.einsum("aj,jik->aik", I.basis, M.action) % M.p
    images = np.einsum("vi,aik->avk", N.basis, ops).reshape(-1, M.dim) % M.p
    return la.row_space(images, M.p, M.dim)


def annihilator(M: GradedModule, I: Subspace) -> Subspace:
    """``{m : m * a = 0 for all a in I}``."""
    if I.dim == 0:
        return M.whole()
    if M.dim == 0:
        return M.zero()
    ops = np.einsum("aj,jik->aik", I.basis, M.action) % M.p
    stacked = np.hstack(list(ops))
    return la.left_kernel(stacked, M.p)


def rad_gr_module(
    M: GradedModule,
    J: Optional[Subspace] = None,
    engine: str = "product",
    budget: int = DEFAULT_ENUM_BUDGET,
) -> Subspace:
    """``rad^gr(M)``: ``M * J`` (``product``) or the lattice intersection (``lattice``)."""
    if engine == "lattice":
        return _lattice_radical(M, budget)
    if engine != "product":
        raise InputError(f"unknown module radical engine {engine!r}")
    return module_times(M, M.whole(), _ring_radical_space(M.ring, J, budget))


def soc_gr_module(
    M: GradedModule,
    J: Optional[Subspace] = None,
    engine: str = "annihilator",
    budget: int = DEFAULT_ENUM_BUDGET,
) -> Subspace:
    """``soc^gr(M)``: annihilator of ``J`` (``annihilator``) or sum of lattice atoms (``lattice``)."""
    if engine == "lattice":
        return _lattice_socle(M, budget)
    if engine != "annihilator":
        raise InputError(f"unknown module socle engine {engine!r}")
    return annihilator(M, _ring_radical_space(M.ring, J, budget))


def ideal_power(R: GradedRing, J: Subspace, n: int) -> Subspace:
    """``J^n`` as the span of products of ``n`` basis elements (``J^0 = R``)."""
    out = Subspace.full(R.dim, R.p)
    for _ in range(n):
        if out.dim == 0:
            break
        prods = np.einsum("ai,bj,ijk->abk", out.basis, J.basis, R.table).reshape(-1, R.dim) % R.p
        out = la.row_space(prods, R.p, R.dim) if prods.size else Subspace.zero(R.dim, R.p)
    return out


@dataclass
class LoewySeries:
    terms: list
    profiles: list
    engines: tuple

    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]


def _object_support_of_step(M: GradedModule, lower: Subspace, upper: Subspace) -> list[int]:
    lo, hi = M.object_dims(lower), M.object_dims(upper)
    return sorted(e for e in hi if hi[e] > lo.get(e, 0))


def loewy_series(
    M: GradedModule,
    J: Optional[Subspace] = None,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> LoewySeries:
    """``0 = soc^0 <= soc^1 <= ... = M`` computed twice and compared.

    The first route takes the socle of each quotient ``M / soc^n`` on the
    quotient's own basis (lattice engine when it fits, annihilator
    otherwise); the second is ``{m : m J^n = 0}``.
    """
    R = M.ring
    J = _ring_radical_space(R, J, budget)
    iterated = [M.zero()]
    engines = set()
    while iterated[-1] != M.whole():
        Q = quotient(M, iterated[-1])
        try:
            s = _lattice_socle(Q, budget)
            engines.add("lattice")
        except ResourceBudgetError:
            s = annihilator(Q, J)
            engines.add("annihilator")
        nxt = preimage(Q, s)
        if nxt == iterated[-1]:
            raise ConsistencyError("socle of a nonzero quotient vanished")
        iterated.append(nxt)
    by_power = [annihilator(M, ideal_power(R, J, n)) for n in range(len(iterated))]
    if by_power[-1] != M.whole() or (len(by_power) > 1 and by_power[-2] == M.whole()):
        raise ConsistencyError("annihilator series stabilizes at a different step")
    for n, (a, b) in enumerate(zip(iterated, by_power)):
        if a != b:
            raise ConsistencyError(f"Loewy series disagree at step {n}")
    profiles = [_object_support_of_step(M, a, b) for a, b in zip(iterated, iterated[1:])]
    return LoewySeries(iterated, profiles, ("iterated-socle:" + "+".join(sorted(engines)), "annihilator-power"))


def radical_series(M: GradedModule, J: Optional[Subspace] = None, budget: int = DEFAULT_ENUM_BUDGET) -> list[Subspace]:
    """``M >= M J >= M J^2 >= ...`` down to the first repeated term."""
    J = _ring_radical_space(M.ring, J, budget)
    out = [M.whole()]
    while True:
        nxt = module_times(M, out[-1], J)
        if nxt == out[-1]:
            return out
        out.append(nxt)


def unit_coset_invertible(R: GradedRing, e, J: Subspace, budget: int = DEFAULT_ENUM_BUDGET) -> bool:
    """Is every element of ``1_e + J_e`` invertible in ``R_e``?"""
    e = R.groupoid.index(e)
    idx, L = _component_left_matrices(R, e)
    Je = J & R.component_space(e)
    if R.p ** Je.dim > budget:
        raise ResourceBudgetError("coset too large to enumerate")
    elems = Je.enumerate(budget)[:, idx]
    u = (R.units[e][idx][None, :] + elems) % R.p
    mats = np.einsum("ak,kij->aij", u, L) % R.p
    return bool(la.batch_nonsingular(mats, R.p).all())
