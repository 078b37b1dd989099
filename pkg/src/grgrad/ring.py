"""Object-unital groupoid-graded rings as structure-constant algebras over F_p.

Every basis vector is homogeneous.  Elements are coefficient vectors over the
basis; ``table[i, j]`` is the coefficient vector of ``b_i * b_j``.
"""

from __future__ import annotations

import itertools
from typing import Hashable, Iterable, Mapping, Optional, Sequence

import numpy as np

from . import exactla as la
from .errors import InputError
from .exactla import Subspace
from .groupoid import Groupoid, ValidationReport, pair_groupoid, trivial_groupoid


class GradedRing:
    def __init__(
        self,
        groupoid: Groupoid,
        p: int,
        names: Sequence[str],
        degrees: Sequence[int],
        table,
        units: Mapping[int, Sequence[int]],
        validate: bool = True,
    ):
        self.groupoid = groupoid
        self.p = la.check_prime(p)
        self.names = [str(n) for n in names]
        self.degrees = np.array([groupoid.index(d) for d in degrees], dtype=np.int64)
        n = len(self.names)
        t = np.array(table, dtype=np.int64)
        if t.size == 0:
            t = np.zeros((n, n, n), dtype=np.int64)
        if t.shape != (n, n, n) or len(self.degrees) != n:
            raise InputError(f"product table must have shape {(n, n, n)}, got {t.shape}")
        self.table = t % self.p
        self.table.setflags(write=False)
        self.units = {}
        for e in groupoid.objects:
            u = units.get(e, units.get(groupoid.names[e])) if units else None
            self.units[e] = np.zeros(n, dtype=np.int64) if u is None else la.as_vector(u, self.p, n)
        for key in units or {}:
            if groupoid.index(key) not in groupoid.objects:
                raise InputError(f"unit given for non-object {key!r}")
        self._index = {name: i for i, name in enumerate(self.names)}
        if len(self._index) != n:
            raise InputError("ring basis names must be unique")
        self._right = None
        if validate:
            self.validate().raise_if_invalid()

    # -- basic access -------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.names)

    def __repr__(self):
        return f"GradedRing(dim={self.dim}, p={self.p}, {self.groupoid!r})"

    def basis_index(self, name) -> int:
        if isinstance(name, (int, np.integer)) and 0 <= name < self.dim:
            return int(name)
        if name in self._index:
            return self._index[name]
        raise InputError(f"unknown ring basis element {name!r}")

    def basis_vector(self, name) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.basis_index(name)] = 1
        return v

    def element(self, coeffs: Mapping) -> np.ndarray:
        """Build an element from ``{basis name: coefficient}``."""
        v = np.zeros(self.dim, dtype=np.int64)
        for k, c in coeffs.items():
            v[self.basis_index(k)] += c
        return v % self.p

    def unit(self, e) -> np.ndarray:
        e = self.groupoid.index(e)
        if e not in self.units:
            raise InputError(f"{self.groupoid.names[e]} is not an object")
        return self.units[e].copy()

    def component(self, gamma) -> list[int]:
        g = self.groupoid.index(gamma)
        return [int(i) for i in np.flatnonzero(self.degrees == g)]

    def component_space(self, gamma) -> Subspace:
        idx = self.component(gamma)
        return Subspace(np.eye(self.dim, dtype=np.int64)[idx], self.dim, self.p, _reduced=True)

    def support(self) -> list[int]:
        return sorted(set(self.degrees.tolist()))

    def gamma0_support(self) -> list[int]:
        return [e for e in self.groupoid.objects if self.units[e].any()]

    def degree_of(self, v) -> Optional[int]:
        """Degree of a nonzero homogeneous element; ``None`` for zero.

        Raises :class:`InputError` when ``v`` is not homogeneous.
        """
        v = la.as_vector(v, self.p, self.dim)
        degs = set(self.degrees[np.flatnonzero(v)].tolist())
        if not degs:
            return None
        if len(degs) > 1:
            raise InputError("element is not homogeneous")
        return degs.pop()

    # -- arithmetic ---------------------------------------------------

    def mul(self, a, b) -> np.ndarray:
        a = la.as_vector(a, self.p, self.dim)
        b = la.as_vector(b, self.p, self.dim)
        return np.einsum("i,j,ijk->k", a, b, self.table) % self.p

    def right_matrices(self) -> np.ndarray:
        """``out[j]`` is the matrix of ``x -> x * b_j`` in row convention."""
        if self._right is None:
            self._right = np.ascontiguousarray(self.table.transpose(1, 0, 2))
            self._right.setflags(write=False)
        return self._right

    def left_matrices(self) -> np.ndarray:
        """``out[i]`` is the matrix of ``x -> b_i * x`` in row convention."""
        return self.table

    def left_matrix(self, a) -> np.ndarray:
        a = la.as_vector(a, self.p, self.dim)
        return np.einsum("i,ijk->jk", a, self.table) % self.p

    def right_matrix(self, b) -> np.ndarray:
        b = la.as_vector(b, self.p, self.dim)
        return np.einsum("j,ijk->ik", b, self.table) % self.p

    # -- validation ---------------------------------------------------

    def validate(self) -> ValidationReport:
        report = ValidationReport("graded ring")
        g = self.groupoid
        n, p, t, deg = self.dim, self.p, self.table, self.degrees
        target_deg = g.comp[deg[:, None], deg[None, :]]
        allowed = target_deg[:, :, None] == deg[None, None, :]
        bad = np.argwhere((t != 0) & ~allowed)
        for i, j, k in bad:
            report.add(
                "grading",
                (self.names[i], self.names[j], self.names[k]),
                f"{self.names[i]}*{self.names[j]} has a component on {self.names[k]} outside its degree",
            )
        # row by row with float matmuls; entries stay below n * p^2, far inside exact range
        tf = t.astype(np.float64)
        flat_right, flat_left = tf.reshape(n, n * n), tf.reshape(n * n, n)
        failures = set()
        for i in range(n):
            diff = (tf[i] @ flat_right).reshape(n, n, n) - (flat_left @ tf[i]).reshape(n, n, n)
            bad = np.fmod(diff, p) != 0
            if bad.any():
                failures.update((i, int(j), int(k)) for j, k in np.argwhere(bad.any(axis=2)))
        for i, j, k in sorted(failures):
            report.add(
                "associativity",
                (self.names[i], self.names[j], self.names[k]),
                f"({self.names[i]}*{self.names[j]})*{self.names[k]} != {self.names[i]}*({self.names[j]}*{self.names[k]})",
            )
        for e, u in self.units.items():
            off = [i for i in np.flatnonzero(u) if deg[i] != e]
            if off:
                report.add("unit-degree", (g.names[e],), f"1_{g.names[e]} has support outside degree {g.names[e]}")
        left_unit = {e: self.left_matrix(u) for e, u in self.units.items()}
        right_unit = {e: self.right_matrix(u) for e, u in self.units.items()}
        eye = np.eye(n, dtype=np.int64)
        for i in range(n):
            r, d = int(g.target[deg[i]]), int(g.source[deg[i]])
            if not np.array_equal(left_unit[r][i], eye[i]):
                report.add("unit-law", (g.names[r], self.names[i]), f"1_{g.names[r]}*{self.names[i]} != {self.names[i]}")
            if not np.array_equal(right_unit[d][i], eye[i]):
                report.add("unit-law", (self.names[i], g.names[d]), f"{self.names[i]}*1_{g.names[d]} != {self.names[i]}")
        return report

    # -- graded subspaces ---------------------------------------------

    def space(self, vectors) -> Subspace:
        return la.span(vectors, self.dim, self.p) if len(vectors) else Subspace.zero(self.dim, self.p)

    def row_degrees(self, space: Subspace) -> list[int]:
        return graded_row_degrees(space, self.degrees)

    def is_graded(self, space: Subspace) -> bool:
        try:
            self.row_degrees(space)
        except InputError:
            return False
        return True

    def is_right_ideal(self, space: Subspace) -> bool:
        return _closed_under(space, self.right_matrices(), self.p)

    def is_left_ideal(self, space: Subspace) -> bool:
        return _closed_under(space, self.left_matrices(), self.p)

    def is_ideal(self, space: Subspace) -> bool:
        return self.is_graded(space) and self.is_right_ideal(space) and self.is_left_ideal(space)

    def degree_dims(self, space: Subspace) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.row_degrees(space):
            out[d] = out.get(d, 0) + 1
        return out


def graded_row_degrees(space: Subspace, degrees: np.ndarray) -> list[int]:
    """Degrees of the echelon rows; raises if the subspace is not graded.

    Elimination never mixes rows whose pivots have different degrees, so a
    subspace is graded exactly when every echelon row is homogeneous.
    """
    out = []
    for row in space.basis:
        ds = set(degrees[np.flatnonzero(row)].tolist())
        if len(ds) != 1:
            raise InputError("subspace is not graded")
        out.append(ds.pop())
    return out


def _closed_under(space: Subspace, mats: np.ndarray, p: int) -> bool:
    """Is ``space`` stable under every ``v -> v @ mats[j]``?"""
    if space.dim == 0:
        return True
    images = np.einsum("vi,jik->jvk", space.basis, mats).reshape(-1, space.ambient) % p
    return not space.reduce_rows(images).any()


def spin_space(start: Subspace, mats: np.ndarray, p: int) -> Subspace:
    """Smallest subspace containing ``start`` and stable under every ``v -> v @ mats[j]``.

    One pass applies all operators to the current basis; passes repeat until
    the dimension stops growing.
    """
    cur = start
    while cur.dim:
        images = np.einsum("vi,jik->jvk", cur.basis, mats).reshape(-1, cur.ambient) % p
        new = images[cur.reduce_rows(images).any(axis=1)]
        if new.shape[0] == 0:
            break
        cur = Subspace(np.vstack([cur.basis, new]), cur.ambient, p)
    return cur


def ideal_generated(R: GradedRing, elements: Iterable) -> Subspace:
    """Two-sided ideal generated by homogeneous elements."""
    elems = [la.as_vector(v, R.p, R.dim) for v in elements]
    for v in elems:
        R.degree_of(v)
    cur = R.space(elems)
    while True:
        nxt = spin_space(cur, R.right_matrices(), R.p)
        # v -> b_i * v is v @ table[i]
        nxt = spin_space(nxt, R.left_matrices(), R.p)
        if nxt == cur:
            return cur
        cur = nxt


# -- one-object algebras --------------------------------------------------


def algebra(p: int, names: Sequence[str], table, unit, object_name: str = "e") -> GradedRing:
    """A unital F_p-algebra graded by the trivial groupoid."""
    g = trivial_groupoid(object_name)
    return GradedRing(g, p, names, [0] * len(names), table, {0: unit})


def field_algebra(p: int) -> GradedRing:
    return algebra(p, ["1"], [[[1]]], [1])


def truncated_polynomial(p: int, k: int) -> GradedRing:
    """``F_p[x]/(x^k)`` with basis ``1, x, ..., x^(k-1)``."""
    if k < 1:
        raise InputError("truncation degree must be positive")
    names = ["1"] + [("x" if i == 1 else f"x^{i}") for i in range(1, k)]
    t = np.zeros((k, k, k), dtype=np.int64)
    for i, j in itertools.product(range(k), repeat=2):
        if i + j < k:
            t[i, j, i + j] = 1
    unit = np.eye(k, dtype=np.int64)[0]
    return algebra(p, names, t, unit)


def matrix_algebra(p: int, n: int) -> GradedRing:
    """``M_n(F_p)`` as an ungraded (trivially graded) algebra."""
    names = [f"e{i}{j}" for i in range(1, n + 1) for j in range(1, n + 1)]
    t = np.zeros((n * n,) * 3, dtype=np.int64)
    for i, j, l in itertools.product(range(n), repeat=3):
        t[i * n + j, j * n + l, i * n + l] = 1
    unit = np.zeros(n * n, dtype=np.int64)
    unit[[i * n + i for i in range(n)]] = 1
    return algebra(p, names, t, unit)


def group_algebra(p: int, table, element_names: Optional[Sequence[str]] = None) -> GradedRing:
    """``F_p[G]`` graded by ``G`` viewed as a one-object groupoid."""
    from .groupoid import group_groupoid

    g = group_groupoid(table, element_names)
    n = len(g)
    t = np.zeros((n, n, n), dtype=np.int64)
    for a, b in itertools.product(range(n), repeat=2):
        t[a, b, g.comp[a, b]] = 1
    e = g.objects[0]
    unit = np.eye(n, dtype=np.int64)[e]
    return GradedRing(g, p, [f"[{nm}]" for nm in g.names], list(range(n)), t, {e: unit})


def _require_unital_algebra(A: GradedRing) -> np.ndarray:
    if len(A.groupoid) != 1:
        raise InputError("coefficient algebra must be graded by the trivial groupoid")
    u = A.units[A.groupoid.objects[0]]
    if not u.any():
        raise InputError("coefficient algebra must be unital")
    return u


def _label(i) -> str:
    return str(i)


def _entry_names(A: GradedRing, items: Sequence) -> callable:
    short = all(len(_label(i)) == 1 for i in items)

    def name(a: int, i, j) -> str:
        pos = f"E{i}{j}" if short else f"E[{i},{j}]"
        return pos if A.dim == 1 and A.names[0] == "1" else f"{A.names[a]}*{pos}"

    return name


def _matrix_ring(A: GradedRing, items: Sequence, entries: Sequence[tuple], groupoid: Groupoid, degree_of) -> GradedRing:
    """Subring of ``M_I(A)`` spanned by ``A*E_ij`` for the listed positions."""
    unit_A = _require_unital_algebra(A)
    k = A.dim
    namer = _entry_names(A, items)
    pos_index = {pos: t for t, pos in enumerate(entries)}
    n = len(entries) * k
    names, degrees = [], []
    for (i, j) in entries:
        for a in range(k):
            names.append(namer(a, i, j))
            degrees.append(degree_of(i, j))
    t = np.zeros((n, n, n), dtype=np.int64)
    for (i, j), s in pos_index.items():
        for (j2, l), s2 in pos_index.items():
            if j2 != j:
                continue
            out = pos_index.get((i, l))
            if out is None:
                raise InputError(f"positions are not closed under multiplication at ({i},{l})")
            t[s * k : (s + 1) * k, s2 * k : (s2 + 1) * k, out * k : (out + 1) * k] = A.table
    return n, names, degrees, t, unit_A, pos_index, k


def build_pair_matrix_ring(A: GradedRing, index_set: Sequence[Hashable]) -> GradedRing:
    """``M_I(A)`` graded by the pair groupoid, ``M_I(A)_(i,j) = A E_ij``."""
    items = list(index_set)
    if not items:
        raise InputError("index set must be nonempty")
    g = pair_groupoid(items)
    entries = [(i, j) for i in items for j in items]
    n, names, degrees, t, unit_A, pos, k = _matrix_ring(
        A, items, entries, g, lambda i, j: g.index(f"({i},{j})")
    )
    units = {}
    for i in items:
        u = np.zeros(n, dtype=np.int64)
        s = pos[(i, i)]
        u[s * k : (s + 1) * k] = unit_A
        units[g.index(f"({i},{i})")] = u
    R = GradedRing(g, A.p, names, degrees, t, units)
    R.index_set = items
    R.entry_positions = pos
    R.coefficient_dim = k
    return R


def check_partial_order(elements: Sequence, leq: Iterable[tuple]) -> set:
    rel = {tuple(x) for x in leq}
    items = list(elements)
    known = set(items)
    for a, b in rel:
        if a not in known or b not in known:
            raise InputError(f"relation mentions unknown element in ({a},{b})")
    for a in items:
        if (a, a) not in rel:
            raise InputError(f"relation is not reflexive at {a}")
    for a, b in rel:
        if a != b and (b, a) in rel:
            raise InputError(f"relation is not antisymmetric at ({a},{b})")
    for (a, b), (c, d) in itertools.product(rel, repeat=2):
        if b == c and (a, d) not in rel:
            raise InputError(f"relation is not transitive at ({a},{b},{d})")
    return rel


def chain_order(elements: Sequence) -> set:
    items = list(elements)
    return {(a, b) for s, a in enumerate(items) for b in items[s:]}


def antichain_order(elements: Sequence) -> set:
    return {(a, a) for a in elements}


def build_ut(A: GradedRing, elements: Sequence, leq: Iterable[tuple]) -> GradedRing:
    """``UT_I(A)``: matrices with ``a_ij = 0`` unless ``i <= j``."""
    items = list(elements)
    if not items:
        raise InputError("poset must be nonempty")
    rel = check_partial_order(items, leq)
    g = pair_groupoid(items)
    entries = [(i, j) for i in items for j in items if (i, j) in rel]
    n, names, degrees, t, unit_A, pos, k = _matrix_ring(
        A, items, entries, g, lambda i, j: g.index(f"({i},{j})")
    )
    units = {}
    for i in items:
        u = np.zeros(n, dtype=np.int64)
        s = pos[(i, i)]
        u[s * k : (s + 1) * k] = unit_A
        units[g.index(f"({i},{i})")] = u
    R = GradedRing(g, A.p, names, degrees, t, units)
    R.index_set = items
    R.order = rel
    R.entry_positions = pos
    R.coefficient_dim = k
    return R


def build_block_matrix_ring(A: GradedRing, blocks: Sequence[Sequence[int]], labels: Optional[Sequence] = None) -> GradedRing:
    """``M_n(A)`` graded by the pair groupoid on blocks of ``{1..n}``.

    ``E_ij`` gets degree ``(block(i), block(j))``; ``1_b`` is the sum of the
    diagonal idempotents in block ``b``.
    """
    blocks = [list(b) for b in blocks]
    labels = list(labels) if labels is not None else list(range(1, len(blocks) + 1))
    flat = [i for b in blocks for i in b]
    if sorted(flat) != list(range(1, len(flat) + 1)):
        raise InputError("blocks must partition 1..n")
    owner = {i: labels[s] for s, b in enumerate(blocks) for i in b}
    g = pair_groupoid(labels)
    entries = [(i, j) for i in sorted(flat) for j in sorted(flat)]
    n, names, degrees, t, unit_A, pos, k = _matrix_ring(
        A, sorted(flat), entries, g, lambda i, j: g.index(f"({owner[i]},{owner[j]})")
    )
    units = {}
    for s, b in enumerate(blocks):
        u = np.zeros(n, dtype=np.int64)
        for i in b:
            q = pos[(i, i)]
            u[q * k : (q + 1) * k] = unit_A
        units[g.index(f"({labels[s]},{labels[s]})")] = u
    R = GradedRing(g, A.p, names, degrees, t, units)
    R.entry_positions = pos
    R.coefficient_dim = k
    return R


def build_category_ring(A: GradedRing, modules: Sequence, labels: Optional[Sequence] = None) -> GradedRing:
    """Ring of all ``Hom_A(M_b, M_a)`` graded by the pair groupoid on module indices.

    The component of degree ``(a, b)`` is ``Hom_A(M_b, M_a)``; the product of
    ``f`` (degree ``(a, b)``) and ``g`` (degree ``(b, c)``) is ``f . g``.
    Maps act on row vectors, so ``f . g`` has matrix ``G @ F``.
    """
    from .module import GradedModule, homgr

    _require_unital_algebra(A)
    mods = list(modules)
    if not mods:
        raise InputError("need at least one module")
    for M in mods:
        if not isinstance(M, GradedModule) or M.ring is not A:
            raise InputError("modules must be GradedModule values over the coefficient algebra")
        M.validate().raise_if_invalid()
    labels = list(labels) if labels is not None else list(range(1, len(mods) + 1))
    g = pair_groupoid(labels)
    p = A.p
    homs = {}
    for a, b in itertools.product(range(len(mods)), repeat=2):
        homs[(a, b)] = homgr(mods[b], mods[a])
    names, degrees, mats, block = [], [], [], {}
    for a, b in itertools.product(range(len(mods)), repeat=2):
        start = len(names)
        for s, F in enumerate(homs[(a, b)]):
            names.append(f"h{labels[a]}{labels[b]}_{s}" if len(mods) < 10 else f"h[{labels[a]},{labels[b]}]_{s}")
            degrees.append(g.index(f"({labels[a]},{labels[b]})"))
            mats.append(F)
        block[(a, b)] = list(range(start, len(names)))
    n = len(names)
    t = np.zeros((n, n, n), dtype=np.int64)
    flat = {key: np.array([mats[s].reshape(-1) for s in idx]) for key, idx in block.items() if idx}
    for (a, b), fi in block.items():
        for (b2, c), gi in block.items():
            if b2 != b:
                continue
            target = block[(a, c)]
            for i in fi:
                for j in gi:
                    prod = (mats[j] @ mats[i]) % p
                    if not prod.any():
                        continue
                    x = la.solve_left(flat[(a, c)], prod.reshape(-1), p) if target else None
                    if x is None:
                        raise InputError("composition left the hom-space; modules are inconsistent")
                    t[i, j, target] = x
    units = {}
    for a, M in enumerate(mods):
        idx = block[(a, a)]
        eye = np.eye(M.dim, dtype=np.int64).reshape(-1)
        x = la.solve_left(flat[(a, a)], eye, p) if idx else None
        u = np.zeros(n, dtype=np.int64)
        if x is not None:
            u[idx] = x
        elif M.dim:
            raise InputError("identity map not found in End(M)")
        units[g.index(f"({labels[a]},{labels[a]})")] = u
    R = GradedRing(g, p, names, degrees, t, units)
    R.category_modules = mods
    R.morphism_matrices = mats
    R.hom_blocks = block
    R.index_set = labels
    return R


# -- ring operations -------------------------------------------------------


def corner(R: GradedRing, e, f) -> Subspace:
    """``1_e R 1_f`` computed from the units."""
    g = R.groupoid
    e, f = g.index(e), g.index(f)
    if e not in g.objects or f not in g.objects:
        raise InputError("corner needs two objects")
    ue, uf = R.units[e], R.units[f]
    vecs = [R.mul(R.mul(ue, R.basis_vector(i)), uf) for i in range(R.dim)]
    return la.span(vecs, R.dim, R.p) if vecs else Subspace.zero(R.dim, R.p)


def full_subring(R: GradedRing, objects) -> GradedRing:
    """``R_Delta``: the components whose degrees join objects of ``Delta_0``."""
    sub_g, kept = R.groupoid.full_subgroupoid(objects)
    pos = {gid: i for i, gid in enumerate(kept)}
    idx = [i for i in range(R.dim) if int(R.degrees[i]) in pos]
    t = R.table[np.ix_(idx, idx, idx)]
    units = {pos[e]: R.units[e][idx] for e in R.groupoid.objects if e in pos}
    S = GradedRing(sub_g, R.p, [R.names[i] for i in idx], [pos[int(R.degrees[i])] for i in idx], t, units)
    S.parent_indices = idx
    return S


def quotient_ring(R: GradedRing, J: Subspace) -> GradedRing:
    """``R/J`` with coset representatives on the non-pivot basis vectors of ``J``."""
    if J.ambient != R.dim or J.p != R.p:
        raise InputError("ideal lives in a different space")
    if not R.is_ideal(J):
        raise InputError("quotient needs a two-sided graded ideal")
    keep = J.complement_indices()
    n = len(keep)
    t = np.zeros((n, n, n), dtype=np.int64)
    for a, i in enumerate(keep):
        prods = J.reduce_rows(R.table[i][keep])
        t[a] = prods[:, keep]
    units = {e: J.reduce(u)[keep] for e, u in R.units.items()}
    Q = GradedRing(R.groupoid, R.p, [R.names[i] for i in keep], R.degrees[keep].tolist(), t, units)
    Q.parent = R
    Q.kernel = J
    Q.kept = keep
    return Q


def project_to_quotient(Q: GradedRing, v) -> np.ndarray:
    return Q.kernel.reduce(v)[Q.kept]


def opposite_ring(R: GradedRing) -> GradedRing:
    """Same basis, ``a *op b = b * a``; degree ``gamma`` becomes ``gamma^-1``."""
    inv = R.groupoid.inv
    t = R.table.transpose(1, 0, 2)
    return GradedRing(R.groupoid, R.p, R.names, inv[R.degrees].tolist(), t, R.units)


def gr_inverse(R: GradedRing, a) -> Optional[np.ndarray]:
    """Two-sided graded inverse of a homogeneous element, if it exists."""
    a = la.as_vector(a, R.p, R.dim)
    gamma = R.degree_of(a)
    if gamma is None:
        return None
    g = R.groupoid
    inv = g.inverse(gamma)
    idx = R.component(inv)
    if not idx:
        return None
    one_r, one_d = R.units[g.r(gamma)], R.units[g.d(gamma)]
    # unknown b = sum_k c_k b_{idx[k]}; a*b and b*a are linear in c
    left = np.array([R.mul(a, R.basis_vector(k)) for k in idx])
    right = np.array([R.mul(R.basis_vector(k), a) for k in idx])
    system = np.hstack([left, right])
    rhs = np.concatenate([one_r, one_d])
    c = la.solve_left(system, rhs, R.p)
    if c is None:
        return None
    b = np.zeros(R.dim, dtype=np.int64)
    b[idx] = c
    return b % R.p


def is_gr_homomorphism(R: GradedRing, S: GradedRing, phi: np.ndarray) -> bool:
    """``phi`` maps ``R``'s basis (rows) into ``S``; checks the gr-ring-map laws."""
    phi = np.array(phi, dtype=np.int64) % R.p
    if R.groupoid != S.groupoid:
        return False
    for i in range(R.dim):
        img = phi[i]
        if img.any() and set(S.degrees[np.flatnonzero(img)].tolist()) != {int(R.degrees[i])}:
            return False
    lhs = np.einsum("ijk,kl->ijl", R.table, phi) % R.p
    rhs = np.einsum("ia,jb,abl->ijl", phi, phi, S.table) % R.p
    if not np.array_equal(lhs, rhs):
        return False
    return all(np.array_equal(R.units[e] @ phi % R.p, S.units[e]) for e in R.groupoid.objects)
