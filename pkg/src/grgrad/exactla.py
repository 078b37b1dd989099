"""Dense exact linear algebra over a prime field F_p.

Matrices are ``numpy.int64`` arrays with entries reduced into ``[0, p)``.
Vectors are rows: a linear map ``v -> v @ m`` is the convention used by the
ring and module layers, so both left and right kernels are provided.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InputError, ResourceBudgetError

DEFAULT_ENUM_BUDGET = 2**16
MAX_PRIME = 2**16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if not is_prime(p) or p > MAX_PRIME:
        raise InputError(f"{p} is not a prime <= {MAX_PRIME}")
    return p


def as_matrix(m, p: int, cols: Optional[int] = None) -> np.ndarray:
    a = np.array(m, dtype=np.int64)
    if a.ndim == 1:
        if a.size == 0 and cols is not None:
            a = a.reshape(0, cols)
        else:
            a = a.reshape(1, -1)
    if a.ndim != 2:
        raise InputError(f"expected a matrix, got shape {a.shape}")
    return a % p


def as_vector(v, p: int, n: Optional[int] = None) -> np.ndarray:
    a = np.array(v, dtype=np.int64).reshape(-1) % p
    if n is not None and a.size != n:
        raise InputError(f"expected a vector of length {n}, got {a.size}")
    return a


def _rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Row-reduce a copy of ``a``; return the nonzero rows and pivot columns."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        lead = int(a[r, c])
        if lead != 1:
            a[r] = (a[r] * pow(lead, -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rref(m, p: int) -> np.ndarray:
    """Reduced row echelon form, same shape as ``m`` (zero rows at the bottom)."""
    a = as_matrix(m, p)
    red, _ = _rref(a, p)
    out = np.zeros_like(a)
    out[: red.shape[0]] = red
    return out


def rank(m, p: int) -> int:
    return len(_rref(as_matrix(m, p), p)[1])


def _nullspace_from_rref(red: np.ndarray, pivots: Sequence[int], n: int, p: int) -> np.ndarray:
    piv = set(pivots)
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    basis[np.arange(len(free)), free] = 1
    if pivots and free:
        basis[:, list(pivots)] = (-red[:, free].T) % p
    return basis


def kernel(m, p: int) -> "Subspace":
    """Right kernel ``{x : m @ x = 0}``."""
    a = as_matrix(m, p)
    red, piv = _rref(a, p)
    return Subspace(_nullspace_from_rref(red, piv, a.shape[1], p), a.shape[1], p)


def left_kernel(m, p: int) -> "Subspace":
    """Left kernel ``{y : y @ m = 0}``."""
    a = as_matrix(m, p)
    return kernel(a.T, p)


def image(m, p: int) -> "Subspace":
    """Column space of ``m``."""
    a = as_matrix(m, p)
    return Subspace(a.T, a.shape[0], p)


def row_space(m, p: int, n: Optional[int] = None) -> "Subspace":
    a = as_matrix(m, p, cols=n)
    return Subspace(a, a.shape[1] if n is None else n, p)


def solve(m, rhs, p: int) -> Optional[np.ndarray]:
    """One solution of ``m @ x = rhs``, or ``None`` when inconsistent."""
    a = as_matrix(m, p)
    b = as_vector(rhs, p)
    if b.size != a.shape[0]:
        raise InputError(f"rhs has length {b.size}, matrix has {a.shape[0]} rows")
    n = a.shape[1]
    red, piv = _rref(np.hstack([a, b.reshape(-1, 1)]), p)
    if piv and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = red[i, n]
    return x


def solve_left(m, rhs, p: int) -> Optional[np.ndarray]:
    """One solution of ``x @ m = rhs``, or ``None``."""
    return solve(as_matrix(m, p).T, rhs, p)


def inverse(m, p: int) -> Optional[np.ndarray]:
    a = as_matrix(m, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise InputError("inverse of a non-square matrix")
    red, piv = _rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        return None
    return red[:n, n:] % p


class Subspace:
    """A subspace of ``F_p^n`` stored by its canonical RREF basis.

    Two equal subspaces have identical ``basis`` arrays, so the bytes of the
    basis double as a hash key.
    """

    __slots__ = ("p", "ambient", "basis", "pivots", "_key")

    def __init__(self, vectors, ambient: int, p: int, _reduced: bool = False):
        self.p = p
        self.ambient = int(ambient)
        a = np.array(vectors, dtype=np.int64)
        if a.size == 0:
            a = np.zeros((0, self.ambient), dtype=np.int64)
        a = a.reshape(a.shape[0] if a.ndim == 2 else -1, self.ambient) % p
        if _reduced:
            self.basis = a
            self.pivots = tuple(int(np.flatnonzero(row)[0]) for row in a)
        else:
            red, piv = _rref(a, p)
            self.basis = red
            self.pivots = tuple(piv)
        self.basis.setflags(write=False)
        self._key = None

    @classmethod
    def zero(cls, ambient: int, p: int) -> "Subspace":
        return cls(np.zeros((0, ambient), dtype=np.int64), ambient, p, _reduced=True)

    @classmethod
    def full(cls, ambient: int, p: int) -> "Subspace":
        return cls(np.eye(ambient, dtype=np.int64), ambient, p, _reduced=True)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.ambient.to_bytes(4, "little") + self.basis.tobytes()
        return self._key

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.p == other.p and self.key() == other.key()

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, p={self.p})"

    def _check(self, other: "Subspace"):
        if other.ambient != self.ambient or other.p != self.p:
            raise InputError("subspaces live in different ambient spaces")

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return Subspace(np.vstack([self.basis, other.basis]), self.ambient, self.p)

    __add__ = sum

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient, self.p)
        stacked = np.vstack([self.basis, (-other.basis) % self.p])
        coeffs = left_kernel(stacked, self.p).basis[:, : self.dim]
        return Subspace(coeffs @ self.basis % self.p, self.ambient, self.p)

    __and__ = intersect

    def reduce(self, v) -> np.ndarray:
        """Normal form of ``v`` modulo this subspace (zero at every pivot)."""
        v = as_vector(v, self.p, self.ambient).copy()
        for row, c in zip(self.basis, self.pivots):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def reduce_rows(self, vs: np.ndarray) -> np.ndarray:
        vs = np.array(vs, dtype=np.int64).reshape(-1, self.ambient) % self.p
        if self.dim == 0:
            return vs
        coeff = vs[:, list(self.pivots)]
        return (vs - coeff @ self.basis) % self.p

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def contains_space(self, other: "Subspace") -> bool:
        self._check(other)
        if other.dim > self.dim:
            return False
        return not self.reduce_rows(other.basis).any()

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_space(self)

    def __ge__(self, other: "Subspace") -> bool:
        return self.contains_space(other)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and other.contains_space(self)

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` in the echelon basis; ``v`` must lie in the space."""
        v = as_vector(v, self.p, self.ambient)
        c = v[list(self.pivots)] if self.dim else np.zeros(0, dtype=np.int64)
        if ((c @ self.basis - v) % self.p).any():
            raise InputError("vector is not in the subspace")
        return c

    def complement_indices(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ambient) if c not in piv]

    def count(self) -> int:
        return self.p**self.dim

    def enumerate(self, limit: int = DEFAULT_ENUM_BUDGET) -> np.ndarray:
        """All ``p**dim`` vectors of the space, as rows."""
        if self.count() > limit:
            raise ResourceBudgetError(
                f"enumerating {self.p}^{self.dim} vectors exceeds budget {limit}"
            )
        return all_coefficients(self.p, self.dim) @ self.basis % self.p


def all_coefficients(p: int, k: int) -> np.ndarray:
    """Every vector of ``F_p^k`` in lexicographic order, as rows."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((p,) * k).reshape(k, -1).T
    return grids.astype(np.int64)


def projective_points(p: int, k: int) -> np.ndarray:
    """One representative per line of ``F_p^k``: first nonzero entry equal to 1."""
    out = []
    for lead in range(k):
        tail = all_coefficients(p, k - lead - 1)
        block = np.zeros((tail.shape[0], k), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1 :] = tail
        out.append(block)
    if not out:
        return np.zeros((0, 0), dtype=np.int64)
    return np.vstack(out)


def span(vectors: Iterable, ambient: int, p: int) -> Subspace:
    rows = [as_vector(v, p, ambient) for v in vectors]
    if not rows:
        return Subspace.zero(ambient, p)
    return Subspace(np.vstack(rows), ambient, p)


def equal(a: Subspace, b: Subspace) -> bool:
    return a == b


_INVERSES: dict[int, np.ndarray] = {}


def inverse_table(p: int) -> np.ndarray:
    """``t[x] = x^-1 mod p`` for ``x != 0`` (``t[0] = 0``)."""
    t = _INVERSES.get(p)
    if t is None:
        t = np.zeros(p, dtype=np.int64)
        x = np.arange(1, p, dtype=np.int64)
        # Fermat: x^(p-2), by repeated squaring on the whole array
        result = np.ones_like(x)
        base, e = x.copy(), p - 2
        while e:
            if e & 1:
                result = result * base % p
            base = base * base % p
            e >>= 1
        t[1:] = result
        _INVERSES[p] = t
    return t


def batch_nonsingular(mats, p: int) -> np.ndarray:
    """For a stack of square matrices, flag which are invertible over F_p.

    Elimination runs on the whole stack at once; a matrix is dropped the
    first time a column has no usable pivot.
    """
    a = np.array(mats, dtype=np.int64) % p
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise InputError("expected a stack of square matrices")
    b, n, _ = a.shape
    ok = np.ones(b, dtype=bool)
    inv = inverse_table(p)
    idx = np.arange(b)
    for c in range(n):
        has = a[:, c:, c] != 0
        found = has.any(axis=1)
        ok &= found
        piv = c + has.argmax(axis=1)
        top = a[idx, c].copy()
        a[idx, c] = a[idx, piv]
        a[idx, piv] = top
        lead = inv[a[idx, c, c]]
        a[:, c] = a[:, c] * lead[:, None] % p
        f = a[:, :, c].copy()
        f[:, c] = 0
        a = (a - f[:, :, None] * a[:, c][:, None, :]) % p
    return ok
