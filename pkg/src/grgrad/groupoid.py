"""Finite groupoids with dense composition tables.

Morphisms are integers ``0..n-1``; objects are the ids of identity
morphisms.  ``comp[delta, gamma]`` holds the id of ``delta . gamma`` (apply
``gamma`` first) or :data:`UNDEFINED`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Optional, Sequence

import numpy as np

from .errors import InputError, ValidationError

UNDEFINED = -1


@dataclass
class Violation:
    kind: str
    where: tuple
    message: str

    def as_dict(self):
        return {"kind": self.kind, "where": list(self.where), "message": self.message}


@dataclass
class ValidationReport:
    subject: str
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind, where, message):
        self.violations.append(Violation(kind, tuple(where), message))

    def raise_if_invalid(self):
        if not self.ok:
            first = self.violations[0].message
            raise ValidationError(
                f"{self.subject} is invalid ({len(self.violations)} violations; first: {first})",
                report=self,
            )

    def as_dict(self):
        return {
            "subject": self.subject,
            "valid": self.ok,
            "violations": [v.as_dict() for v in self.violations],
        }


class Groupoid:
    def __init__(
        self,
        names: Sequence[str],
        source: Sequence[int],
        target: Sequence[int],
        comp,
        inv: Sequence[int],
    ):
        self.names = [str(n) for n in names]
        self.source = np.array(source, dtype=np.int64)
        self.target = np.array(target, dtype=np.int64)
        self.comp = np.array(comp, dtype=np.int64)
        self.inv = np.array(inv, dtype=np.int64)
        n = len(self.names)
        if self.comp.shape != (n, n) or not (len(self.source) == len(self.target) == len(self.inv) == n):
            raise InputError("groupoid tables have inconsistent sizes")
        if len(set(self.names)) != n:
            raise InputError("morphism names must be unique")
        self._index = {name: i for i, name in enumerate(self.names)}
        self.objects = sorted(set(self.source.tolist()) | set(self.target.tolist()))

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"Groupoid({len(self.objects)} objects, {len(self)} morphisms)"

    def __eq__(self, other):
        if not isinstance(other, Groupoid):
            return NotImplemented
        return (
            self.names == other.names
            and np.array_equal(self.source, other.source)
            and np.array_equal(self.target, other.target)
            and np.array_equal(self.comp, other.comp)
            and np.array_equal(self.inv, other.inv)
        )

    def index(self, morphism) -> int:
        """Resolve a morphism given by id or by name."""
        if isinstance(morphism, (int, np.integer)) and not isinstance(morphism, bool):
            if 0 <= morphism < len(self):
                return int(morphism)
        elif isinstance(morphism, str) and morphism in self._index:
            return self._index[morphism]
        raise InputError(f"unknown morphism {morphism!r}")

    def name(self, morphism) -> str:
        return self.names[self.index(morphism)]

    def d(self, gamma) -> int:
        """Source object (domain) of ``gamma``."""
        return int(self.source[self.index(gamma)])

    def r(self, gamma) -> int:
        """Target object (range) of ``gamma``."""
        return int(self.target[self.index(gamma)])

    def is_object(self, gamma) -> bool:
        g = self.index(gamma)
        return g in self.objects

    def compose(self, delta, gamma) -> Optional[int]:
        """``delta . gamma`` or ``None`` when ``d(delta) != r(gamma)``."""
        out = int(self.comp[self.index(delta), self.index(gamma)])
        return None if out == UNDEFINED else out

    def inverse(self, gamma) -> int:
        return int(self.inv[self.index(gamma)])

    def hom(self, f, e) -> list[int]:
        """Morphisms from object ``e`` to object ``f`` (the set ``f Gamma e``)."""
        f, e = self.index(f), self.index(e)
        return [g for g in range(len(self)) if self.source[g] == e and self.target[g] == f]

    def validate(self) -> ValidationReport:
        report = ValidationReport("groupoid")
        n = len(self)
        obj = set(self.objects)
        for e in obj:
            if self.source[e] != e or self.target[e] != e:
                report.add("object", (self.names[e],), f"object {self.names[e]} is not an identity loop")
        for a, b in itertools.product(range(n), repeat=2):
            c = int(self.comp[a, b])
            defined = self.source[a] == self.target[b]
            if defined and c == UNDEFINED:
                report.add("composition", (self.names[a], self.names[b]), f"{self.names[a]}.{self.names[b]} should be defined")
            elif not defined and c != UNDEFINED:
                report.add("composition", (self.names[a], self.names[b]), f"{self.names[a]}.{self.names[b]} should be undefined")
            elif defined and not (0 <= c < n):
                report.add("composition", (self.names[a], self.names[b]), "composite out of range")
            elif defined and (self.source[c] != self.source[b] or self.target[c] != self.target[a]):
                report.add(
                    "composition",
                    (self.names[a], self.names[b]),
                    f"{self.names[a]}.{self.names[b]} has wrong source/target",
                )
        if report.violations:
            return report
        for g in range(n):
            d, r = int(self.source[g]), int(self.target[g])
            if self.comp[r, g] != g or self.comp[g, d] != g:
                report.add("identity", (self.names[g],), f"identity law fails at {self.names[g]}")
            h = int(self.inv[g])
            if not (0 <= h < n) or self.comp[h, g] != d or self.comp[g, h] != r:
                report.add("inverse", (self.names[g],), f"inverse law fails at {self.names[g]}")
        c = self.comp
        ab = np.broadcast_to(c[:, :, None], (n, n, n))
        bg = np.broadcast_to(c[None, :, :], (n, n, n))
        both = (ab != UNDEFINED) & (bg != UNDEFINED)
        a_idx, _, g_idx = np.indices((n, n, n))
        lhs = c[np.where(both, ab, 0), g_idx]
        rhs = c[a_idx, np.where(both, bg, 0)]
        for a, b, g in np.argwhere(both & (lhs != rhs)):
            report.add(
                "associativity",
                (self.names[a], self.names[b], self.names[g]),
                f"({self.names[a]}.{self.names[b]}).{self.names[g]} != {self.names[a]}.({self.names[b]}.{self.names[g]})",
            )
        return report

    def full_subgroupoid(self, objects) -> tuple["Groupoid", list[int]]:
        """Restriction to morphisms between the given objects, plus the kept ids."""
        objs = {self.index(e) for e in objects}
        for e in objs:
            if e not in self.objects:
                raise InputError(f"{self.names[e]} is not an object")
        kept = [g for g in range(len(self)) if self.source[g] in objs and self.target[g] in objs]
        pos = {g: i for i, g in enumerate(kept)}
        comp = np.full((len(kept), len(kept)), UNDEFINED, dtype=np.int64)
        for a, b in itertools.product(kept, repeat=2):
            c = int(self.comp[a, b])
            if c != UNDEFINED:
                comp[pos[a], pos[b]] = pos[c]
        sub = Groupoid(
            [self.names[g] for g in kept],
            [pos[int(self.source[g])] for g in kept],
            [pos[int(self.target[g])] for g in kept],
            comp,
            [pos[int(self.inv[g])] for g in kept],
        )
        return sub, kept


def _from_composition_rule(labels, source, target, rule, inverse_rule, namer) -> Groupoid:
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    comp = np.full((n, n), UNDEFINED, dtype=np.int64)
    for a, b in itertools.product(range(n), repeat=2):
        out = rule(labels[a], labels[b])
        if out is not None:
            comp[a, b] = index[out]
    g = Groupoid(
        [namer(lab) for lab in labels],
        [index[source(lab)] for lab in labels],
        [index[target(lab)] for lab in labels],
        comp,
        [index[inverse_rule(lab)] for lab in labels],
    )
    g.labels = list(labels)
    return g


def pair_groupoid(index_set: Sequence[Hashable]) -> Groupoid:
    """``I x I`` with ``(z, y)(y, x) = (z, x)``; morphism ``(i, j)`` goes j -> i."""
    items = list(index_set)
    if not items:
        raise InputError("pair groupoid needs a nonempty index set")
    if len(set(items)) != len(items):
        raise InputError("index set has repeated elements")
    labels = [(i, j) for i in items for j in items]
    g = _from_composition_rule(
        labels,
        source=lambda m: (m[1], m[1]),
        target=lambda m: (m[0], m[0]),
        rule=lambda a, b: (a[0], b[1]) if a[1] == b[0] else None,
        inverse_rule=lambda m: (m[1], m[0]),
        namer=lambda m: f"({m[0]},{m[1]})",
    )
    g.index_set = items
    g.report = g.validate()
    g.report.raise_if_invalid()
    return g


def check_group_table(table) -> tuple[np.ndarray, int, list[int]]:
    """Validate a group multiplication table; return (table, identity, inverses)."""
    t = np.array(table, dtype=np.int64)
    n = t.shape[0] if t.ndim == 2 else 0
    if n == 0 or t.shape != (n, n):
        raise InputError("group table must be a nonempty square table")
    if t.min() < 0 or t.max() >= n:
        raise InputError("group table entries out of range")
    ids = [e for e in range(n) if all(t[e, x] == x and t[x, e] == x for x in range(n))]
    if not ids:
        raise InputError("group table has no identity")
    e = ids[0]
    inv = []
    for x in range(n):
        ys = [y for y in range(n) if t[x, y] == e and t[y, x] == e]
        if not ys:
            raise InputError(f"element {x} has no inverse")
        inv.append(ys[0])
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a, b], c] != t[a, t[b, c]]:
            raise InputError(f"group table is not associative at ({a},{b},{c})")
    return t, e, inv


def group_groupoid(table, element_names: Optional[Sequence[str]] = None) -> Groupoid:
    """A group as a one-object groupoid; composition ``a . b = table[a][b]``."""
    t, e, inv = check_group_table(table)
    n = t.shape[0]
    names = list(element_names) if element_names else [f"g{i}" for i in range(n)]
    comp = t.copy()
    g = Groupoid(names, [e] * n, [e] * n, comp, inv)
    g.report = g.validate()
    g.report.raise_if_invalid()
    return g


def product_groupoid(index_set: Sequence[Hashable], table) -> Groupoid:
    """``X x G x X`` with ``(z,h,y)(y,g,x) = (z,hg,x)``."""
    items = list(index_set)
    if not items:
        raise InputError("product groupoid needs a nonempty index set")
    t, e, inv = check_group_table(table)
    n = t.shape[0]
    labels = [(z, h, x) for z in items for h in range(n) for x in items]
    g = _from_composition_rule(
        labels,
        source=lambda m: (m[2], e, m[2]),
        target=lambda m: (m[0], e, m[0]),
        rule=lambda a, b: (a[0], int(t[a[1], b[1]]), b[2]) if a[2] == b[0] else None,
        inverse_rule=lambda m: (m[2], inv[m[1]], m[0]),
        namer=lambda m: f"({m[0]},g{m[1]},{m[2]})",
    )
    g.report = g.validate()
    g.report.raise_if_invalid()
    return g


def trivial_groupoid(name: str = "e") -> Groupoid:
    """The one-object groupoid with only the identity (grades ungraded algebras)."""
    return group_groupoid([[0]], [name])


def cyclic_table(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]
