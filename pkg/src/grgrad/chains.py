"""Chain conditions for triangular rings over infinite posets, decided symbolically.

Posets are either finite (given by covering relations) or ordinals
``w*K + M`` possibly with the order reversed.  Ordinal elements are pairs
``(a, b)`` standing for ``w*a + b``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .errors import InputError
from .exactla import Subspace
from .module import GradedModule, regular_module, spin
from .ring import build_ut, chain_order, field_algebra, opposite_ring

SIDES = ("right", "left")
CONDITIONS = ("artinian", "noetherian")
LEVELS = ("gr", "strongly-gamma0", "gamma0")


@dataclass(frozen=True)
class PosetSpec:
    kind: str
    elements: tuple = ()
    relation: frozenset = frozenset()
    omegas: int = 0
    tail: int = 0
    reversed: bool = False

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite" or self.omegas == 0

    def is_total(self) -> bool:
        if self.kind == "ordinal":
            return True
        return all((a, b) in self.relation or (b, a) in self.relation for a, b in itertools.combinations(self.elements, 2))

    def reverse(self) -> "PosetSpec":
        if self.kind == "finite":
            return PosetSpec("finite", self.elements, frozenset((b, a) for a, b in self.relation))
        return PosetSpec("ordinal", omegas=self.omegas, tail=self.tail, reversed=not self.reversed)

    def describe(self) -> str:
        if self.kind == "finite":
            edges = sorted(f"{a}<{b}" for a, b in self.relation if a != b)
            return "finite:" + ",".join(edges or list(self.elements))
        return f"ordinal:w*{self.omegas}+{self.tail}" + (":reversed" if self.reversed else "")

    # -- ordinal elements ------------------------------------------------

    def parse_element(self, text: Union[str, tuple]) -> tuple:
        if self.kind == "finite":
            if text not in self.elements:
                raise InputError(f"{text!r} is not an element of the poset")
            return text
        el = text if isinstance(text, tuple) else _parse_ordinal_term(str(text))
        a, b = el
        if not (a < self.omegas or (a == self.omegas and b < self.tail)):
            raise InputError(f"{format_ordinal(el)} is not below w*{self.omegas}+{self.tail}")
        return el

    def less(self, x, y) -> bool:
        if self.kind == "finite":
            return x != y and (x, y) in self.relation
        return (x > y) if self.reversed else (x < y)


def format_ordinal(el: tuple) -> str:
    a, b = el
    if a == 0:
        return str(b)
    head = "w" if a == 1 else f"w*{a}"
    return head if b == 0 else f"{head}+{b}"


def _parse_ordinal_term(text: str) -> tuple:
    """``'w*2+3'`` -> ``(2, 3)``; also ``w``, ``w+1``, ``w*2``, ``5``."""
    m = re.fullmatch(r"\s*(?:(w)(?:\*(\d+))?)?\s*(?:\+?\s*(\d+))?\s*", text)
    if not m or not text.strip() or (m.group(1) is None and m.group(3) is None):
        raise InputError(f"cannot read ordinal {text!r}")
    a = (int(m.group(2)) if m.group(2) is not None else 1) if m.group(1) else 0
    b = int(m.group(3)) if m.group(3) is not None else 0
    if m.group(1) is None and "+" in text:
        raise InputError(f"cannot read ordinal {text!r}")
    return a, b


def _closure(elements: Sequence, pairs: set) -> frozenset:
    rel = {(x, x) for x in elements} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    for a, b in rel:
        if a != b and (b, a) in rel:
            raise InputError(f"relation has a cycle through {a} and {b}")
    return frozenset(rel)


def parse_poset(text: str) -> PosetSpec:
    """Read ``finite:<a<b,b<c,...>`` or ``ordinal:w*K+M[:reversed]``."""
    kind, _, body = text.strip().partition(":")
    if kind == "finite":
        if not body.strip():
            raise InputError("finite poset needs at least one element")
        elements, pairs = [], set()
        for token in body.split(","):
            chain = [t.strip() for t in token.split("<")]
            if any(not t for t in chain):
                raise InputError(f"bad poset token {token!r}")
            for t in chain:
                if t not in elements:
                    elements.append(t)
            pairs.update(zip(chain, chain[1:]))
        return PosetSpec("finite", tuple(elements), _closure(elements, pairs))
    if kind == "ordinal":
        desc, _, flag = body.partition(":")
        if flag not in ("", "reversed"):
            raise InputError(f"unknown ordinal flag {flag!r}")
        k, m = _parse_ordinal_term(desc)
        if k == 0 and m == 0:
            raise InputError("empty ordinal")
        return PosetSpec("ordinal", omegas=k, tail=m, reversed=flag == "reversed")
    raise InputError(f"unsupported poset descriptor {text!r}")


# -- infinite chains in the poset ------------------------------------------------


def _ordinal_ascending(I: PosetSpec) -> bool:
    return I.omegas >= 1


def _ordinal_ascending_bounded(I: PosetSpec) -> bool:
    return I.omegas >= 2 or (I.omegas >= 1 and I.tail >= 1)


def chain_types(I: PosetSpec) -> dict[str, bool]:
    """Which kinds of infinite strict chains the poset contains."""
    if I.is_finite:
        return dict.fromkeys(("ascending", "ascending_bounded_above", "descending", "descending_bounded_below"), False)
    asc, bounded = _ordinal_ascending(I), _ordinal_ascending_bounded(I)
    if I.reversed:
        return {
            "ascending": False,
            "ascending_bounded_above": False,
            "descending": asc,
            "descending_bounded_below": bounded,
        }
    return {
        "ascending": asc,
        "ascending_bounded_above": bounded,
        "descending": False,
        "descending_bounded_below": False,
    }


# which chain in I breaks each condition, and the ideal family witnessing it
_FAILURE = {
    ("right", "artinian"): ("ascending", "E_{i0,j_n} R", "descending"),
    ("right", "noetherian"): ("descending_bounded_below", "E_{i0,j_n} R", "ascending"),
    ("left", "artinian"): ("descending", "R E_{i_n,j0}", "descending"),
    ("left", "noetherian"): ("ascending_bounded_above", "R E_{i_n,j0}", "ascending"),
}


@dataclass
class ChainVerdict:
    poset: str
    verdicts: dict
    reasons: dict = field(default_factory=dict)

    def get(self, side: str, condition: str, level: str = "gamma0") -> bool:
        return self.verdicts[(side, level, condition)]

    def as_dict(self) -> dict:
        return {
            "poset": self.poset,
            "verdicts": {f"{s}/{lvl}/{c}": v for (s, lvl, c), v in sorted(self.verdicts.items())},
            "reasons": {f"{s}/{c}": r for (s, c), r in sorted(self.reasons.items())},
        }


def classify_ut(I: PosetSpec, flags: Optional[dict] = None) -> ChainVerdict:
    """Chain-condition verdicts for ``UT_I(A)``.

    ``flags`` holds ``right_artinian``, ``right_noetherian``, ``left_artinian``
    and ``left_noetherian`` for ``A`` (all true by default, as for
    finite-dimensional ``A``).  Infinite posets give infinite support and
    unbounded component lengths, so the strong and gr levels fail there.
    """
    flags = {f"{s}_{c}": True for s in SIDES for c in CONDITIONS} | dict(flags or {})
    types = chain_types(I)
    verdicts, reasons = {}, {}
    for side, cond in itertools.product(SIDES, CONDITIONS):
        chain_kind = _FAILURE[(side, cond)][0]
        ok = True
        if not flags[f"{side}_{cond}"]:
            ok = False
            reasons[(side, cond)] = f"coefficient ring is not {side} {cond}"
        elif types[chain_kind]:
            ok = False
            reasons[(side, cond)] = f"poset has an infinite {chain_kind.replace('_', ' ')} chain"
        verdicts[(side, "gamma0", cond)] = ok
        strong = ok and I.is_finite
        verdicts[(side, "strongly-gamma0", cond)] = strong
        verdicts[(side, "gr", cond)] = strong
    return ChainVerdict(I.describe(), verdicts, reasons)


# -- witness chains -------------------------------------------------------------


@dataclass
class WitnessChain:
    side: str
    condition: str
    direction: str
    family: str
    entries: list
    descriptors: list
    truncation: list
    dims: list
    certified: bool

    def as_text(self) -> str:
        rel = " > " if self.direction == "descending" else " < "
        return rel.join(self.descriptors)


def _ascending_from(I: PosetSpec, base: tuple, length: int) -> list:
    a, b = base
    if a >= I.omegas:
        raise InputError(f"no infinite ascending run starts at {format_ordinal(base)}")
    return [(a, b + n) for n in range(1, length + 1)]


def _ascending_below(I: PosetSpec, top: tuple, length: int) -> list:
    a, _ = top
    if a < 1:
        raise InputError(f"no infinite run lies below {format_ordinal(top)}")
    return [(a - 1, n) for n in range(length)]


def witness_chain(
    I: PosetSpec,
    side: str,
    condition: str,
    length: int,
    base=None,
    p: int = 2,
) -> WitnessChain:
    """Explicit strict chain of one-sided ideals breaking ``side condition``.

    Strictness of each step is certified in ``UT`` over ``F_p`` on the finite
    sub-chain of every named index.
    """
    if (side, condition) not in _FAILURE:
        raise InputError(f"unknown condition {side} {condition}")
    if length < 2:
        raise InputError("a witness chain needs at least two ideals")
    chain_kind, family, direction = _FAILURE[(side, condition)]
    if not chain_types(I)[chain_kind]:
        raise InputError(f"{side} {condition} does not fail for {I.describe()}")
    # in ordinal coordinates every witness is an ascending run
    grows_from_base = chain_kind in ("ascending", "descending")
    if grows_from_base:
        base = I.parse_element(base) if base is not None else (0, 0)
        run = _ascending_from(I, base, length)
    else:
        base = I.parse_element(base) if base is not None else (1, 0)
        run = _ascending_below(I, base, length)
    if side == "right":
        entries = [(base, x) for x in run]
    else:
        entries = [(x, base) for x in run]
    names = sorted({base, *run}, key=lambda el: el if not I.reversed else (-el[0], -el[1]))
    labels = [format_ordinal(el) for el in names]
    label = dict(zip(names, labels))
    if side == "right":
        descriptors = [f"E_{{{label[i]},{label[j]}}} R" for i, j in entries]
    else:
        descriptors = [f"R E_{{{label[i]},{label[j]}}}" for i, j in entries]
    dims, certified = _certify(labels, [(label[i], label[j]) for i, j in entries], side, direction, p)
    return WitnessChain(side, condition, direction, family, entries, descriptors, labels, dims, certified)


def _certify(labels: list, entries: list, side: str, direction: str, p: int) -> tuple[list, bool]:
    R = build_ut(field_algebra(p), labels, chain_order(labels))
    M = regular_module(R if side == "right" else opposite_ring(R))
    ideals = []
    for i, j in entries:
        v = np.zeros(R.dim, dtype=np.int64)
        v[R.entry_positions[(i, j)] * R.coefficient_dim] = 1
        ideals.append(spin(M, [v]))
    ok = True
    for x, y in zip(ideals, ideals[1:]):
        ok &= (y < x) if direction == "descending" else (x < y)
    return [x.dim for x in ideals], bool(ok)


# -- component-length profiles ---------------------------------------------------


@dataclass(frozen=True)
class Unbounded:
    """A component of infinite gr-length, with its own chain conditions."""

    artinian: bool = False
    noetherian: bool = False


@dataclass
class FamilyProfile:
    """Lengths ``c_gr(M(e))`` over an index family.

    ``shape`` is ``constant`` (every index has ``value``), ``identity``
    (index ``n`` has length ``n``), ``tail`` (``exceptions`` then ``value``)
    or ``finite`` (only ``exceptions``).  ``size=None`` means the indices run
    over all of ``N``.
    """

    shape: str
    value: int = 1
    exceptions: dict = field(default_factory=dict)
    size: Optional[int] = None

    def __post_init__(self):
        if self.shape not in ("constant", "identity", "tail", "finite"):
            raise InputError(f"unsupported profile shape {self.shape!r}")
        if self.shape == "finite":
            self.size = len(self.exceptions)
        if self.shape in ("constant", "tail") and (not isinstance(self.value, int) or self.value < 1):
            raise InputError("profile lengths must be positive integers")
        for k, v in self.exceptions.items():
            if not isinstance(v, Unbounded) and (not isinstance(v, int) or v < 0):
                raise InputError(f"bad length {v!r} at index {k}")

    @property
    def infinite_support(self) -> bool:
        return self.size is None


def strong_classify(profile: FamilyProfile) -> dict:
    """Verdicts for the Gamma_0, strong and gr levels from a length profile."""
    art = all(v.artinian for v in profile.exceptions.values() if isinstance(v, Unbounded))
    noe = all(v.noetherian for v in profile.exceptions.values() if isinstance(v, Unbounded))
    bounded = profile.shape != "identity" or not profile.infinite_support
    out = {}
    for cond, base in (("artinian", art), ("noetherian", noe)):
        strong = base and bounded
        out[f"gamma0-{cond}"] = base
        out[f"strongly-gamma0-{cond}"] = strong
        out[f"gr-{cond}"] = strong and not profile.infinite_support
    return out


def profile_of_module(M: GradedModule, lengths: dict) -> FamilyProfile:
    """Finite profile from ``gamma0_length`` output, keyed by object name."""
    g = M.ring.groupoid
    return FamilyProfile("finite", exceptions={g.names[e]: c for e, c in lengths.items() if c})


# -- tight chains ------------------------------------------------------------------


@dataclass
class TightResult:
    value: bool
    supports: list


def is_tight(M: GradedModule, chain: Sequence[Subspace], descending: bool = True) -> TightResult:
    """Are the object supports of successive quotients nested (each contains the next)?"""
    chain = list(chain)
    for x in chain:
        M.check_submodule(x)
    for x, y in zip(chain, chain[1:]):
        if not (x.contains_space(y) if descending else y.contains_space(x)):
            raise InputError("chain is not nested")
    supports = []
    for x, y in zip(chain, chain[1:]):
        big, small = (x, y) if descending else (y, x)
        hi, lo = M.object_dims(big), M.object_dims(small)
        supports.append(sorted(e for e in hi if hi[e] > lo.get(e, 0)))
    ok = all(set(a) >= set(b) for a, b in zip(supports, supports[1:]))
    return TightResult(ok, supports)
