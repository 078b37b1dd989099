"""JSON ring/module documents: parsing and canonical emission.

A document looks like::

    {
      "prime": 2,
      "groupoid": "pair:1,2",
      "basis": [{"name": "E11", "degree": "(1,1)"}, ...],
      "products": [["E11", "E12", "E12", 1], ...],
      "units": {"(1,1)": {"E11": 1}, ...},
      "modules": [{"name": "S", "basis": [...], "action": [["v0", "E11", "v0", 1], ...]}],
      "maps": [{"name": "g", "module": "S", "degree": "(1,1)", "matrix": [[1]]}]
    }

``groupoid`` is ``pair:<n>``, ``pair:<a,b,...>``, ``group:<json table>``,
``trivial`` or an explicit object with ``morphisms``, ``compose`` and
``inverse``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import GrGradError, InputError, ParseError
from .groupoid import UNDEFINED, Groupoid, ValidationReport, group_groupoid, pair_groupoid, trivial_groupoid
from .module import GradedModule
from .ring import GradedRing


@dataclass
class RingDocument:
    ring: GradedRing
    modules: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    groupoid_spec: object = None

    @property
    def prime(self) -> int:
        return self.ring.p

    def __eq__(self, other):
        if not isinstance(other, RingDocument):
            return NotImplemented
        return emit(self) == emit(other)


# -- parsing ------------------------------------------------------------------


def _need(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    return obj[key]


def _parse_groupoid(spec) -> Groupoid:
    if isinstance(spec, str):
        kind, _, body = spec.partition(":")
        if kind == "pair":
            body = body.strip()
            if body.isdigit():
                labels = list(range(1, int(body) + 1))
            else:
                labels = [t.strip() for t in body.split(",") if t.strip()]
                labels = [int(t) if t.isdigit() else t for t in labels]
            if not labels:
                raise ParseError("pair groupoid needs an index set")
            return pair_groupoid(labels)
        if kind == "group":
            try:
                table = json.loads(body)
            except json.JSONDecodeError as exc:
                raise ParseError(f"group table is not JSON: {exc}") from exc
            return group_groupoid(table)
        if kind == "trivial":
            return trivial_groupoid(body or "e")
        raise ParseError(f"unknown groupoid shorthand {spec!r}")
    if not isinstance(spec, dict):
        raise ParseError("groupoid must be a shorthand string or an object")
    morphisms = _need(spec, "morphisms", "groupoid")
    names = [str(_need(m, "name", "morphism")) for m in morphisms]
    index = {n: i for i, n in enumerate(names)}
    if len(index) != len(names):
        raise ParseError("duplicate morphism names")

    def look(name, where):
        if str(name) not in index:
            raise ParseError(f"{where}: unknown morphism {name!r}")
        return index[str(name)]

    source = [look(_need(m, "source", "morphism"), "source") for m in morphisms]
    target = [look(_need(m, "target", "morphism"), "target") for m in morphisms]
    comp = np.full((len(names), len(names)), UNDEFINED, dtype=np.int64)
    for triple in spec.get("compose", []):
        if len(triple) != 3:
            raise ParseError("compose entries are [delta, gamma, result]")
        comp[look(triple[0], "compose"), look(triple[1], "compose")] = look(triple[2], "compose")
    inv_map = spec.get("inverse", {})
    inv = [look(inv_map.get(n, n), "inverse") for n in names]
    return Groupoid(names, source, target, comp, inv)


def _basis(entries, groupoid: Groupoid, where: str) -> tuple[list, list]:
    names, degrees = [], []
    for b in entries:
        names.append(str(_need(b, "name", where)))
        deg = str(_need(b, "degree", where))
        try:
            degrees.append(groupoid.index(deg))
        except InputError as exc:
            raise ParseError(f"{where}: {exc}") from exc
    if len(set(names)) != len(names):
        raise ParseError(f"{where}: duplicate basis names")
    return names, degrees


def parse(text: str, validate: bool = True) -> RingDocument:
    """Decode a document; with ``validate`` the structures must pass their axiom checks."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"document is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object")
    try:
        return _build(data, validate)
    except ParseError:
        raise
    except InputError as exc:
        raise ParseError(str(exc)) from exc


def _build(data: dict, validate: bool) -> RingDocument:
    p = _need(data, "prime", "document")
    if not isinstance(p, int):
        raise ParseError("prime must be an integer")
    spec = _need(data, "groupoid", "document")
    g = _parse_groupoid(spec)
    if validate:
        g.validate().raise_if_invalid()
    names, degrees = _basis(_need(data, "basis", "document"), g, "ring basis")
    index = {n: i for i, n in enumerate(names)}
    n = len(names)
    table = np.zeros((n, n, n), dtype=np.int64)
    for entry in data.get("products", []):
        if len(entry) != 4:
            raise ParseError("products entries are [left, right, result, coefficient]")
        a, b, c, coeff = entry
        for x in (a, b, c):
            if x not in index:
                raise ParseError(f"products: unknown basis element {x!r}")
        table[index[a], index[b], index[c]] += int(coeff)
    units = {}
    for obj, coeffs in data.get("units", {}).items():
        e = g.index(obj)
        u = np.zeros(n, dtype=np.int64)
        for x, coeff in coeffs.items():
            if x not in index:
                raise ParseError(f"units: unknown basis element {x!r}")
            u[index[x]] += int(coeff)
        units[e] = u
    R = GradedRing(g, p, names, degrees, table, units, validate=validate)
    doc = RingDocument(R, groupoid_spec=spec)
    for mspec in data.get("modules", []):
        mname = str(_need(mspec, "name", "module"))
        if mname in doc.modules:
            raise ParseError(f"duplicate module {mname!r}")
        bnames, bdegs = _basis(_need(mspec, "basis", f"module {mname}"), g, f"module {mname}")
        bidx = {x: i for i, x in enumerate(bnames)}
        act = np.zeros((n, len(bnames), len(bnames)), dtype=np.int64)
        for entry in mspec.get("action", []):
            if len(entry) != 4:
                raise ParseError("action entries are [vector, ring element, result, coefficient]")
            v, r, w, coeff = entry
            if v not in bidx or w not in bidx or r not in index:
                raise ParseError(f"module {mname}: unknown name in action entry {entry!r}")
            act[index[r], bidx[v], bidx[w]] += int(coeff)
        doc.modules[mname] = GradedModule(R, bnames, bdegs, act, validate=validate)
    for fspec in data.get("maps", []):
        fname = str(_need(fspec, "name", "map"))
        mod = str(_need(fspec, "module", f"map {fname}"))
        if mod not in doc.modules and mod != "regular":
            raise ParseError(f"map {fname}: unknown module {mod!r}")
        deg = g.index(str(_need(fspec, "degree", f"map {fname}")))
        mat = np.array(_need(fspec, "matrix", f"map {fname}"), dtype=np.int64) % p
        doc.maps[fname] = {"module": mod, "degree": deg, "matrix": mat}
    return doc


def load(path: str, validate: bool = True) -> RingDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse(text, validate)


def validation_reports(doc: RingDocument) -> list[ValidationReport]:
    out = [doc.ring.groupoid.validate()]
    if out[0].ok:
        out.append(doc.ring.validate())
        if out[-1].ok:
            for name, M in doc.modules.items():
                rep = M.validate()
                rep.subject = f"graded module {name}"
                out.append(rep)
    return out


# -- emission ---------------------------------------------------------------------


def _groupoid_block(R: GradedRing, spec):
    if spec is not None:
        return spec
    g = R.groupoid
    if hasattr(g, "index_set") and g == pair_groupoid(g.index_set):
        return "pair:" + ",".join(str(x) for x in g.index_set)
    return {
        "morphisms": [
            {"name": g.names[m], "source": g.names[int(g.source[m])], "target": g.names[int(g.target[m])]}
            for m in range(len(g))
        ],
        "compose": [
            [g.names[a], g.names[b], g.names[int(g.comp[a, b])]]
            for a in range(len(g))
            for b in range(len(g))
            if g.comp[a, b] != UNDEFINED
        ],
        "inverse": {g.names[m]: g.names[int(g.inv[m])] for m in range(len(g))},
    }


def _module_block(name: str, M: GradedModule) -> dict:
    R, g = M.ring, M.ring.groupoid
    return {
        "name": name,
        "basis": [{"name": x, "degree": g.names[int(d)]} for x, d in zip(M.names, M.degrees)],
        "action": [
            [M.names[i], R.names[j], M.names[k], int(M.action[j, i, k])]
            for i in range(M.dim)
            for j in range(R.dim)
            for k in range(M.dim)
            if M.action[j, i, k]
        ],
    }


def to_data(doc: RingDocument) -> dict:
    R, g = doc.ring, doc.ring.groupoid
    data = {
        "prime": R.p,
        "groupoid": _groupoid_block(R, doc.groupoid_spec),
        "basis": [{"name": x, "degree": g.names[int(d)]} for x, d in zip(R.names, R.degrees)],
        "products": [
            [R.names[i], R.names[j], R.names[k], int(R.table[i, j, k])]
            for i, j, k in np.argwhere(R.table != 0)
        ],
        "units": {
            g.names[e]: {R.names[i]: int(u[i]) for i in np.flatnonzero(u)}
            for e, u in sorted(R.units.items())
            if u.any()
        },
    }
    if doc.modules:
        data["modules"] = [_module_block(name, M) for name, M in doc.modules.items()]
    if doc.maps:
        data["maps"] = [
            {"name": name, "module": f["module"], "degree": g.names[f["degree"]], "matrix": f["matrix"].tolist()}
            for name, f in doc.maps.items()
        ]
    return data


def emit(doc: RingDocument) -> str:
    """Canonical UTF-8 JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(to_data(doc), sort_keys=True, indent=2) + "\n"


def ring_document(R: GradedRing, modules: Optional[dict] = None, maps: Optional[dict] = None) -> RingDocument:
    return RingDocument(R, dict(modules or {}), dict(maps or {}))


__all__ = ["RingDocument", "parse", "load", "emit", "to_data", "ring_document", "validation_reports", "GrGradError"]
