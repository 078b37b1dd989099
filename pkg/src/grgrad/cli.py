"""Command-line interface: ``grgrad <command> [document] [flags]``.

Every command builds a report dictionary.  ``--format json`` prints it as
canonical JSON and ``--format text`` renders it line by line.  Exit status is
0 on success, 2 for parse/input errors, 3 for validation failures, 4 when an
enumeration budget is exhausted and 5 when two independent computations
disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import numpy as np

from . import __version__
from . import document as doc_io
from .chains import CONDITIONS, LEVELS, SIDES, classify_ut, parse_poset, witness_chain
from .errors import ConsistencyError, GrGradError, InputError, ResourceBudgetError, ValidationError
from .exactla import DEFAULT_ENUM_BUDGET
from .module import GradedModule, regular_module
from .radical import loewy_series, rad_gr_module, rad_gr_ring, soc_gr_module, soc_gr_ring
from .ring import (
    build_block_matrix_ring,
    build_pair_matrix_ring,
    build_ut,
    check_partial_order,
    field_algebra,
    group_algebra,
    truncated_polynomial,
)
from .samples import ZOO, projective_cover_of_object
from .structure import (
    baer_gr_injective,
    composition_series,
    fitting,
    gr_inverse_endomorphism,
    injective_or_surjective_on_component,
    is_gr_semilocal,
    is_gr_semisimple,
    jordan_holder_equivalent,
)


# -- helpers ------------------------------------------------------------------


def _load(args, validate: bool = True) -> doc_io.RingDocument:
    doc = doc_io.load(args.document, validate=validate)
    if args.prime is not None and args.prime != doc.prime:
        raise InputError(f"--prime {args.prime} does not match the document prime {doc.prime}")
    return doc


def _select_module(doc: doc_io.RingDocument, name: Optional[str]) -> tuple[str, GradedModule]:
    """``regular`` (default), ``regular:<object>`` for ``1_e R`` or a named document module."""
    R = doc.ring
    if name is None or name == "regular":
        return "regular", regular_module(R)
    if name.startswith("regular:"):
        e = R.groupoid.index(name.split(":", 1)[1])
        if e not in R.groupoid.objects:
            raise InputError(f"{name}: not an object")
        return name, projective_cover_of_object(R, e)
    if name not in doc.modules:
        raise InputError(f"unknown module {name!r}; known: {', '.join(['regular', *doc.modules])}")
    return name, doc.modules[name]


def _names(g, items) -> list:
    return [g.names[i] for i in items]


def _dims(g, table: dict) -> dict:
    return {g.names[d]: c for d, c in sorted(table.items())}


def _basis_rows(M: GradedModule, space) -> list:
    """Basis rows of a subspace written over the module's basis names."""
    out = []
    for row in space.basis:
        terms = [(M.names[i], int(row[i])) for i in np.flatnonzero(row)]
        out.append(" + ".join(nm if c == 1 else f"{c}*{nm}" for nm, c in terms))
    return out


def _lattice_oracle(out: dict, compute, expected) -> None:
    """Fill the oracle fields from a lattice recomputation, noting budget skips."""
    try:
        alt = compute()
    except ResourceBudgetError as exc:
        out["notes"] = [f"lattice oracle skipped: {exc}"]
        return
    if alt != expected:
        raise ConsistencyError("lattice oracle disagrees with the fast computation")
    out["oracle"], out["oracle_agrees"] = "lattice", True


# -- commands -----------------------------------------------------------------


def cmd_validate(args) -> tuple[dict, int]:
    doc = _load(args, validate=False)
    reports = doc_io.validation_reports(doc)
    ok = all(r.ok for r in reports)
    return {"valid": ok, "reports": [r.as_dict() for r in reports]}, (0 if ok else ValidationError.exit_code)


def cmd_radical(args) -> tuple[dict, int]:
    doc = _load(args)
    R, g = doc.ring, doc.ring.groupoid
    if args.module is None:
        rep = rad_gr_ring(R, engine=args.engine, budget=args.enum_budget, check=args.check)
        out = {"target": "ring"} | rep.as_dict(g)
        out["basis"] = _basis_rows(regular_module(R), rep.space)
        return out, 0
    name, M = _select_module(doc, args.module)
    J = rad_gr_ring(R, budget=args.enum_budget)
    space = rad_gr_module(M, J.space, budget=args.enum_budget)
    out = {
        "target": name,
        "dim": space.dim,
        "degree_dims": _dims(g, M.degree_dims(space)),
        "engine": f"product with ring radical ({J.engine})",
        "oracle": None,
        "oracle_agrees": None,
        "basis": _basis_rows(M, space),
    }
    if args.check:
        _lattice_oracle(out, lambda: rad_gr_module(M, engine="lattice", budget=args.enum_budget), space)
    return out, 0


def cmd_socle(args) -> tuple[dict, int]:
    doc = _load(args)
    R, g = doc.ring, doc.ring.groupoid
    if args.module is None:
        rep = soc_gr_ring(R, budget=args.enum_budget)
        out = {"target": "ring"} | rep.as_dict(g)
        if rep.engine == "lattice" and args.check:
            ann = soc_gr_module(regular_module(R), budget=args.enum_budget)
            if ann != rep.space:
                raise ConsistencyError("lattice and annihilator socles disagree")
            out["oracle"], out["oracle_agrees"] = "annihilator", True
        out["basis"] = _basis_rows(regular_module(R), rep.space)
        return out, 0
    name, M = _select_module(doc, args.module)
    space = soc_gr_module(M, budget=args.enum_budget)
    out = {
        "target": name,
        "dim": space.dim,
        "degree_dims": _dims(g, M.degree_dims(space)),
        "engine": "annihilator",
        "oracle": None,
        "oracle_agrees": None,
        "basis": _basis_rows(M, space),
    }
    if args.check:
        _lattice_oracle(out, lambda: soc_gr_module(M, engine="lattice", budget=args.enum_budget), space)
    return out, 0


def cmd_loewy(args) -> tuple[dict, int]:
    doc = _load(args)
    g = doc.ring.groupoid
    name, M = _select_module(doc, args.module)
    ls = loewy_series(M, budget=args.enum_budget)
    steps = [
        {"step": n, "dim": t.dim, "degree_dims": _dims(g, M.degree_dims(t))} for n, t in enumerate(ls.terms)
    ]
    return {
        "target": name,
        "length": len(ls.terms) - 1,
        "steps": steps,
        "profiles": [_names(g, pr) for pr in ls.profiles],
        "engine": ls.engines[0],
        "oracle": ls.engines[1],
        "oracle_agrees": True,
    }, 0


def cmd_compseries(args) -> tuple[dict, int]:
    doc = _load(args)
    name, M = _select_module(doc, args.module)
    J = rad_gr_ring(doc.ring, budget=args.enum_budget).space
    base = composition_series(M, J, seed=None, budget=args.enum_budget)
    out = {
        "target": name,
        "length": len(base),
        "factors": base.describe(),
        "engine": "socle-spin (lexicographic ties)",
        "oracle": None,
        "oracle_agrees": None,
    }
    seed = 0 if args.seed is None else args.seed
    other = composition_series(M, J, seed=seed, budget=args.enum_budget)
    if not jordan_holder_equivalent(base, other):
        raise ConsistencyError("composition series with different tie-breaks are not equivalent")
    out["oracle"] = f"socle-spin (seed {seed}) + Jordan-Holder"
    out["oracle_agrees"] = True
    return out, 0


def cmd_semisimple(args) -> tuple[dict, int]:
    doc = _load(args)
    v = is_gr_semisimple(doc.ring, budget=args.enum_budget)
    rep = rad_gr_ring(doc.ring, engine=v.engine, budget=args.enum_budget, check=True)
    return {
        "gr_semisimple": v.value,
        "radical_dim": v.radical_dim,
        "engine": v.engine,
        "oracle": rep.oracle,
        "oracle_agrees": rep.oracle_agrees,
    }, 0


def cmd_semilocal(args) -> tuple[dict, int]:
    doc = _load(args)
    g = doc.ring.groupoid
    v = is_gr_semilocal(doc.ring, budget=args.enum_budget)
    return {
        "gr_semilocal": v.value,
        "engine": "quotient by the graded radical",
        "oracle": "per-object component algebras",
        "oracle_agrees": v.via_quotient == v.via_components,
        "components": {g.names[e]: c for e, c in sorted(v.components.items())},
    }, 0


def cmd_fitting(args) -> tuple[dict, int]:
    doc = _load(args)
    g = doc.ring.groupoid
    if args.map not in doc.maps:
        raise InputError(f"unknown map {args.map!r}")
    spec = doc.maps[args.map]
    name, M = _select_module(doc, spec["module"])
    res = fitting(M, spec["matrix"], spec["degree"])
    inj, surj = injective_or_surjective_on_component(M, spec["matrix"], spec["degree"])
    inverse = gr_inverse_endomorphism(M, spec["matrix"], spec["degree"])
    return {
        "map": args.map,
        "module": name,
        "degree": g.names[spec["degree"]],
        "n": res.n,
        "kernel_dim": res.kernel.dim,
        "image_dim": res.image.dim,
        "kernel_degree_dims": _dims(g, M.degree_dims(res.kernel)),
        "image_degree_dims": _dims(g, M.degree_dims(res.image)),
        "injective_on_component": inj,
        "surjective_on_component": surj,
        "gr_invertible": inverse is not None,
        "engine": "kernel/image stabilization with checked splitting",
    }, 0


def cmd_injective(args) -> tuple[dict, int]:
    doc = _load(args)
    g = doc.ring.groupoid
    name, M = _select_module(doc, args.module)
    res = baer_gr_injective(M, budget=args.enum_budget)
    out = {
        "module": name,
        "gr_injective": res.value,
        "checked_ideals": res.checked_ideals,
        "engine": "Baer test on hom-space dimensions over all graded right ideals",
    }
    if not res.value:
        out["witness_ideal"] = _basis_rows(regular_module(doc.ring), res.ideal)
        out["witness_degree"] = g.names[res.degree]
    return out, 0


def _coefficient_flags(args) -> dict:
    flags = {}
    for item in args.coeff_fails or []:
        side, _, cond = item.partition("-")
        if side not in SIDES or cond not in CONDITIONS:
            raise InputError(f"--coeff-fails expects side-condition, e.g. left-artinian, got {item!r}")
        flags[f"{side}_{cond}"] = False
    return flags


def cmd_classify_chains(args) -> tuple[dict, int]:
    I = parse_poset(args.poset)
    v = classify_ut(I, _coefficient_flags(args))
    sides = [args.side] if args.side else list(SIDES)
    conds = [args.cond] if args.cond else list(CONDITIONS)
    rows = []
    for side in sides:
        for cond in conds:
            row = {"side": side, "condition": cond}
            for level in LEVELS:
                row[level] = "holds" if v.get(side, cond, level) else "fails"
            reason = v.reasons.get((side, cond))
            if reason:
                row["reason"] = reason
            if not v.get(side, cond) and not I.is_finite and "coefficient" not in (reason or ""):
                row["witness"] = f"grgrad witness --poset {I.describe()} --side {side} --cond {cond} --length 10"
            rows.append(row)
    return {"poset": v.poset, "results": rows, "engine": "symbolic chain-type classification"}, 0


def cmd_witness(args) -> tuple[dict, int]:
    I = parse_poset(args.poset)
    p = args.prime if args.prime is not None else 2
    w = witness_chain(I, args.side, args.cond, args.length, base=args.base, p=p)
    return {
        "poset": I.describe(),
        "side": w.side,
        "condition": w.condition,
        "direction": w.direction,
        "family": w.family,
        "chain": w.as_text(),
        "truncation": w.truncation,
        "dims": w.dims,
        "certified": w.certified,
        "engine": f"strictness checked in UT over F_{p} on the truncation",
    }, 0


def _coefficients(args):
    p = args.prime if args.prime is not None else 2
    kind, _, val = (args.coeff or "field").partition(":")
    if kind == "field":
        return field_algebra(p)
    if kind == "trunc":
        return truncated_polynomial(p, int(val or 2))
    raise InputError(f"unknown coefficient algebra {args.coeff!r}; use field or trunc:K")


def _labels(text: str) -> list:
    out = [t.strip() for t in text.split(",") if t.strip()]
    return [int(t) if t.isdigit() else t for t in out]


def cmd_build(args) -> tuple[str, int]:
    kind = args.kind
    if kind == "zoo":
        if args.name not in ZOO:
            raise InputError(f"unknown sample {args.name!r}; known: {', '.join(ZOO)}")
        R = ZOO[args.name]()
        if args.prime is not None and args.prime != R.p:
            raise InputError("--prime cannot change a named sample")
    elif kind == "pair":
        R = build_pair_matrix_ring(_coefficients(args), _labels(args.index))
    elif kind == "ut":
        I = parse_poset(args.poset)
        if not I.is_finite:
            raise InputError("build ut needs a finite poset")
        elems = list(I.elements) if I.kind == "finite" else [str(i) for i in range(I.tail)]
        rel = I.relation if I.kind == "finite" else {(a, b) for a in elems for b in elems if int(a) <= int(b)}
        check_partial_order(elems, rel)
        R = build_ut(_coefficients(args), elems, rel)
    elif kind == "block":
        blocks = [_labels(b) for b in args.blocks.split(";")]
        R = build_block_matrix_ring(_coefficients(args), blocks)
    elif kind == "group":
        R = group_algebra(args.prime if args.prime is not None else 2, json.loads(args.table))
    else:
        raise InputError(f"unknown builder {kind!r}")
    return doc_io.emit(doc_io.ring_document(R)), 0


# -- rendering ------------------------------------------------------------------


def _render_text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                sub = _render_text(item, indent + 1)
                lines.append(f"{pad}- " + sub[0].lstrip())
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(value)}")
    return lines


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_scalar(x)}" for k, x in v.items()) + "}"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def emit_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    return "\n".join(_render_text(report)) + "\n"


# -- argument parsing -----------------------------------------------------------


COMMANDS = {
    "validate": cmd_validate,
    "radical": cmd_radical,
    "socle": cmd_socle,
    "loewy": cmd_loewy,
    "compseries": cmd_compseries,
    "semisimple": cmd_semisimple,
    "semilocal": cmd_semilocal,
    "fitting": cmd_fitting,
    "injective": cmd_injective,
    "classify-chains": cmd_classify_chains,
    "witness": cmd_witness,
    "build": cmd_build,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=None, help="field characteristic (builders, witness certification)")
    common.add_argument(
        "--enum-budget", type=int, default=DEFAULT_ENUM_BUDGET, help=f"enumeration limit for oracles (default {DEFAULT_ENUM_BUDGET})"
    )
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=None, help="tie-break seed for Jordan-Holder cross-checks")

    parser = argparse.ArgumentParser(prog="grgrad", description="Groupoid-graded rings and modules over prime fields.")
    parser.add_argument("--version", action="version", version=f"grgrad {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_doc(name, help_text, module=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("document", help="ring document (JSON)")
        if module:
            sp.add_argument("--module", default=None, help="regular (default), regular:<object> or a document module name")
        return sp

    with_doc("validate", "check groupoid, ring and module axioms", module=False)
    for name, text in (("radical", "graded Jacobson radical"), ("socle", "graded socle")):
        sp = with_doc(name, text)
        sp.add_argument("--no-check", dest="check", action="store_false", help="skip the independent oracle recomputation")
        if name == "radical":
            sp.add_argument("--engine", default="auto", choices=("auto", "lattice", "carac", "diagonal"))
    with_doc("loewy", "Loewy series computed two ways")
    with_doc("compseries", "gr-composition series and factors")
    with_doc("semisimple", "gr-semisimplicity verdict", module=False)
    with_doc("semilocal", "gr-semilocal verdict by two routes", module=False)
    sp = with_doc("fitting", "Fitting decomposition of a document map", module=False)
    sp.add_argument("--map", required=True)
    with_doc("injective", "Baer gr-injectivity test")

    sp = sub.add_parser("classify-chains", parents=[common], help="chain conditions of UT over a poset")
    sp.add_argument("--poset", required=True, help="finite:a<b,b<c or ordinal:w*K+M[:reversed]")
    sp.add_argument("--side", choices=SIDES)
    sp.add_argument("--cond", choices=CONDITIONS)
    sp.add_argument("--coeff-fails", action="append", metavar="SIDE-COND", help="condition the coefficient ring lacks")

    sp = sub.add_parser("witness", parents=[common], help="explicit strict chain of one-sided ideals")
    sp.add_argument("--poset", required=True)
    sp.add_argument("--side", choices=SIDES, required=True)
    sp.add_argument("--cond", choices=CONDITIONS, required=True)
    sp.add_argument("--length", type=int, default=10)
    sp.add_argument("--base", default=None, help="anchor element, e.g. 0 or w")

    sp = sub.add_parser("build", parents=[common], help="emit a builder output as a ring document")
    sp.add_argument("kind", choices=("zoo", "pair", "ut", "block", "group"))
    sp.add_argument("--name", help="zoo sample name")
    sp.add_argument("--index", default="1,2", help="pair: index set")
    sp.add_argument("--poset", default="ordinal:w*0+3", help="ut: finite poset")
    sp.add_argument("--blocks", default="1,2;3", help="block: blocks separated by ';'")
    sp.add_argument("--table", default="[[0,1],[1,0]]", help="group: multiplication table")
    sp.add_argument("--coeff", default="field", help="field or trunc:K")
    sp.add_argument("--out", default=None, help="write the document here instead of stdout")
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, status = COMMANDS[args.command](args)
    except GrGradError as exc:
        print(f"error: {exc}", file=sys.stderr)
        report = getattr(exc, "report", None)
        if report is not None:
            for line in _render_text(report.as_dict()):
                print(line, file=sys.stderr)
        return exc.exit_code
    if args.command == "build":
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(result)
        else:
            sys.stdout.write(result)
        return status
    report = {"command": args.command}
    if getattr(args, "document", None):
        report["input"] = args.document
    report |= result
    sys.stdout.write(emit_report(report, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
