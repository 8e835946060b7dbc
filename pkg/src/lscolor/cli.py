"""Command-line front end: ``lscolor <subcommand> ...``.

Every run prints one JSON result document ``{"command", "status", "payload"}``.
Exit codes: 0 ok, 2 a mathematical negative (identity fails, no extension),
1 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import catalog
from .algebra import GradedAlgebra, standard_bimodule, verify_left_symmetric
from .cochain import Cochain, check_complex, coboundary, cohomology, occurring_degrees
from .deform import (
    Deformation,
    DeformationError,
    ObstructionError,
    equivalence_residual,
    infinitesimal_equivalence,
    obstruction_and_extend,
    transport,
    verify_deformation,
)
from .formats import (
    FormatError,
    LoadedAlgebra,
    algebra_to_document,
    cochain_document,
    deformation_from_document,
    equivalence_from_document,
    load_algebra,
    operator_from_arg,
    read_json,
    vector_document,
)
from .exactnum import CycScalar, ExactArithmeticError
from .grading import validate_bicharacter
from .operators import (
    HypothesisError,
    OperatorResidual,
    correspondence_checks,
    nijenhuis_power_identity,
    nijenhuis_residual,
    rota_baxter_residual,
)

__all__ = ["main", "run"]

OK, INPUT_ERROR, MATH_FAILURE = 0, 1, 2


class InputError(Exception):
    """Bad command-line input; reported with exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# -- input resolution ----------------------------------------------------------------

def _load(args) -> tuple[LoadedAlgebra, Optional[catalog.CatalogEntry]]:
    if args.catalog and args.algebra:
        raise InputError("give either --catalog or --algebra, not both")
    if args.catalog:
        entry = catalog.load(args.catalog)
        return LoadedAlgebra(entry.algebra, standard_bimodule(entry.algebra)), entry
    if args.algebra:
        return load_algebra(args.algebra), None
    raise InputError("an algebra is required: use --catalog <name> or --algebra <file>")


def _deformation(args, loaded: Optional[LoadedAlgebra], entry, flag: str = "deformation") -> Deformation:
    path = getattr(args, flag, None)
    base = loaded.algebra if loaded is not None else None
    if path:
        return deformation_from_document(read_json(path), catalog_loader=catalog.load, base=base)
    if entry is not None and "deformation" in entry.attachments:
        return entry.attachments["deformation"]
    raise InputError(f"a deformation is required: use --{flag.replace('_', '-')} <file> or a catalog family")


def _optional_algebra(args):
    if args.catalog or args.algebra:
        return _load(args)
    return None, None


def _degree(A: GradedAlgebra, text: str):
    try:
        exps = [int(t) for t in text.split(",")]
    except ValueError:
        raise InputError(f"--degree expects comma-separated integers, got {text!r}") from None
    if len(exps) != A.group.rank:
        raise InputError(f"--degree needs {A.group.rank} exponent(s) for group {A.group}")
    return A.group(*exps)


def _scalar(text: str, flag: str) -> CycScalar:
    try:
        return CycScalar.parse(text)
    except ExactArithmeticError as exc:
        raise InputError(f"{flag}: {exc}") from None


# -- rendering ---------------------------------------------------------------------

def _residual_doc(A: GradedAlgebra, r: OperatorResidual) -> dict:
    doc = {
        "kind": r.kind,
        "zero": r.is_zero,
        "max_support": r.max_support,
        "residuals": [
            {"pair": [A.labels[i], A.labels[j]], "value": vector_document(A.labels, v)}
            for (i, j), v in sorted(r.residuals.items())
        ],
    }
    if r.weight is not None:
        doc["weight"] = str(r.weight)
    return doc


def _deformation_doc(D: Deformation) -> list:
    return [{"order": k, "values": cochain_document(D.term(k))} for k in range(1, D.order + 1)]


# -- subcommands -------------------------------------------------------------------

def cmd_check_axioms(args):
    loaded, _ = _load(args)
    A = loaded.algebra
    bich = validate_bicharacter(A.bicharacter)
    ls = verify_left_symmetric(A)
    verdict = "pass" if ls.passed else "fail"
    payload = {
        "bicharacter_valid": bich.valid,
        "left_symmetric": ls.passed,
        "triples": ls.checked,
        "message": f"left-symmetric color identity: {verdict} ({ls.checked} triples)",
        "failures": [
            {"triple": [A.labels[i], A.labels[j], A.labels[k]], "value": vector_document(A.labels, v)}
            for i, j, k, v in ls.failures[:10]
        ],
    }
    return (OK if ls.passed and bich.valid else MATH_FAILURE), payload


def cmd_cohomology(args):
    loaded, _ = _load(args)
    A, V = loaded.algebra, loaded.module
    if args.n < 1:
        raise InputError("-n must be >= 1")
    degrees = [_degree(A, args.degree)] if args.degree is not None else occurring_degrees(A, V, args.n)
    components = []
    for c in degrees:
        rep = cohomology(A, V, args.n, c)
        comp = {"degree": list(c.exponents), "dims": rep.dims}
        if args.representatives:
            comp["representatives"] = [cochain_document(f) for f in rep.representatives]
        components.append(comp)
    return OK, {"arity": args.n, "components": components}


def cmd_complex_check(args):
    loaded, _ = _load(args)
    rep = check_complex(loaded.algebra, loaded.module, args.n_max)
    payload = {
        "passed": rep.passed,
        "checked": [{"n": n, "degree": list(c.exponents)} for n, c in rep.checked],
        "failures": [{"n": n, "degree": list(c.exponents), "nonzero_entries": len(bad)} for n, c, bad in rep.failures],
    }
    return (OK if rep.passed else MATH_FAILURE), payload


def _verify_doc(D: Deformation, rep) -> dict:
    A = D.base
    return {
        "order": D.order,
        "passed": rep.passed,
        "max_degree": rep.max_degree,
        "checked_triples": rep.checked_triples,
        "failures": [
            {"lambda_power": p, "triple": [A.labels[i] for i in t], "value": vector_document(A.labels, v)}
            for p, t, v in rep.failures[:10]
        ],
    }


def cmd_deform_verify(args):
    loaded, entry = _optional_algebra(args)
    D = _deformation(args, loaded, entry)
    rep = verify_deformation(D)
    return (OK if rep.passed else MATH_FAILURE), _verify_doc(D, rep)


def cmd_deform_extend(args):
    loaded, entry = _optional_algebra(args)
    D = _deformation(args, loaded, entry)
    try:
        rep = obstruction_and_extend(D)
    except (DeformationError, ObstructionError) as exc:
        return MATH_FAILURE, {"extendable": False, "reason": str(exc)}
    payload = {
        "order": rep.order,
        "obstruction": cochain_document(rep.obstruction),
        "obstruction_is_cocycle": rep.is_cocycle,
        "extendable": rep.extendable,
        "nontrivial": rep.nontrivial,
    }
    if rep.extendable:
        payload["particular"] = cochain_document(rep.particular)
        payload["kernel"] = [cochain_document(k) for k in rep.kernel]
    return (OK if rep.extendable else MATH_FAILURE), payload


def cmd_deform_transport(args):
    loaded, entry = _optional_algebra(args)
    D = _deformation(args, loaded, entry)
    P = equivalence_from_document(D.base, read_json(args.equiv))
    E = transport(D, P, args.order)
    return OK, {"order": args.order, "terms": _deformation_doc(E)}


def cmd_equiv_check(args):
    loaded, entry = _optional_algebra(args)
    F = _deformation(args, loaded, entry)
    E = deformation_from_document(read_json(args.other), catalog_loader=catalog.load, base=F.base)
    A = F.base
    if args.equiv:
        P = equivalence_from_document(A, read_json(args.equiv))
        top = args.order if args.order is not None else max(F.order, E.order, len(P.terms))
        failures = []
        for p in range(1, top + 1):
            for (x, y), v in sorted(equivalence_residual(F, E, P, p).items()):
                failures.append({"lambda_power": p, "pair": [A.labels[x], A.labels[y]], "value": vector_document(A.labels, v)})
        payload = {"mode": "explicit", "through_order": top, "equivalent": not failures, "failures": failures}
        return (OK if not failures else MATH_FAILURE), payload
    f1 = F.term(1) if F.order >= 1 else Cochain.bilinear(A, {})
    e1 = E.term(1) if E.order >= 1 else Cochain.bilinear(A, {})
    try:
        p1 = infinitesimal_equivalence(f1, e1)
    except DeformationError as exc:
        return MATH_FAILURE, {"mode": "infinitesimal", "equivalent": False, "reason": str(exc)}
    payload = {"mode": "infinitesimal", "equivalent": p1 is not None}
    if p1 is not None:
        payload["p1"] = cochain_document(p1)
        payload["check_d1_p1_equals_e1_minus_f1"] = coboundary(p1) == (e1 - f1)
    return (OK if p1 is not None else MATH_FAILURE), payload


def cmd_nijenhuis_check(args):
    loaded, _ = _load(args)
    A = loaded.algebra
    P = operator_from_arg(A, args.op)
    r = nijenhuis_residual(P)
    payload = {"operator_degree": list(P.degree.exponents), "nijenhuis": _residual_doc(A, r)}
    ok = r.is_zero
    if args.power is not None:
        try:
            i, j = (int(t) for t in args.power.split(","))
        except ValueError:
            raise InputError(f"--power expects i,j, got {args.power!r}") from None
        try:
            pr = nijenhuis_power_identity(P, i, j)
        except HypothesisError as exc:
            payload["power_identity"] = {"hypothesis": False, "reason": str(exc)}
            return MATH_FAILURE, payload
        payload["power_identity"] = {"hypothesis": True, **_residual_doc(A, pr)}
        ok = ok and pr.is_zero
    return (OK if ok else MATH_FAILURE), payload


def cmd_rota_baxter_check(args):
    loaded, _ = _load(args)
    A = loaded.algebra
    P = operator_from_arg(A, args.op)
    r = rota_baxter_residual(P, _scalar(args.weight, "--weight"))
    payload = {"operator_degree": list(P.degree.exponents), "rota_baxter": _residual_doc(A, r)}
    return (OK if r.is_zero else MATH_FAILURE), payload


def cmd_operator_correspondence(args):
    loaded, _ = _load(args)
    A = loaded.algebra
    P = operator_from_arg(A, args.op)
    rep = correspondence_checks(P)
    payload = {
        "squares": list(rep.squares),
        "agree": rep.agree,
        "checks": [
            {"hypothesis": c.hypothesis, "left": c.left, "left_holds": c.left_holds,
             "right": c.right, "right_holds": c.right_holds, "agree": c.agree}
            for c in rep.checks
        ],
    }
    return (OK if rep.agree else MATH_FAILURE), payload


def cmd_catalog(args):
    if args.action == "list":
        entries = []
        for name in catalog.names():
            e = catalog.load(name)
            entries.append({"name": name, "dim": e.algebra.dim, "group": str(e.algebra.group),
                            "attachments": sorted(e.attachments), "provenance": e.provenance})
        return OK, {"entries": entries}
    if not args.name:
        raise InputError("catalog export needs an entry name")
    e = catalog.load(args.name)
    return OK, {"name": e.name, "algebra": algebra_to_document(e.algebra)}


# -- parser ------------------------------------------------------------------------

def _algebra_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--catalog", help="catalog entry, optionally with a parameter: a_alpha:z4")
    p.add_argument("--algebra", help="algebra document (JSON)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lscolor", description="Left-symmetric color algebras: cohomology, deformations, operators.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("check-axioms", help="bicharacter validity and the left-symmetric color identity")
    _algebra_flags(p)
    p.set_defaults(func=cmd_check_axioms)

    p = sub.add_parser("cohomology", help="dimensions of C, Z, B, H")
    _algebra_flags(p)
    p.add_argument("-n", type=int, required=True, help="cochain arity")
    p.add_argument("--degree", help="comma-separated exponents; omit to scan all occurring degrees")
    p.add_argument("--representatives", action="store_true", help="include cohomology representatives")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("complex-check", help="verify d_{n+1} d_n = 0")
    _algebra_flags(p)
    p.add_argument("--n-max", type=int, default=3)
    p.set_defaults(func=cmd_complex_check)

    for name, func, help_ in (
        ("deform-verify", cmd_deform_verify, "check the deformation identity at every lambda power"),
        ("deform-extend", cmd_deform_extend, "obstruction and next-order extensions"),
    ):
        p = sub.add_parser(name, help=help_)
        _algebra_flags(p)
        p.add_argument("--deformation", help="deformation document (JSON)")
        p.set_defaults(func=func)

    p = sub.add_parser("deform-transport", help="transport a deformation along P = id + lambda p_1 + ...")
    _algebra_flags(p)
    p.add_argument("--deformation")
    p.add_argument("--equiv", required=True, help="equivalence-map document (JSON)")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_deform_transport)

    p = sub.add_parser("equiv-check", help="check or find an equivalence between two deformations")
    _algebra_flags(p)
    p.add_argument("--deformation", help="the deformation F")
    p.add_argument("--other", required=True, help="the deformation E")
    p.add_argument("--equiv", help="equivalence map; omit to search for p_1 infinitesimally")
    p.add_argument("--order", type=int)
    p.set_defaults(func=cmd_equiv_check)

    p = sub.add_parser("nijenhuis-check", help="Nijenhuis residual")
    _algebra_flags(p)
    p.add_argument("--op", required=True, help="operator document or diag:c1,c2,...")
    p.add_argument("--power", help="also check the power identity for i,j")
    p.set_defaults(func=cmd_nijenhuis_check)

    p = sub.add_parser("rota-baxter-check", help="Rota-Baxter residual of a given weight")
    _algebra_flags(p)
    p.add_argument("--op", required=True)
    p.add_argument("--weight", required=True)
    p.set_defaults(func=cmd_rota_baxter_check)

    p = sub.add_parser("operator-correspondence", help="Nijenhuis vs Rota-Baxter statements tied to P^2")
    _algebra_flags(p)
    p.add_argument("--op", required=True)
    p.set_defaults(func=cmd_operator_correspondence)

    p = sub.add_parser("catalog", help="list or export built-in algebras")
    p.add_argument("action", choices=["list", "export"])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return parser


def _render(command: str, status: str, payload: dict) -> str:
    return json.dumps({"command": command, "status": status, "payload": payload}, sort_keys=True, indent=2)


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, str]:
    """Execute a command line; return the exit code and the JSON result text."""
    argv = list(sys.argv[1:] if argv is None else argv)
    command = argv[0] if argv else ""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise InputError("a subcommand is required")
        code, payload = args.func(args)
    except FormatError as exc:
        err = {"error": exc.message}
        if exc.field is not None:
            err["field"] = exc.field
        if exc.line is not None:
            err["line"] = exc.line
        return INPUT_ERROR, _render(command, "error", err)
    except (InputError, catalog.CatalogError, ValueError) as exc:
        return INPUT_ERROR, _render(command, "error", {"error": str(exc)})
    status = "ok" if code == OK else "fail"
    return code, _render(command, status, payload)


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run(argv)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
