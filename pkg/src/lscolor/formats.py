"""JSON documents for algebras, deformations, operators and equivalence maps.

All scalars are strings in the cyclotomic text syntax of
:meth:`lscolor.exactnum.CycScalar.parse`, e.g. ``"-1/2"`` or ``"1 + z4"``.

Algebra document::

    {"format_version": 1,
     "group": {"orders": [2]},
     "bicharacter": [["-1"]],
     "basis_labels": ["x", "y1", "y2"],
     "basis_degrees": [[0], [1], [1]],
     "products": [[0, 0, 0, "2"], [0, 1, 1, "1"], ...],
     "bimodule": {"basis_degrees": [...], "left": [[i, u, w, "c"], ...], "right": [[u, i, w, "c"], ...]}}

``products`` entries ``[i, j, k, c]`` mean e_i e_j has coefficient c on e_k.
The bimodule block is optional; without it the standard bimodule is used.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Union

from .algebra import Bimodule, GradedAlgebra, GradedLinOp, HomogeneityError, standard_bimodule
from .cochain import Cochain
from .deform import Deformation, EquivalenceMap
from .exactnum import CycScalar, ExactArithmeticError
from .grading import AbelianGroup, Bicharacter, GroupElement, validate_bicharacter

__all__ = [
    "FORMAT_VERSION",
    "FormatError",
    "LoadedAlgebra",
    "algebra_from_document",
    "algebra_to_document",
    "load_algebra",
    "parse_json",
    "deformation_from_document",
    "deformation_to_document",
    "operator_from_document",
    "operator_from_arg",
    "equivalence_from_document",
    "scalar_text",
    "vector_document",
    "cochain_document",
]

FORMAT_VERSION = 1


class FormatError(ValueError):
    """A malformed document; ``field`` is a JSON path, ``line`` a 1-based source line."""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.message = message
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass
class LoadedAlgebra:
    algebra: GradedAlgebra
    module: Bimodule


def parse_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: invalid JSON ({exc.msg}, column {exc.colno})", line=exc.lineno) from None


def read_json(path: Union[str, Path]) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return parse_json(text, str(path))


# -- primitive readers --------------------------------------------------------

def _require(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise FormatError("expected an object", field=where or "$")
    if key not in doc:
        raise FormatError("missing required field", field=f"{where}.{key}" if where else key)
    return doc[key]


def _scalar(value, field: str) -> CycScalar:
    if isinstance(value, bool):
        raise FormatError("expected scalar text", field=field)
    if isinstance(value, int):
        return CycScalar(value)
    if not isinstance(value, str):
        raise FormatError("expected scalar text", field=field)
    try:
        return CycScalar.parse(value)
    except ExactArithmeticError as exc:
        raise FormatError(str(exc), field=field) from None


def _int(value, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError("expected an integer", field=field)
    return value


def _list(value, field: str) -> list:
    if not isinstance(value, list):
        raise FormatError("expected a list", field=field)
    return value


def _element(G: AbelianGroup, value, field: str) -> GroupElement:
    exps = _list(value, field)
    if len(exps) != G.rank:
        raise FormatError(f"expected {G.rank} exponents for group {G}", field=field)
    return G(*[_int(e, f"{field}[{k}]") for k, e in enumerate(exps)])


def _triples(value, field: str, first: int, second: int, third: int) -> dict:
    """Read ``[[a, b, c, "coeff"], ...]`` into ``{(a, b): {c: coeff}}`` with range checks."""
    out: dict = {}
    for n, entry in enumerate(_list(value, field)):
        f = f"{field}[{n}]"
        entry = _list(entry, f)
        if len(entry) != 4:
            raise FormatError("expected [index, index, index, coefficient]", field=f)
        a, b, c = (_int(entry[k], f"{f}[{k}]") for k in range(3))
        for k, (v, bound) in enumerate(((a, first), (b, second), (c, third))):
            if not 0 <= v < bound:
                raise FormatError(f"index {v} out of range 0..{bound - 1}", field=f"{f}[{k}]")
        coeff = _scalar(entry[3], f"{f}[3]")
        slot = out.setdefault((a, b), {})
        if c in slot:
            raise FormatError("duplicate entry", field=f)
        slot[c] = coeff
    return out


def scalar_text(x) -> str:
    return str(x)


# -- algebras -------------------------------------------------------------------

def algebra_from_document(doc: Any) -> LoadedAlgebra:
    if not isinstance(doc, dict):
        raise FormatError("algebra document must be an object", field="$")
    version = doc.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {version!r}", field="format_version")
    group_doc = _require(doc, "group", "")
    orders = _list(_require(group_doc, "orders", "group"), "group.orders")
    try:
        G = AbelianGroup([_int(n, f"group.orders[{k}]") for k, n in enumerate(orders)])
    except ValueError as exc:
        raise FormatError(str(exc), field="group.orders") from None
    rows = _list(_require(doc, "bicharacter", ""), "bicharacter")
    if len(rows) != G.rank:
        raise FormatError(f"expected a {G.rank}x{G.rank} table", field="bicharacter")
    table = []
    for i, row in enumerate(rows):
        row = _list(row, f"bicharacter[{i}]")
        if len(row) != G.rank:
            raise FormatError(f"expected {G.rank} entries", field=f"bicharacter[{i}]")
        table.append([_scalar(x, f"bicharacter[{i}][{j}]") for j, x in enumerate(row)])
    eps = Bicharacter(G, table)
    report = validate_bicharacter(eps)
    if not report:
        kind, i, j, value = report.violations[0]
        raise FormatError(f"not a skew-symmetric bicharacter ({kind} fails, value {value})",
                          field=f"bicharacter[{i}][{j}]")
    degree_docs = _list(_require(doc, "basis_degrees", ""), "basis_degrees")
    if not degree_docs:
        raise FormatError("algebra must have positive dimension", field="basis_degrees")
    degrees = [_element(G, d, f"basis_degrees[{k}]") for k, d in enumerate(degree_docs)]
    dim = len(degrees)
    labels = doc.get("basis_labels")
    if labels is not None:
        labels = _list(labels, "basis_labels")
        if len(labels) != dim or not all(isinstance(s, str) for s in labels):
            raise FormatError(f"expected {dim} label strings", field="basis_labels")
        if len(set(labels)) != dim:
            raise FormatError("labels must be distinct", field="basis_labels")
    products = _triples(doc.get("products", []), "products", dim, dim, dim)
    try:
        A = GradedAlgebra(degrees, eps, products, labels=labels)
    except HomogeneityError as exc:
        raise FormatError(str(exc), field="products") from None
    block = doc.get("bimodule")
    if block is None:
        return LoadedAlgebra(A, standard_bimodule(A))
    mdeg_docs = _list(_require(block, "basis_degrees", "bimodule"), "bimodule.basis_degrees")
    if not mdeg_docs:
        raise FormatError("bimodule must have positive dimension", field="bimodule.basis_degrees")
    mdeg = [_element(G, d, f"bimodule.basis_degrees[{k}]") for k, d in enumerate(mdeg_docs)]
    m = len(mdeg)
    left = _triples(block.get("left", []), "bimodule.left", dim, m, m)
    right = _triples(block.get("right", []), "bimodule.right", m, dim, m)
    mlabels = block.get("basis_labels")
    try:
        V = Bimodule(A, mdeg, left, right, labels=mlabels)
    except HomogeneityError as exc:
        raise FormatError(str(exc), field="bimodule") from None
    return LoadedAlgebra(A, V)


def _triple_list(table: dict) -> list:
    return [[a, b, c, scalar_text(x)] for (a, b), vec in sorted(table.items()) for c, x in sorted(vec.items())]


def algebra_to_document(A: GradedAlgebra, V: Optional[Bimodule] = None) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "group": {"orders": list(A.group.orders)},
        "bicharacter": [[scalar_text(x) for x in row] for row in A.bicharacter.table],
        "basis_labels": list(A.labels),
        "basis_degrees": [list(d.exponents) for d in A.degrees],
        "products": _triple_list(A.products),
    }
    if V is not None and V is not standard_bimodule(A):
        doc["bimodule"] = {
            "basis_labels": list(V.labels),
            "basis_degrees": [list(d.exponents) for d in V.degrees],
            "left": _triple_list(V.left),
            "right": _triple_list(V.right),
        }
    return doc


def load_algebra(path: Union[str, Path]) -> LoadedAlgebra:
    return algebra_from_document(read_json(path))


# -- deformations, operators, equivalence maps --------------------------------------

def _resolve_algebra(doc: dict, catalog_loader) -> GradedAlgebra:
    src = _require(doc, "algebra", "")
    if isinstance(src, str):
        if not src.startswith("catalog:"):
            raise FormatError("expected an algebra object or 'catalog:<name>'", field="algebra")
        try:
            return catalog_loader(src[len("catalog:"):]).algebra
        except KeyError as exc:
            raise FormatError(str(exc), field="algebra") from None
    try:
        return algebra_from_document(src).algebra
    except FormatError as exc:
        raise FormatError(exc.message, field=f"algebra.{exc.field}" if exc.field else "algebra", line=exc.line) from None


def _bilinear(A: GradedAlgebra, value, field: str) -> Cochain:
    table = _triples(value, field, A.dim, A.dim, A.dim)
    try:
        return Cochain.bilinear(A, table)
    except HomogeneityError as exc:
        raise FormatError(str(exc), field=field) from None


def deformation_from_document(doc: Any, catalog_loader=None, base: Optional[GradedAlgebra] = None) -> Deformation:
    """``{"algebra": <doc> | "catalog:<name>", "terms": [[[i, j, k, c], ...], ...]}``.

    Term k lists the values f_k(e_i, e_j) = c e_k + ...; every term must have degree 0.
    """
    if not isinstance(doc, dict):
        raise FormatError("deformation document must be an object", field="$")
    A = base if base is not None and "algebra" not in doc else _resolve_algebra(doc, catalog_loader)
    terms = [_bilinear(A, t, f"terms[{k}]") for k, t in enumerate(_list(_require(doc, "terms", ""), "terms"))]
    try:
        return Deformation(A, terms)
    except ValueError as exc:
        raise FormatError(str(exc), field="terms") from None


def deformation_to_document(D: Deformation, algebra_ref: Optional[str] = None) -> dict:
    terms = []
    for k in range(1, D.order + 1):
        f = D.term(k)
        terms.append([[ext[0], last, c, scalar_text(x)] for ext, last, c, x in f.entries()])
    return {
        "format_version": FORMAT_VERSION,
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_document(D.base),
        "terms": terms,
    }


def operator_from_document(A: GradedAlgebra, doc: Any, field: str = "$") -> GradedLinOp:
    """``{"degree": [..], "matrix": [[c, ...], ...]}``; column j of the matrix is P(e_j)."""
    if not isinstance(doc, dict):
        raise FormatError("operator document must be an object", field=field)
    prefix = "" if field == "$" else field
    deg_doc = doc.get("degree")
    degree = A.group.zero() if deg_doc is None else _element(A.group, deg_doc, f"{prefix}.degree".lstrip("."))
    mfield = f"{prefix}.matrix".lstrip(".")
    rows = _list(_require(doc, "matrix", prefix), mfield)
    if len(rows) != A.dim:
        raise FormatError(f"expected {A.dim} rows", field=mfield)
    matrix = []
    for i, row in enumerate(rows):
        row = _list(row, f"{mfield}[{i}]")
        if len(row) != A.dim:
            raise FormatError(f"expected {A.dim} entries", field=f"{mfield}[{i}]")
        matrix.append([_scalar(x, f"{mfield}[{i}][{j}]") for j, x in enumerate(row)])
    try:
        return GradedLinOp(A, degree, matrix)
    except HomogeneityError as exc:
        raise FormatError(str(exc), field=mfield) from None


def operator_from_arg(A: GradedAlgebra, text: str) -> GradedLinOp:
    """An operator from ``diag:<c1>,<c2>,...`` or from a JSON operator file."""
    if text.startswith("diag:"):
        parts = text[len("diag:"):].split(",")
        if len(parts) != A.dim:
            raise FormatError(f"diag needs {A.dim} entries, got {len(parts)}", field="--op")
        return GradedLinOp.diagonal(A, [_scalar(p.strip(), f"--op[{k}]") for k, p in enumerate(parts)])
    return operator_from_document(A, read_json(text))


def equivalence_from_document(A: GradedAlgebra, doc: Any) -> EquivalenceMap:
    """``{"terms": [<operator>, ...]}`` for p_1, p_2, ...; every p_i must have degree 0."""
    if not isinstance(doc, dict):
        raise FormatError("equivalence document must be an object", field="$")
    ops = [operator_from_document(A, t, f"terms[{k}]") for k, t in enumerate(_list(_require(doc, "terms", ""), "terms"))]
    try:
        return EquivalenceMap(A, tuple(ops))
    except HomogeneityError as exc:
        raise FormatError(str(exc), field="terms") from None


# -- output helpers ---------------------------------------------------------------

def vector_document(labels, vec: dict) -> dict:
    return {labels[k]: scalar_text(x) for k, x in sorted(vec.items())}


def cochain_document(f: Cochain) -> list:
    """Nonzero values of a cochain on canonical basis arguments."""
    A, V = f.algebra, f.module
    out = []
    for ext, last in sorted(f.table):
        args = [A.labels[i] for i in ext] + [A.labels[last]]
        out.append({"args": args, "value": vector_document(V.labels, f.table[(ext, last)])})
    return out
