"""Built-in algebras, cocycles, deformations and operators.

``example37``
    3-dimensional left-symmetric superalgebra with basis x (even), y1, y2 (odd):
    xx = 2x, xy1 = y1, xy2 = y2, y1y2 = x, y2y1 = -x.
``a_alpha``
    2-dimensional algebra with the single product x^2 = alpha*y, graded by Z
    with |x| = 1, |y| = 2 and eps(1, 1) = q (default q = -1).
``a_lambda_t`` / ``b_lambda``
    First-order deformations of ``example37`` whose totals at lambda = 1 are the
    product tables of the families A_lambda(t) and B_lambda.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .algebra import GradedAlgebra, GradedLinOp, standard_bimodule, verify_left_symmetric
from .cochain import Cochain
from .deform import Deformation
from .exactnum import ONE, CycScalar, as_scalar
from .grading import AbelianGroup, Bicharacter, validate_bicharacter

__all__ = ["CatalogEntry", "CatalogError", "load", "names", "example37", "a_alpha", "example37_cocycle"]


class CatalogError(KeyError):
    """Unknown catalog name or unusable parameter."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "catalog error"


@dataclass
class CatalogEntry:
    name: str
    algebra: GradedAlgebra
    provenance: str
    attachments: dict[str, Any] = field(default_factory=dict)
    parameters: dict[str, CycScalar] = field(default_factory=dict)


X, Y1, Y2 = 0, 1, 2


def example37() -> GradedAlgebra:
    Z2 = AbelianGroup([2])
    products = {
        (X, X): {X: 2},
        (X, Y1): {Y1: 1},
        (X, Y2): {Y2: 1},
        (Y1, Y2): {X: 1},
        (Y2, Y1): {X: -1},
    }
    return GradedAlgebra([Z2(0), Z2(1), Z2(1)], Bicharacter.super_sign(), products, labels=("x", "y1", "y2"))


def example37_cocycle(A: GradedAlgebra, r=0, s=0, t=0) -> Cochain:
    """Degree-0 2-cochain f(x,x) = r x, f(x,y1) = s y2, f(x,y2) = t y1 + r y2."""
    r, s, t = as_scalar(r), as_scalar(s), as_scalar(t)
    return Cochain.bilinear(A, {(X, X): {X: r}, (X, Y1): {Y2: s}, (X, Y2): {Y1: t, Y2: r}})


def a_alpha(alpha=1, q=-1) -> GradedAlgebra:
    alpha, q = as_scalar(alpha), as_scalar(q)
    if alpha.is_zero():
        raise CatalogError("a_alpha needs a nonzero alpha")
    Z = AbelianGroup([0])
    return GradedAlgebra([Z(1), Z(2)], Bicharacter(Z, [[q]]), {(0, 0): {1: alpha}}, labels=("x", "y"))


def _table_minus_base(A: GradedAlgebra, table: dict) -> Cochain:
    total = Cochain.bilinear(A, table)
    return total - Cochain.multiplication(A)


def _load_example37(_param) -> CatalogEntry:
    A = example37()
    return CatalogEntry(
        name="example37",
        algebra=A,
        provenance=(
            "3-dimensional complex left-symmetric superalgebra: xx=2x, xy1=y1, xy2=y2, y1y2=x, y2y1=-x; "
            "G = Z2, eps = parity sign; x even, y1 and y2 odd"
        ),
        attachments={
            "cocycle_r": example37_cocycle(A, r=1),
            "cocycle_s": example37_cocycle(A, s=1),
            "cocycle_t": example37_cocycle(A, t=1),
        },
    )


def _load_a_alpha(param) -> CatalogEntry:
    alpha = ONE if param is None else as_scalar(param)
    q = -ONE
    A = a_alpha(alpha, q)
    return CatalogEntry(
        name="a_alpha",
        algebra=A,
        provenance=(
            f"2-dimensional algebra with unique nonzero product x^2 = alpha*y, alpha = {alpha}; "
            f"G = Z, |x| = 1, |y| = 2, eps(1,1) = {q} (chosen bicharacter)"
        ),
        attachments={
            "identity": GradedLinOp.identity(A),
            "shift": GradedLinOp.from_images(A, A.group(1), {0: {1: 1}}),
        },
        parameters={"alpha": alpha, "q": q},
    )


def _load_a_lambda_t(param) -> CatalogEntry:
    t = ONE if param is None else as_scalar(param)
    A = example37()
    table = {
        (X, X): {X: t + 1},
        (X, Y1): {Y1: 1},
        (X, Y2): {Y2: t},
        (Y1, Y2): {X: 1},
        (Y2, Y1): {X: -1},
    }
    f1 = _table_minus_base(A, table)
    return CatalogEntry(
        name="a_lambda_t",
        algebra=A,
        provenance=(
            f"family A_lambda(t) over example37 with t = {t}: F(x,x)=(t+1)x, F(x,y1)=y1, F(x,y2)=t y2, "
            "F(y1,y2)=x, F(y2,y1)=-x; stored as f1 = F - mu, i.e. the table is f0 + lambda f1 at lambda = 1"
        ),
        attachments={"deformation": Deformation(A, [f1]), "total_table": table},
        parameters={"t": t},
    )


def _load_b_lambda(_param) -> CatalogEntry:
    A = example37()
    table = {
        (X, X): {X: 2},
        (X, Y1): {Y1: 1},
        (X, Y2): {Y1: 1, Y2: 1},
        (Y1, Y2): {X: 1},
        (Y2, Y1): {X: -1},
    }
    f1 = _table_minus_base(A, table)
    return CatalogEntry(
        name="b_lambda",
        algebra=A,
        provenance=(
            "family B_lambda over example37: F(x,x)=2x, F(x,y1)=y1, F(x,y2)=y1+y2, F(y1,y2)=x, F(y2,y1)=-x; "
            "stored as f1 = F - mu, i.e. the table is f0 + lambda f1 at lambda = 1"
        ),
        attachments={"deformation": Deformation(A, [f1]), "total_table": table},
    )


_LOADERS = {
    "example37": _load_example37,
    "a_alpha": _load_a_alpha,
    "a_lambda_t": _load_a_lambda_t,
    "b_lambda": _load_b_lambda,
}

_PARAMETRIZED = {"a_alpha": "alpha", "a_lambda_t": "t"}


def names() -> list[str]:
    return sorted(_LOADERS)


def load(name: str, param: Optional[object] = None) -> CatalogEntry:
    """Load an entry; ``name`` may also carry its parameter as ``"a_alpha:z4"``."""
    if param is None and ":" in name:
        name, text = name.split(":", 1)
        param = text
    loader = _LOADERS.get(name)
    if loader is None:
        raise CatalogError(f"unknown catalog entry {name!r}; available: {', '.join(names())}")
    if param is not None and name not in _PARAMETRIZED:
        raise CatalogError(f"catalog entry {name!r} takes no parameter")
    if isinstance(param, str):
        try:
            param = CycScalar.parse(param)
        except ArithmeticError as exc:
            raise CatalogError(f"parameter for {name!r} is not a cyclotomic scalar: {exc}") from exc
    entry = loader(param)
    A = entry.algebra
    if not validate_bicharacter(A.bicharacter):
        raise CatalogError(f"catalog entry {name!r} has an invalid bicharacter")
    if not verify_left_symmetric(A):
        raise CatalogError(f"catalog entry {name!r} fails the left-symmetric color identity")
    standard_bimodule(A)
    return entry
