"""Nijenhuis and Rota-Baxter operators on a left-symmetric color algebra.

Every check is reported per basis pair (e_i, e_j). By bilinearity a zero
residual on all basis pairs means the identity holds on all homogeneous pairs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .algebra import GradedAlgebra, GradedLinOp, HomogeneityError, vec_axpy
from .exactnum import ONE, CycScalar, as_scalar

__all__ = [
    "HypothesisError",
    "OperatorResidual",
    "CorrespondenceCheck",
    "CorrespondenceReport",
    "nijenhuis_residual",
    "nijenhuis_power_identity",
    "rota_baxter_residual",
    "correspondence_checks",
    "square_classes",
    "square_of_products_vanishes",
]


class HypothesisError(ValueError):
    """The operator does not satisfy the hypothesis of the identity being checked."""


@dataclass
class OperatorResidual:
    kind: str
    weight: Optional[CycScalar] = None
    residuals: dict[tuple[int, int], dict] = field(default_factory=dict)

    @property
    def max_support(self) -> int:
        return sum(len(v) for v in self.residuals.values())

    @property
    def is_zero(self) -> bool:
        return not self.residuals

    def __bool__(self) -> bool:
        """True when the identity holds, mirroring the other report types."""
        return self.is_zero


def _unit(j: int) -> dict:
    return {j: ONE}


def _collect(A: GradedAlgebra, kind: str, weight, value) -> OperatorResidual:
    out = OperatorResidual(kind, weight)
    for i in range(A.dim):
        for j in range(A.dim):
            v = value(i, j)
            if v:
                out.residuals[(i, j)] = v
    return out


def nijenhuis_residual(P: GradedLinOp) -> OperatorResidual:
    """P(x)P(y) - eps(|P|+|x|,|P|) P(P(x)y) - P(xP(y)) + eps(|x|,|P|) P(P(xy)) on basis pairs."""
    A = P.algebra
    d = P.degree
    P.check_homogeneous()

    def value(i, j):
        x, y = _unit(i), _unit(j)
        dx = A.degrees[i]
        Px, Py = P.apply(x), P.apply(y)
        out = A.mul(Px, Py)
        vec_axpy(out, -A.eps(d + dx, d), P.apply(A.mul(Px, y)))
        vec_axpy(out, -ONE, P.apply(A.mul(x, Py)))
        vec_axpy(out, A.eps(dx, d), P.apply(P.apply(A.mul(x, y))))
        return out

    return _collect(A, "nijenhuis", None, value)


def rota_baxter_residual(P: GradedLinOp, weight) -> OperatorResidual:
    """P(x)P(y) - eps(|P|+|x|,|P|) P(P(x)y) - P(xP(y)) - weight*P(xy) on basis pairs."""
    A = P.algebra
    d = P.degree
    lam = as_scalar(weight)
    P.check_homogeneous()

    def value(i, j):
        x, y = _unit(i), _unit(j)
        Px, Py = P.apply(x), P.apply(y)
        out = A.mul(Px, Py)
        vec_axpy(out, -A.eps(d + A.degrees[i], d), P.apply(A.mul(Px, y)))
        vec_axpy(out, -ONE, P.apply(A.mul(x, Py)))
        vec_axpy(out, -lam, P.apply(A.mul(x, y)))
        return out

    return _collect(A, "rota-baxter", lam, value)


def nijenhuis_power_identity(P: GradedLinOp, i: int, j: int) -> OperatorResidual:
    """Residual of the power identity for a Nijenhuis operator P with eps(|P|,|P|) = 1.

    P^i(x)P^j(y) = eps(i|P|+|x|, j|P|) P^j(P^i(x)y) + P^i(xP^j(y)) - eps(|x|, j|P|) P^(i+j)(xy)

    Raises HypothesisError when P is not Nijenhuis or eps(|P|,|P|) != 1.
    """
    if i < 0 or j < 0:
        raise ValueError("powers must be non-negative")
    A = P.algebra
    d = P.degree
    if A.eps(d, d) != ONE:
        raise HypothesisError(f"eps(|P|,|P|) = {A.eps(d, d)}, the power identity needs 1")
    nij = nijenhuis_residual(P)
    if not nij.is_zero:
        raise HypothesisError(f"P is not a Nijenhuis operator (residual at {sorted(nij.residuals)[0]})")
    Pi, Pj, Pij = P ** i, P ** j, P ** (i + j)
    for Q, k in ((Pi, i), (Pj, j), (Pij, i + j)):
        if Q.degree != d * k:
            raise HomogeneityError(f"P^{k} has degree {Q.degree}, expected {d * k}")
        Q.check_homogeneous()
    di, dj = d * i, d * j

    def value(a, b):
        x, y = _unit(a), _unit(b)
        dx = A.degrees[a]
        Pix, Pjy = Pi.apply(x), Pj.apply(y)
        out = A.mul(Pix, Pjy)
        vec_axpy(out, -A.eps(di + dx, dj), Pj.apply(A.mul(Pix, y)))
        vec_axpy(out, -ONE, Pi.apply(A.mul(x, Pjy)))
        vec_axpy(out, A.eps(dx, dj), Pij.apply(A.mul(x, y)))
        return out

    return _collect(A, f"nijenhuis-power({i},{j})", None, value)


def square_of_products_vanishes(P: GradedLinOp) -> bool:
    """True iff P^2 vanishes on A^2, the span of all products e_i e_j."""
    A = P.algebra
    P2 = P @ P
    for i in range(A.dim):
        for j in range(A.dim):
            if P2.apply(A.product(i, j)):
                return False
    return True


@dataclass
class CorrespondenceCheck:
    """One biconditional: ``left`` holds iff ``right`` holds."""

    hypothesis: str
    left: str
    left_holds: bool
    right: str
    right_holds: bool

    @property
    def agree(self) -> bool:
        return self.left_holds == self.right_holds


@dataclass
class CorrespondenceReport:
    squares: tuple[str, ...]
    checks: list[CorrespondenceCheck] = field(default_factory=list)

    @property
    def applicable(self) -> bool:
        return bool(self.checks)

    @property
    def agree(self) -> bool:
        return all(c.agree for c in self.checks)

    def __bool__(self) -> bool:
        return self.agree


def square_classes(P: GradedLinOp) -> tuple[str, ...]:
    """Which of P^2 = 0, P^2 = P, P^2 = I hold; P = 0 and P = I each fall in two."""
    A = P.algebra
    P2 = P @ P
    out = []
    if P2.is_zero():
        out.append("P^2=0")
    if P2.degree == P.degree and P2.matrix == P.matrix:
        out.append("P^2=P")
    if P.degree.is_zero() and P2 == GradedLinOp.identity(A):
        out.append("P^2=I")
    return tuple(out)


def correspondence_checks(P: GradedLinOp) -> CorrespondenceReport:
    """Compare the Nijenhuis status of P with the Rota-Baxter statement tied to P^2.

    P^2 = 0       Nijenhuis <=> RB weight 0
    P^2 = P       Nijenhuis <=> RB weight -1
    P^2 = I       Nijenhuis <=> RB weight -2 of P+I <=> RB weight 2 of P-I
    Nijenhuis P   RB weight 0 <=> P^2 vanishes on A^2
    """
    A = P.algebra
    nij = nijenhuis_residual(P).is_zero
    squares = square_classes(P)
    report = CorrespondenceReport(squares)
    I = GradedLinOp.identity(A)
    for square in squares:
        if square == "P^2=0":
            right = [("rota-baxter(0)", P, 0)]
        elif square == "P^2=P":
            right = [("rota-baxter(-1)", P, -1)]
        else:
            right = [("rota-baxter(-2) of P+I", P + I, -2), ("rota-baxter(2) of P-I", P - I, 2)]
        for name, Q, w in right:
            report.checks.append(CorrespondenceCheck(square, "nijenhuis", nij, name, rota_baxter_residual(Q, w).is_zero))
    if nij:
        report.checks.append(
            CorrespondenceCheck(
                "nijenhuis",
                "rota-baxter(0)",
                rota_baxter_residual(P, 0).is_zero,
                "P^2 vanishes on A^2",
                square_of_products_vanishes(P),
            )
        )
    return report
