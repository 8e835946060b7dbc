"""Formal deformations mu + lambda f_1 + ... + lambda^p f_p and their equivalences.

Identities over the formal parameter are checked one lambda-power at a time;
no power-series arithmetic is involved.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .algebra import GradedAlgebra, GradedLinOp, HomogeneityError, standard_bimodule, vec_axpy
from .cochain import Cochain, cochain_basis, coboundary, coboundary_matrix, exterior_basis
from .exactnum import ONE, solve_linear

__all__ = [
    "Deformation",
    "DeformationError",
    "DeformationReport",
    "EquivalenceMap",
    "ObstructionError",
    "ObstructionReport",
    "star",
    "verify_deformation",
    "infinitesimal_cocycle_check",
    "obstruction_and_extend",
    "extend_deformation",
    "transport",
    "formal_inverse",
    "equivalence_residual",
    "infinitesimal_equivalence",
    "as_operator",
    "as_linear_cochain",
]


class DeformationError(ValueError):
    """Input is not a valid deformation (or not a cocycle where one is required)."""


class ObstructionError(RuntimeError):
    """The obstruction of a verified deformation failed to be a cocycle."""


def _check_term(A: GradedAlgebra, f: Cochain, where: str) -> None:
    if f.arity != 2:
        raise DeformationError(f"{where} must be a 2-cochain, got arity {f.arity}")
    if f.algebra is not A and f.algebra != A:
        raise DeformationError(f"{where} is defined over a different algebra")
    if not f.is_zero() and not f.degree.is_zero():
        raise DeformationError(f"{where} must have degree 0, got {f.degree}")


class Deformation:
    """F = mu + lambda f_1 + ... + lambda^p f_p over ``base``."""

    def __init__(self, base: GradedAlgebra, terms: Sequence[Cochain] = ()):
        self.base = base
        V = standard_bimodule(base)
        fixed = []
        for k, f in enumerate(terms, start=1):
            _check_term(base, f, f"f_{k}")
            if f.module is not V:
                f = Cochain(base, V, 2, base.group.zero(), f.table)
            fixed.append(f)
        self.terms = tuple(fixed)
        self._mu = Cochain.multiplication(base)

    @property
    def order(self) -> int:
        return len(self.terms)

    def term(self, k: int) -> Optional[Cochain]:
        """f_k with f_0 the product of the base algebra; None beyond the order."""
        if k == 0:
            return self._mu
        if 1 <= k <= len(self.terms):
            return self.terms[k - 1]
        return None

    def truncate(self, order: int) -> "Deformation":
        return Deformation(self.base, self.terms[:order])

    def extended(self, f: Cochain) -> "Deformation":
        return Deformation(self.base, list(self.terms) + [f])

    def padded_equal(self, other: "Deformation") -> bool:
        """Equality ignoring trailing zero terms."""
        n = max(self.order, other.order)
        for k in range(1, n + 1):
            a, b = self.term(k), other.term(k)
            a_zero = a is None or a.is_zero()
            b_zero = b is None or b.is_zero()
            if a_zero and b_zero:
                continue
            if a_zero != b_zero or a != b:
                return False
        return True

    def __repr__(self) -> str:
        return f"Deformation(order={self.order}, base={self.base!r})"


@dataclass
class EquivalenceMap:
    """P = id + lambda p_1 + lambda^2 p_2 + ... with degree-0 operators p_i."""

    base: GradedAlgebra
    terms: tuple[GradedLinOp, ...] = ()

    def __post_init__(self):
        ops = []
        for k, p in enumerate(self.terms, start=1):
            op = as_operator(self.base, p)
            if not op.is_zero() and not op.degree.is_zero():
                raise HomogeneityError(f"p_{k} must have degree 0, got {op.degree}")
            ops.append(op)
        self.terms = tuple(ops)

    def term(self, k: int) -> Optional[GradedLinOp]:
        if k == 0:
            return GradedLinOp.identity(self.base)
        if 1 <= k <= len(self.terms):
            return self.terms[k - 1]
        return None


def as_operator(A: GradedAlgebra, p: Union[GradedLinOp, Cochain]) -> GradedLinOp:
    if isinstance(p, GradedLinOp):
        return p
    if p.arity != 1:
        raise ValueError(f"expected a 1-cochain, got arity {p.arity}")
    return GradedLinOp.from_images(A, p.degree, {last: vec for ((), last), vec in p.table.items()})


def as_linear_cochain(p: GradedLinOp) -> Cochain:
    A = p.algebra
    return Cochain.linear(A, {j: p.image(j) for j in range(A.dim)}, degree=p.degree)


# ---------------------------------------------------------------------------
# star product and verification
# ---------------------------------------------------------------------------

def _star_value(f: Cochain, g: Cochain, x: int, y: int, z: int) -> dict:
    A = f.algebra
    ex, ey, ez = {x: ONE}, {y: ONE}, {z: ONE}
    out = f.evaluate([g.evaluate([ex, ey]), ez])
    vec_axpy(out, -ONE, f.evaluate([ex, g.evaluate([ey, ez])]))
    e = A.eps(A.degrees[x], A.degrees[y])
    vec_axpy(out, -e, f.evaluate([g.evaluate([ey, ex]), ez]))
    vec_axpy(out, e, f.evaluate([ey, g.evaluate([ex, ez])]))
    return out


def star(f: Cochain, g: Cochain) -> Cochain:
    """(f*g)(x,y,z) = f(g(x,y),z) - f(x,g(y,z)) - eps(|x|,|y|)(f(g(y,x),z) - f(y,g(x,z)))."""
    if f.arity != 2 or g.arity != 2:
        raise ValueError(f"star needs two 2-cochains, got arities {f.arity} and {g.arity}")
    A = f.algebra
    table = {}
    for ext in exterior_basis(A, 3):
        for z in range(A.dim):
            val = _star_value(f, g, ext[0], ext[1], z)
            if val:
                table[(ext, z)] = val
    return Cochain(A, f.module, 3, f.degree + g.degree, table)


@dataclass
class DeformationReport:
    passed: bool
    max_degree: int
    checked_triples: int
    failures: list[tuple[int, tuple[int, int, int], dict]] = field(default_factory=list)

    @property
    def first_failure(self):
        return self.failures[0] if self.failures else None

    def __bool__(self) -> bool:
        return self.passed


def verify_deformation(D: Deformation, stop_at_first: bool = False) -> DeformationReport:
    """Check sum_{i+j=p} f_i * f_j = 0 on all basis triples for p = 0..2*order."""
    A = D.base
    n = A.dim
    top = 2 * D.order
    failures = []
    for p in range(top + 1):
        pairs = [(D.term(i), D.term(p - i)) for i in range(p + 1)]
        pairs = [(f, g) for f, g in pairs if f is not None and g is not None]
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    acc: dict = {}
                    for f, g in pairs:
                        vec_axpy(acc, ONE, _star_value(f, g, x, y, z))
                    if acc:
                        failures.append((p, (x, y, z), acc))
                        if stop_at_first:
                            return DeformationReport(False, top, n**3, failures)
    return DeformationReport(not failures, top, n**3, failures)


def infinitesimal_cocycle_check(f1: Cochain) -> bool:
    """True iff d_2 f_1 = 0."""
    if f1.arity != 2:
        raise ValueError(f"expected a 2-cochain, got arity {f1.arity}")
    return coboundary(f1).is_zero()


# ---------------------------------------------------------------------------
# obstructions and extensions
# ---------------------------------------------------------------------------

@dataclass
class ObstructionReport:
    order: int
    obstruction: Cochain
    is_cocycle: bool
    particular: Optional[Cochain] = None
    kernel: list[Cochain] = field(default_factory=list)

    @property
    def extendable(self) -> bool:
        return self.particular is not None

    @property
    def nontrivial(self) -> bool:
        """A nonzero f_p exists."""
        return self.particular is not None and (not self.particular.is_zero() or bool(self.kernel))


def obstruction_and_extend(D: Deformation) -> ObstructionReport:
    """Obstruction to extending an order-(p-1) deformation to order p, and all f_p that work.

    The order-p coefficient of the deformation identity reads
    ``sum_{i=1}^{p-1} f_i * f_{p-i} = d_2(f_p)`` with the coboundary as
    implemented in :mod:`lscolor.cochain`; the returned solution set is exactly
    the f_p for which ``D.extended(f_p)`` verifies.
    """
    if D.order < 1:
        raise DeformationError("need a deformation of order >= 1 to extend")
    report = verify_deformation(D, stop_at_first=True)
    if not report:
        p, triple, _ = report.first_failure
        raise DeformationError(f"input is not a deformation: fails at lambda^{p} on basis triple {triple}")
    A = D.base
    V = standard_bimodule(A)
    p = D.order + 1
    zero = A.group.zero()
    obstruction = Cochain(A, V, 3, zero)
    for i in range(1, p):
        obstruction = obstruction + star(D.term(i), D.term(p - i))
    if not coboundary(obstruction).is_zero():
        raise ObstructionError(f"obstruction at order {p} is not a 3-cocycle")
    d2 = coboundary_matrix(A, V, 2, zero)
    rhs = obstruction.to_vector(cochain_basis(A, V, 3, zero))
    solved = solve_linear(d2, rhs)
    out = ObstructionReport(order=p, obstruction=obstruction, is_cocycle=True)
    if solved is not None:
        basis2 = cochain_basis(A, V, 2, zero)
        part, ker = solved
        out.particular = Cochain.from_vector(A, V, 2, zero, part, basis2)
        out.kernel = [Cochain.from_vector(A, V, 2, zero, k, basis2) for k in ker]
    return out


def extend_deformation(D: Deformation, nontrivial: bool = True) -> Optional[Deformation]:
    """Extend by one order, preferring a nonzero f_p when ``nontrivial``; None if obstructed."""
    rep = obstruction_and_extend(D)
    if not rep.extendable:
        return None
    f = rep.particular
    if nontrivial and f.is_zero() and rep.kernel:
        f = rep.kernel[0]
    return D.extended(f)


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------

def _pair_term(D: Deformation, P: EquivalenceMap, E_terms: list, p: int, x: int, y: int) -> dict:
    """sum_{i+j+s=p} f_s(p_i x, p_j y) - sum_{i=1}^{p} p_i(e_{p-i}(x,y))."""
    ex, ey = {x: ONE}, {y: ONE}
    out: dict = {}
    for s in range(p + 1):
        f = D.term(s)
        if f is None:
            continue
        for i in range(p - s + 1):
            pi = P.term(i)
            pj = P.term(p - s - i)
            if pi is None or pj is None:
                continue
            vec_axpy(out, ONE, f.evaluate([pi.apply(ex), pj.apply(ey)]))
    for i in range(1, p + 1):
        pi = P.term(i)
        if pi is None or p - i >= len(E_terms) or E_terms[p - i] is None:
            continue
        vec_axpy(out, -ONE, pi.apply(E_terms[p - i].evaluate([ex, ey])))
    return out


def transport(D: Deformation, P: EquivalenceMap, order: int) -> Deformation:
    """The deformation E with F(P x, P y) = P(E(x, y)) through lambda^order."""
    A = D.base
    V = standard_bimodule(A)
    zero = A.group.zero()
    E_terms: list = [Cochain.multiplication(A)]
    for p in range(1, order + 1):
        table = {}
        for x in range(A.dim):
            for y in range(A.dim):
                val = _pair_term(D, P, E_terms, p, x, y)
                if val:
                    table[((x,), y)] = val
        E_terms.append(Cochain(A, V, 2, zero, table))
    return Deformation(A, E_terms[1:])


def formal_inverse(P: EquivalenceMap, order: int) -> EquivalenceMap:
    """Q with P Q = id modulo lambda^(order+1)."""
    A = P.base
    qs = [GradedLinOp.identity(A)]
    for k in range(1, order + 1):
        acc = GradedLinOp.zero(A)
        for i in range(1, k + 1):
            pi = P.term(i)
            if pi is not None:
                acc = acc + pi @ qs[k - i]
        qs.append(acc.scale(-ONE))
    return EquivalenceMap(A, tuple(qs[1:]))


def equivalence_residual(F: Deformation, E: Deformation, P: EquivalenceMap, p: int) -> dict:
    """lambda^p coefficient of F(P x, P y) - P(E(x, y)) on every basis pair; empty when it vanishes."""
    A = F.base
    e_terms = [E.term(k) for k in range(p + 1)]
    out = {}
    for x in range(A.dim):
        for y in range(A.dim):
            val = _pair_term(F, P, e_terms, p, x, y)
            e_p = E.term(p)
            if e_p is not None:
                vec_axpy(val, -ONE, e_p.evaluate([{x: ONE}, {y: ONE}]))
            if val:
                out[(x, y)] = val
    return out


def infinitesimal_equivalence(f1: Cochain, e1: Cochain) -> Optional[Cochain]:
    """A degree-0 1-cochain p_1 with d_1(p_1) = e_1 - f_1, or None if the classes differ.

    Free variables of the solution are set to zero, so the answer is
    deterministic; any two answers differ by a degree-0 eps-derivation.
    """
    for name, f in (("f1", f1), ("e1", e1)):
        if f.arity != 2:
            raise DeformationError(f"{name} must be a 2-cochain")
        if not f.is_zero() and not f.degree.is_zero():
            raise DeformationError(f"{name} must have degree 0")
        if not infinitesimal_cocycle_check(f):
            raise DeformationError(f"{name} is not a 2-cocycle")
    A = f1.algebra
    V = standard_bimodule(A)
    zero = A.group.zero()
    diff = Cochain(A, V, 2, zero, e1.table) - Cochain(A, V, 2, zero, f1.table)
    d1 = coboundary_matrix(A, V, 1, zero)
    solved = solve_linear(d1, diff.to_vector(cochain_basis(A, V, 2, zero)))
    if solved is None:
        return None
    return Cochain.from_vector(A, V, 1, zero, solved[0])
