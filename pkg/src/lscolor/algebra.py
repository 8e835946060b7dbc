"""Graded algebras given by structure constants, bimodules and homogeneous operators.

Vectors are handled internally as sparse dicts ``{basis index: CycScalar}``;
the public helpers also accept dense sequences.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .exactnum import ONE, ZERO, CycScalar, as_scalar
from .grading import Bicharacter, GroupElement

__all__ = [
    "GradedAlgebra",
    "Bimodule",
    "GradedLinOp",
    "HomogeneityError",
    "LeftSymmetricReport",
    "multiply",
    "verify_left_symmetric",
    "color_bracket",
    "standard_bimodule",
    "sparse",
    "dense",
]

SparseVec = dict


class HomogeneityError(ValueError):
    """A vector or operator violates the grading."""


# ---------------------------------------------------------------------------
# sparse vector helpers
# ---------------------------------------------------------------------------

def sparse(vec) -> SparseVec:
    if isinstance(vec, Mapping):
        return {int(k): as_scalar(v) for k, v in vec.items() if v}
    return {k: as_scalar(v) for k, v in enumerate(vec) if v}


def dense(vec: SparseVec, dim: int) -> list[CycScalar]:
    out = [ZERO] * dim
    for k, v in vec.items():
        out[k] = v
    return out


def vec_axpy(acc: SparseVec, coeff: CycScalar, vec: SparseVec) -> None:
    """acc += coeff * vec, in place, dropping cancelled entries."""
    if not coeff:
        return
    for k, v in vec.items():
        new = acc.get(k, ZERO) + coeff * v
        if new:
            acc[k] = new
        else:
            acc.pop(k, None)


def vec_scale(coeff: CycScalar, vec: SparseVec) -> SparseVec:
    if not coeff:
        return {}
    return {k: coeff * v for k, v in vec.items()}


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

class GradedAlgebra:
    """A G-graded algebra on a homogeneous basis e_0, ..., e_{dim-1}.

    ``products`` maps ``(i, j)`` to the sparse vector e_i * e_j; missing pairs
    multiply to zero.
    """

    def __init__(
        self,
        degrees: Sequence[GroupElement],
        bicharacter: Bicharacter,
        products: Mapping[tuple[int, int], Mapping[int, object]],
        labels: Optional[Sequence[str]] = None,
    ):
        degrees = tuple(degrees)
        if not degrees:
            raise ValueError("algebra must have positive dimension")
        for d in degrees:
            if d.group.orders != bicharacter.group.orders:
                raise ValueError(f"basis degree {d} is not in the bicharacter's group {bicharacter.group}")
        self.dim = len(degrees)
        self.degrees = degrees
        self.bicharacter = bicharacter
        self.group = bicharacter.group
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(self.dim))
        if len(self.labels) != self.dim:
            raise ValueError("need one label per basis vector")
        table: dict[tuple[int, int], SparseVec] = {}
        for (i, j), vec in products.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise IndexError(f"product index ({i}, {j}) out of range for dim {self.dim}")
            v = sparse(vec)
            for k in v:
                if not 0 <= k < self.dim:
                    raise IndexError(f"product e{i}*e{j} has component {k} out of range")
                if degrees[k] != degrees[i] + degrees[j]:
                    raise HomogeneityError(
                        f"grading violated: e{i}*e{j} has a component on e{k} "
                        f"of degree {degrees[k]}, expected {degrees[i] + degrees[j]}"
                    )
            if v:
                table[(i, j)] = v
        self.products = table

    def eps(self, a: GroupElement, c: GroupElement) -> CycScalar:
        return self.bicharacter(a, c)

    def product(self, i: int, j: int) -> SparseVec:
        return self.products.get((i, j), {})

    def structure_constant(self, i: int, j: int, k: int) -> CycScalar:
        return self.products.get((i, j), {}).get(k, ZERO)

    def mul(self, u: SparseVec, v: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, a in u.items():
            for j, b in v.items():
                prod = self.products.get((i, j))
                if prod:
                    vec_axpy(out, a * b, prod)
        return out

    def degree_of(self, vec: SparseVec) -> Optional[GroupElement]:
        """Degree of a nonzero homogeneous vector; None for the zero vector."""
        degs = {self.degrees[k] for k in vec}
        if not degs:
            return None
        if len(degs) > 1:
            raise HomogeneityError(f"vector {vec} is not homogeneous")
        return degs.pop()

    def is_zero_algebra(self) -> bool:
        return not self.products

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedAlgebra):
            return NotImplemented
        return (
            self.degrees == other.degrees
            and self.bicharacter == other.bicharacter
            and self.products == other.products
        )

    def __repr__(self) -> str:
        return f"GradedAlgebra(dim={self.dim}, group={self.group}, nonzero_products={len(self.products)})"


def multiply(A: GradedAlgebra, x, y) -> list[CycScalar]:
    """Product of two coordinate vectors."""
    if len(x) != A.dim or len(y) != A.dim:
        raise ValueError(f"vectors must have length {A.dim}")
    return dense(A.mul(sparse(x), sparse(y)), A.dim)


@dataclass
class LeftSymmetricReport:
    passed: bool
    checked: int
    failures: list[tuple[int, int, int, SparseVec]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def associator_difference(A: GradedAlgebra, x: SparseVec, y: SparseVec, z: SparseVec, dx, dy) -> SparseVec:
    """(xy)z - x(yz) - eps(|x|,|y|)((yx)z - y(xz)) for homogeneous x, y of degrees dx, dy."""
    out = A.mul(A.mul(x, y), z)
    vec_axpy(out, -ONE, A.mul(x, A.mul(y, z)))
    e = A.eps(dx, dy)
    vec_axpy(out, -e, A.mul(A.mul(y, x), z))
    vec_axpy(out, e, A.mul(y, A.mul(x, z)))
    return out


def verify_left_symmetric(A: GradedAlgebra) -> LeftSymmetricReport:
    """Check the left-symmetric color identity on every basis triple."""
    failures = []
    n = A.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                res = associator_difference(A, {i: ONE}, {j: ONE}, {k: ONE}, A.degrees[i], A.degrees[j])
                if res:
                    failures.append((i, j, k, res))
    return LeftSymmetricReport(passed=not failures, checked=n**3, failures=failures)


def color_bracket(A: GradedAlgebra, x, y) -> list[CycScalar]:
    """[x, y] = xy - eps(|x|,|y|) yx for homogeneous x, y."""
    xs, ys = sparse(x), sparse(y)
    dx, dy = A.degree_of(xs), A.degree_of(ys)
    if dx is None or dy is None:
        return [ZERO] * A.dim
    return dense(bracket_sparse(A, xs, ys, dx, dy), A.dim)


def bracket_sparse(A: GradedAlgebra, x: SparseVec, y: SparseVec, dx, dy) -> SparseVec:
    out = A.mul(x, y)
    vec_axpy(out, -A.eps(dx, dy), A.mul(y, x))
    return out


# ---------------------------------------------------------------------------
# bimodules
# ---------------------------------------------------------------------------

class Bimodule:
    """Graded vector space with left and right actions of an algebra.

    ``left[(i, u)]`` is e_i . m_u and ``right[(u, i)]`` is m_u . e_i, both sparse.
    Only grading compatibility is enforced.
    """

    def __init__(
        self,
        algebra: GradedAlgebra,
        degrees: Sequence[GroupElement],
        left: Mapping[tuple[int, int], Mapping[int, object]],
        right: Mapping[tuple[int, int], Mapping[int, object]],
        labels: Optional[Sequence[str]] = None,
    ):
        self.algebra = algebra
        self.degrees = tuple(degrees)
        self.dim = len(self.degrees)
        if self.dim == 0:
            raise ValueError("bimodule must have positive dimension")
        self.labels = tuple(labels) if labels is not None else tuple(f"m{u}" for u in range(self.dim))
        self.left = self._check_action(left, lambda key: (key[0], key[1]), "left")
        self.right = self._check_action(right, lambda key: (key[1], key[0]), "right")

    def _check_action(self, action, split, side):
        A = self.algebra
        out = {}
        for key, vec in action.items():
            i, u = split(key)
            if not (0 <= i < A.dim and 0 <= u < self.dim):
                raise IndexError(f"{side} action index {key} out of range")
            v = sparse(vec)
            for w in v:
                if not 0 <= w < self.dim:
                    raise IndexError(f"{side} action {key} has component {w} out of range")
                if self.degrees[w] != A.degrees[i] + self.degrees[u]:
                    raise HomogeneityError(f"grading violated by {side} action {key} -> component {w}")
            if v:
                out[tuple(key)] = v
        return out

    def act_left(self, a: SparseVec, m: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, x in a.items():
            for u, y in m.items():
                img = self.left.get((i, u))
                if img:
                    vec_axpy(out, x * y, img)
        return out

    def act_right(self, m: SparseVec, a: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for u, y in m.items():
            for i, x in a.items():
                img = self.right.get((u, i))
                if img:
                    vec_axpy(out, y * x, img)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bimodule):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.degrees == other.degrees
            and self.left == other.left
            and self.right == other.right
        )


def standard_bimodule(A: GradedAlgebra) -> Bimodule:
    """A acting on itself by left and right multiplication (memoized per algebra)."""
    cached = A.__dict__.get("_standard_bimodule")
    if cached is not None:
        return cached
    left = {(i, u): v for (i, u), v in A.products.items()}
    right = {(u, i): v for (u, i), v in A.products.items()}
    V = Bimodule(A, A.degrees, left, right, labels=A.labels)
    A.__dict__["_standard_bimodule"] = V
    return V


# ---------------------------------------------------------------------------
# homogeneous operators
# ---------------------------------------------------------------------------

class GradedLinOp:
    """Homogeneous linear map P: A -> A; column j of ``matrix`` is P(e_j)."""

    def __init__(self, algebra: GradedAlgebra, degree: GroupElement, matrix, check: bool = True):
        n = algebra.dim
        rows = [[as_scalar(x) for x in row] for row in matrix]
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError(f"operator matrix must be {n}x{n}")
        self.algebra = algebra
        self.degree = degree
        self.matrix = tuple(tuple(row) for row in rows)
        self._cols = [{i: rows[i][j] for i in range(n) if rows[i][j]} for j in range(n)]
        if check:
            self.check_homogeneous()

    def check_homogeneous(self) -> None:
        degs = self.algebra.degrees
        for i, row in enumerate(self.matrix):
            for j, x in enumerate(row):
                if x and degs[i] != degs[j] + self.degree:
                    raise HomogeneityError(
                        f"entry ({i}, {j}) = {x} is not allowed for an operator of degree {self.degree}: "
                        f"e{j} has degree {degs[j]}, e{i} has degree {degs[i]}"
                    )

    def is_homogeneous(self) -> bool:
        try:
            self.check_homogeneous()
        except HomogeneityError:
            return False
        return True

    @classmethod
    def identity(cls, A: GradedAlgebra) -> "GradedLinOp":
        return cls(A, A.group.zero(), [[ONE if i == j else ZERO for j in range(A.dim)] for i in range(A.dim)])

    @classmethod
    def zero(cls, A: GradedAlgebra, degree: Optional[GroupElement] = None) -> "GradedLinOp":
        degree = A.group.zero() if degree is None else degree
        return cls(A, degree, [[ZERO] * A.dim for _ in range(A.dim)])

    @classmethod
    def diagonal(cls, A: GradedAlgebra, values) -> "GradedLinOp":
        values = [as_scalar(v) for v in values]
        if len(values) != A.dim:
            raise ValueError(f"need {A.dim} diagonal entries")
        return cls(A, A.group.zero(), [[values[i] if i == j else ZERO for j in range(A.dim)] for i in range(A.dim)])

    @classmethod
    def from_images(cls, A: GradedAlgebra, degree: GroupElement, images: Mapping[int, Mapping[int, object]]):
        """Build from ``{j: sparse P(e_j)}``."""
        m = [[ZERO] * A.dim for _ in range(A.dim)]
        for j, vec in images.items():
            for i, x in sparse(vec).items():
                m[i][j] = x
        return cls(A, degree, m)

    def apply(self, vec: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for j, x in vec.items():
            vec_axpy(out, x, self._cols[j])
        return out

    def __call__(self, vec):
        if isinstance(vec, dict):
            return self.apply(vec)
        return dense(self.apply(sparse(vec)), self.algebra.dim)

    def image(self, j: int) -> SparseVec:
        return self._cols[j]

    def _same(self, other: "GradedLinOp") -> None:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise ValueError("operators act on different algebras")

    def __matmul__(self, other: "GradedLinOp") -> "GradedLinOp":
        self._same(other)
        n = self.algebra.dim
        m = [
            [sum((self.matrix[i][k] * other.matrix[k][j] for k in range(n) if self.matrix[i][k] and other.matrix[k][j]), ZERO)
             for j in range(n)]
            for i in range(n)
        ]
        return GradedLinOp(self.algebra, self.degree + other.degree, m, check=False)

    def __pow__(self, k: int) -> "GradedLinOp":
        if not isinstance(k, int) or k < 0:
            raise ValueError("operator powers need a non-negative integer exponent")
        result = GradedLinOp.identity(self.algebra)
        for _ in range(k):
            result = result @ self
        return result

    def _combine(self, other: "GradedLinOp", sign: int) -> "GradedLinOp":
        self._same(other)
        m = [[a + sign * b for a, b in zip(ra, rb)] for ra, rb in zip(self.matrix, other.matrix)]
        if self.degree == other.degree:
            degree = self.degree
        elif other.is_zero():
            degree = self.degree
        elif self.is_zero():
            degree = other.degree
        else:
            raise HomogeneityError(f"cannot add operators of degrees {self.degree} and {other.degree}")
        return GradedLinOp(self.algebra, degree, m)

    def __add__(self, other: "GradedLinOp") -> "GradedLinOp":
        return self._combine(other, 1)

    def __sub__(self, other: "GradedLinOp") -> "GradedLinOp":
        return self._combine(other, -1)

    def scale(self, c) -> "GradedLinOp":
        c = as_scalar(c)
        return GradedLinOp(self.algebra, self.degree, [[c * x for x in row] for row in self.matrix], check=False)

    def is_zero(self) -> bool:
        return all(not x for row in self.matrix for x in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedLinOp):
            return NotImplemented
        return self.matrix == other.matrix and (self.degree == other.degree or self.is_zero())

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self.matrix)
        return f"GradedLinOp(degree={self.degree}, [{body}])"
