"""Graded cochains C^n_c(A, V), the coboundary operator and cohomology.

An n-cochain is a map (Lambda^{n-1}_eps A) (x) A -> V. It is stored on the
canonical basis: an exterior tuple ``(i_1 <= ... <= i_{n-1})`` of basis
indices (strictly increasing at indices e with eps(|e|,|e|) = 1), a last-slot
index, and a sparse target vector in V. Values on other orderings follow
from the exterior relation

    x ^ y = -eps(|x|, |y|) y ^ x.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .algebra import (
    Bimodule,
    GradedAlgebra,
    HomogeneityError,
    bracket_sparse,
    sparse,
    standard_bimodule,
    vec_axpy,
)
from .exactnum import ONE, ZERO, CycMatrix, CycScalar, as_scalar, kernel_basis, rank
from .grading import GroupElement

__all__ = [
    "Cochain",
    "CohomologyReport",
    "ComplexReport",
    "exterior_basis",
    "cochain_basis",
    "occurring_degrees",
    "coboundary",
    "coboundary_matrix",
    "cohomology",
    "check_complex",
]

Key = tuple  # (exterior tuple, last index)


def _is_even(A: GradedAlgebra, i: int) -> bool:
    d = A.degrees[i]
    return A.eps(d, d) == ONE


def exterior_basis(A: GradedAlgebra, n: int) -> list[tuple[int, ...]]:
    """Canonical basis tuples of Lambda^{n-1}_eps A, in lexicographic order."""
    if n < 1:
        raise ValueError(f"arity must be >= 1, got {n}")
    even = [_is_even(A, i) for i in range(A.dim)]
    out: list[tuple[int, ...]] = []

    def grow(prefix: tuple[int, ...], remaining: int) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        start = 0
        if prefix:
            last = prefix[-1]
            start = last + 1 if even[last] else last
        for i in range(start, A.dim):
            grow(prefix + (i,), remaining - 1)

    grow((), n - 1)
    return out


def _canonicalize(A: GradedAlgebra, idx: Sequence[int], cache: dict) -> Optional[tuple[CycScalar, tuple[int, ...]]]:
    """Sort an exterior tuple; returns (sign, sorted) or None when it vanishes."""
    idx = tuple(idx)
    hit = cache.get(idx, False)
    if hit is not False:
        return hit
    seq = list(idx)
    sign = ONE
    # insertion sort, one adjacent swap at a time
    for a in range(1, len(seq)):
        b = a
        while b > 0 and seq[b - 1] > seq[b]:
            left, right = seq[b - 1], seq[b]
            sign = -sign * A.eps(A.degrees[left], A.degrees[right])
            seq[b - 1], seq[b] = right, left
            b -= 1
    result: Optional[tuple[CycScalar, tuple[int, ...]]] = (sign, tuple(seq))
    for a in range(1, len(seq)):
        if seq[a] == seq[a - 1] and _is_even(A, seq[a]):
            result = None
            break
    cache[idx] = result
    return result


def _sum_degrees(A: GradedAlgebra, idx: Iterable[int]) -> GroupElement:
    total = A.group.zero()
    for i in idx:
        total = total + A.degrees[i]
    return total


def cochain_basis(A: GradedAlgebra, V: Bimodule, n: int, c: GroupElement) -> list[tuple[tuple[int, ...], int, int]]:
    """Basis of C^n_c(A, V) as (exterior tuple, last index, target index) triples."""
    out = []
    for ext in exterior_basis(A, n):
        base = _sum_degrees(A, ext)
        for last in range(A.dim):
            want = c + base + A.degrees[last]
            for v in range(V.dim):
                if V.degrees[v] == want:
                    out.append((ext, last, v))
    return out


def occurring_degrees(A: GradedAlgebra, V: Bimodule, n: int) -> list[GroupElement]:
    """Degrees c for which C^n_c(A, V) is nonzero, sorted by exponent vector."""
    degs = set()
    for ext in exterior_basis(A, n):
        base = _sum_degrees(A, ext)
        for last in range(A.dim):
            src = base + A.degrees[last]
            for v in range(V.dim):
                degs.add(V.degrees[v] - src)
    return sorted(degs)


class Cochain:
    """Homogeneous n-cochain of degree ``degree`` with values in ``module``."""

    def __init__(
        self,
        algebra: GradedAlgebra,
        module: Bimodule,
        arity: int,
        degree: GroupElement,
        table: Optional[Mapping[Key, Mapping[int, object]]] = None,
    ):
        if arity < 1:
            raise ValueError(f"arity must be >= 1, got {arity}")
        self.algebra = algebra
        self.module = module
        self.arity = arity
        self.degree = degree
        self._canon_cache = _canon_cache_for(algebra)
        self.table: dict[Key, dict] = {}
        for key, vec in (table or {}).items():
            ext, last = tuple(key[0]), int(key[1])
            if len(ext) != arity - 1:
                raise ValueError(f"key {key} has exterior length {len(ext)}, expected {arity - 1}")
            canon = _canonicalize(algebra, ext, self._canon_cache)
            v = sparse(vec)
            if canon is None:
                if v:
                    raise ValueError(f"exterior tuple {ext} is zero in Lambda_eps; cannot carry a value")
                continue
            sign, ext_sorted = canon
            want = degree + _sum_degrees(algebra, ext) + algebra.degrees[last]
            for w in v:
                if module.degrees[w] != want:
                    raise HomogeneityError(
                        f"value at {key} has a component on m{w} of degree {module.degrees[w]}, expected {want}"
                    )
            # store the canonical representative; f(ext) = sign * f(ext_sorted)
            inv = sign.inverse()
            acc = self.table.setdefault((ext_sorted, last), {})
            vec_axpy(acc, inv, v)
            if not acc:
                del self.table[(ext_sorted, last)]

    # -- construction helpers ---------------------------------------------

    @classmethod
    def from_vector(cls, A, V, n, c, vector, basis=None) -> "Cochain":
        basis = cochain_basis(A, V, n, c) if basis is None else basis
        if len(vector) != len(basis):
            raise ValueError(f"vector length {len(vector)} does not match dim C^{n}_c = {len(basis)}")
        table: dict = {}
        for (ext, last, v), x in zip(basis, vector):
            x = as_scalar(x)
            if x:
                table.setdefault((ext, last), {})[v] = x
        return cls(A, V, n, c, table)

    @classmethod
    def bilinear(cls, A: GradedAlgebra, values: Mapping[tuple[int, int], Mapping[int, object]],
                 degree: Optional[GroupElement] = None, module: Optional[Bimodule] = None) -> "Cochain":
        """2-cochain from ``{(i, j): sparse f(e_i, e_j)}``."""
        V = standard_bimodule(A) if module is None else module
        degree = A.group.zero() if degree is None else degree
        return cls(A, V, 2, degree, {((i,), j): vec for (i, j), vec in values.items()})

    @classmethod
    def linear(cls, A: GradedAlgebra, images: Mapping[int, Mapping[int, object]],
               degree: Optional[GroupElement] = None, module: Optional[Bimodule] = None) -> "Cochain":
        """1-cochain from ``{j: sparse f(e_j)}``."""
        V = standard_bimodule(A) if module is None else module
        degree = A.group.zero() if degree is None else degree
        return cls(A, V, 1, degree, {((), j): vec for j, vec in images.items()})

    @classmethod
    def multiplication(cls, A: GradedAlgebra) -> "Cochain":
        """The product of A viewed as a degree-0 2-cochain."""
        return cls.bilinear(A, dict(A.products))

    def zero_like(self) -> "Cochain":
        return Cochain(self.algebra, self.module, self.arity, self.degree)

    # -- evaluation -----------------------------------------------------------

    def value(self, ext: Sequence[int], last: int) -> dict:
        """f(e_ext..., e_last) for arbitrary (not necessarily sorted) basis indices."""
        canon = _canonicalize(self.algebra, ext, self._canon_cache)
        if canon is None:
            return {}
        sign, key = canon
        stored = self.table.get((key, last))
        if not stored:
            return {}
        if sign == ONE:
            return dict(stored)
        return {w: sign * x for w, x in stored.items()}

    def evaluate(self, args: Sequence) -> dict:
        """Multilinear evaluation on n vectors (sparse dicts or dense sequences)."""
        if len(args) != self.arity:
            raise ValueError(f"{self.arity}-cochain evaluated on {len(args)} arguments")
        vecs = [a if isinstance(a, dict) else sparse(a) for a in args]
        out: dict = {}
        for combo in itertools.product(*(list(v.items()) for v in vecs)):
            coeff = ONE
            for _, x in combo:
                coeff = coeff * x
            idx = [i for i, _ in combo]
            vec_axpy(out, coeff, self.value(idx[:-1], idx[-1]))
        return out

    def __call__(self, *args) -> dict:
        return self.evaluate(args)

    # -- vector space structure -------------------------------------------

    def basis(self):
        return cochain_basis(self.algebra, self.module, self.arity, self.degree)

    def to_vector(self, basis=None) -> list[CycScalar]:
        basis = self.basis() if basis is None else basis
        index = {b: k for k, b in enumerate(basis)}
        out = [ZERO] * len(basis)
        for (ext, last), vec in self.table.items():
            for w, x in vec.items():
                out[index[(ext, last, w)]] = x
        return out

    def _check_compatible(self, other: "Cochain") -> None:
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise HomogeneityError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        degree = self.degree if not self.is_zero() else other.degree
        table = {k: dict(v) for k, v in self.table.items()}
        for k, v in other.table.items():
            acc = table.setdefault(k, {})
            vec_axpy(acc, ONE, v)
            if not acc:
                del table[k]
        return Cochain(self.algebra, self.module, self.arity, degree, table)

    def __neg__(self) -> "Cochain":
        return self.scale(-ONE)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, c) -> "Cochain":
        c = as_scalar(c)
        table = {k: {w: c * x for w, x in v.items()} for k, v in self.table.items()} if c else {}
        return Cochain(self.algebra, self.module, self.arity, self.degree, table)

    def __rmul__(self, c) -> "Cochain":
        return self.scale(c)

    def is_zero(self) -> bool:
        return not self.table

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        if self.arity != other.arity:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.table == other.table

    def entries(self) -> list[tuple[tuple[int, ...], int, int, CycScalar]]:
        """Sorted sparse listing (ext, last, target, coefficient)."""
        out = []
        for (ext, last), vec in sorted(self.table.items()):
            for w in sorted(vec):
                out.append((ext, last, w, vec[w]))
        return out

    def __repr__(self) -> str:
        lab = self.algebra.labels
        tlab = self.module.labels
        parts = []
        for ext, last, w, x in self.entries():
            args = ",".join(lab[i] for i in ext + (last,))
            parts.append(f"({args})->{x}*{tlab[w]}")
        return f"Cochain(n={self.arity}, degree={self.degree}, {{{'; '.join(parts)}}})"


def _canon_cache_for(A: GradedAlgebra) -> dict:
    cache = A.__dict__.get("_canon_cache")
    if cache is None:
        cache = A.__dict__["_canon_cache"] = {}
    return cache


# ---------------------------------------------------------------------------
# coboundary
# ---------------------------------------------------------------------------

def _eval_args(f: Cochain, ext_args: Sequence[dict], last_arg: dict) -> dict:
    """f evaluated with sparse-vector arguments."""
    out: dict = {}
    pools = [list(v.items()) for v in ext_args] + [list(last_arg.items())]
    for combo in itertools.product(*pools):
        coeff = ONE
        for _, x in combo:
            coeff = coeff * x
        idx = [i for i, _ in combo]
        vec_axpy(out, coeff, f.value(idx[:-1], idx[-1]))
    return out


def coboundary_value(f: Cochain, xs: Sequence[int]) -> dict:
    """(d_n f)(e_{xs[0]}, ..., e_{xs[n]}) following the four-sum formula."""
    A, V = f.algebra, f.module
    n = f.arity
    if len(xs) != n + 1:
        raise ValueError(f"d_{n} f needs {n + 1} arguments")
    degs = [A.degrees[i] for i in xs]
    zero = A.group.zero()
    unit = [{i: ONE} for i in xs]
    out: dict = {}

    # first sum: left action, eps(|f| + |x_1| + ... + |x_{i-1}|, |x_i|)
    acc_deg = f.degree
    for i in range(n):
        sign = ONE if i % 2 == 0 else -ONE
        e = A.eps(acc_deg, degs[i])
        rest = list(xs[:i]) + list(xs[i + 1:])
        val = f.value(rest[:-1], rest[-1])
        if val:
            vec_axpy(out, sign * e, V.act_left(unit[i], val))
        acc_deg = acc_deg + degs[i]

    # second and third sums share eps(|x_i|, |x_{i+1}| + ... + |x_n|)
    last = xs[n]
    for i in range(n):
        sign = ONE if i % 2 == 0 else -ONE
        tail = zero
        for j in range(i + 1, n):
            tail = tail + degs[j]
        e = A.eps(degs[i], tail)
        ext = list(xs[:i]) + list(xs[i + 1:n])
        val = f.value(ext, xs[i])
        if val:
            vec_axpy(out, sign * e, V.act_right(val, unit[n]))
        prod = A.product(xs[i], last)
        if prod:
            val3 = _eval_args(f, [unit[k] for k in range(n) if k != i], prod)
            vec_axpy(out, -sign * e, val3)

    # fourth sum: bracket [x_j, x_i] placed in slot j, x_i removed
    for i in range(n):
        sign = ONE if i % 2 == 0 else -ONE
        for j in range(i):
            br = bracket_sparse(A, unit[j], unit[i], degs[j], degs[i])
            if not br:
                continue
            mid = zero
            for s in range(j + 1, i):
                mid = mid + degs[s]
            e = A.eps(mid, degs[i])
            args = [unit[k] for k in range(n + 1) if k != i]
            args[j] = br
            vec_axpy(out, sign * e, _eval_args(f, args[:-1], args[-1]))
    return out


def coboundary(f: Cochain) -> Cochain:
    """d_n f as an (n+1)-cochain of the same degree."""
    A, V = f.algebra, f.module
    n = f.arity
    table = {}
    for ext in exterior_basis(A, n + 1):
        for last in range(A.dim):
            val = coboundary_value(f, list(ext) + [last])
            if val:
                table[(ext, last)] = val
    return Cochain(A, V, n + 1, f.degree, table)


def coboundary_matrix(A: GradedAlgebra, V: Bimodule, n: int, c: GroupElement) -> CycMatrix:
    """Matrix of d_n : C^n_c -> C^{n+1}_c in the canonical cochain bases."""
    if V.algebra is not A:
        raise ValueError("bimodule belongs to a different algebra object")
    cache = V.__dict__.setdefault("_coboundary_cache", {})
    hit = cache.get((n, c))
    if hit is not None:
        return hit
    src = cochain_basis(A, V, n, c)
    dst = cochain_basis(A, V, n + 1, c)
    columns = []
    for ext, last, v in src:
        f = Cochain(A, V, n, c, {(ext, last): {v: ONE}})
        columns.append(coboundary(f).to_vector(dst))
    mat = CycMatrix.from_columns(columns, rows=len(dst)) if columns else CycMatrix.zeros(len(dst), 0)
    cache[(n, c)] = mat
    return mat


# ---------------------------------------------------------------------------
# cohomology
# ---------------------------------------------------------------------------

@dataclass
class CohomologyReport:
    arity: int
    degree: GroupElement
    dim_cochains: int
    dim_cocycles: int
    dim_coboundaries: int
    dim_cohomology: int
    representatives: list[Cochain] = field(default_factory=list)
    cocycle_basis: list[Cochain] = field(default_factory=list)

    @property
    def dims(self) -> dict[str, int]:
        return {
            "C": self.dim_cochains,
            "Z": self.dim_cocycles,
            "B": self.dim_coboundaries,
            "H": self.dim_cohomology,
        }


def cohomology(A: GradedAlgebra, V: Optional[Bimodule], n: int, c: GroupElement) -> CohomologyReport:
    """Dimensions of C^n_c, Z^n_c, B^n_c, H^n_c and coset representatives of H^n_c."""
    if n < 1:
        raise ValueError(f"arity must be >= 1, got {n}")
    V = standard_bimodule(A) if V is None else V
    basis = cochain_basis(A, V, n, c)
    d = coboundary_matrix(A, V, n, c)
    z_vectors = kernel_basis(d) if basis else []
    if n == 1:
        b_columns: list[list[CycScalar]] = []
    else:
        prev = coboundary_matrix(A, V, n - 1, c)
        b_columns = [prev.column(k) for k in range(prev.cols)]
    b_dim = rank(CycMatrix.from_columns(b_columns, rows=len(basis))) if b_columns else 0

    # extend a basis of B by cocycles; the added cocycles represent H
    reps = []
    current = list(b_columns)
    current_rank = b_dim
    for z in z_vectors:
        trial = current + [z]
        r = rank(CycMatrix.from_columns(trial, rows=len(basis)))
        if r > current_rank:
            current, current_rank = trial, r
            reps.append(z)
    return CohomologyReport(
        arity=n,
        degree=c,
        dim_cochains=len(basis),
        dim_cocycles=len(z_vectors),
        dim_coboundaries=b_dim,
        dim_cohomology=len(z_vectors) - b_dim,
        representatives=[Cochain.from_vector(A, V, n, c, r, basis) for r in reps],
        cocycle_basis=[Cochain.from_vector(A, V, n, c, z, basis) for z in z_vectors],
    )


@dataclass
class ComplexReport:
    passed: bool
    checked: list[tuple[int, GroupElement]] = field(default_factory=list)
    failures: list[tuple[int, GroupElement, list]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def check_complex(A: GradedAlgebra, V: Optional[Bimodule] = None, n_max: int = 3) -> ComplexReport:
    """Verify d_{n+1} d_n = 0 for 1 <= n < n_max on every occurring degree."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    V = standard_bimodule(A) if V is None else V
    checked, failures = [], []
    for n in range(1, n_max):
        for c in occurring_degrees(A, V, n):
            comp = coboundary_matrix(A, V, n + 1, c) @ coboundary_matrix(A, V, n, c)
            checked.append((n, c))
            bad = comp.nonzero_entries()
            if bad:
                failures.append((n, c, bad))
    return ComplexReport(passed=not failures, checked=checked, failures=failures)
