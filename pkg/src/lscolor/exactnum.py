"""Exact arithmetic in cyclotomic fields Q(zeta_m) and dense linear algebra over them.

Elements of Q(zeta_m) are stored as coefficient vectors in the power basis
1, z, ..., z^(phi(m)-1), reduced modulo the m-th cyclotomic polynomial.
Operands with different conductors are embedded into the lcm conductor
before any arithmetic, so ``CycScalar(-1)`` and ``CycScalar.zeta(4)`` mix freely.

Text syntax (used by every file format)::

    "3/2"    "z4"    "-1/3*z12^2 + 1"    "2 - z3"

"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

__all__ = [
    "CycScalar",
    "CycMatrix",
    "ExactArithmeticError",
    "cyclotomic_polynomial",
    "euler_phi",
    "as_scalar",
    "kernel_basis",
    "rank",
    "solve_linear",
    "rref",
]

Number = Union[int, Fraction, "CycScalar"]


class ExactArithmeticError(ArithmeticError):
    """Raised on division by zero or malformed scalar text."""


# ---------------------------------------------------------------------------
# integer polynomials (low-to-high coefficient tuples)
# ---------------------------------------------------------------------------

def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError(f"conductor must be positive, got {m}")
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic; exact division expected
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            quot[k - dn] = c
            for t, d in enumerate(den):
                num[k - dn + t] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced coordinates of z^k for k in [0, 2*phi(m)) and k < m."""
    phi = euler_phi(m)
    cyc = cyclotomic_polynomial(m)
    rows = []
    cur = [Fraction(0)] * phi
    cur[0] = Fraction(1)
    for _ in range(max(m, 2 * phi)):
        rows.append(tuple(cur))
        # multiply by z
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            for t in range(phi):
                cur[t] -= top * cyc[t]
    return tuple(rows)


def _reduce(m: int, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Reduce an arbitrary-length polynomial in z modulo Phi_m."""
    phi = euler_phi(m)
    if len(coeffs) <= phi:
        return tuple(coeffs) + (Fraction(0),) * (phi - len(coeffs))
    # z^m = 1, so fold exponents modulo m first
    folded = [Fraction(0)] * min(len(coeffs), m)
    for k, c in enumerate(coeffs):
        if c:
            folded[k % m] += c
    table = _power_table(m)
    out = [Fraction(0)] * phi
    for k, c in enumerate(folded):
        if c:
            row = table[k]
            for t in range(phi):
                if row[t]:
                    out[t] += c * row[t]
    return tuple(out)


# ---------------------------------------------------------------------------
# CycScalar
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(
    r"""^\s*(?P<coef>[0-9]+(?:/[0-9]+)?)?\s*(?P<star>\*)?\s*
        (?:z(?P<cond>[0-9]+)(?:\^(?P<exp>-?[0-9]+))?)?\s*$""",
    re.VERBOSE,
)


class CycScalar:
    """An element of the cyclotomic field Q(zeta_m).

    Instances are immutable. Construct from ints, Fractions, text, or via
    :meth:`zeta`. Equality is field equality after embedding both operands in
    the lcm conductor.
    """

    __slots__ = ("conductor", "coeffs")

    conductor: int
    coeffs: tuple[Fraction, ...]

    def __init__(self, value: Union[int, Fraction, str, "CycScalar"] = 0):
        if isinstance(value, CycScalar):
            m, coeffs = value.conductor, value.coeffs
        elif isinstance(value, str):
            parsed = CycScalar.parse(value)
            m, coeffs = parsed.conductor, parsed.coeffs
        elif isinstance(value, (int, Fraction)):
            m, coeffs = 1, (Fraction(value),)
        else:
            raise TypeError(f"cannot convert {type(value).__name__} to CycScalar")
        object.__setattr__(self, "conductor", m)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycScalar is immutable")

    @classmethod
    def _make(cls, m: int, coeffs: Sequence[Fraction]) -> "CycScalar":
        obj = object.__new__(cls)
        if m > 1 and not any(coeffs[1:]):
            m, coeffs = 1, (coeffs[0],)
        elif m == 2:
            # Q(zeta_2) = Q
            m, coeffs = 1, (coeffs[0],)
        object.__setattr__(obj, "conductor", m)
        object.__setattr__(obj, "coeffs", tuple(coeffs))
        return obj

    @classmethod
    def from_coeffs(cls, m: int, coeffs: Iterable[Union[int, Fraction]]) -> "CycScalar":
        """Element sum_k coeffs[k] * zeta_m^k, reduced modulo Phi_m."""
        return cls._make(m, _reduce(m, [Fraction(c) for c in coeffs]))

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CycScalar":
        """zeta_m^k for any integer k (negative allowed)."""
        if m < 1:
            raise ValueError(f"conductor must be positive, got {m}")
        k %= m
        coeffs = [Fraction(0)] * (k + 1)
        coeffs[k] = Fraction(1)
        return cls.from_coeffs(m, coeffs)

    # -- conductor handling -------------------------------------------------

    def embed(self, target: int) -> tuple[Fraction, ...]:
        """Coordinates of self inside Q(zeta_target); target must be a multiple of the conductor."""
        m = self.conductor
        if target == m:
            return self.coeffs
        if target % m:
            raise ValueError(f"cannot embed conductor {m} into {target}")
        step = target // m
        spread = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for k, c in enumerate(self.coeffs):
            spread[k * step] = c
        return _reduce(target, spread)

    @staticmethod
    def _common(a: "CycScalar", b: "CycScalar"):
        if a.conductor == b.conductor:
            return a.conductor, a.coeffs, b.coeffs
        m = a.conductor * b.conductor // math.gcd(a.conductor, b.conductor)
        return m, a.embed(m), b.embed(m)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return self.conductor == 1

    def to_fraction(self) -> Fraction:
        if self.conductor != 1:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def support(self) -> int:
        """Number of nonzero power-basis coefficients."""
        return sum(1 for c in self.coeffs if c)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: Number) -> "CycScalar":
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if self.conductor == 1 and other.conductor == 1:
            return CycScalar._make(1, (self.coeffs[0] + other.coeffs[0],))
        m, a, b = CycScalar._common(self, other)
        return CycScalar._make(m, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "CycScalar":
        return CycScalar._make(self.conductor, tuple(-c for c in self.coeffs))

    def __pos__(self) -> "CycScalar":
        return self

    def __sub__(self, other: Number) -> "CycScalar":
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> "CycScalar":
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Number) -> "CycScalar":
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if self.conductor == 1 and other.conductor == 1:
            return CycScalar._make(1, (self.coeffs[0] * other.coeffs[0],))
        if other.conductor == 1:
            c = other.coeffs[0]
            return CycScalar._make(self.conductor, tuple(x * c for x in self.coeffs))
        if self.conductor == 1:
            c = self.coeffs[0]
            return CycScalar._make(other.conductor, tuple(c * x for x in other.coeffs))
        m, a, b = CycScalar._common(self, other)
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycScalar._make(m, _reduce(m, prod))

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        if self.is_zero():
            raise ExactArithmeticError(f"division by zero: inverse of {self}")
        m = self.conductor
        if m == 1:
            return CycScalar._make(1, (1 / self.coeffs[0],))
        inv = _poly_inverse_mod(list(self.coeffs), [Fraction(c) for c in cyclotomic_polynomial(m)])
        return CycScalar._make(m, _reduce(m, inv))

    def __truediv__(self, other: Number) -> "CycScalar":
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ExactArithmeticError(f"division by zero: {self} / 0")
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> "CycScalar":
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int) -> "CycScalar":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            if self.is_zero():
                raise ExactArithmeticError(f"division by zero: {self} ** {exponent}")
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "CycScalar":
        """Complex conjugate, i.e. the Galois automorphism zeta -> zeta^-1."""
        m = self.conductor
        if m == 1:
            return self
        out = [Fraction(0)] * m
        for k, c in enumerate(self.coeffs):
            out[(-k) % m] += c
        return CycScalar._make(m, _reduce(m, out))

    def __complex__(self) -> complex:
        m = self.conductor
        z = complex(math.cos(2 * math.pi / m), math.sin(2 * math.pi / m))
        return sum((complex(float(c)) * z**k for k, c in enumerate(self.coeffs)), 0j)

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other) -> bool:
        other = as_scalar(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if self.conductor == other.conductor:
            return self.coeffs == other.coeffs
        _, a, b = CycScalar._common(self, other)
        return a == b

    def __hash__(self) -> int:
        # rationals are always stored at conductor 1 (see _make); the rest
        # share one bucket because a canonical minimal conductor is not tracked
        if self.conductor == 1:
            return hash(self.coeffs[0])
        return hash("CycScalar:irrational")

    # -- text ---------------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "CycScalar":
        src = text
        s = text.replace(" ", "")
        if not s:
            raise ExactArithmeticError("empty scalar text")
        # split into signed terms; a leading sign is optional
        terms = re.findall(r"[+-]?[^+-]+", s)
        if "".join(terms) != s:
            raise ExactArithmeticError(f"malformed scalar text {src!r}")
        total = ZERO
        for term in terms:
            sign = 1
            if term[0] in "+-":
                sign = -1 if term[0] == "-" else 1
                term = term[1:]
            match = _TERM_RE.match(term)
            if not term or match is None or (match["coef"] is None and match["cond"] is None):
                raise ExactArithmeticError(f"malformed term {term!r} in scalar text {src!r}")
            if match["star"] and (match["coef"] is None or match["cond"] is None):
                raise ExactArithmeticError(f"malformed term {term!r} in scalar text {src!r}")
            if match["coef"] is not None and match["cond"] is not None and not match["star"]:
                raise ExactArithmeticError(f"missing '*' in term {term!r} of {src!r}")
            try:
                coef = Fraction(match["coef"]) if match["coef"] is not None else Fraction(1)
            except ZeroDivisionError:
                raise ExactArithmeticError(f"division by zero in scalar text {src!r}") from None
            value = CycScalar(sign * coef)
            if match["cond"] is not None:
                m = int(match["cond"])
                if m < 1:
                    raise ExactArithmeticError(f"conductor must be positive in {src!r}")
                e = int(match["exp"]) if match["exp"] is not None else 1
                value = value * CycScalar.zeta(m, e)
            total = total + value
        return total

    def __str__(self) -> str:
        m = self.conductor
        parts: list[tuple[int, str]] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = -1 if c < 0 else 1
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = f"z{m}" if k == 1 else f"z{m}^{k}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] < 0 else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += (" - " if sign < 0 else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"CycScalar({str(self)!r})"


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for t, bt in enumerate(b):
                a[k + t] -= c * bt
    return q, _poly_trim(a[: len(b) - 1] or [Fraction(0)])


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a: list[Fraction], mod: list[Fraction]) -> list[Fraction]:
    # extended Euclid: find s with s*a = 1 (mod `mod`); mod is irreducible
    r0, r1 = _poly_trim(list(mod)), _poly_trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1 or r1[0]:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if len(r0) != 1 or not r0[0]:
        raise ExactArithmeticError("element is not invertible")
    return [c / r0[0] for c in s0]


ZERO = CycScalar._make(1, (Fraction(0),))
ONE = CycScalar._make(1, (Fraction(1),))


def as_scalar(value, strict: bool = True):
    """Coerce ints, Fractions and text to :class:`CycScalar`."""
    if isinstance(value, CycScalar):
        return value
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, int):
        return CycScalar._make(1, (Fraction(value),))
    if isinstance(value, Fraction):
        return CycScalar._make(1, (value,))
    if isinstance(value, str):
        return CycScalar.parse(value)
    if strict:
        raise TypeError(f"cannot convert {type(value).__name__} to CycScalar")
    return NotImplemented


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class CycMatrix:
    """Dense row-major matrix of CycScalar entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[Number]], cols: Optional[int] = None):
        rows = [tuple(as_scalar(x) for x in row) for row in entries]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"row {r} has {len(row)} entries, expected {cols}")
        self.rows = len(rows)
        self.cols = cols
        self.entries = tuple(rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "CycMatrix":
        return cls([[ZERO] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "CycMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Number]], rows: int) -> "CycMatrix":
        for c, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError(f"column {c} has {len(col)} entries, expected {rows}")
        return cls([[columns[c][r] for c in range(len(columns))] for r in range(rows)], cols=len(columns))

    def __getitem__(self, idx):
        r, c = idx
        return self.entries[r][c]

    def column(self, c: int) -> list[CycScalar]:
        return [row[c] for row in self.entries]

    def transpose(self) -> "CycMatrix":
        return CycMatrix([[self.entries[r][c] for r in range(self.rows)] for c in range(self.cols)], cols=self.rows)

    def __matmul__(self, other):
        if isinstance(other, CycMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
            out = []
            for row in self.entries:
                nz = [(k, a) for k, a in enumerate(row) if a]
                out.append([_dot(nz, other, c) for c in range(other.cols)])
            return CycMatrix(out, cols=other.cols)
        vec = [as_scalar(x) for x in other]
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} does not match {self.cols} columns")
        return [sum((a * b for a, b in zip(row, vec) if a and b), ZERO) for row in self.entries]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def nonzero_entries(self) -> list[tuple[int, int, CycScalar]]:
        return [(r, c, x) for r, row in enumerate(self.entries) for c, x in enumerate(row) if x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self.entries)
        return f"CycMatrix({self.rows}x{self.cols}: [{body}])"


def _dot(nz_row, other: CycMatrix, c: int) -> CycScalar:
    acc = ZERO
    for k, a in nz_row:
        b = other.entries[k][c]
        if b:
            acc = acc + a * b
    return acc


def rref(matrix: CycMatrix, rhs: Optional[Sequence[Number]] = None):
    """Reduced row echelon form.

    Returns ``(rows, pivots, rhs)`` where ``rows`` is the list of nonzero
    reduced rows, ``pivots`` the pivot column of each, and ``rhs`` the
    transformed right-hand side (all of it, including entries below the rank),
    or None.
    """
    m = [list(row) for row in matrix.entries]
    b = [as_scalar(x) for x in rhs] if rhs is not None else None
    if b is not None and len(b) != matrix.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {matrix.rows}")
    pivots: list[int] = []
    r = 0
    for c in range(matrix.cols):
        if r == matrix.rows:
            break
        piv = next((i for i in range(r, matrix.rows) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            if b is not None:
                b[r], b[piv] = b[piv], b[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv if x else x for x in m[r]]
        if b is not None:
            b[r] = b[r] * inv
        for i in range(matrix.rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
                if b is not None:
                    b[i] = b[i] - f * b[r]
        pivots.append(c)
        r += 1
    return m[:r], pivots, b


def rank(matrix: CycMatrix) -> int:
    return len(rref(matrix)[1])


def kernel_basis(matrix: CycMatrix) -> list[list[CycScalar]]:
    """Exact basis of the right null space, one vector per free column."""
    rows, pivots, _ = rref(matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        v = [ZERO] * matrix.cols
        v[free] = ONE
        for row, p in zip(rows, pivots):
            if row[free]:
                v[p] = -row[free]
        basis.append(v)
    return basis


def solve_linear(matrix: CycMatrix, rhs: Sequence[Number]):
    """Solve ``matrix @ x = rhs``.

    Returns None when rhs is outside the column space, otherwise
    ``(particular, kernel)`` with free variables of the particular solution set to 0.
    """
    if len(rhs) != matrix.rows:
        raise ValueError(f"right-hand side has length {len(rhs)}, expected {matrix.rows} rows")
    rows, pivots, b = rref(matrix, rhs)
    if any(b[len(pivots):]):
        return None
    x = [ZERO] * matrix.cols
    for i, p in enumerate(pivots):
        x[p] = b[i]
    return x, kernel_basis(matrix)
