"""Abelian grading groups and skew-symmetric bicharacters."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactnum import ONE, CycScalar, as_scalar

__all__ = [
    "AbelianGroup",
    "GroupElement",
    "Bicharacter",
    "BicharacterReport",
    "validate_bicharacter",
    "eps_eval",
]


@dataclass(frozen=True)
class AbelianGroup:
    """Product of cyclic factors; order 0 stands for a free factor Z."""

    orders: tuple[int, ...]

    def __init__(self, orders: Sequence[int]):
        orders = tuple(int(n) for n in orders)
        for n in orders:
            if n < 0 or n == 1:
                raise ValueError(f"cyclic factor orders must be 0 (free) or >= 2, got {n}")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    def __call__(self, *exponents: int) -> "GroupElement":
        if len(exponents) == 1 and not isinstance(exponents[0], int):
            exponents = tuple(exponents[0])
        return GroupElement(self, exponents)

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def is_finite(self) -> bool:
        return all(self.orders)

    def elements(self) -> list["GroupElement"]:
        """All elements of a finite group, in lexicographic exponent order."""
        if not self.is_finite():
            raise ValueError("group has a free factor")
        out = [()]
        for n in self.orders:
            out = [e + (k,) for e in out for k in range(n)]
        return [GroupElement(self, e) for e in out]

    def __str__(self) -> str:
        if not self.orders:
            return "0"
        return " x ".join("Z" if n == 0 else f"Z{n}" for n in self.orders)


class GroupElement:
    """Element of an :class:`AbelianGroup` with canonically reduced exponents."""

    __slots__ = ("group", "exponents", "_hash")

    def __init__(self, group: AbelianGroup, exponents: Sequence[int]):
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != group.rank:
            raise ValueError(f"element {exponents} does not match group {group} of rank {group.rank}")
        exponents = tuple(e % n if n else e for e, n in zip(exponents, group.orders))
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "exponents", exponents)
        object.__setattr__(self, "_hash", hash(exponents))

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    def _check(self, other: "GroupElement") -> None:
        if other.group.orders != self.group.orders:
            raise ValueError(f"elements of different groups: {self.group} vs {other.group}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.group, [a + b for a, b in zip(self.exponents, other.exponents)])

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.group, [a - b for a, b in zip(self.exponents, other.exponents)])

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, [-a for a in self.exponents])

    def __mul__(self, k: int) -> "GroupElement":
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement(self.group, [k * a for a in self.exponents])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.exponents)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.exponents == other.exponents and self.group.orders == other.group.orders

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "GroupElement") -> bool:
        return self.exponents < other.exponents

    def __repr__(self) -> str:
        return f"GroupElement{self.exponents}"

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.exponents)


@dataclass
class BicharacterReport:
    valid: bool
    violations: list[tuple[str, int, int, CycScalar]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


class Bicharacter:
    """Bicharacter given by its values on pairs of generators.

    ``table[i][j]`` is eps(g_i, g_j); values at arbitrary elements follow from
    multiplicativity in each slot.
    """

    def __init__(self, group: AbelianGroup, table: Sequence[Sequence]):
        rows = tuple(tuple(as_scalar(x) for x in row) for row in table)
        if len(rows) != group.rank or any(len(row) != group.rank for row in rows):
            raise ValueError(f"bicharacter table must be {group.rank}x{group.rank}")
        self.group = group
        self.table = rows
        self._cache: dict = {}

    @classmethod
    def trivial(cls, group: AbelianGroup) -> "Bicharacter":
        return cls(group, [[1] * group.rank for _ in range(group.rank)])

    @classmethod
    def super_sign(cls) -> "Bicharacter":
        """The Z2 parity sign rule of superalgebras."""
        return cls(AbelianGroup([2]), [[-1]])

    def __call__(self, a: GroupElement, c: GroupElement) -> CycScalar:
        key = (a.exponents, c.exponents)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if len(a.exponents) != self.group.rank or len(c.exponents) != self.group.rank:
            raise ValueError(f"element rank does not match group {self.group}")
        value = ONE
        for i, ai in enumerate(a.exponents):
            if not ai:
                continue
            for j, cj in enumerate(c.exponents):
                if cj:
                    value = value * self.table[i][j] ** (ai * cj)
        self._cache[key] = value
        return value

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bicharacter):
            return NotImplemented
        return self.group == other.group and self.table == other.table

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.table)
        return f"Bicharacter({self.group}, [{body}])"


def eps_eval(b: Bicharacter, a: GroupElement, c: GroupElement) -> CycScalar:
    return b(a, c)


def validate_bicharacter(b: Bicharacter) -> BicharacterReport:
    """Check nonvanishing, skew-symmetry and order compatibility on generators."""
    violations = []
    orders = b.group.orders
    n = b.group.rank
    for i in range(n):
        for j in range(n):
            v = b.table[i][j]
            if v.is_zero():
                violations.append(("nonzero", i, j, v))
                continue
            prod = v * b.table[j][i]
            if prod != ONE:
                violations.append(("skew-symmetry", i, j, prod))
            if orders[i] and v ** orders[i] != ONE:
                violations.append(("order", i, j, v ** orders[i]))
            elif orders[j] and v ** orders[j] != ONE:
                violations.append(("order", i, j, v ** orders[j]))
    return BicharacterReport(valid=not violations, violations=violations)
