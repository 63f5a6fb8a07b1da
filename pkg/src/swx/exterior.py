"""Exact exterior algebra over a free Z-module of rank n.

A :class:`Multivector` is a sparse map from strictly increasing index tuples
(1-based) to Fractions.  The empty tuple is the scalar part.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError

Blade = tuple[int, ...]


@lru_cache(maxsize=1 << 16)
def _blade_product(a: Blade, b: Blade) -> tuple[int, Blade]:
    """Sign and merged index tuple of e_a ^ e_b (sign 0 if they overlap)."""
    if set(a) & set(b):
        return 0, ()
    inversions = sum(1 for x in a for y in b if x > y)
    return (-1) ** inversions, tuple(sorted(a + b))


class Multivector:
    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Mapping[Iterable[int], object] | None = None):
        if rank < 0:
            raise ValidationError("rank must be non-negative")
        self.rank = rank
        clean: dict[Blade, Fraction] = {}
        for key, coef in (terms or {}).items():
            key = tuple(key)
            if list(key) != sorted(set(key)):
                raise ValidationError(f"blade {key} is not strictly increasing")
            if key and not (1 <= key[0] and key[-1] <= rank):
                raise ValidationError(f"blade {key} out of range for rank {rank}")
            coef = Fraction(coef)
            if coef:
                clean[key] = coef
        self.terms = clean

    @classmethod
    def _trusted(cls, rank: int, terms: dict[Blade, Fraction]) -> "Multivector":
        # keys already canonical; only drop zeros
        m = cls.__new__(cls)
        m.rank = rank
        m.terms = {k: v for k, v in terms.items() if v}
        return m

    @classmethod
    def scalar(cls, rank: int, value=1) -> "Multivector":
        return cls(rank, {(): value})

    @classmethod
    def basis(cls, rank: int, *indices: int) -> "Multivector":
        """The blade e_{i1} ^ ... ^ e_{ik}, indices in any order."""
        m = cls.scalar(rank)
        for i in indices:
            m = m ^ cls(rank, {(i,): 1})
        return m

    @classmethod
    def zero(cls, rank: int) -> "Multivector":
        return cls(rank)

    def _check(self, other: "Multivector"):
        if not isinstance(other, Multivector):
            return NotImplemented
        if other.rank != self.rank:
            raise ValidationError(f"rank mismatch: {self.rank} vs {other.rank}")
        return None

    def __add__(self, other):
        if (r := self._check(other)) is not None:
            return r
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Multivector._trusted(self.rank, out)

    def __neg__(self):
        return Multivector._trusted(self.rank, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, Multivector):
            return NotImplemented
        s = Fraction(scalar)
        return Multivector._trusted(self.rank, {k: s * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = Fraction(scalar)
        return Multivector._trusted(self.rank, {k: v / s for k, v in self.terms.items()})

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Multivector({self.rank}, {self.terms!r})"

    def __str__(self):
        return render(self)

    def grades(self) -> set[int]:
        return {len(k) for k in self.terms}

    def grade(self, r: int) -> "Multivector":
        return Multivector(self.rank, {k: v for k, v in self.terms.items() if len(k) == r})

    def is_homogeneous(self, r: int) -> bool:
        return self.grades() <= {r}

    def coefficient(self, *indices: int) -> Fraction:
        return self.terms.get(tuple(indices), Fraction(0))

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.terms.values())


def render(m: Multivector, symbol: str = "e", dual: bool = False) -> str:
    if not m.terms:
        return "0"
    star = "*" if dual else ""
    parts = []
    for key in sorted(m.terms, key=lambda k: (len(k), k)):
        coef = m.terms[key]
        blade = "^".join(f"{symbol}{i}{star}" for i in key)
        if not blade:
            parts.append(str(coef))
        elif coef == 1:
            parts.append(blade)
        elif coef == -1:
            parts.append("-" + blade)
        else:
            parts.append(f"{coef}*{blade}")
    return " + ".join(parts).replace("+ -", "- ")


def wedge(a: Multivector, b: Multivector) -> Multivector:
    if a.rank != b.rank:
        raise ValidationError(f"rank mismatch: {a.rank} vs {b.rank}")
    out: dict[Blade, Fraction] = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            sign, key = _blade_product(ka, kb)
            if sign:
                out[key] = out.get(key, 0) + (va * vb if sign > 0 else -va * vb)
    return Multivector._trusted(a.rank, out)


def divided_power(u: Multivector, k: int) -> Multivector:
    """u^k / k! for a homogeneous 2-form u."""
    if not u.is_homogeneous(2):
        raise ValidationError("divided_power needs a homogeneous grade-2 element")
    if k < 0:
        raise ValidationError("k must be non-negative")
    acc = Multivector.scalar(u.rank)
    for _ in range(k):
        acc = wedge(acc, u)
    return acc / factorial(k)


def top_pairing(m: Multivector, orientation: int = 1) -> Fraction:
    """Pair ``m`` with the top generator fixed by ``orientation`` (+1 or -1)."""
    if orientation not in (1, -1):
        raise ValidationError("orientation must be +1 or -1")
    return orientation * m.coefficient(*range(1, m.rank + 1))


def two_form(matrix: Sequence[Sequence]) -> Multivector:
    """The 2-form sum_{i<j} A_ij e_i^e_j of an antisymmetric matrix."""
    n = len(matrix)
    return Multivector(n, {(i + 1, j + 1): matrix[i][j] for i in range(n) for j in range(i + 1, n)})


def coefficient_matrix(u: Multivector) -> list[list[Fraction]]:
    """Antisymmetric matrix A with u = sum_{i<j} A_ij e_i^e_j."""
    if not u.is_homogeneous(2):
        raise ValidationError("coefficient_matrix needs a grade-2 element")
    n = u.rank
    a = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), v in u.terms.items():
        a[i - 1][j - 1] = v
        a[j - 1][i - 1] = -v
    return a


def pfaffian(matrix: Sequence[Sequence]) -> Fraction:
    """Pfaffian by recursive expansion along the first row."""
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValidationError("matrix must be square")
    if n % 2:
        raise ValidationError(f"Pfaffian needs even dimension, got {n}")
    for i in range(n):
        for j in range(i, n):
            if a[i][j] != -a[j][i]:
                raise ValidationError(f"matrix not antisymmetric at ({i}, {j})")
    return _pf(a, tuple(range(n)))


def _pf(a: list[list[Fraction]], idx: tuple[int, ...]) -> Fraction:
    if not idx:
        return Fraction(1)
    first, rest = idx[0], idx[1:]
    total = Fraction(0)
    for pos, j in enumerate(rest):
        if a[first][j]:
            sub = rest[:pos] + rest[pos + 1:]
            total += (-1) ** pos * a[first][j] * _pf(a, sub)
    return total
