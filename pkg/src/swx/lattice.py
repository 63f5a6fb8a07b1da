"""Unimodular integer lattices of signature (1, n) and characteristic vectors.

Classes are plain coordinate tuples in the basis of the Gram matrix:
integral classes are ``tuple[int, ...]`` and de Rham classes are
``tuple[Fraction, ...]``.  Nothing in this package touches floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import ValidationError

CohClass = tuple[int, ...]
RatClass = tuple[Fraction, ...]


def as_rat(x: Sequence) -> RatClass:
    return tuple(Fraction(v) for v in x)


def determinant(matrix: Sequence[Sequence[int | Fraction]]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for k in range(col, n):
                    a[r][k] -= f * a[col][k]
    return det


def characteristic_polynomial(matrix: Sequence[Sequence[int | Fraction]]) -> list[Fraction]:
    """Coefficients of det(xI - A), lowest degree first (Faddeev-LeVerrier)."""
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        am = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            am[i][i] += coeffs[n - k + 1]
        m = am
        tr = sum(sum(a[i][t] * m[t][i] for t in range(n)) for i in range(n))
        coeffs[n - k] = -tr / k
    return coeffs


def _sign_changes(seq: Sequence[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in seq if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def inertia(matrix: Sequence[Sequence[int | Fraction]]) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a symmetric matrix.

    Uses Descartes' rule of signs on the characteristic polynomial, which is
    exact because a symmetric matrix has only real eigenvalues.
    """
    p = characteristic_polynomial(matrix)
    zero = next(i for i, v in enumerate(p) if v != 0)
    pos = _sign_changes(p)
    neg = _sign_changes([v if i % 2 == 0 else -v for i, v in enumerate(p)])
    return pos, neg, zero


def diagonalize(matrix: Sequence[Sequence[int | Fraction]]) -> list[Fraction]:
    """Diagonal entries of a rational congruence diagonalization P^T A P.

    Independent of :func:`inertia`; by Sylvester's law the sign pattern of
    the result gives the same counts.
    """
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    diag: list[Fraction] = []
    idx = list(range(n))
    while idx:
        p = next((i for i in idx if a[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in idx for j in idx if i < j and a[i][j] != 0), None)
            if pair is None:
                diag.extend(Fraction(0) for _ in idx)
                break
            i, j = pair
            # row/col i += row/col j makes a[i][i] = 2 a[i][j] != 0
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            p = i
        piv = a[p][p]
        diag.append(piv)
        idx.remove(p)
        for r in idx:
            f = a[r][p] / piv
            if f:
                for k in range(n):
                    a[r][k] -= f * a[p][k]
                for k in range(n):
                    a[k][r] -= f * a[k][p]
    return diag


@dataclass(frozen=True)
class IntersectionForm:
    """A symmetric unimodular integer form.

    ``signature`` is the pair (b+, b-).  Any signature is accepted here;
    the chamber and invariant layers insist on b+ = 1.
    """

    gram: tuple[tuple[int, ...], ...]
    signature: tuple[int, int] = field(init=False)

    def __post_init__(self):
        gram = tuple(tuple(int(v) for v in row) for row in self.gram)
        n = len(gram)
        if n == 0:
            raise ValidationError("intersection form must have positive rank")
        if any(len(row) != n for row in gram):
            raise ValidationError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise ValidationError(f"Gram matrix not symmetric at ({i}, {j})")
        det = determinant(gram)
        if det not in (1, -1):
            raise ValidationError(f"form is not unimodular (det = {det})")
        pos, neg, _ = inertia(gram)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "signature", (pos, neg))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def b_plus(self) -> int:
        return self.signature[0]

    @property
    def b_minus(self) -> int:
        return self.signature[1]

    @property
    def sigma(self) -> int:
        return self.signature[0] - self.signature[1]

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def __str__(self):
        return "[" + ", ".join("[" + ",".join(map(str, r)) + "]" for r in self.gram) + "]"


def direct_sum(*forms: IntersectionForm) -> IntersectionForm:
    n = sum(f.rank for f in forms)
    gram = [[0] * n for _ in range(n)]
    off = 0
    for f in forms:
        for i in range(f.rank):
            for j in range(f.rank):
                gram[off + i][off + j] = f.gram[i][j]
        off += f.rank
    return IntersectionForm(tuple(map(tuple, gram)))


_TOKEN = re.compile(r"\s*(diag:|sum:|U|\[|\]|,|-?\d+)")


class _FormParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, msg: str):
        raise ValidationError(f"bad form-spec {self.text!r} at offset {self.pos}: {msg}")

    def peek(self) -> str | None:
        m = _TOKEN.match(self.text, self.pos)
        return m.group(1) if m else None

    def take(self, expected: str | None = None) -> str:
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            self.fail("unexpected character")
        tok = m.group(1)
        if expected is not None and tok != expected:
            self.fail(f"expected {expected!r}, got {tok!r}")
        self.pos = m.end()
        return tok

    def form(self) -> IntersectionForm:
        tok = self.take()
        if tok == "U":
            return IntersectionForm(((0, 1), (1, 0)))
        if tok == "diag:":
            entries = self.list_of(lambda: int(self.take()))
            if not entries:
                self.fail("empty diagonal")
            n = len(entries)
            return IntersectionForm(
                tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))
            )
        if tok == "sum:":
            parts = self.list_of(self.form)
            if not parts:
                self.fail("empty sum")
            return direct_sum(*parts)
        self.fail(f"unexpected token {tok!r}")

    def list_of(self, item):
        self.take("[")
        out = []
        if self.peek() == "]":
            self.take()
            return out
        while True:
            out.append(item())
            tok = self.take()
            if tok == "]":
                return out
            if tok != ",":
                self.fail("expected ',' or ']'")


def make_form(spec: str | IntersectionForm) -> IntersectionForm:
    """Build a form from a spec string such as ``"sum:[U,diag:[-1]]"``.

    The grammar is ``diag:[e1,...]``, ``U`` or ``sum:[f1,...]`` and is case
    sensitive.
    """
    if isinstance(spec, IntersectionForm):
        return spec
    p = _FormParser(spec)
    form = p.form()
    if p.text[p.pos:].strip():
        p.fail("trailing input")
    return form


def _check_dim(q: IntersectionForm, *vecs: Sequence) -> None:
    for v in vecs:
        if len(v) != q.rank:
            raise ValidationError(f"class has length {len(v)}, form has rank {q.rank}")


def pair(q: IntersectionForm, x: Sequence, y: Sequence) -> Fraction:
    """x^T G y, exact."""
    _check_dim(q, x, y)
    g = q.gram
    n = q.rank
    return Fraction(sum(Fraction(x[i]) * g[i][j] * Fraction(y[j]) for i in range(n) for j in range(n) if g[i][j]))


def square(q: IntersectionForm, x: Sequence) -> Fraction:
    return pair(q, x, x)


def characteristic_defects(q: IntersectionForm, c: Sequence[int]) -> list[int]:
    """Basis indices i where c.e_i and e_i.e_i differ mod 2."""
    _check_dim(q, c)
    return [
        i
        for i in range(q.rank)
        if (sum(c[j] * q.gram[j][i] for j in range(q.rank)) - q.gram[i][i]) % 2
    ]


def is_characteristic(q: IntersectionForm, c: Sequence[int]) -> bool:
    return not characteristic_defects(q, c)


def enumerate_characteristic(q: IntersectionForm, box: int) -> list[CohClass]:
    """All characteristic classes with every |coordinate| <= box, lexicographic."""
    if box < 1:
        raise ValidationError("box must be >= 1")
    # characteristic vectors form one coset of 2L; find its parity pattern first
    parities = [p for p in product((0, 1), repeat=q.rank) if is_characteristic(q, p)]
    if len(parities) != 1:
        raise ValidationError("characteristic coset not unique; form is not unimodular mod 2")
    parity = parities[0]
    axes = [[v for v in range(-box, box + 1) if v % 2 == parity[i]] for i in range(q.rank)]
    return [tuple(c) for c in product(*axes)]


def van_der_blij_check(q: IntersectionForm, c: Sequence[int]) -> bool:
    """c.c == signature (mod 8); always true for characteristic c."""
    return (square(q, c) - q.sigma) % 8 == 0
