"""Manifold model: b1, intersection lattice, cup tensor and the 2-form u_c."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Mapping, Sequence

from .errors import CupValidationError, IntegralityError, ManifestError, UnsupportedSignature, ValidationError
from .exterior import Multivector
from .lattice import CohClass, IntersectionForm, make_form, pair

MANIFEST_KEYS = {"name", "b1", "form", "cup", "h_ref"}


def cup_rows(b1: int) -> list[tuple[int, int]]:
    """Row order of the cup tensor: (i, j), i < j, 1-based, lexicographic."""
    return list(combinations(range(1, b1 + 1), 2))


@dataclass(frozen=True)
class TopoInvariants:
    euler: int
    sigma: int


@dataclass(frozen=True)
class ManifoldModel:
    name: str
    b1: int
    form: IntersectionForm
    cup: tuple[tuple[int, ...], ...]
    h_ref: CohClass

    def __post_init__(self):
        if self.b1 < 0:
            raise ValidationError("b1 must be non-negative")
        if self.form.b_plus != 1:
            raise UnsupportedSignature(
                f"{self.name}: form has signature {self.form.signature}, only b+ = 1 is supported"
            )
        rows = cup_rows(self.b1)
        if len(self.cup) != len(rows):
            raise ValidationError(f"cup tensor needs {len(rows)} rows for b1={self.b1}, got {len(self.cup)}")
        for (i, j), row in zip(rows, self.cup):
            if len(row) != self.form.rank:
                raise ValidationError(f"cup row for e{i}^e{j} has length {len(row)}, expected {self.form.rank}")
        if len(self.h_ref) != self.form.rank:
            raise ValidationError("h_ref has the wrong length")
        if pair(self.form, self.h_ref, self.h_ref) <= 0:
            raise ValidationError("h_ref must have positive square")
        check_cup(self.form, self.b1, self.cup)

    @property
    def b2(self) -> int:
        return self.form.rank

    def mu(self, i: int, j: int) -> tuple[int, ...]:
        """Cup product of the basis classes e_i, e_j of H^1 (1-based)."""
        return _mu(self.cup, self.b1, self.b2, i, j)


def _mu(cup, b1: int, b2: int, i: int, j: int) -> tuple[int, ...]:
    if i == j:
        return (0,) * b2
    if i > j:
        return tuple(-v for v in _mu(cup, b1, b2, j, i))
    # index of (i, j) in lexicographic order of pairs
    row = (i - 1) * b1 - (i - 1) * i // 2 + (j - i - 1)
    return tuple(cup[row])


def _perm_sign(seq: Sequence[int]) -> int:
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inv % 2 else 1


def check_cup(form: IntersectionForm, b1: int, cup) -> None:
    """The 4-tensor Q(mu(e_i^e_j), mu(e_k^e_l)) must be alternating."""
    b2 = form.rank
    # with b1 < 4 there are no distinct quadruples and every entry must vanish
    quads = product(range(1, b1 + 1), repeat=4)
    cache: dict[tuple[int, ...], Fraction] = {}

    def t(q):
        if q not in cache:
            i, j, k, l = q
            cache[q] = pair(form, _mu(cup, b1, b2, i, j), _mu(cup, b1, b2, k, l))
        return cache[q]

    for q in quads:
        val = t(q)
        if len(set(q)) < 4:
            expected = Fraction(0)
        else:
            expected = _perm_sign(q) * t(tuple(sorted(q)))
        if val != expected:
            raise CupValidationError(
                "cup tensor is not alternating at index quadruple "
                f"(i,j,k,l)={q}: Q(mu(e{q[0]}^e{q[1]}), mu(e{q[2]}^e{q[3]})) = {val}, expected {expected}"
            )


def build_model(manifest: Mapping[str, Any]) -> ManifoldModel:
    """Validate a manifest document and build the model eagerly."""
    if not isinstance(manifest, Mapping):
        raise ManifestError("manifest must be a JSON object")
    unknown = sorted(set(manifest) - MANIFEST_KEYS)
    if unknown:
        raise ManifestError(f"unknown manifest key {unknown[0]!r}")
    for key in ("name", "b1", "form", "h_ref"):
        if key not in manifest:
            raise ManifestError(f"manifest is missing {key!r}")
    name = manifest["name"]
    b1 = manifest["b1"]
    if not isinstance(name, str):
        raise ManifestError("'name' must be a string")
    if not isinstance(b1, int) or isinstance(b1, bool) or b1 < 0:
        raise ManifestError("'b1' must be a non-negative integer")
    if not isinstance(manifest["form"], str):
        raise ManifestError("'form' must be a form-spec string")
    form = make_form(manifest["form"])
    cup = manifest.get("cup")
    if cup is None:
        if b1 >= 2:
            raise ManifestError("'cup' is required when b1 >= 2")
        cup = []
    elif b1 < 2 and cup:
        raise ManifestError("'cup' must be empty or omitted when b1 < 2")
    cup_t = tuple(_int_vector(row, "cup row") for row in cup)
    h_ref = _int_vector(manifest["h_ref"], "'h_ref'")
    return ManifoldModel(name=name, b1=b1, form=form, cup=cup_t, h_ref=h_ref)


def _int_vector(v, what: str) -> tuple[int, ...]:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise ManifestError(f"{what} must be an array of integers")
    return tuple(v)


def invariants(x: ManifoldModel) -> TopoInvariants:
    # b0 = b4 = 1, b3 = b1
    return TopoInvariants(euler=2 - 2 * x.b1 + x.b2, sigma=x.form.sigma)


def u_c(x: ManifoldModel, c: Sequence[int]) -> Multivector:
    """The 2-form (a, b) -> <c a b, [X]> / 2 on H^1, as a multivector on H_1."""
    terms = {}
    for i, j in cup_rows(x.b1):
        p = pair(x.form, c, x.mu(i, j))
        if p.denominator != 1 or p.numerator % 2:
            raise IntegralityError(
                f"Q(c, mu(e{i}^e{j})) = {p} is odd; c={tuple(c)} is inconsistent with the cup structure"
            )
        terms[(i, j)] = p / 2
    return Multivector(x.b1, terms)
