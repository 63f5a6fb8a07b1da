"""Index, wall-crossing difference and chamber values of the invariant."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Literal, Mapping, Sequence

from .errors import InternalConsistencyError, NotApplicable, NotCharacteristic, ValidationError
from .exterior import Multivector, divided_power, top_pairing, wedge
from .lattice import characteristic_defects, square
from .topology import ManifoldModel, invariants, u_c

Side = Literal["+", "-"]


def require_characteristic(x: ManifoldModel, c: Sequence[int]) -> None:
    bad = characteristic_defects(x.form, c)
    if bad:
        i = bad[0]
        raise NotCharacteristic(
            f"c={tuple(c)} is not characteristic: c.e{i + 1} and e{i + 1}.e{i + 1} differ mod 2"
        )


def index(x: ManifoldModel, c: Sequence[int]) -> int:
    """Expected dimension (c^2 - 2e - 3 sigma) / 4."""
    require_characteristic(x, c)
    inv = invariants(x)
    num = square(x.form, c) - 2 * inv.euler - 3 * inv.sigma
    if num.denominator != 1 or num.numerator % 4:
        raise InternalConsistencyError(f"index numerator {num} is not divisible by 4 for c={tuple(c)}")
    return num.numerator // 4


@dataclass(frozen=True)
class SWForm:
    """Finitely supported map r -> grade-r element of Lambda^r H^1.

    Components are stored on the dual basis, so ``evaluate`` on a grade-r
    element of Lambda^r H_1 is coefficient-wise pairing.
    """

    b1: int
    w_c: int
    values: Mapping[int, Multivector] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for r, m in self.values.items():
            if m.rank != self.b1:
                raise ValidationError(f"degree-{r} component has rank {m.rank}, expected {self.b1}")
            if not m.is_homogeneous(r):
                raise ValidationError(f"degree-{r} component is not homogeneous of grade {r}")
            if m:
                clean[r] = m
        object.__setattr__(self, "values", dict(sorted(clean.items())))

    @classmethod
    def zero(cls, b1: int, w_c: int) -> "SWForm":
        return cls(b1, w_c, {})

    def component(self, r: int) -> Multivector:
        return self.values.get(r, Multivector.zero(self.b1))

    def degrees(self) -> list[int]:
        return list(self.values)

    def evaluate(self, lam: Multivector) -> Fraction:
        """Natural pairing with lam in Lambda^* H_1; linear in lam."""
        if lam.rank != self.b1:
            raise ValidationError("lambda has the wrong rank")
        total = Fraction(0)
        for key, coef in lam.terms.items():
            r = len(key)
            if (r - self.w_c) % 2:
                continue
            total += coef * self.component(r).coefficient(*key)
        return total

    def scalar(self) -> Fraction:
        """Degree-0 value, i.e. the number when b1 = 0."""
        return self.component(0).coefficient()

    def __neg__(self):
        return SWForm(self.b1, self.w_c, {r: -m for r, m in self.values.items()})

    def __add__(self, other: "SWForm"):
        if (self.b1, self.w_c) != (other.b1, other.w_c):
            raise ValidationError("cannot add forms of different b1 or index")
        out = dict(self.values)
        for r, m in other.values.items():
            out[r] = out[r] + m if r in out else m
        return SWForm(self.b1, self.w_c, out)

    def __sub__(self, other: "SWForm"):
        return self + (-other)

    def __bool__(self):
        return bool(self.values)


def window(b1: int, w_c: int) -> list[int]:
    """Degrees r >= 0 with r <= min(b1, w_c) and r = w_c (mod 2)."""
    return [r for r in range(0, min(b1, w_c) + 1) if (r - w_c) % 2 == 0]


def wall_delta(x: ManifoldModel, c: Sequence[int], o1: int = 1) -> SWForm:
    """SW(+) - SW(-) as a dual multivector in each degree of the window.

    Degree r carries lam -> (-1)^k / k! <lam ^ u_c^k, l_o1> with
    k = floor((b1 - r) / 2); when b1 - r is odd the wedge misses the top
    grade and the component vanishes on its own.
    """
    w = index(x, c)
    b1 = x.b1
    u = u_c(x, c)
    values = {}
    for r in window(b1, w):
        k = (b1 - r) // 2
        up = divided_power(u, k)
        sign = (-1) ** k
        terms = {}
        for blade in combinations(range(1, b1 + 1), r):
            v = sign * top_pairing(wedge(Multivector.basis(b1, *blade), up), o1)
            if v:
                terms[blade] = v
        values[r] = Multivector(b1, terms)
    return SWForm(b1, w, values)


PROVENANCE = ("vanishing", "wall-crossed", "user-supplied")


@dataclass(frozen=True)
class ChamberValues:
    plus: SWForm
    minus: SWForm
    provenance: tuple[str, str] = ("user-supplied", "user-supplied")

    def __post_init__(self):
        if self.plus.w_c != self.minus.w_c or self.plus.b1 != self.minus.b1:
            raise ValidationError("plus and minus forms belong to different indices")
        if any(p not in PROVENANCE for p in self.provenance):
            raise ValidationError(f"unknown provenance {self.provenance}")

    @property
    def w_c(self) -> int:
        return self.plus.w_c

    def difference(self) -> SWForm:
        return self.plus - self.minus


def flip_orientation1(v: ChamberValues) -> ChamberValues:
    """Reversing the orientation of H^1 negates both sides."""
    return ChamberValues(-v.plus, -v.minus, v.provenance)


def flip_sheet(v: ChamberValues) -> ChamberValues:
    """Passing to the opposite sheet: (+) <- -(-), (-) <- -(+)."""
    return ChamberValues(-v.minus, -v.plus, (v.provenance[1], v.provenance[0]))


def resolve(x: ManifoldModel, c: Sequence[int], o1: int, vanishing_side: Side) -> ChamberValues:
    """Both chamber values, given the side on which the invariant vanishes."""
    delta = wall_delta(x, c, o1)
    zero = SWForm.zero(x.b1, delta.w_c)
    if vanishing_side == "-":
        return ChamberValues(delta, zero, ("wall-crossed", "vanishing"))
    if vanishing_side == "+":
        return ChamberValues(zero, -delta, ("vanishing", "wall-crossed"))
    raise ValidationError(f"vanishing side must be '+' or '-', got {vanishing_side!r}")


@dataclass(frozen=True)
class PscCheck:
    c: tuple[int, ...]
    w_c: int
    plus: Fraction
    minus: Fraction

    @property
    def value_set(self) -> frozenset[Fraction]:
        return frozenset({self.plus, self.minus})

    @property
    def ok(self) -> bool:
        if self.w_c < 0:
            return self.value_set == {0}
        return self.value_set in ({0, 1}, {0, -1})


def psc_catalog_check(x: ManifoldModel, c: Sequence[int], vanishing_side: Side | None, o1: int = 1) -> PscCheck:
    """Resolve a b1 = 0 entry with a known vanishing chamber and test the {0, +-1} law."""
    if x.b1 != 0:
        raise NotApplicable(f"{x.name}: the check needs b1 = 0, model has b1 = {x.b1}")
    if vanishing_side is None:
        raise NotApplicable(f"{x.name}: no vanishing chamber declared")
    v = resolve(x, c, o1, vanishing_side)
    return PscCheck(tuple(c), v.w_c, v.plus.scalar(), v.minus.scalar())


def is_p2_lattice(x: ManifoldModel) -> bool:
    return x.b1 == 0 and x.form.gram == ((1,),)


def printed_p2_rule(c: int) -> tuple[int | None, int | None]:
    """Literal P^2 table: +1 on the plus side for c >= 3, -1 on the minus side for c <= 3, 0 at c = +-1.

    None marks a side the rule says nothing about.
    """
    if abs(c) == 1:
        return 0, 0
    return (1 if c >= 3 else None), (-1 if c <= 3 else None)


def p2_discrepancies(rows: Mapping[int, tuple[Fraction, Fraction]]) -> list[str]:
    """Rows where resolved P^2 values disagree with the literal printed boundary."""
    out = []
    for c, (plus, minus) in sorted(rows.items()):
        rule_plus, rule_minus = printed_p2_rule(c)
        if rule_plus is not None and rule_plus != plus:
            out.append(f"c={c}: resolved plus = {plus}, literal rule (plus = 1 for c >= 3) gives {rule_plus}")
        if rule_minus is not None and rule_minus != minus:
            out.append(
                f"c={c}: resolved minus = {minus}, literal rule (minus = -1 for c <= 3) gives {rule_minus}; "
                "wall crossing from the vanishing chamber yields minus = -1 only for c <= -3"
            )
    return out
