"""Period domain for b+ = 1: sheets, walls (c - b).w = 0 and the four chambers.

Period points are stored as unnormalized rays of positive square; every
predicate here depends only on the ray, so the arithmetic stays rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Literal, Sequence

from .errors import InternalConsistencyError, NotInPositiveCone, PathLeavesCone, ValidationError
from .lattice import RatClass, as_rat, pair
from .topology import ManifoldModel

Sheet = Literal["H0", "-H0"]
Side = Literal["+", "-"]


@dataclass(frozen=True)
class PeriodPair:
    omega: RatClass
    b: RatClass

    def __init__(self, omega: Sequence, b: Sequence | None = None):
        object.__setattr__(self, "omega", as_rat(omega))
        object.__setattr__(self, "b", as_rat(b) if b is not None else (Fraction(0),) * len(omega))
        if len(self.b) != len(self.omega):
            raise ValidationError("omega and b must have the same length")


@dataclass(frozen=True)
class Chamber:
    sheet: Sheet
    side: Side

    def __str__(self):
        return f"({self.sheet}, {self.side})"


@dataclass(frozen=True)
class OnWall:
    """(c - b).omega = 0: the pair is not c-good."""

    sheet: Sheet

    def __str__(self):
        return f"OnWall({self.sheet})"


def _check_cone(x: ManifoldModel, omega: Sequence) -> Fraction:
    sq = pair(x.form, omega, omega)
    if sq <= 0:
        raise NotInPositiveCone(f"omega={_fmt(omega)} has square {sq} <= 0")
    return sq


def sheet_of(x: ManifoldModel, omega: Sequence) -> Sheet:
    _check_cone(x, omega)
    p = pair(x.form, omega, x.h_ref)
    if p == 0:
        # two positive-square classes never pair to zero when b+ = 1
        raise InternalConsistencyError(f"omega={_fmt(omega)} is orthogonal to h_ref")
    return "H0" if p > 0 else "-H0"


def wall_value(x: ManifoldModel, c: Sequence[int], p: PeriodPair) -> Fraction:
    """(c - b).omega"""
    return pair(x.form, [Fraction(ci) - bi for ci, bi in zip(c, p.b)], p.omega)


def classify(x: ManifoldModel, c: Sequence[int], p: PeriodPair) -> Chamber | OnWall:
    sheet = sheet_of(x, p.omega)
    f = wall_value(x, c, p)
    if f == 0:
        return OnWall(sheet)
    return Chamber(sheet, "+" if f < 0 else "-")


def is_c_good(x: ManifoldModel, c: Sequence[int], p: PeriodPair) -> bool:
    return not isinstance(classify(x, c, p), OnWall)


@dataclass(frozen=True)
class CrossingReport:
    # f(t) = f0 + f1 t + f2 t^2
    coefficients: tuple[Fraction, Fraction, Fraction]
    changes_sign: bool
    # roots in the open interval (0, 1) with multiplicity; None if f == 0
    root_count: int | None
    roots: tuple[str, ...]
    start: Chamber | OnWall
    end: Chamber | OnWall
    identically_zero: bool = field(default=False)

    @property
    def crossings(self) -> int | None:
        return self.root_count


def _quadratic(u0, u1, v0, v1, pairing) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients of pairing(u0 + t du, v0 + t dv) in t."""
    du = [b - a for a, b in zip(u0, u1)]
    dv = [b - a for a, b in zip(v0, v1)]
    return (
        pairing(u0, v0),
        pairing(u0, dv) + pairing(du, v0),
        pairing(du, dv),
    )


def _eval(coeffs, t: Fraction) -> Fraction:
    return coeffs[0] + coeffs[1] * t + coeffs[2] * t * t


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _sign_plus_sqrt(p: Fraction, s: int, d: Fraction) -> int:
    """Sign of p + s*sqrt(d) for d > 0, s = +-1."""
    if p == 0 or _sign(p) == s:
        return s
    return _sign(p) if p * p > d else (s if p * p < d else 0)


def _rational_sqrt(d: Fraction) -> Fraction | None:
    n, m = isqrt(d.numerator), isqrt(d.denominator)
    if n * n == d.numerator and m * m == d.denominator:
        return Fraction(n, m)
    return None


def _roots_in_unit_interval(coeffs) -> tuple[int, tuple[str, ...]]:
    c0, c1, c2 = coeffs
    if c2 == 0:
        if c1 == 0:
            return 0, ()
        t = -c0 / c1
        return (1, (str(t),)) if 0 < t < 1 else (0, ())
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return 0, ()
    if disc == 0:
        t = -c1 / (2 * c2)
        return (2, (str(t), str(t))) if 0 < t < 1 else (0, ())
    root = _rational_sqrt(disc)
    if root is not None:
        ts = sorted(((-c1 + s * root) / (2 * c2) for s in (-1, 1)))
        inside = [t for t in ts if 0 < t < 1]
        return len(inside), tuple(map(str, inside))
    found = []
    for s in (-1, 1):
        # t = (-c1 + s sqrt(disc)) / (2 c2)
        gt0 = _sign_plus_sqrt(-c1, s, disc) * _sign(c2) > 0
        lt1 = _sign_plus_sqrt(-c1 - 2 * c2, s, disc) * _sign(c2) < 0
        if gt0 and lt1:
            sgn = "+" if s > 0 else "-"
            found.append(f"({-c1} {sgn} sqrt({disc}))/({2 * c2})")
    return len(found), tuple(found)


def _fmt(v: Sequence) -> str:
    return "(" + ",".join(str(Fraction(t)) for t in v) + ")"


def check_segment_in_cone(x: ManifoldModel, p0: PeriodPair, p1: PeriodPair) -> None:
    q = _quadratic(p0.omega, p1.omega, p0.omega, p1.omega, lambda a, b: pair(x.form, a, b))
    for t in (Fraction(0), Fraction(1)):
        if _eval(q, t) <= 0:
            raise PathLeavesCone(f"omega(t)^2 = {_eval(q, t)} <= 0 at t = {t}")
    if q[2] > 0:
        v = -q[1] / (2 * q[2])
        if 0 < v < 1 and _eval(q, v) <= 0:
            # exact exit interval is bounded by irrational roots in general; report the vertex
            raise PathLeavesCone(f"omega(t)^2 = {_eval(q, v)} <= 0 at interior vertex t = {v}")


def segment_crossing(x: ManifoldModel, c: Sequence[int], p0: PeriodPair, p1: PeriodPair) -> CrossingReport:
    """Track f(t) = (c - b(t)).omega(t) along the straight segment p0 -> p1."""
    check_segment_in_cone(x, p0, p1)
    cb0 = [Fraction(ci) - bi for ci, bi in zip(c, p0.b)]
    cb1 = [Fraction(ci) - bi for ci, bi in zip(c, p1.b)]
    coeffs = _quadratic(cb0, cb1, p0.omega, p1.omega, lambda a, b: pair(x.form, a, b))
    start, end = classify(x, c, p0), classify(x, c, p1)
    if not any(coeffs):
        return CrossingReport(coeffs, False, None, (), start, end, identically_zero=True)
    samples = [Fraction(0), Fraction(1)]
    if coeffs[2] != 0:
        v = -coeffs[1] / (2 * coeffs[2])
        if 0 < v < 1:
            samples.append(v)
    values = [_eval(coeffs, t) for t in samples]
    changes = min(values) < 0 < max(values)
    count, roots = _roots_in_unit_interval(coeffs)
    return CrossingReport(coeffs, changes, count, roots, start, end)
