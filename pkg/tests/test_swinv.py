from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swx.errors import NotApplicable, NotCharacteristic, ValidationError
from swx.exterior import Multivector, coefficient_matrix, pfaffian
from swx.lattice import enumerate_characteristic
from swx.manifest import load_catalog
from swx.swinv import (
    ChamberValues,
    SWForm,
    flip_orientation1,
    flip_sheet,
    index,
    p2_discrepancies,
    psc_catalog_check,
    resolve,
    wall_delta,
    window,
)
from swx.topology import u_c


def scalar_form(v, w_c=0):
    return SWForm(0, w_c, {0: Multivector.scalar(0, v)})


def test_index_examples(p2, t2s2):
    assert index(p2, (3,)) == 0
    assert index(p2, (5,)) == 4
    assert index(p2, (1,)) == -2
    assert index(t2s2, (2, 2)) == 2
    assert index(t2s2, (0, 0)) == 0
    with pytest.raises(NotCharacteristic, match="e1"):
        index(p2, (2,))


def test_wall_delta_examples(p2, t2s2):
    assert wall_delta(p2, (3,)) == scalar_form(1)
    assert not wall_delta(p2, (1,))
    assert wall_delta(p2, (1,)).w_c == -2
    d = wall_delta(t2s2, (2, 4))
    # hand expansion, u_c = e1^e2, w_c = 4, l = e1*^e2*:
    #   r = 0, k = 1: (-1)^1 / 1! <1 ^ u_c, l> = -1
    #   r = 2, k = 0: <e1^e2, l> = +1
    assert d.w_c == 4
    assert d.evaluate(Multivector.scalar(2)) == -1
    assert d.evaluate(Multivector.basis(2, 1, 2)) == 1
    assert d.degrees() == [0, 2]


def test_wall_delta_sigma2():
    x = load_catalog("Sigma2xS2").model
    for p in range(-2, 3):
        for q in range(-2, 3):
            d = wall_delta(x, (2 * p, 2 * q))
            w = 2 * p * q + 2
            assert d.w_c == w
            # u_c = p (e1^e2 + e3^e4); u_c^2/2 = p^2 e1234
            expect = {}
            if w >= 0:
                expect[0] = Multivector.scalar(4, p * p)
            if w >= 2:
                expect[2] = Multivector(4, {(1, 2): -p, (3, 4): -p})
            if w >= 4:
                expect[4] = Multivector(4, {(1, 2, 3, 4): 1})
            assert d == SWForm(4, w, expect)


def test_wall_delta_orientation(t2s2):
    d = wall_delta(t2s2, (2, 4), 1)
    assert wall_delta(t2s2, (2, 4), -1) == -d


def test_flip_orientation1_examples():
    v = ChamberValues(scalar_form(1), scalar_form(0))
    f = flip_orientation1(v)
    assert (f.plus.scalar(), f.minus.scalar()) == (-1, 0)
    z = ChamberValues(SWForm.zero(0, 0), SWForm.zero(0, 0))
    assert flip_orientation1(z) == z
    assert flip_orientation1(f) == v


def test_flip_sheet_examples():
    v = ChamberValues(scalar_form(1), scalar_form(0))
    f = flip_sheet(v)
    assert (f.plus.scalar(), f.minus.scalar()) == (0, -1)
    z = ChamberValues(SWForm.zero(0, 0), SWForm.zero(0, 0))
    assert flip_sheet(z) == z
    assert flip_sheet(f) == v


def test_resolve_examples(p2):
    v = resolve(p2, (3,), 1, "-")
    assert (v.plus.scalar(), v.minus.scalar()) == (1, 0)
    assert v.provenance == ("wall-crossed", "vanishing")
    v = resolve(p2, (-3,), 1, "+")
    assert (v.plus.scalar(), v.minus.scalar()) == (0, -1)
    for side in "+-":
        v = resolve(p2, (1,), 1, side)
        assert not v.plus and not v.minus
    with pytest.raises(ValidationError):
        resolve(p2, (3,), 1, "0")


def test_resolve_matches_delta(catalog_entry):
    x = catalog_entry.model
    for c in enumerate_characteristic(x.form, 2):
        d = wall_delta(x, c)
        for side in "+-":
            assert resolve(x, c, 1, side).difference() == d
        # plus-vanishing is the sheet flip of minus-vanishing
        assert resolve(x, c, 1, "+").plus == flip_sheet(resolve(x, c, 1, "-")).plus
        assert resolve(x, c, 1, "+").minus == flip_sheet(resolve(x, c, 1, "-")).minus


def test_psc_catalog_check(p2, t2s2):
    assert psc_catalog_check(p2, (3,), "-").value_set == {0, 1}
    r = psc_catalog_check(p2, (5,), "-")
    assert r.w_c == 4 and r.value_set == {0, 1} and r.ok
    r = psc_catalog_check(p2, (1,), "-")
    assert r.value_set == {0} and r.ok
    with pytest.raises(NotApplicable):
        psc_catalog_check(t2s2, (2, 2), "-")
    with pytest.raises(NotApplicable):
        psc_catalog_check(p2, (3,), None)


def test_window():
    assert window(0, 0) == [0]
    assert window(0, -2) == []
    assert window(2, 4) == [0, 2]
    assert window(4, 3) == [1, 3]
    assert window(3, 1) == [1]


def test_window_law_and_integrality(catalog_entry):
    x = catalog_entry.model
    for c in enumerate_characteristic(x.form, 4):
        d = wall_delta(x, c)
        allowed = {r for r in window(x.b1, d.w_c) if (x.b1 - r) % 2 == 0}
        assert set(d.degrees()) <= allowed
        if x.b1 in allowed:
            assert d.component(x.b1) == Multivector.basis(x.b1, *range(1, x.b1 + 1))
        for m in d.values.values():
            assert m.is_integral()
        if x.b1 == 0:
            expected = 1 if d.w_c >= 0 and d.w_c % 2 == 0 else 0
            assert d.scalar() == expected


def test_pfaffian_consistency(catalog_entry):
    x = catalog_entry.model
    if x.b1 % 2:
        pytest.skip("odd b1")
    for c in enumerate_characteristic(x.form, 4):
        for o1 in (1, -1):
            d = wall_delta(x, c, o1)
            if d.w_c >= 0 and d.w_c % 2 == 0:
                pf = pfaffian(coefficient_matrix(u_c(x, c))) if x.b1 else 1
                assert d.scalar() == (-1) ** (x.b1 // 2) * pf * o1


def test_equivariance(catalog_entry):
    x = catalog_entry.model
    for c in enumerate_characteristic(x.form, 3):
        d, dn = wall_delta(x, c), wall_delta(x, tuple(-v for v in c))
        assert d.w_c == dn.w_c
        for r in set(d.degrees()) | set(dn.degrees()):
            k = (x.b1 - r) // 2
            assert dn.component(r) == (-1) ** k * d.component(r)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6), st.lists(st.integers(-3, 3), min_size=6, max_size=6),
       st.integers(-3, 3))
def test_evaluate_linear(a, b, k):
    d = wall_delta(load_catalog("Sigma2xS2").model, (2, 2))
    keys = list(combinations(range(1, 5), 2))
    la, lb = Multivector(4, dict(zip(keys, a))), Multivector(4, dict(zip(keys, b)))
    assert d.evaluate(la + k * lb) == d.evaluate(la) + k * d.evaluate(lb)


def test_evaluate_ignores_wrong_parity(t2s2):
    d = wall_delta(t2s2, (2, 4))
    assert d.evaluate(Multivector.basis(2, 1)) == 0


def test_swform_rejects_bad_components():
    with pytest.raises(ValidationError):
        SWForm(2, 0, {0: Multivector.basis(2, 1)})
    with pytest.raises(ValidationError):
        SWForm(2, 0, {0: Multivector.scalar(3)})


def test_p2_discrepancy_flags_boundary():
    rows = {c: ((1, 0) if c >= 3 else (0, -1) if c <= -3 else (0, 0)) for c in range(-9, 10, 2)}
    rows = {c: (Fraction(p), Fraction(m)) for c, (p, m) in rows.items()}
    msgs = p2_discrepancies(rows)
    assert len(msgs) == 1 and msgs[0].startswith("c=3:")
