import copy
from fractions import Fraction

import pytest

from dgcalc import fixtures
from dgcalc.ainfty import (AInfinityError, AInfinityStructure, augment, check_stasheff, check_strict_unit, dumps_ainf,
                           from_doc, from_dg, to_doc, vanishing_above_order)
from dgcalc.cochain import GradedVS
from dgcalc.dgcore import Arrow, DGQuiver, path_algebra
from dgcalc.transfer import minimal_model
from randquiver import random_category

ONE = Fraction(1)


@pytest.fixture(scope="module")
def xdg():
    return path_algebra(fixtures.x_surface())


@pytest.fixture(scope="module")
def xmm(xdg):
    return minimal_model(xdg).structure


def test_from_dg_of_x_passes_stasheff_to_arity_five(xdg):
    a = from_dg(xdg)
    assert check_stasheff(a, 5).ok


def test_zero_differential_gives_zero_m1():
    c = path_algebra(fixtures.y_surface())
    a = from_dg(c)
    assert all(not t for t in a.ops[1].values())
    assert check_stasheff(a, 4).ok


def test_corrupted_m3_is_caught_and_named(xmm):
    bad = copy.deepcopy(xmm.ops)
    chain = sorted(bad[3])[0]
    args = sorted(bad[3][chain])[0]
    bad[3][chain][args] = {k: 2 * v for k, v in bad[3][chain][args].items()}
    a = AInfinityStructure(xmm.objects, xmm.homs, bad, xmm.units, xmm.max_arity, xmm.vanish_above)
    rep = check_stasheff(a, 4)
    assert not rep.ok
    names = {f[1] for f in rep.failures}
    assert any(all(o in ch for o in (xmm.objects[x] for x in chain)) for ch in names)
    assert {f[0] for f in rep.failures} <= {3, 4}


def test_corrupted_m2_breaks_associativity(xdg):
    a = from_dg(xdg)
    ops = copy.deepcopy(a.ops)
    chain = next(ch for ch in sorted(ops[2]) if len(set(ch)) == 3 and ops[2][ch])
    args = sorted(ops[2][chain])[0]
    ops[2][chain][args] = {k: v + 1 for k, v in ops[2][chain][args].items()}
    b = AInfinityStructure(a.objects, a.homs, ops, a.units, 2, True)
    assert not check_stasheff(b, 3).ok


@pytest.mark.parametrize("seed", range(30))
def test_random_dg_categories_are_a_infinity(seed):
    q, c = random_category(seed)
    a = from_dg(c)
    assert check_stasheff(a, 4).ok
    assert check_strict_unit(a).ok
    augment(a)


def test_x_is_augmentable_and_strictly_unital(xdg, xmm):
    aug = augment(from_dg(xdg))
    assert set(aug.unit_index) == set(range(5))
    assert check_strict_unit(xmm).ok
    assert vanishing_above_order(xmm) == []


def test_non_reduced_endomorphisms_not_augmentable():
    q = DGQuiver(("A",), (Arrow("e", "A", "A"),), relations=[((ONE, ("e", "e")),)])
    with pytest.raises(AInfinityError, match="not augmentable: hom\\(A, A\\) has dimension 2"):
        augment(from_dg(path_algebra(q, 3)))


def test_missing_unit_not_augmentable():
    a = AInfinityStructure(["A"], {(0, 0): GradedVS([0])}, {2: {}}, units={})
    with pytest.raises(AInfinityError, match="has no unit"):
        augment(a)


def test_arity_above_computed_range_raises(xmm):
    a = AInfinityStructure(xmm.objects, xmm.homs, xmm.ops, xmm.units, max_arity=2, vanish_above=False)
    with pytest.raises(AInfinityError, match="above the computed arity"):
        a.m(3, (0, 1, 2, 3), (0, 0, 0))


def test_ainf_round_trip(xmm):
    text = dumps_ainf(xmm)
    b = from_doc(__import__("json").loads(text))
    assert dumps_ainf(b) == text
    assert to_doc(b) == to_doc(xmm)
    assert check_stasheff(b, 4).ok


def test_malformed_ainf():
    with pytest.raises(AInfinityError, match="malformed"):
        from_doc({"objects": ["A"]})
