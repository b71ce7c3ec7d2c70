import pytest

from dgcalc import fixtures
from dgcalc.dgcore import path_algebra
from dgcalc.fileformat import doc_to_quiver
from dgcalc.surfaces import (LatticeError, PicardLattice, augment_collection, chi, chi_pair, euler_pairing,
                             line_bundle_checks)


@pytest.fixture(scope="module")
def lat():
    return PicardLattice.from_doc(fixtures.X_LATTICE)


@pytest.fixture(scope="module")
def xdg():
    return path_algebra(fixtures.x_surface())


def test_x_intersection_numbers(lat):
    H, E1, E2 = lat.parse("H"), lat.parse("E1"), lat.parse("E2")
    assert lat.dot(H, H) == 1
    assert lat.dot(E1, E1) == -2
    assert lat.dot(E2, E2) == -1
    assert lat.dot(E1, E2) == 1
    assert lat.dot(E1, H) == lat.dot(E2, H) == 0


def test_canonical_is_adjunction_compatible(lat):
    # E2 is a (-1)-curve, E1 a (-2)-curve: K.E = -2 - E^2
    K = lat.canonical
    assert lat.dot(K, lat.parse("E2")) == -1
    assert lat.dot(K, lat.parse("E1")) == 0
    assert lat.dot(K, K) == 7


@pytest.mark.parametrize("text,value", [("0", 1), ("H", 3), ("2H", 6), ("H-E2", 2), ("-H", 0), ("-3H", 1),
                                        ("E2", 1), ("E1+E2", 1), ("H-E1-E2", 2)])
def test_chi_values(lat, text, value):
    assert chi(lat, lat.parse(text)) == value


def test_parse_and_format(lat):
    assert lat.parse("2H - E1 + E2") == (2, -1, 1)
    assert lat.parse("2*H") == (2, 0, 0)
    assert lat.parse([1, 2, 3]) == (1, 2, 3)
    assert lat.format((2, -1, 1)) == "2H-E1+E2"
    assert lat.format((0, 0, 0)) == "0"
    for d in [(1, 0, 0), (-1, 1, 0), (0, -2, 3)]:
        assert lat.parse(lat.format(d)) == d


def test_lattice_errors():
    with pytest.raises(LatticeError, match="symmetric"):
        PicardLattice(("a", "b"), ((1, 2), (0, 1)), (0, 0))
    with pytest.raises(LatticeError, match="2x2"):
        PicardLattice(("a", "b"), ((1, 0),), (0, 0))
    with pytest.raises(LatticeError, match="canonical"):
        PicardLattice(("a",), ((1,),), (0, 0))
    odd = PicardLattice(("a",), ((1,),), (0,))
    with pytest.raises(LatticeError, match="odd"):
        chi(odd, (1,))
    with pytest.raises(LatticeError, match="parse"):
        PicardLattice.from_doc(fixtures.X_LATTICE).parse("H+Q")


def test_x_pairs_agree(lat, xdg):
    cls = fixtures.X_LATTICE["classes"]
    for a in xdg.objects:
        for b in xdg.objects:
            assert chi_pair(lat, cls[a], cls[b]) == euler_pairing(xdg, a, b), (a, b)
    assert euler_pairing(xdg, "O", "O(H)") == 3
    assert euler_pairing(xdg, "O(H)", "O") == 0
    assert euler_pairing(xdg, "O(E2)", "O(E2)") == 1


@pytest.mark.parametrize("name,t", [("x_surface", None), ("x_first_quiver", None), ("y_surface", None),
                                    ("v_collection", None), ("delta_family", 0), ("delta_family", 1),
                                    ("delta_family", -1)])
def test_fixture_line_bundle_checks(name, t):
    doc = fixtures.load_doc(name)
    c = path_algebra(doc_to_quiver(doc, t=t))
    assert line_bundle_checks(c, doc["lattice"]) == []


def test_v_vertex_carries_no_class():
    doc = fixtures.load_doc("v_collection")
    assert "V" not in doc["lattice"]["classes"]
    assert len(doc["lattice"]["classes"]) == 4


def test_augment_trivial(lat):
    r2 = lat.parse("E2")
    assert augment_collection(lat, [(0, 0, 0)], r2, 1) == [(0, 0, 0), r2]


def test_augment_length_and_slot(lat):
    base = [(0, 0, 0), (1, 0, 0), (2, 0, 0)]
    for k in (1, 2, 3):
        assert len(augment_collection(lat, base, (0, 0, 1), k)) == 4
    for k in (0, 4):
        with pytest.raises(LatticeError, match="slot"):
            augment_collection(lat, base, (0, 0, 1), k)


def _augmented_x(lat):
    base = [(0, 0, 0), (1, 0, 0), (2, 0, 0)]
    r1, r2 = lat.parse("E1+E2"), lat.parse("E2")
    return augment_collection(lat, augment_collection(lat, base, r1, 1), r2, 1)


def test_augmentation_reproduces_x(lat, xdg):
    got = _augmented_x(lat)
    cls = fixtures.X_LATTICE["classes"]
    assert got == [tuple(cls[o]) for o in xdg.objects]
    table = [[chi_pair(lat, a, b) for b in got] for a in got]
    want = [[euler_pairing(xdg, a, b) for b in xdg.objects] for a in xdg.objects]
    assert table == want


def test_augmented_pairs_are_exceptional_numerically(lat):
    got = _augmented_x(lat)
    for i, a in enumerate(got):
        assert chi_pair(lat, a, a) == 1
        for b in got[:i]:
            assert chi_pair(lat, a, b) == 0
