import random
from fractions import Fraction

import pytest

from dgcalc import fixtures
from dgcalc.cochain import CochainComplex, GradedVS, cohomology_dims, euler_characteristic, nonzero
from dgcalc.dgcore import Arrow, DGQuiver, check_dg_axioms, hom_cohomology, path_algebra
from dgcalc.pretr import (TwistError, TwistedComplex, TwMorphism, check_cone_identities, check_mc, cone, embed,
                          hom_of, hom_table, pretr_category, shift_tw, tensor_with_complex, tot, twisted_hom)
from randquiver import random_category

ONE = Fraction(1)


@pytest.fixture(scope="module")
def x():
    return path_algebra(fixtures.x_surface())


@pytest.fixture(scope="module")
def kron():
    q = DGQuiver(("A", "B"), (Arrow("x", "A", "B"), Arrow("y", "A", "B")))
    return path_algebra(q)


def closed_degree0(c, i, j, rng):
    """A random closed degree-0 vector of hom(i, j), or None."""
    h = c.hom(i, j)
    ix = h.space.indices(0)
    if not ix:
        return None
    from dgcalc.exactla import kernel_basis
    ker = kernel_basis(h.d_matrix(0))
    if not ker:
        return None
    v = {}
    for k in ker:
        coef = rng.choice([-1, 1, 2])
        for t, x in enumerate(k):
            if x:
                v[ix[t]] = v.get(ix[t], 0) + coef * x
    return {k: x for k, x in v.items() if x} or None


def test_embedding_is_fully_faithful(x):
    objs = [embed(x, o) for o in x.objects]
    p = pretr_category(objs, list(x.objects))
    assert check_dg_axioms(p).ok
    assert hom_cohomology(p) == hom_cohomology(x)
    for (i, j), h in x.homs.items():
        assert twisted_hom(objs[i], objs[j]).complex.space.degrees == h.space.degrees


def test_mc_failure_reported():
    q = DGQuiver(("A", "B"), (Arrow("x", "A", "B"), Arrow("y", "A", "B", 1)), {"x": ((ONE, ("y",)),)})
    c = path_algebra(q)
    with pytest.raises(TwistError, match="Maurer-Cartan"):
        TwistedComplex(c, [(0, 0), (1, -1)], {(0, 1): {0: ONE}})
    t = TwistedComplex(c, [(0, 0), (1, -1)], {(0, 1): {0: ONE}}, check=False)
    bad = check_mc(t)
    assert not bad.ok and bad.failures[0][:2] == (0, 1)


def test_twist_shape_errors(kron):
    with pytest.raises(TwistError, match="upper triangular"):
        TwistedComplex(kron, [(0, 0), (1, 0)], {(1, 0): {0: ONE}})
    with pytest.raises(TwistError, match="underlying degree 1"):
        TwistedComplex(kron, [(0, 0), (1, 0)], {(0, 1): {0: ONE}})


def test_shift_moves_hom_degrees(x):
    a, b = embed(x, "O"), embed(x, "O(H)")
    for n in (-2, 1, 3):
        assert hom_table(shift_tw(a, n), b) == {k + n: v for k, v in hom_table(a, b).items()}
        assert hom_table(a, shift_tw(b, n)) == {k - n: v for k, v in hom_table(a, b).items()}


def test_kronecker_cone(kron):
    a, b = embed(kron, "A"), embed(kron, "B")
    f = TwMorphism(a, b, {0: ONE})
    cn = cone(f)
    assert check_cone_identities(f) == []
    assert hom_table(a, cn) == {0: 1}
    assert hom_table(b, cn) == {0: 1}
    # a point on the projective line: one self-extension
    assert hom_table(cn, cn) == {0: 1, 1: 1}


def test_cone_of_identity_is_contractible(x):
    for o in x.objects:
        a = embed(x, o)
        c = cone(TwMorphism(a, a, hom_of(a, a).identity()))
        for other in x.objects:
            e = embed(x, other)
            assert hom_table(c, e) == {}
            assert hom_table(e, c) == {}


def test_cone_rejects_non_cycles():
    q = DGQuiver(("A", "B"), (Arrow("x", "A", "B"), Arrow("y", "A", "B", 1)), {"x": ((ONE, ("y",)),)})
    c = path_algebra(q)
    a, b = embed(c, "A"), embed(c, "B")
    with pytest.raises(TwistError, match="closed"):
        cone(TwMorphism(a, b, {0: ONE}))
    with pytest.raises(TwistError, match="degree-0"):
        cone(TwMorphism(a, b, {1: ONE}))


def test_tot_of_two_terms_is_the_cone(kron):
    a, b = embed(kron, "A"), embed(kron, "B")
    f = TwMorphism(a, b, {1: ONE})
    c1 = cone(f)
    a1 = shift_tw(a, 1)
    c2 = tot([a1, b], {(0, 1): hom_of(a1, b).block_vector(0, 0, {1: ONE})})
    assert c1.terms == c2.terms and c1.q == c2.q


def test_tot_rejects_bad_outer_twist(kron):
    a, b = embed(kron, "A"), embed(kron, "B")
    with pytest.raises(TwistError, match="degree 1"):
        tot([a, b], {(0, 1): {0: ONE}})


def test_tensor_with_complex(x):
    a = embed(x, "O(H)")
    two = CochainComplex(GradedVS([0, 0]))
    t = tensor_with_complex(a, two)
    assert hom_table(embed(x, "O"), t) == {0: 6}
    acyc = CochainComplex(GradedVS([-1, 0]), [{1: ONE}, {}])
    t = tensor_with_complex(a, acyc)
    for o in x.objects:
        assert hom_table(embed(x, o), t) == {}
    shifted = CochainComplex(GradedVS([2]))
    assert hom_table(embed(x, "O"), tensor_with_complex(a, shifted)) == {2: 3}


@pytest.mark.parametrize("seed", range(30))
def test_random_cones(seed):
    rng = random.Random(seed)
    q, c = random_category(seed)
    n = len(c.objects)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if closed_degree0(c, i, j, random.Random(0))]
    if not pairs:
        pytest.skip("no closed degree-0 morphism")
    i, j = rng.choice(pairs)
    a, b = embed(c, c.objects[i]), embed(c, c.objects[j])
    f = TwMorphism(a, b, closed_degree0(c, i, j, rng))
    assert check_cone_identities(f) == []
    cn = cone(f)
    assert check_mc(cn).ok
    # Euler characteristics are additive along the triangle A -> B -> Cone
    for k in range(n):
        e = embed(c, c.objects[k])
        chi = lambda s, t: euler_characteristic(nonzero(cohomology_dims(hom_of(s, t).complex)))
        assert chi(e, cn) == chi(e, b) - chi(e, a)
        assert chi(cn, e) == chi(b, e) - chi(a, e)
    p = pretr_category([a, b, cn])
    assert check_dg_axioms(p).ok
