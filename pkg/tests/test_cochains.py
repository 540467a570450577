import random
from fractions import Fraction

import pytest

from derpair.cochains import (AltMap, CompatCochain, DerCochain, MultiMap,
                              circle_g, circle_nr)
from derpair.errors import ShapeError
from derpair.linalg import Space

import gen
from oracles import circle_g_oracle, circle_nr_oracle

S2 = Space.of_dim(2)
S3 = Space.of_dim(3)


# -- evaluation ---------------------------------------------------------------

def test_multimap_eval_stored_and_absent():
    mu = gen.mm(S2, 2, [(0, 0, 1, 1)])
    assert mu.eval((0, 0)) == [0, Fraction(1)]
    assert mu.eval((1, 1)) == [0, 0]


def test_altmap_eval_signs_and_repeats():
    w = AltMap(S2, 2, {((0, 1), 0): Fraction(1)})
    assert w.eval((0, 1)) == [Fraction(1), 0]
    assert w.eval((1, 0)) == [Fraction(-1), 0]
    assert w.eval((0, 0)) == [0, 0]


def test_altmap_rejects_bad_keys():
    with pytest.raises(ShapeError):
        AltMap(S2, 2, {((1, 0), 0): Fraction(1)})


def test_eval_arity_mismatch():
    mu = gen.mm(S2, 2, [(0, 0, 1, 1)])
    with pytest.raises(ShapeError):
        mu.eval((0,))


# -- insertion composition -----------------------------------------------------

def test_circle_g_identity_cases():
    mu = gen.mm(S2, 2, [(0, 0, 1, 1)])
    ident = MultiMap.identity(S2)
    assert circle_g(ident, mu) == mu
    # two insertion slots, both reproducing mu
    expected = circle_g_oracle(mu, ident)
    assert expected == mu.scale(2)
    assert circle_g(mu, ident) == expected


def test_circle_g_nilpotent_square():
    mu = gen.mm(S2, 2, [(0, 0, 1, 1)])
    square = circle_g(mu, mu)
    assert square == circle_g_oracle(mu, mu)
    assert square.eval((0, 0, 0)) == [0, 0]


def test_circle_g_matches_oracle_randomized():
    rng = random.Random(202)
    for _ in range(60):
        space = S2 if rng.random() < 0.5 else S3
        f = gen.rand_multimap(rng, space, rng.randint(1, 3))
        g = gen.rand_multimap(rng, space, rng.randint(1, 3))
        assert circle_g(f, g) == circle_g_oracle(f, g)


def test_circle_g_bilinear():
    rng = random.Random(2021)
    for _ in range(30):
        f = gen.rand_multimap(rng, S2, 2)
        g = gen.rand_multimap(rng, S2, 2)
        h = gen.rand_multimap(rng, S2, 2)
        c = Fraction(rng.randint(-3, 3))
        assert circle_g(f + g.scale(c), h) == circle_g(f, h) + circle_g(g, h).scale(c)
        assert circle_g(h, f + g.scale(c)) == circle_g(h, f) + circle_g(h, g).scale(c)


def test_circle_g_space_mismatch():
    with pytest.raises(ShapeError):
        circle_g(MultiMap.identity(S2), MultiMap.identity(S3))


# -- unshuffle composition -------------------------------------------------------

def test_circle_nr_identity_cases():
    w = AltMap(S2, 2, {((0, 1), 0): Fraction(1)})
    ident = AltMap.identity(S2)
    assert circle_nr(w, ident) == w.scale(2)
    assert circle_nr(ident, w) == w


def test_circle_nr_vanishing_in_low_dimension():
    w = AltMap(S2, 2, {((0, 1), 0): Fraction(1)})
    assert circle_nr(w, w).is_zero()    # arity 3 on a 2-dim space


def test_circle_nr_cyclic_sum_dim3():
    w = AltMap(S3, 2, {((0, 1), 2): Fraction(1)})
    value = circle_nr_oracle(w, w)
    assert value.eval((0, 1, 2)) == [0, 0, 0]
    assert circle_nr(w, w) == value


def test_circle_nr_matches_oracle_randomized():
    rng = random.Random(203)
    for _ in range(50):
        f = gen.rand_altmap(rng, S3, rng.randint(1, 3))
        g = gen.rand_altmap(rng, S3, rng.randint(1, 3))
        assert circle_nr(f, g) == circle_nr_oracle(f, g)


def test_circle_nr_bilinear_and_alternating():
    rng = random.Random(204)
    for _ in range(30):
        f = gen.rand_altmap(rng, S3, 2)
        g = gen.rand_altmap(rng, S3, 2)
        h = gen.rand_altmap(rng, S3, 1)
        c = Fraction(rng.randint(-3, 3))
        assert circle_nr(f + g.scale(c), h) == \
            circle_nr(f, h) + circle_nr(g, h).scale(c)
        out = circle_nr(f, g)
        args = (0, 1, 2)
        swapped = (1, 0, 2)
        assert out.eval(swapped) == [-x for x in out.eval(args)]
        assert out.eval((0, 0, 1)) == [0, 0, 0]


# -- coordinates ------------------------------------------------------------------

def test_coord_lengths():
    assert MultiMap.coord_length(S2, 1) == 4
    assert AltMap.coord_length(S2, 2) == 2
    assert DerCochain.coord_length(S3, 2, "alt") == 9 + 9


def test_coords_roundtrip_randomized():
    rng = random.Random(205)
    for _ in range(40):
        space = S2 if rng.random() < 0.5 else S3
        arity = rng.randint(1, 3)
        m = gen.rand_multimap(rng, space, arity)
        assert MultiMap.from_coords(space, arity, m.coords()) == m
        a = gen.rand_altmap(rng, space, arity)
        assert AltMap.from_coords(space, arity, a.coords()) == a
        degree = rng.randint(1, 3)
        dc = DerCochain(
            gen.rand_altmap(rng, space, degree),
            gen.rand_altmap(rng, space, degree - 1) if degree > 1 else None)
        assert DerCochain.from_coords(space, degree, "alt", dc.coords()) == dc
        parts = [DerCochain(gen.rand_multimap(rng, space, degree),
                            gen.rand_multimap(rng, space, degree - 1)
                            if degree > 1 else None)
                 for _ in range(degree)]
        cc = CompatCochain(parts)
        back = CompatCochain.from_coords(space, degree, "multi", cc.coords())
        assert back == cc


def test_from_coords_length_mismatch():
    with pytest.raises(ShapeError):
        MultiMap.from_coords(S2, 1, [1, 2, 3])


def test_basis_matches_coordinates():
    for arity in (1, 2):
        for index, b in enumerate(MultiMap.basis(S2, arity)):
            coords = b.coords()
            assert coords[index] == 1 and sum(map(abs, coords)) == 1
    for degree in (1, 2):
        for index, b in enumerate(DerCochain.basis(S3, degree, "alt")):
            coords = b.coords()
            assert coords[index] == 1 and sum(map(abs, coords)) == 1
    for index, b in enumerate(CompatCochain.basis(S2, 2, "multi")):
        coords = b.coords()
        assert coords[index] == 1 and sum(map(abs, coords)) == 1


def test_der_cochain_shape_rules():
    top = gen.rand_multimap(random.Random(1), S2, 2)
    with pytest.raises(ShapeError):
        DerCochain(top, None)      # degree 2 needs a shadow
    with pytest.raises(ShapeError):
        DerCochain(top, gen.rand_altmap(random.Random(2), S2, 1))  # flavor mix
    with pytest.raises(ShapeError):
        CompatCochain([DerCochain(top, MultiMap.zero(S2, 1))] * 3)  # degree 2, 3 parts
