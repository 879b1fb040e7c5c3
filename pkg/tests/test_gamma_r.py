from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gamma_elems, gamma_ends, nonzero_r
from inoue.gamma_r import (GammaREnd, GammaRElem, conjugation_lift, end_apply, end_compose,
                           end_inverse, gr_inv, gr_mul, gr_pow, lift_hom, lift_integrality,
                           mu_embed, mu_image_test, mu_preimage, semigroup_mul)

N = ((2, 1), (1, 1))


def elem(z1, z2, y, r):
    return GammaRElem((z1, z2), int(2 * Fraction(y)), r)


@pytest.mark.parametrize("r", [1, 2, -3])
def test_group_law_example(r):
    assert gr_mul(elem(1, 0, 0, r), elem(0, 1, 0, r)) == elem(1, 1, Fraction(r, 2), r)


def test_identity_and_inverse():
    g = elem(2, -1, Fraction(3, 2), 3)
    e = GammaRElem.identity(3)
    assert gr_mul(e, g) == g and gr_mul(g, gr_inv(g)) == e
    assert gr_inv(e) == e
    assert gr_inv(elem(1, 0, 0, 1)) == elem(-1, 0, 0, 1)


def test_inverse_even_r():
    g = elem(1, 1, 1, 2)
    assert gr_mul(g, gr_inv(g)).is_identity()


def test_mismatched_r_rejected():
    with pytest.raises(ValueError):
        gr_mul(elem(1, 0, 0, 1), elem(1, 0, 0, 2))


def test_even_r_needs_integer_y():
    with pytest.raises(ValueError):
        GammaRElem((0, 0), 1, 2)


@pytest.mark.parametrize("r", [1, 2, -5])
def test_mu_examples(r):
    assert mu_embed(1, 0, 0, r) == elem(1, 0, 0, r)
    assert mu_embed(0, 0, 1, r) == elem(0, 0, 1, r)
    assert mu_embed(1, 1, 1, r) == elem(1, 1, 1 + Fraction(r, 2), r)


def test_mu_image_examples():
    assert mu_image_test(elem(1, 1, Fraction(3, 2), 3))
    assert not mu_image_test(elem(0, 0, Fraction(1, 2), 3))
    assert mu_image_test(GammaRElem.identity(3))


def test_end_apply_examples():
    g = elem(0, 0, 1, 3)
    assert end_apply(GammaREnd.identity(), elem(2, 1, 0, 3)) == elem(2, 1, 0, 3)
    assert end_apply(conjugation_lift(N, 0, 0, 3), g) == g
    assert end_apply(GammaREnd(((0, 1), (1, 0)), (0, 0)), g) == elem(0, 0, -1, 3)


def test_end_compose_identity_and_translations():
    phi = GammaREnd(N, (3, -1))
    assert end_compose(phi, GammaREnd.identity()) == phi
    assert end_compose(GammaREnd.identity(), phi) == phi
    a, b = GammaREnd(((1, 0), (0, 1)), (1, 4)), GammaREnd(((1, 0), (0, 1)), (-3, 2))
    assert end_compose(a, b) == GammaREnd(((1, 0), (0, 1)), (-2, 6))


def test_lift_hom_examples():
    r = 3
    assert lift_hom(1, 0, 0, 0, 1, 0, r) == GammaREnd.identity()
    lift = lift_hom(2, 1, 5, 1, 1, -2, r)
    assert lift == conjugation_lift(N, 5, -2, r)
    assert lift.v == (5 + Fraction(r, 2) * 2, -2 + Fraction(r, 2))
    assert lift_hom(0, 1, 0, 1, 0, 0, r) == GammaREnd(((0, 1), (1, 0)), (0, 0))


@given(nonzero_r.flatmap(lambda r: st.tuples(gamma_elems(r), gamma_elems(r), gamma_elems(r))))
def test_associativity(triple):
    a, b, c = triple
    assert gr_mul(gr_mul(a, b), c) == gr_mul(a, gr_mul(b, c))


@given(nonzero_r, st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5),
       st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_mu_matches_generator_products(r, a1, a2, a3, b1, b2, b3):
    g1, g2, g3 = mu_embed(1, 0, 0, r), mu_embed(0, 1, 0, r), mu_embed(0, 0, 1, r)
    word = gr_mul(gr_mul(gr_pow(g1, a1), gr_pow(g2, a2)), gr_pow(g3, a3))
    assert word == mu_embed(a1, a2, a3, r)
    assert mu_preimage(word) == (a1, a2, a3)
    commutator = gr_mul(gr_mul(g1, g2), gr_inv(gr_mul(g2, g1)))
    assert commutator == elem(0, 0, r, r) == gr_pow(g3, r)
    # the image of mu is a subgroup
    other = mu_embed(b1, b2, b3, r)
    assert mu_image_test(gr_mul(word, other)) and mu_image_test(gr_inv(word))


@given(gamma_ends(), nonzero_r.flatmap(lambda r: st.tuples(gamma_elems(r), gamma_elems(r))))
def test_end_apply_is_homomorphism(phi, pair):
    g, h = pair
    if g.r % 2 == 0 and any(x % 2 for x in phi.v2):
        return  # half-integral v does not preserve Gamma_r for even r
    assert end_apply(phi, gr_mul(g, h)) == gr_mul(end_apply(phi, g), end_apply(phi, h))


@given(gamma_ends(), gamma_ends(), gamma_elems(3))
def test_anti_isomorphism(phi, psi, g):
    composed = end_compose(phi, psi)
    assert end_apply(composed, g) == end_apply(phi, end_apply(psi, g))
    assert composed == semigroup_mul(psi, phi)


@given(st.sampled_from([N, ((0, 1), (1, 0)), ((1, 1), (0, 1)), ((2, 1), (1, 0))]),
       st.integers(-4, 4), st.integers(-4, 4), gamma_elems(3))
def test_inverse_lift(k, v1, v2, g):
    phi = GammaREnd(k, (v1, v2))
    inv = end_inverse(phi)
    assert end_apply(inv, end_apply(phi, g)) == g


@given(nonzero_r, st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3),
       st.integers(-3, 3), st.integers(-3, 3))
def test_lift_hom_passes_integrality(r, a, b, c, d, e, f):
    lift = lift_hom(a, b, c, d, e, f, r)
    assert lift_integrality(lift, r)
    g1 = end_apply(lift, mu_embed(1, 0, 0, r))
    assert g1 == mu_embed(a, b, c, r)
