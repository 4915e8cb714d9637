import json
from dataclasses import replace

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import iv

from shimbound import intervals
from shimbound.arith import kronecker, primes_up_to
from shimbound.field import (
    CardError,
    card_from_dict,
    card_to_dict,
    galois_apply,
    group_ring_power,
    height,
    height_excess,
    load_card,
    local_degree,
    norm,
    primes_above_count,
    ring_mul,
    ring_pow,
    save_card,
    splits_completely,
    trace,
    unit_inverse,
    validate_card,
)
from shimbound.quadratic import build_card

CARDS = {D: build_card(D) for D in (-1, -3, -5, 2, 5, -23, 10)}
coord = st.integers(-50, 50)


def mahler_height_oracle(x, card):
    """H(x) from the roots of the characteristic polynomial (Mahler measure)."""
    from shimbound.field import mult_matrix

    with mpmath.workprec(200):
        m = mpmath.matrix(mult_matrix(x, card))
        eig = mpmath.eig(m, left=False, right=False)
        prod = mpmath.mpf(1)
        for e in eig:
            prod *= max(1, abs(e))
        return prod ** (mpmath.mpf(1) / card.degree)


def test_norm_examples():
    assert norm((2, -1), CARDS[-5]) == 9
    assert norm((1, 1), CARDS[2]) == -1
    assert norm((3, 3), CARDS[2]) == -9
    assert norm((2, 1), CARDS[-1]) == 5


def test_ring_mul_example():
    # (1 + sqrt -5)^2 = -4 + 2 sqrt -5
    assert ring_mul((1, 1), (1, 1), CARDS[-5]) == (-4, 2)
    # w = (1 + sqrt 5)/2 satisfies w^2 = w + 1
    assert ring_mul((0, 1), (0, 1), CARDS[5]) == (1, 1)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(sorted(CARDS)), coord, coord, coord, coord)
def test_norm_multiplicative(D, a, b, c, d):
    card = CARDS[D]
    x, y = (a, b), (c, d)
    assert norm(ring_mul(x, y, card), card) == norm(x, card) * norm(y, card)


@settings(max_examples=60, deadline=None)
@given(st.tuples(coord, coord, coord), st.tuples(coord, coord, coord))
def test_cubic_norm_multiplicative(x, y):
    from cubic_card import cubic_card

    card = cubic_card(with_snew=False)
    assert norm(ring_mul(x, y, card), card) == norm(x, card) * norm(y, card)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(sorted(CARDS)), coord, coord)
def test_norm_inside_embedding_product(D, a, b):
    card = CARDS[D]
    x = (a, b)
    with intervals.workprec(128):
        prod = iv.mpf(1)
        for v in card.place_norms(x):
            prod *= v
        assert intervals.contains(prod, abs(norm(x, card)))


def test_cubic_norm_inside_embedding_product(cubic):
    for x in [(1, 2, 3), (-3, -3, -1), (5, 0, -7), (0, 1, 0)]:
        with intervals.workprec(128):
            prod = iv.mpf(1)
            for v in cubic.place_norms(x):
                prod *= v
            assert intervals.contains(prod, abs(norm(x, cubic)))


def test_galois_and_trace():
    card = CARDS[-5]
    assert galois_apply(1, (2, -1), card) == (2, 1)
    assert trace((2, -1), card) == 4
    card5 = CARDS[5]
    # sigma(w) = 1 - w
    assert galois_apply(1, (0, 1), card5) == (1, -1)


def test_group_ring_power():
    card = CARDS[-5]
    alpha = (2, -1)
    assert group_ring_power(alpha, (1, 1), card) == (9, 0)
    assert group_ring_power(alpha, (0, 0), card) == (1, 0)
    assert group_ring_power(alpha, (2, 0), card) == ring_mul(alpha, alpha, card)
    assert group_ring_power(alpha, (24, 24), card) == (3**48, 0)


def test_unit_inverse():
    card = CARDS[2]
    u = (1, 1)
    assert ring_mul(u, unit_inverse(u, card), card) == (1, 0)
    assert ring_pow(u, -2, card) == ring_pow(unit_inverse(u, card), 2, card)
    with pytest.raises(ValueError):
        unit_inverse((2, 1), card)


@pytest.mark.parametrize(
    "D,x,expected",
    [
        (-5, (0, 1), lambda: mpmath.sqrt(5)),
        (2, (1, 1), lambda: mpmath.sqrt(1 + mpmath.sqrt(2))),
        (2, (-1, 0), lambda: mpmath.mpf(1)),
        (2, (3, 3), lambda: mpmath.mpf(3)),
        (-5, (2, -1), lambda: mpmath.mpf(3)),
    ],
)
def test_height_examples(D, x, expected):
    h = height(x, CARDS[D])
    lo, hi = intervals.endpoints(h)
    with mpmath.workprec(200):
        tol = mpmath.mpf(10) ** -30
        assert lo - tol <= expected() <= hi + tol
    assert intervals.rel_radius(h) < 1e-20


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(CARDS)), coord, coord)
def test_height_matches_mahler_and_excess(D, a, b):
    card = CARDS[D]
    x = (a, b)
    if x == (0, 0):
        return
    h = height(x, card)
    oracle = mahler_height_oracle(x, card)
    lo, hi = intervals.endpoints(h)
    with mpmath.workprec(200):
        tol = mpmath.mpf(10) ** -30 * hi
        assert lo - tol <= oracle <= hi + tol
    with intervals.workprec(256):
        X = height_excess(x, card, 256)
        lhs = h ** card.degree
        rhs = abs(norm(x, card)) * X
        assert lhs.a <= rhs.b and rhs.a <= lhs.b


def test_height_zero_rejected():
    with pytest.raises(ValueError):
        height((0, 0), CARDS[2])


def test_primes_above_count_quadratic_vs_kronecker():
    for D, card in CARDS.items():
        for p in primes_up_to(200):
            k = kronecker(card.discriminant, p)
            expected = 2 if k == 1 else 1
            assert primes_above_count(card, p) == expected, (D, p)
            assert local_degree(card, p) == 2 // expected


def test_cubic_splitting(cubic):
    for p in primes_up_to(300):
        if p == 7:
            assert primes_above_count(cubic, p) == 1
            continue
        expected = p % 7 in (1, 6)
        assert splits_completely(cubic, p) == expected
        assert local_degree(cubic, p) == (1 if expected else 3)


def test_card_round_trip(tmp_path):
    for card in list(CARDS.values()):
        again = card_from_dict(json.loads(json.dumps(card_to_dict(card))))
        assert again == card
        path = tmp_path / "card.json"
        save_card(card, path)
        assert load_card(path) == card


def test_cubic_card_round_trip(cubic, tmp_path):
    validate_card(cubic)
    path = tmp_path / "cubic.json"
    save_card(cubic, path)
    assert load_card(path) == cubic


def test_validate_card_rejects_broken_cards():
    card = CARDS[2]
    with pytest.raises(CardError):
        validate_card(replace(card, fundamental_units=((2, 1),)))
    with pytest.raises(CardError):
        validate_card(replace(card, galois_group=(card.galois_group[0], card.galois_group[0])))
    with pytest.raises(CardError):
        validate_card(replace(card, ramified_primes=(3,)))
    with pytest.raises(CardError):
        validate_card(replace(card, unit_rank=0))
    data = card_to_dict(card)
    data["degree"] = "two"
    with pytest.raises(CardError):
        card_from_dict(data)
