import math
import random

import pytest
from mpmath import iv

from shimbound import intervals
from shimbound.field import ring_add, ring_mul, ring_scale
from shimbound.quadratic import build_card
from shimbound.weil import (
    WeilNumber,
    beta_in_field,
    beta_power,
    enumerate_FR,
    power_trace,
    representatives_FR,
    weil_power_check,
)


def complex_power_oracle(w, M, prec=400):
    """beta^M + conj(beta)^M by direct interval powering."""
    with intervals.workprec(prec):
        re, im = w.interval(prec)
        zr, zi = iv.mpf(1), iv.mpf(0)
        for _ in range(M):
            zr, zi = zr * re - zi * im, zr * im + zi * re
        return 2 * zr


def test_enumerate_FR_counts():
    assert len(enumerate_FR(2)) == 10
    assert len(enumerate_FR(3)) == 14
    assert len(enumerate_FR(5)) == 18
    # a = +-2 sqrt(n) gives a single (rational) root
    assert len(enumerate_FR(4)) == 16
    assert sorted({w.a for w in enumerate_FR(2)}) == [-2, -1, 0, 1, 2]
    for n in range(1, 60):
        amax = math.isqrt(4 * n)
        rational = 2 if amax * amax == 4 * n else 0
        assert len(enumerate_FR(n)) == 2 * (2 * amax + 1) - rational
        assert len(representatives_FR(n)) == 2 * amax + 1


def test_weil_numbers_have_absolute_value_sqrt_n():
    for n in (2, 3, 5, 13):
        for w in enumerate_FR(n):
            re, im = w.interval()
            with intervals.workprec(128):
                assert intervals.contains(re * re + im * im, n)


def test_invalid_weil_pair():
    with pytest.raises(ValueError):
        WeilNumber(5, 2)
    with pytest.raises(ValueError):
        WeilNumber(0, 0)


def test_beta_one_plus_i_example():
    w = WeilNumber(-2, 2)
    assert w in enumerate_FR(2)
    chk = weil_power_check(w)
    assert chk.beta12 == -64 == -(2**6)
    assert chk.beta24 == 4096 == 2**12


def test_beta_squared_minus_q():
    # beta^2 = -q gives beta^12 = (-q)^6 = q^6, not -q^6
    for q in (2, 3, 5, 7):
        chk = weil_power_check(WeilNumber(0, q))
        assert chk.beta12 == q**6
        assert chk.beta24 == q**12


def test_beta12_generic_is_irrational():
    chk = weil_power_check(WeilNumber(1, 2))
    assert chk.beta12 is None
    assert chk.beta24 is None


def test_power_trace_matches_interval_evaluation():
    rng = random.Random(11)
    for n in range(1, 51):
        ws = representatives_FR(n)
        for w in rng.sample(ws, min(3, len(ws))):
            for M in (0, 1, 2, 7, 24, 48, rng.randrange(1, 201)):
                s = power_trace(w, M)
                assert intervals.contains(complex_power_oracle(w, M), s), (w, M)


def test_beta_power_recurrence():
    for w in (WeilNumber(-3, 3), WeilNumber(1, 5), WeilNumber(-2, 2)):
        for M in (1, 5, 24, 48):
            x, y = beta_power(w, M)
            with intervals.workprec(400):
                re, im = w.interval(400)
                zr, zi = iv.mpf(1), iv.mpf(0)
                for _ in range(M):
                    zr, zi = zr * re - zi * im, zr * im + zi * re
                assert intervals.contains(zr - y * re, x)
                assert zi.a <= y * im.b and y * im.a <= zi.b
            # trace from the (x, y) form: 2x - a y
            assert 2 * x - w.a * y == power_trace(w, M)


def test_conjugate():
    w = WeilNumber(1, 3)
    assert w.conjugate() == WeilNumber(1, 3, "lower")
    assert w.conjugate().conjugate() == w
    assert power_trace(w, 10) == power_trace(w.conjugate(), 10)


def _satisfies_minpoly(b, w, card):
    lhs = ring_add(ring_add(ring_mul(b, b, card), ring_scale(w.a, b)), card.from_int(w.n))
    return lhs == card.zero()


def test_beta_in_field():
    gi = build_card(-1)
    assert beta_in_field(WeilNumber(-4, 5), gi) == (2, 1)
    assert beta_in_field(WeilNumber(-4, 5, "lower"), gi) == (2, -1)
    assert beta_in_field(WeilNumber(-2, 5), gi) == (1, 2)
    assert beta_in_field(WeilNumber(-1, 5), gi) is None
    assert beta_in_field(WeilNumber(-2, 2), gi) == (1, 1)
    k5 = build_card(-5)
    assert all(beta_in_field(w, k5) is None for w in enumerate_FR(3))
    k3 = build_card(-3)
    found = [w for w in enumerate_FR(7) if beta_in_field(w, k3) is not None]
    assert found
    for card in (gi, k3, build_card(-7), build_card(-2)):
        for n in (2, 3, 5, 7, 11):
            for w in enumerate_FR(n):
                b = beta_in_field(w, card)
                if b is not None:
                    assert _satisfies_minpoly(b, w, card)
                    # the right root: compare at the distinguished embedding
                    re, im = card.embed(b)[card.distinguished_place]
                    wr, wi = w.interval()
                    with intervals.workprec(128):
                        assert (re - wr).a <= 0 <= (re - wr).b
                        assert (im - wi).a <= 0 <= (im - wi).b
    assert beta_in_field(WeilNumber(-2, 5), build_card(2)) is None
