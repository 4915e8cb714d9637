import math

import mpmath
import pytest

from shimbound import intervals
from shimbound.arith import is_squarefree, kronecker, primes_up_to
from shimbound.field import norm, ring_mul
from shimbound.quadratic import (
    QuadForm,
    build_card,
    class_group,
    compose,
    count_cycles_indef,
    default_delta,
    field_discriminant,
    fundamental_unit,
    hcf_containment_check,
    ideal_class,
    ideal_mul,
    ideal_pow,
    prime_above,
    principal_generator,
    principal_ideal,
    reduce_definite,
    reduced_forms,
    regulator_interval,
    split_primes,
    split_type,
)


def reduced_form_count_oracle(d):
    """Count reduced primitive positive definite forms of discriminant d < 0."""
    count = 0
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b * b - d) % (4 * a):
                continue
            c = (b * b - d) // (4 * a)
            if c < a or math.gcd(math.gcd(a, b), c) != 1:
                continue
            if b < 0 and a == c:
                continue
            count += 1
        a += 1
    return count


def analytic_class_number(d, log_unit=None):
    """Dirichlet's class number formula."""
    chi = [0] + [kronecker(d, a) for a in range(1, abs(d))]
    if d < 0:
        w = {-3: 6, -4: 4}.get(d, 2)
        return -w * sum(a * chi[a] for a in range(abs(d))) / (2 * abs(d))
    with mpmath.workprec(120):
        s = sum(chi[a] * mpmath.log(mpmath.sin(mpmath.pi * a / d)) for a in range(1, d))
        return -s / (2 * log_unit)


def pell_unit_oracle(D):
    """Least unit > 1 of Z[w] by brute force over y, as (1, w)-coordinates."""
    y = 1
    while True:
        for sign in (-1, 1):
            if D % 4 == 1:
                t = D * y * y + 4 * sign
                x = math.isqrt(t) if t >= 0 else -1
                if x >= 0 and x * x == t and (x - y) % 2 == 0:
                    return ((x - y) // 2, y)
            else:
                t = D * y * y + sign
                x = math.isqrt(t) if t >= 0 else -1
                if x >= 0 and x * x == t:
                    return (x, y)
        y += 1


def squarefree_range(lo, hi):
    return [D for D in range(lo, hi) if D not in (0, 1) and is_squarefree(abs(D))]


def test_class_numbers_examples():
    assert build_card(-5).class_number == 2
    assert build_card(-23).class_number == 3
    assert build_card(-163).class_number == 1
    assert build_card(-1).class_number == 1
    assert build_card(10).class_number == 2
    assert build_card(79).class_number == 3


def test_reduced_forms_match_oracle():
    for d in range(-400, 0):
        if d % 4 not in (0, 1):
            continue
        assert len(reduced_forms(d)) == reduced_form_count_oracle(d), d


def test_imaginary_class_number_matches_analytic_formula():
    for D in squarefree_range(-200, 0):
        d = field_discriminant(D)
        assert build_card(D).class_number == round(analytic_class_number(d)), D


def test_real_class_number_matches_analytic_formula():
    for D in squarefree_range(2, 120):
        card = build_card(D)
        x, y = fundamental_unit(D)
        with mpmath.workprec(120):
            root = mpmath.sqrt(D)
            w = (1 + root) / 2 if D % 4 == 1 else root
            log_eps = mpmath.log(abs(x + y * w))
        h = analytic_class_number(card.discriminant, log_eps)
        assert abs(h - card.class_number) < 1e-6, (D, h)


def test_fundamental_unit_minimal():
    for D in squarefree_range(2, 51):
        assert fundamental_unit(D) == pell_unit_oracle(D), D


def test_regulators():
    for D, expected in ((2, "0.881373587019543025232609324979"), (5, "0.481211825059603447497758913424")):
        r, _ = regulator_interval(fundamental_unit(D), D)
        lo, hi = intervals.endpoints(r)
        with mpmath.workprec(200):
            assert hi - lo < mpmath.mpf(10) ** -9
            ref = mpmath.asinh(1) if D == 2 else mpmath.log((1 + mpmath.sqrt(5)) / 2)
            assert lo <= ref <= hi
            assert abs(ref - mpmath.mpf(expected)) < mpmath.mpf(10) ** -29


def test_composition_matches_ideal_multiplication():
    for D in (-5, -23, -14, -47, 10, 79, 82, -105):
        card = build_card(D)
        d = card.discriminant
        cg = class_group(card)
        qs = [q for q in primes_up_to(60) if split_type(card, q) != "inert"][:5]
        ideals = [prime_above(card, q) for q in qs]
        for I in ideals:
            for J in ideals:
                f, g = ideal_class(card, I), ideal_class(card, J)
                assert ideal_class(card, ideal_mul(I, J, card)) == cg.canonical(compose(f, g)), (D, I, J)
        assert cg.order_h == card.class_number
        assert len(cg.elements()) == card.class_number
        assert d == QuadForm(*cg.canonical(compose(cg.elements()[0], cg.elements()[0]))).discriminant


def test_class_group_structure():
    cg = class_group(build_card(-23))
    f = [g for g, _, _ in cg.generators][0]
    assert cg.order(f) == 3
    assert cg.power(f, 3) == cg.canonical(reduce_definite(QuadForm(1, 1, 6)))
    cg = class_group(build_card(-5))
    assert sorted(tuple(x) for x in cg.elements()) == [(1, 0, 5), (2, 2, 3)]


def test_indefinite_cycles():
    # the form class group is the wide class group here (units of norm -1)
    assert count_cycles_indef(8) == 1
    assert count_cycles_indef(5) == 1
    assert count_cycles_indef(40) == 2


def test_split_type():
    card = build_card(-5)
    assert split_type(card, 3) == "split"
    assert split_type(card, 2) == "ramified"
    assert split_type(card, 5) == "ramified"
    assert split_type(card, 11) == "inert"
    from itertools import islice

    assert list(islice(split_primes(card), 4)) == [3, 7, 23, 29]


def test_prime_above_canonical():
    card = build_card(-5)
    I = prime_above(card, 3)
    assert I.norm == 3
    # (3, 1 + sqrt -5)
    assert I == principal_ideal_sum(card, 3, (1, 1))
    card = build_card(-1)
    assert prime_above(card, 5) == principal_ideal_sum(card, 5, (2, 1))
    with pytest.raises(ValueError):
        prime_above(build_card(-5), 11)


def principal_ideal_sum(card, p, x):
    from shimbound.quadratic import ideal_from_generators

    return ideal_from_generators([card.from_int(p), x], card)


@pytest.mark.parametrize("D", [-5, -23, -14, -1, -3, 2, 3, 5, 7, 10, 79, -6, -7])
def test_principal_generator_generates(D):
    card = build_card(D)
    h = card.class_number
    cg = class_group(card)
    for q in list(primes_up_to(100)):
        if split_type(card, q) != "split":
            continue
        I = prime_above(card, q)
        gen = principal_generator(card, ideal_pow(I, h, card))
        assert gen is not None
        assert abs(norm(gen, card)) == q**h
        assert principal_ideal(gen, card) == ideal_pow(I, h, card)
        # nonprincipal ideals have no generator
        if ideal_class(card, I) != cg.canonical(cg.elements()[0]) and h > 1:
            assert principal_generator(card, I) is None


def test_principal_generator_examples():
    card = build_card(-5)
    gen = principal_generator(card, ideal_pow(prime_above(card, 3), 2, card))
    assoc = {(2, -1), (-2, 1)}
    assert gen in assoc
    card = build_card(-1)
    assert principal_generator(card, prime_above(card, 5)) == (2, 1)


def test_card_fields():
    card = build_card(-5)
    assert card.discriminant == -20
    assert card.ramified_primes == (2, 5)
    assert card.unit_rank == 0
    assert card.delta_k == default_delta(2) == "0.347688935729"
    assert ring_mul(card.imag_quadratic_subfields[0][1], card.imag_quadratic_subfields[0][1], card) == (-5, 0)
    with pytest.raises(ValueError):
        build_card(12)
    with pytest.raises(ValueError):
        build_card(1)


def test_default_delta_is_a_lower_bound():
    with mpmath.workprec(100):
        voutier = 2 / mpmath.log(6) ** 3
        assert mpmath.mpf(default_delta(2)) <= voutier
        assert voutier - mpmath.mpf(default_delta(2)) < mpmath.mpf(10) ** -12
        assert mpmath.mpf(default_delta(3)) <= 2 / mpmath.log(9) ** 3


def test_hcf_containment():
    assert hcf_containment_check(build_card(-1)) is True
    assert hcf_containment_check(build_card(-3)) is True
    assert hcf_containment_check(build_card(-163)) is True
    assert hcf_containment_check(build_card(-5)) is False
    assert hcf_containment_check(build_card(2)) is False
