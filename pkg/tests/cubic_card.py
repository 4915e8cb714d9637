"""A hand-built card for the cyclic cubic field Q(theta), theta = 2cos(2pi/7).

Used to exercise the general (non-quadratic) code paths.
"""

import itertools

import mpmath

from shimbound.field import FieldCard, Place, norm
from shimbound.quadratic import default_delta

# basis 1, t, t^2 with t^3 = -t^2 + 2t + 1
MULT = (
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((0, 1, 0), (0, 0, 1), (1, 2, -1)),
    ((0, 0, 1), (1, 2, -1), (-1, -1, 3)),
)
# sigma: t -> t^2 - 2, as a matrix acting on coordinate columns
S = ((1, -2, 3), (0, 0, -1), (0, 1, -1))


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def _dec(x):
    return mpmath.nstr(x, 60, min_fixed=-5, max_fixed=60)


def cubic_card(with_snew=True) -> FieldCard:
    ident = tuple(tuple(int(i == j) for j in range(3)) for i in range(3))
    with mpmath.workprec(300):
        roots = [2 * mpmath.cos(2 * mpmath.pi * j / 7) for j in (1, 2, 3)]
        places = tuple(
            Place("real", tuple((_dec(t**e), "1e-70", "0", "0") for e in range(3))) for t in roots
        )
        logs = [[mpmath.log(abs(t)), mpmath.log(abs(1 + t))] for t in roots[:2]]
        reg = abs(mpmath.det(mpmath.matrix(logs)))
    units = ((0, 1, 0), (1, 1, 0))
    card = FieldCard(
        name="Q(2cos(2pi/7))",
        degree=3,
        discriminant=49,
        class_number=1,
        unit_rank=2,
        regulator=(_dec(reg), "1e-60"),
        ramified_primes=(7,),
        mult_table=MULT,
        galois_group=(ident, S, _matmul(S, S)),
        places=places,
        fundamental_units=units,
        delta_k=default_delta(3),
        is_galois_asserted=True,
        hcf_free_asserted=True,
    )
    if not with_snew:
        return card
    from dataclasses import replace

    alpha = next(
        x for x in itertools.product(range(-3, 4), repeat=3) if abs(norm(x, card)) == 13
    )
    return replace(card, snew=((13, alpha),))
