"""Exact arithmetic in O_k for a Galois field given by a field card, plus heights.

A ring element is a tuple of integer coordinates over the card's integral
basis. Multiplication goes through the structure constants ``mult_table``
(``mult_table[i][j]`` holds the coordinates of ``b_i * b_j``); each Galois
element is an integer matrix acting on coordinate columns.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Sequence

import mpmath
from mpmath import iv

from . import intervals
from .arith import factorize

CARD_SCHEMA_VERSION = "shimbound.fieldcard/1"

RingElement = tuple


class CardError(ValueError):
    """A field card is malformed or inconsistent."""


class HeightIndeterminate(ArithmeticError):
    def __init__(self, place: int, prec: int):
        super().__init__(f"indeterminate at place {place} (precision cap {prec} bits reached)")
        self.place = place


@dataclass(frozen=True)
class Place:
    """An archimedean place: interval images of the basis under one embedding.

    Each basis image is ``(re_mid, re_rad, im_mid, im_rad)`` as decimal strings.
    """

    kind: str  # "real" or "complex"
    basis: tuple[tuple[str, str, str, str], ...]


@dataclass(frozen=True)
class FieldCard:
    name: str
    degree: int
    discriminant: int
    class_number: int
    unit_rank: int
    regulator: tuple[str, str]
    ramified_primes: tuple[int, ...]
    mult_table: tuple
    galois_group: tuple
    places: tuple[Place, ...]
    fundamental_units: tuple[RingElement, ...]
    delta_k: str
    is_galois_asserted: bool = True
    hcf_free_asserted: bool = False
    distinguished_place: int = 0
    torsion_order: int = 2
    torsion_generator: RingElement = ()
    # (D0, coordinates of sqrt(D0)) for imaginary quadratic subfields Q(sqrt D0)
    imag_quadratic_subfields: tuple[tuple[int, RingElement], ...] = ()
    # optional externally supplied S^new: (q, coordinates of alpha_q)
    snew: tuple[tuple[int, RingElement], ...] = ()
    quadratic_D: int | None = None

    # -- basic ring structure -------------------------------------------------

    @property
    def n(self) -> int:
        return self.degree

    def one(self) -> RingElement:
        return (1,) + (0,) * (self.degree - 1)

    def zero(self) -> RingElement:
        return (0,) * self.degree

    def from_int(self, c: int) -> RingElement:
        return (c,) + (0,) * (self.degree - 1)

    def check(self, x: Sequence[int]) -> RingElement:
        if len(x) != self.degree:
            raise ValueError(f"dimension mismatch: expected {self.degree} coordinates, got {len(x)}")
        return tuple(x)

    def regulator_interval(self, prec: int = 256):
        with intervals.workprec(prec):
            return intervals.from_mid_rad(*self.regulator)

    def delta(self) -> Fraction:
        return Fraction(self.delta_k)

    @property
    def is_quadratic(self) -> bool:
        return self.quadratic_D is not None

    # -- embeddings -----------------------------------------------------------

    def basis_images(self, prec: int):
        """Per place, a list of (re, im) interval pairs for the basis, at ``prec`` bits."""
        with intervals.workprec(prec):
            if self.quadratic_D is not None:
                return _quadratic_images(self.quadratic_D)
            out = []
            for place in self.places:
                imgs = []
                for re_m, re_r, im_m, im_r in place.basis:
                    imgs.append((intervals.from_mid_rad(re_m, re_r), intervals.from_mid_rad(im_m, im_r)))
                out.append(imgs)
            return out

    def embed(self, x: RingElement, prec: int = intervals.DEFAULT_PREC):
        """Interval (re, im) of x at every place."""
        x = self.check(x)
        images = self.basis_images(prec)
        with intervals.workprec(prec):
            out = []
            for imgs in images:
                re = iv.mpf(0)
                im = iv.mpf(0)
                for c, (br, bi) in zip(x, imgs):
                    if c:
                        ci = iv.mpf(c)
                        re += ci * br
                        im += ci * bi
                out.append((re, im))
            return out

    def place_norms(self, x: RingElement, prec: int = intervals.DEFAULT_PREC):
        """||x||_v per place: |tau x| at real places, |tau x|^2 at complex ones."""
        with intervals.workprec(prec):
            out = []
            for place, (re, im) in zip(self.places, self.embed(x, prec)):
                if place.kind == "real":
                    out.append(abs(re))
                else:
                    out.append(re * re + im * im)
            return out


def _quadratic_images(D: int):
    root = iv.sqrt(iv.mpf(abs(D)))
    half = iv.mpf(1) / 2
    zero = iv.mpf(0)
    one = iv.mpf(1)
    if D < 0:
        if D % 4 == 1:
            return [[(one, zero), (half, root * half)]]
        return [[(one, zero), (zero, root)]]
    if D % 4 == 1:
        return [[(one, zero), ((1 + root) * half, zero)], [(one, zero), ((1 - root) * half, zero)]]
    return [[(one, zero), (root, zero)], [(one, zero), (-root, zero)]]


# -- ring operations ----------------------------------------------------------


def ring_add(x: RingElement, y: RingElement) -> RingElement:
    return tuple(a + b for a, b in zip(x, y))


def ring_sub(x: RingElement, y: RingElement) -> RingElement:
    return tuple(a - b for a, b in zip(x, y))


def ring_scale(c: int, x: RingElement) -> RingElement:
    return tuple(c * a for a in x)


def ring_mul(x: RingElement, y: RingElement, card: FieldCard) -> RingElement:
    n = card.degree
    if len(x) != n or len(y) != n:
        raise ValueError("dimension mismatch")
    out = [0] * n
    table = card.mult_table
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = table[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            for k, t in enumerate(row[j]):
                if t:
                    out[k] += c * t
    return tuple(out)


def ring_pow(x: RingElement, e: int, card: FieldCard) -> RingElement:
    if e < 0:
        return ring_pow(unit_inverse(x, card), -e, card)
    result = card.one()
    base = tuple(x)
    while e:
        if e & 1:
            result = ring_mul(result, base, card)
        e >>= 1
        if e:
            base = ring_mul(base, base, card)
    return result


def ring_pow_mod(x: RingElement, e: int, m: int, card: FieldCard) -> RingElement:
    """x^e with coordinates reduced mod m (valid since the basis is integral)."""
    result = tuple(c % m for c in card.one())
    base = tuple(c % m for c in x)
    while e:
        if e & 1:
            result = tuple(c % m for c in ring_mul(result, base, card))
        e >>= 1
        if e:
            base = tuple(c % m for c in ring_mul(base, base, card))
    return result


def galois_apply(sigma: int, x: RingElement, card: FieldCard) -> RingElement:
    if not 0 <= sigma < len(card.galois_group):
        raise IndexError(f"no Galois element with index {sigma}")
    g = card.galois_group[sigma]
    return tuple(sum(g[i][j] * x[j] for j in range(card.degree)) for i in range(card.degree))


def mult_matrix(x: RingElement, card: FieldCard) -> list[list[int]]:
    """Matrix of y -> x*y on coordinate columns."""
    n = card.degree
    cols = [ring_mul(x, tuple(int(i == j) for i in range(n)), card) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def det(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(r) for r in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def norm(x: RingElement, card: FieldCard) -> int:
    return det(mult_matrix(x, card))


def trace(x: RingElement, card: FieldCard) -> int:
    m = mult_matrix(x, card)
    return sum(m[i][i] for i in range(card.degree))


def group_ring_power(x: RingElement, eps: Sequence[int], card: FieldCard) -> RingElement:
    """prod_sigma sigma(x)^eps[sigma]."""
    if len(eps) != len(card.galois_group):
        raise ValueError("exponent vector must have one entry per Galois element")
    result = card.one()
    for s, a in enumerate(eps):
        if a:
            result = ring_mul(result, ring_pow(galois_apply(s, x, card), a, card), card)
    return result


def unit_inverse(u: RingElement, card: FieldCard) -> RingElement:
    """Inverse of a unit as N(u) * prod of its nontrivial conjugates."""
    nu = norm(u, card)
    if abs(nu) != 1:
        raise ValueError("element is not a unit")
    result = card.from_int(nu)
    for s in range(1, len(card.galois_group)):
        result = ring_mul(result, galois_apply(s, u, card), card)
    return result


def is_torsion(x: RingElement, card: FieldCard) -> bool:
    return abs(norm(x, card)) == 1 and ring_pow(x, card.torsion_order, card) == card.one()


def torsion_units(card: FieldCard) -> list[RingElement]:
    """All roots of unity of k, as powers of the card's torsion generator."""
    gen = card.torsion_generator or card.from_int(-1)
    out = [card.one()]
    for _ in range(card.torsion_order - 1):
        out.append(ring_mul(out[-1], gen, card))
    return out


# -- heights -----------------------------------------------------------------


def height_excess(x: RingElement, card: FieldCard, prec: int):
    """Interval X with H(x)^n_k = |Norm(x)| * X, namely X = prod_v max(1, 1/||x||_v).

    Places where ||x||_v is certified >= 1 contribute exactly 1, so the
    product is the exact value 1 when no place has ||x||_v < 1.
    """
    with intervals.workprec(prec):
        out = iv.mpf(1)
        for v in card.place_norms(x, prec):
            if v.a >= 1:
                continue
            if v.b <= 0:
                raise ArithmeticError("element vanishes at an archimedean place")
            lo = v.a if v.a > 0 else mpmath.mpf(0)
            if lo == 0:
                return iv.mpf([1, mpmath.inf])
            out *= intervals.imax1(iv.mpf(1) / iv.mpf([lo, v.b]))
        return out


def height(
    x: RingElement,
    card: FieldCard,
    precision: int = intervals.DEFAULT_PREC,
    tol: float = 1e-20,
    cap: int = intervals.PRECISION_CAP,
):
    """Certified interval for the absolute height H(x), escalating precision."""
    x = card.check(x)
    if not any(x):
        raise ValueError("height of 0 is undefined")
    prec = precision
    while True:
        with intervals.workprec(prec):
            prod_ = iv.mpf(1)
            for v in card.place_norms(x, prec):
                prod_ *= intervals.imax1(v)
            h = prod_ ** (iv.mpf(1) / card.degree)
            if intervals.rel_radius(h) < tol:
                return h
        if prec >= cap:
            worst = max(range(len(card.places)), key=lambda i: intervals.width(card.place_norms(x, prec)[i]))
            raise HeightIndeterminate(worst, prec)
        prec = min(2 * prec, cap)


def log_embedding(x: RingElement, card: FieldCard, prec: int = 200) -> list:
    """Midpoints of e_v * log|tau_v x| as mpmath floats (for unit reduction only)."""
    with mpmath.workprec(prec):
        vals = card.place_norms(x, prec)
        out = []
        for v in vals:
            lo, hi = intervals.endpoints(v)
            out.append(mpmath.log((lo + hi) / 2))
        return out


# -- Frobenius / local splitting from the multiplication table ---------------


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [[c % p for c in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [c * inv % p for c in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def primes_above_count(card: FieldCard, p: int) -> int:
    """Number g of primes of k above p, from the Frobenius fixed space of O_k/pO_k.

    x -> x^p is F_p-linear on O_k/p; its fixed space has dimension g (one
    copy of F_p per local factor).
    """
    n = card.degree
    frob_cols = [ring_pow_mod(tuple(int(i == j) for i in range(n)), p, p, card) for j in range(n)]
    rows = [[frob_cols[j][i] - int(i == j) for j in range(n)] for i in range(n)]
    return n - _rank_mod_p(rows, p)


def local_degree(card: FieldCard, p: int) -> int:
    """[k_lambda : Q_p] for any prime lambda above p (Galois case)."""
    g = primes_above_count(card, p)
    if card.degree % g:
        raise CardError(f"inconsistent splitting data at {p}")
    return card.degree // g


def splits_completely(card: FieldCard, p: int) -> bool:
    return card.discriminant % p != 0 and primes_above_count(card, p) == card.degree


# -- validation and (de)serialization ----------------------------------------


def validate_card(card: FieldCard) -> None:
    n = card.degree
    if n < 1:
        raise CardError("degree must be positive")
    if len(card.mult_table) != n or any(len(r) != n or any(len(c) != n for c in r) for r in card.mult_table):
        raise CardError("multiplication table must be n x n x n")
    if card.one() != tuple(1 if i == 0 else 0 for i in range(n)):
        raise CardError("first basis element must be 1")
    for i in range(n):
        e = tuple(int(j == i) for j in range(n))
        if ring_mul(card.one(), e, card) != e:
            raise CardError("first basis element does not act as identity")
    real = sum(1 for p in card.places if p.kind == "real")
    cplx = sum(1 for p in card.places if p.kind == "complex")
    if real + 2 * cplx != n:
        raise CardError("places do not account for every embedding")
    if card.unit_rank != real + cplx - 1:
        raise CardError(f"unit rank {card.unit_rank} != {real + cplx - 1} implied by the places")
    if len(card.fundamental_units) != card.unit_rank:
        raise CardError("wrong number of fundamental units")
    if not 0 <= card.distinguished_place < len(card.places):
        raise CardError("distinguished place out of range")
    if len(card.galois_group) != n:
        raise CardError("Galois group must have n_k elements")
    if [list(r) for r in card.galois_group[0]] != [[int(i == j) for j in range(n)] for i in range(n)]:
        raise CardError("first Galois element must be the identity")
    basis = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    for s in range(n):
        for i, j in product(range(n), repeat=2):
            lhs = galois_apply(s, ring_mul(basis[i], basis[j], card), card)
            rhs = ring_mul(galois_apply(s, basis[i], card), galois_apply(s, basis[j], card), card)
            if lhs != rhs:
                raise CardError(f"Galois element {s} is not a ring automorphism")
    mats = {_freeze(m) for m in card.galois_group}
    if len(mats) != n:
        raise CardError("Galois matrices are not distinct")
    for a in card.galois_group:
        for b in card.galois_group:
            if _freeze(_matmul(a, b)) not in mats:
                raise CardError("Galois matrices are not closed under composition")
    for u in card.fundamental_units:
        if abs(norm(card.check(u), card)) != 1:
            raise CardError(f"fundamental unit {u} has norm != +-1")
    ram = tuple(sorted(p for p, _ in factorize(card.discriminant)))
    if ram != tuple(sorted(card.ramified_primes)):
        raise CardError(f"ramified primes {card.ramified_primes} != prime divisors of d_k {ram}")
    if card.class_number < 1:
        raise CardError("class number must be positive")
    if card.delta() <= 0:
        raise CardError("delta_k must be positive")
    for D0, s in card.imag_quadratic_subfields:
        if ring_mul(s, s, card) != card.from_int(D0):
            raise CardError(f"sqrt({D0}) entry does not square to {D0}")
    for q, alpha in card.snew:
        if abs(norm(card.check(alpha), card)) != q**card.class_number:
            raise CardError(f"S^new generator for {q} has the wrong norm")


def _freeze(m):
    return tuple(tuple(r) for r in m)


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def card_to_dict(card: FieldCard) -> dict:
    return {
        "schema": CARD_SCHEMA_VERSION,
        "name": card.name,
        "degree": card.degree,
        "discriminant": str(card.discriminant),
        "class_number": card.class_number,
        "unit_rank": card.unit_rank,
        "regulator": {"mid": card.regulator[0], "rad": card.regulator[1]},
        "ramified_primes": [str(p) for p in card.ramified_primes],
        "integral_basis": [f"b{i}" for i in range(card.degree)],
        "mult_table": [[[str(c) for c in cell] for cell in row] for row in card.mult_table],
        "galois_group": [[[str(c) for c in r] for r in m] for m in card.galois_group],
        "places": [
            {
                "kind": p.kind,
                "basis": [
                    {"re": {"mid": b[0], "rad": b[1]}, "im": {"mid": b[2], "rad": b[3]}} for b in p.basis
                ],
            }
            for p in card.places
        ],
        "fundamental_units": [[str(c) for c in u] for u in card.fundamental_units],
        "delta_k": card.delta_k,
        "is_galois_asserted": card.is_galois_asserted,
        "hcf_free_asserted": card.hcf_free_asserted,
        "distinguished_place": card.distinguished_place,
        "torsion_order": card.torsion_order,
        "torsion_generator": [str(c) for c in card.torsion_generator],
        "imag_quadratic_subfields": [
            {"D": str(D0), "sqrt": [str(c) for c in s]} for D0, s in card.imag_quadratic_subfields
        ],
        "snew": [{"q": str(q), "alpha": [str(c) for c in a]} for q, a in card.snew],
        "quadratic_D": None if card.quadratic_D is None else str(card.quadratic_D),
    }


def _ints(xs) -> tuple[int, ...]:
    return tuple(int(c) for c in xs)


def card_from_dict(data: dict) -> FieldCard:
    from .schemas import validate_card_json

    validate_card_json(data)
    try:
        card = FieldCard(
            name=data["name"],
            degree=data["degree"],
            discriminant=int(data["discriminant"]),
            class_number=data["class_number"],
            unit_rank=data["unit_rank"],
            regulator=(data["regulator"]["mid"], data["regulator"]["rad"]),
            ramified_primes=_ints(data["ramified_primes"]),
            mult_table=tuple(tuple(_ints(cell) for cell in row) for row in data["mult_table"]),
            galois_group=tuple(tuple(_ints(r) for r in m) for m in data["galois_group"]),
            places=tuple(
                Place(
                    kind=p["kind"],
                    basis=tuple(
                        (b["re"]["mid"], b["re"]["rad"], b["im"]["mid"], b["im"]["rad"]) for b in p["basis"]
                    ),
                )
                for p in data["places"]
            ),
            fundamental_units=tuple(_ints(u) for u in data["fundamental_units"]),
            delta_k=data["delta_k"],
            is_galois_asserted=data["is_galois_asserted"],
            hcf_free_asserted=data["hcf_free_asserted"],
            distinguished_place=data.get("distinguished_place", 0),
            torsion_order=data.get("torsion_order", 2),
            torsion_generator=_ints(data.get("torsion_generator", [])),
            imag_quadratic_subfields=tuple(
                (int(e["D"]), _ints(e["sqrt"])) for e in data.get("imag_quadratic_subfields", [])
            ),
            snew=tuple((int(e["q"]), _ints(e["alpha"])) for e in data.get("snew", [])),
            quadratic_D=None if data.get("quadratic_D") is None else int(data["quadratic_D"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CardError(f"malformed card: {exc}") from exc
    validate_card(card)
    return card


def save_card(card: FieldCard, path: str | Path) -> None:
    Path(path).write_text(json.dumps(card_to_dict(card), indent=2, sort_keys=True) + "\n")


def load_card(path: str | Path) -> FieldCard:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise CardError(f"card is not valid JSON: {exc}") from exc
    return card_from_dict(data)
