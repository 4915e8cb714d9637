"""Quadratic fields Q(sqrt D): field cards, class groups, ideals, generators.

Conventions
-----------
The integral basis is (1, w) with w = sqrt(D) when D = 2, 3 mod 4 and
w = (1 + sqrt(D))/2 when D = 1 mod 4. A primitive ideal a*Z + ((b + sqrt(d))/2)*Z
is identified with the form (a, b, (b^2 - d)/(4a)); this map is a group
isomorphism onto form classes under Gauss composition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import mpmath
from mpmath import iv

from . import intervals
from .arith import factorize, is_prime, is_squarefree, kronecker, prime_stream, sqrt_mod_prime
from .field import FieldCard, Place, norm, ring_mul

REGULATOR_TOL = mpmath.mpf("1e-9")


class QuadForm(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c


def field_discriminant(D: int) -> int:
    return D if D % 4 == 1 else 4 * D


def _check_D(D: int) -> None:
    if D in (0, 1):
        raise ValueError("D must differ from 0 and 1")
    if not is_squarefree(D):
        raise ValueError(f"D = {D} is not squarefree")


# -- definite forms -----------------------------------------------------------


def _normalize(f: QuadForm) -> QuadForm:
    a, b, c = f
    d = f.discriminant
    r = (a - b) // (2 * a)
    b = b + 2 * r * a
    return QuadForm(a, b, (b * b - d) // (4 * a))


def reduce_definite(f: QuadForm) -> QuadForm:
    """Reduced representative: |b| <= a <= c, b >= 0 if |b| = a or a = c."""
    if f.a <= 0 or f.discriminant >= 0:
        raise ValueError("reduce_definite needs a positive definite form")
    f = _normalize(f)
    while f.a > f.c:
        f = _normalize(QuadForm(f.c, -f.b, f.a))
    if f.a == f.c and f.b < 0:
        f = QuadForm(f.a, -f.b, f.c)
    return f


def reduced_forms(d: int) -> list[QuadForm]:
    """Brute-force list of reduced primitive positive definite forms of discriminant d < 0."""
    out = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b * b - d) % (4 * a):
                continue
            c = (b * b - d) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append(QuadForm(a, b, c))
        a += 1
    return out


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with u*a + v*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def compose(f1: QuadForm, f2: QuadForm) -> QuadForm:
    """Gauss composition of primitive forms of equal discriminant (unreduced)."""
    d = f1.discriminant
    if f2.discriminant != d:
        raise ValueError("forms have different discriminants")
    if f1.a > f2.a:
        f1, f2 = f2, f1
    a1, b1, _ = f1
    a2, b2, c2 = f2
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, dd = 0, a1
    else:
        dd, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % dd == 0:
        y2, x2, d1 = -1, 0, dd
    else:
        d1, x2, y2 = _xgcd(s, dd)
        y2 = -y2
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    return QuadForm(a3, b3, (b3 * b3 - d) // (4 * a3))


# -- indefinite forms / ideals (a > 0) ----------------------------------------


def _normalize_indef(a: int, b: int, d: int) -> int:
    sd = math.isqrt(d)
    if a <= sd:
        return sd - ((sd - b) % (2 * a))
    r = (a - b) // (2 * a)
    return b + 2 * r * a


def is_reduced_indef(a: int, b: int, d: int) -> bool:
    sd = math.isqrt(d)
    if not 0 < b <= sd:
        return False
    if (2 * a + b) <= sd:  # needs sqrt(d) < 2a + b
        return False
    m = 2 * a - b
    return m <= 0 or m * m < d


def rho_indef(a: int, b: int, d: int) -> tuple[int, int, int]:
    """One reduction step. Returns (a', b', c) with c = (b^2 - d)/(4a) signed.

    The ideal [a, (b + sqrt d)/2] equals ((b + sqrt d)/(2c)) * [a', (b' + sqrt d)/2].
    """
    c = (b * b - d) // (4 * a)
    a2 = abs(c)
    return a2, _normalize_indef(a2, -b, d), c


def indefinite_cycle(a: int, b: int, d: int) -> list[tuple[int, int]]:
    """Cycle of reduced ideals containing the reduction of [a, (b+sqrt d)/2]."""
    b = _normalize_indef(a, b, d)
    while not is_reduced_indef(a, b, d):
        a, b, _ = rho_indef(a, b, d)
    start = (a, b)
    cyc = [start]
    while True:
        a, b, _ = rho_indef(a, b, d)
        if (a, b) == start:
            return cyc
        cyc.append((a, b))


def reduced_ideals_indef(d: int) -> list[tuple[int, int]]:
    """All reduced primitive ideals [a, (b+sqrt d)/2] of discriminant d > 0."""
    out = []
    sd = math.isqrt(d)
    for a in range(1, sd + 1):
        for b in range(1, sd + 1):
            if (b - d) % 2 or (b * b - d) % (4 * a):
                continue
            if is_reduced_indef(a, b, d):
                out.append((a, b))
    return out


def count_cycles_indef(d: int) -> int:
    seen: set[tuple[int, int]] = set()
    count = 0
    for ab in reduced_ideals_indef(d):
        if ab in seen:
            continue
        count += 1
        seen.update(indefinite_cycle(*ab, d))
    return count


# -- class group --------------------------------------------------------------


class ClassGroup:
    """Ideal class group of a quadratic field, on canonical form representatives.

    Imaginary: reduced forms. Real: the least (a, b) on the cycle of reduced
    ideals. ``generators`` is a polycyclic generating sequence: each entry is
    (form, relative order, order), and every class has a unique exponent
    vector with 0 <= e_i < relative order_i.
    """

    def __init__(self, d: int):
        self.d = d
        self._canon_cache: dict[tuple[int, int], QuadForm] = {}
        self.identity = self.canonical(principal_form(d))
        self.log: dict[QuadForm, tuple[int, ...]] = {self.identity: ()}
        self.generators: list[tuple[QuadForm, int, int]] = []
        for p in _primes_up_to_bound(d):
            if kronecker(d, p) == -1:
                continue
            self._adjoin(self.canonical(prime_form(d, p)))

    def canonical(self, f: QuadForm) -> QuadForm:
        if self.d < 0:
            return reduce_definite(f)
        a, b = f.a, f.b
        if a < 0:
            raise ValueError("indefinite representatives need a > 0")
        key = (a, _normalize_indef(a, b, self.d))
        hit = self._canon_cache.get(key)
        if hit is None:
            cyc = indefinite_cycle(*key, self.d)
            a0, b0 = min(cyc)
            hit = QuadForm(a0, b0, (b0 * b0 - self.d) // (4 * a0))
            for ab in cyc:
                self._canon_cache[ab] = hit
            self._canon_cache[key] = hit
        return hit

    def mul(self, f: QuadForm, g: QuadForm) -> QuadForm:
        return self.canonical(compose(f, g))

    def inverse(self, f: QuadForm) -> QuadForm:
        return self.canonical(QuadForm(f.a, -f.b, f.c))

    def power(self, f: QuadForm, e: int) -> QuadForm:
        if e < 0:
            return self.power(self.inverse(f), -e)
        result = self.identity
        base = self.canonical(f)
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def order(self, f: QuadForm) -> int:
        x = self.canonical(f)
        k = 1
        while x != self.identity:
            x = self.mul(x, f)
            k += 1
        return k

    def _adjoin(self, g: QuadForm) -> None:
        if g in self.log:
            return
        old = dict(self.log)
        powers = [self.identity]
        x = g
        while x not in old:
            powers.append(x)
            x = self.mul(x, g)
        r = len(powers)
        new: dict[QuadForm, tuple[int, ...]] = {}
        for elt, exps in old.items():
            for j, gp in enumerate(powers):
                new[self.mul(elt, gp)] = exps + (j,)
        self.log = {k: v + (0,) * (len(self.generators) + 1 - len(v)) for k, v in new.items()}
        self.generators.append((g, r, self.order(g)))

    @property
    def order_h(self) -> int:
        return len(self.log)

    def elements(self) -> list[QuadForm]:
        return sorted(self.log)

    def coordinates(self, f: QuadForm) -> tuple[int, ...]:
        exps = self.log[self.canonical(f)]
        return exps + (0,) * (len(self.generators) - len(exps))

    def subgroup(self, gens: list[QuadForm]) -> set[QuadForm]:
        sub = {self.identity}
        for g in gens:
            g = self.canonical(g)
            if g in sub:
                continue
            base = set(sub)
            x = g
            while x not in base:
                sub |= {self.mul(x, s) for s in base}
                x = self.mul(x, g)
        return sub


def _primes_up_to_bound(d: int) -> list[int]:
    if d < 0:
        bound = int(2 * math.sqrt(-d) / math.pi) + 1
    else:
        bound = int(math.sqrt(d) / 2) + 1
    return [p for p in range(2, bound + 1) if is_prime(p)]


def principal_form(d: int) -> QuadForm:
    delta = d % 2
    return QuadForm(1, delta, (delta - d) // 4)


def _least_root_4p(d: int, p: int) -> int:
    """Least b >= 0 with b^2 = d mod 4p."""
    if p == 2:
        cands = [b for b in range(4) if (b * b - d) % 8 == 0]
    else:
        roots = sqrt_mod_prime(d, p)
        cands = [b for r in roots for b in (r, r + p) if (b - d) % 2 == 0]
    if not cands:
        raise ValueError(f"{p} is inert in discriminant {d}")
    return min(cands)


def prime_form(d: int, p: int) -> QuadForm:
    b = _least_root_4p(d, p)
    return QuadForm(p, b, (b * b - d) // (4 * p))


# -- ideals -------------------------------------------------------------------


@dataclass(frozen=True)
class QuadIdeal:
    """Ideal with HNF columns (h11, 0) and (h12, h22) over the basis (1, w)."""

    hnf: tuple[tuple[int, int], tuple[int, int]]

    @property
    def norm(self) -> int:
        return self.hnf[0][0] * self.hnf[1][1]

    def basis(self) -> tuple[tuple[int, int], tuple[int, int]]:
        (h11, h12), (_, h22) = self.hnf
        return (h11, 0), (h12, h22)


def hnf(vectors, n: int) -> list[list[int]]:
    """Upper-triangular Hermite normal form (as columns) of a full-rank lattice in Z^n."""
    rows = [list(v) for v in vectors if any(v)]
    basis: list[list[int] | None] = [None] * n
    for i in reversed(range(n)):
        pivot = None
        rest = []
        for r in rows:
            if r[i] == 0:
                rest.append(r)
            elif pivot is None:
                pivot = r
            else:
                g, s, t = _xgcd(pivot[i], r[i])
                pi, ri = pivot[i] // g, r[i] // g
                new_p = [s * x + t * y for x, y in zip(pivot, r)]
                new_r = [ri * x - pi * y for x, y in zip(pivot, r)]
                pivot = new_p
                if any(new_r):
                    rest.append(new_r)
        if pivot is None:
            raise ValueError("lattice is not of full rank")
        if pivot[i] < 0:
            pivot = [-x for x in pivot]
        basis[i] = pivot
        rows = [r for r in rest if any(r)]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            q = basis[j][i] // basis[i][i]
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return [[basis[j][i] for j in range(n)] for i in range(n)]


def ideal_from_generators(gens, card: FieldCard) -> QuadIdeal:
    """Ideal generated (as an O_k-module) by the given elements."""
    w = (0, 1)
    vecs = []
    for g in gens:
        vecs.append(tuple(g))
        vecs.append(ring_mul(tuple(g), w, card))
    h = hnf(vecs, 2)
    return QuadIdeal(((h[0][0], h[0][1]), (h[1][0], h[1][1])))


def principal_ideal(alpha, card: FieldCard) -> QuadIdeal:
    return ideal_from_generators([alpha], card)


def ideal_mul(I: QuadIdeal, J: QuadIdeal, card: FieldCard) -> QuadIdeal:
    prods = [ring_mul(u, v, card) for u in I.basis() for v in J.basis()]
    h = hnf(prods, 2)
    return QuadIdeal(((h[0][0], h[0][1]), (h[1][0], h[1][1])))


def ideal_pow(I: QuadIdeal, e: int, card: FieldCard) -> QuadIdeal:
    result = QuadIdeal(((1, 0), (0, 1)))
    base = I
    while e:
        if e & 1:
            result = ideal_mul(result, base, card)
        e >>= 1
        if e:
            base = ideal_mul(base, base, card)
    return result


def ideal_to_form(I: QuadIdeal, d: int) -> tuple[int, QuadForm]:
    """(content g, form of the primitive part)."""
    (h11, h12), (_, h22) = I.hnf
    g = h22
    a = h11 // g
    t = h12 // g
    b = 2 * t + d % 2
    return g, QuadForm(a, b, (b * b - d) // (4 * a))


def form_to_ideal(f: QuadForm, d: int) -> QuadIdeal:
    t = (f.b - d % 2) // 2
    return QuadIdeal(((f.a, t % f.a), (0, 1)))


# -- the field card -----------------------------------------------------------


def _half_b_plus_sqrt_d(b: int, D: int) -> tuple[Fraction, Fraction]:
    """Coordinates over (1, w) of (b + sqrt d)/2, d the field discriminant."""
    if D % 4 == 1:
        return Fraction(b - 1, 2), Fraction(1)
    return Fraction(b, 2), Fraction(1)


def sqrt_D_coords(D: int) -> tuple[int, int]:
    return (-1, 2) if D % 4 == 1 else (0, 1)


def _multiplication_table(D: int):
    if D % 4 == 1:
        ww = ((D - 1) // 4, 1)
    else:
        ww = (D, 0)
    return (((1, 0), (0, 1)), ((0, 1), ww))


def _galois(D: int):
    ident = ((1, 0), (0, 1))
    if D % 4 == 1:
        return (ident, ((1, 1), (0, -1)))
    return (ident, ((1, 0), (0, -1)))


def fundamental_unit(D: int) -> tuple[int, int]:
    """Fundamental unit (> 1 at sqrt D > 0) of a real quadratic field, via the
    continued fraction of w. Returns coordinates over (1, w)."""
    if D <= 1:
        raise ValueError("real quadratic fields only")
    P, Q = (1, 2) if D % 4 == 1 else (0, 1)
    sd = math.isqrt(D)
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    while True:
        a = (P + sd) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        # candidate p - q*w' where w' is the conjugate of w
        coords = (p - q, q) if D % 4 == 1 else (p, q)
        if abs(_norm_w(coords, D)) == 1:
            return coords
        P = a * Q - P
        Q = (D - P * P) // Q


def _norm_w(x, D: int) -> int:
    a, b = x
    if D % 4 == 1:
        return a * a + a * b - b * b * ((D - 1) // 4)
    return a * a - D * b * b


def regulator_interval(unit, D: int, tol=REGULATOR_TOL, prec: int = 128, cap: int = intervals.PRECISION_CAP):
    """Certified interval for log(unit) at the embedding sqrt D > 0."""
    while True:
        with intervals.workprec(prec):
            root = iv.sqrt(iv.mpf(D))
            x, y = unit
            w = (1 + root) / 2 if D % 4 == 1 else root
            val = iv.mpf(x) + iv.mpf(y) * w
            r = iv.log(val)
            lo, hi = intervals.endpoints(r)
            if hi - lo < tol / 1000 or prec >= cap:
                return r, prec
        prec *= 2


def default_delta(n: int) -> str:
    """Lower bound delta with log prod_v max(1, ||a||_v) >= delta for non-torsion a in k.

    For a of degree e dividing n that product equals (n/e) log M(a) >= log M(a),
    where M is the Mahler measure. Use log M >= log 2 for e = 1 and Voutier's
    bound log M(a) > 2/(log 3e)^3 for e >= 2 (Acta Arith. 74 (1996) 81-95),
    minimised over the divisors of n and rounded down to 12 digits.
    """
    best = mpmath.log(2)
    for e in range(2, n + 1):
        if n % e == 0:
            best = min(best, 2 / mpmath.log(3 * e) ** 3)
    return mpmath.nstr(mpmath.floor(best * 10**12) / 10**12, 12)


def _dec(x, digits: int = 60) -> str:
    return mpmath.nstr(x, digits, min_fixed=-5, max_fixed=digits)


def _places(D: int) -> tuple[Place, ...]:
    one = ("1", "0", "0", "0")
    rad = "1e-58"
    with mpmath.workprec(256):
        root = mpmath.sqrt(abs(D))
        if D < 0:
            if D % 4 == 1:
                w = ("0.5", "0", _dec(root / 2), rad)
            else:
                w = ("0", "0", _dec(root), rad)
            return (Place("complex", (one, w)),)
        if D % 4 == 1:
            w1 = (_dec((1 + root) / 2), rad, "0", "0")
            w2 = (_dec((1 - root) / 2), rad, "0", "0")
        else:
            w1 = (_dec(root), rad, "0", "0")
            w2 = (_dec(-root), rad, "0", "0")
    return (Place("real", (one, w1)), Place("real", (one, w2)))


def build_card(D: int) -> FieldCard:
    """Field card for Q(sqrt D) with every invariant computed here."""
    _check_D(D)
    d = field_discriminant(D)
    cg = ClassGroup(d)
    ram = tuple(sorted(p for p, _ in factorize(d)))
    if D < 0:
        units: tuple = ()
        reg = ("1", "0")
        if D == -1:
            tors = (4, (0, 1))
        elif D == -3:
            tors = (6, (0, 1))
        else:
            tors = (2, (-1, 0))
    else:
        eps = fundamental_unit(D)
        units = (eps,)
        r, prec = regulator_interval(eps, D)
        lo, hi = intervals.endpoints(r)
        with mpmath.workprec(prec):
            mid = (lo + hi) / 2
            rad = (hi - lo) / 2
            reg = (_dec(mid, 40), mpmath.nstr(rad * 2 + abs(mid) * mpmath.mpf(10) ** -38, 3))
        tors = (2, (-1, 0))
    h = cg.order_h
    card = FieldCard(
        name=f"Q(sqrt({D}))",
        degree=2,
        discriminant=d,
        class_number=h,
        unit_rank=0 if D < 0 else 1,
        regulator=reg,
        ramified_primes=ram,
        mult_table=_multiplication_table(D),
        galois_group=_galois(D),
        places=_places(D),
        fundamental_units=units,
        delta_k=default_delta(2),
        is_galois_asserted=True,
        hcf_free_asserted=not (D < 0 and h == 1),
        distinguished_place=0,
        torsion_order=tors[0],
        torsion_generator=tors[1],
        imag_quadratic_subfields=((D, sqrt_D_coords(D)),) if D < 0 else (),
        quadratic_D=D,
    )
    return card


def class_group(card: FieldCard) -> ClassGroup:
    _require_quadratic(card)
    return _class_group_cached(card.discriminant)


_CG_CACHE: dict[int, ClassGroup] = {}


def _class_group_cached(d: int) -> ClassGroup:
    if d not in _CG_CACHE:
        _CG_CACHE[d] = ClassGroup(d)
    return _CG_CACHE[d]


def _require_quadratic(card: FieldCard) -> None:
    if card.quadratic_D is None:
        raise ValueError(f"{card.name} is not a quadratic card")


def ideal_class(card: FieldCard, I: QuadIdeal) -> QuadForm:
    _, f = ideal_to_form(I, card.discriminant)
    return class_group(card).canonical(f)


# -- splitting ----------------------------------------------------------------


def split_type(card: FieldCard, p: int) -> str:
    """'split', 'inert' or 'ramified'. For non-quadratic cards 'split' means
    completely split and 'inert' means unramified but not completely split."""
    if card.discriminant % p == 0:
        return "ramified"
    if card.quadratic_D is None:
        from .field import splits_completely

        return "split" if splits_completely(card, p) else "inert"
    return "split" if kronecker(card.discriminant, p) == 1 else "inert"


def prime_above(card: FieldCard, p: int) -> QuadIdeal:
    """Canonical degree-1 prime p*Z + ((b + sqrt d)/2)*Z with least b >= 0."""
    _require_quadratic(card)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if split_type(card, p) == "inert":
        raise ValueError(f"{p} is inert in {card.name}")
    return form_to_ideal(prime_form(card.discriminant, p), card.discriminant)


def split_primes(card: FieldCard, start: int = 2):
    for p in prime_stream(start):
        if split_type(card, p) == "split":
            yield p


# -- principal generators -----------------------------------------------------


def _form_value(card: FieldCard, v) -> int:
    return norm(tuple(v), card)


def _shortest_vector(card: FieldCard, I: QuadIdeal):
    u, v = I.basis()
    nu, nv = _form_value(card, u), _form_value(card, v)

    def bil2(x, y):  # 2 * B(x, y)
        return _form_value(card, (x[0] + y[0], x[1] + y[1])) - _form_value(card, x) - _form_value(card, y)

    if nv < nu:
        u, v, nu, nv = v, u, nv, nu
    while True:
        mu = Fraction(bil2(u, v), 2 * nu)
        k = math.floor(mu + Fraction(1, 2))
        v = (v[0] - k * u[0], v[1] - k * u[1])
        nv = _form_value(card, v)
        if nv >= nu:
            return u, nu
        u, v, nu, nv = v, u, nv, nu


def principal_generator(card: FieldCard, I: QuadIdeal):
    """A generator of I, or None when I is not principal.

    Imaginary fields: the shortest lattice vector generates I iff its norm is
    N(I); the returned associate has the lexicographically largest coordinates
    among its torsion multiples. Real fields: walk the cycle of reduced
    ideals; the generator is made positive at the distinguished embedding but
    is not unit-reduced.
    """
    _require_quadratic(card)
    D = card.quadratic_D
    if D < 0:
        v, nv = _shortest_vector(card, I)
        if nv != I.norm:
            return None
        return canonical_associate(card, v)
    gen = _real_generator(card, I)
    if gen is None:
        return None
    if _sign_real(gen, D) < 0:
        gen = (-gen[0], -gen[1])
    return gen


def canonical_associate(card: FieldCard, x) -> tuple[int, int]:
    from .field import torsion_units

    return max(ring_mul(u, tuple(x), card) for u in torsion_units(card))


def _sign_real(x, D: int) -> int:
    """Sign of x0 + x1*w at sqrt D > 0, decided exactly."""
    if D % 4 == 1:
        r, s = 2 * x[0] + x[1], x[1]  # 2*value = r + s*sqrt D
    else:
        r, s = x
    if r >= 0 and s >= 0:
        return 0 if r == 0 and s == 0 else 1
    if r <= 0 and s <= 0:
        return -1
    # opposite signs: compare r^2 with s^2 D
    bigger_r = r * r > s * s * D
    return (1 if r > 0 else -1) if bigger_r else (1 if s > 0 else -1)


def _real_generator(card: FieldCard, I: QuadIdeal):
    d = card.discriminant
    D = card.quadratic_D
    g, f = ideal_to_form(I, d)
    a, b = f.a, f.b
    theta = (Fraction(1), Fraction(0))

    def step(a, b, theta):
        a2, b2, c = rho_indef(a, b, d)
        x, y = _half_b_plus_sqrt_d(b, D)
        factor = (x / c, y / c)
        return a2, b2, ring_mul(theta, factor, card)

    b = _normalize_indef(a, b, d)
    if a == 1:
        return _integral(theta, g)
    while not is_reduced_indef(a, b, d):
        a, b, theta = step(a, b, theta)
        if a == 1:
            return _integral(theta, g)
    start = (a, b)
    while True:
        a, b, theta = step(a, b, theta)
        if a == 1:
            return _integral(theta, g)
        if (a, b) == start:
            return None


def _integral(theta, g: int) -> tuple[int, int]:
    x, y = (g * c for c in theta)
    if x.denominator != 1 or y.denominator != 1:
        raise ArithmeticError("generator is not integral")
    return int(x), int(y)


def hcf_containment_check(card: FieldCard) -> bool:
    """True iff k contains the Hilbert class field of an imaginary quadratic field.

    A quadratic k can only contain H_L for L = k, which needs h_k = 1.
    """
    _require_quadratic(card)
    return card.quadratic_D < 0 and card.class_number == 1
