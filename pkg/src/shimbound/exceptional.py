"""The exceptional prime set N1 of a Galois field k and its a-priori bound.

Pipeline: choose S^new (split primes whose classes generate Cl_k), reduce the
generators alpha_q of q^h by units, run over every exponent vector in E(k)
and every quadratic Weil number of N(q), collect the nonzero norms m, and
assemble N0 (primes dividing some m), T and Ram(k).
"""

from __future__ import annotations

import hashlib
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
import mpmath
from mpmath import iv

from . import intervals
from .arith import divides_query, factor_bounded, is_prime, prime_stream, primes_up_to
from .config import Config
from .field import (
    FieldCard,
    RingElement,
    galois_apply,
    group_ring_power,
    height,
    height_excess,
    log_embedding,
    norm,
    ring_add,
    ring_mul,
    ring_pow,
    ring_scale,
    ring_sub,
    torsion_units,
    unit_inverse,
)
from .weil import WeilNumber, beta_in_field, enumerate_FR, power_trace

E_VALUES = (0, 8, 12, 16, 24)


class SnewError(RuntimeError):
    pass


class ReductionError(ArithmeticError):
    pass


class EnumerationRefused(ValueError):
    pass


# -- bound constants ----------------------------------------------------------


@dataclass(frozen=True)
class BoundConstants:
    A1: Fraction
    delta: Fraction
    C1: Fraction
    log_C2: object  # interval
    log_a: object  # interval
    log_bound: object  # interval for log C(k, a)
    degree: int
    class_number: int
    prec: int

    @property
    def C2_exact_one(self) -> bool:
        return self.C1 == 0

    def C2(self):
        with intervals.workprec(self.prec):
            return iv.exp(self.log_C2)

    def log10_bound(self):
        with intervals.workprec(self.prec):
            return self.log_bound / iv.log(10)

    def log_C_of(self, N: int):
        """Interval for log C(k, N)."""
        h, n = self.class_number, self.degree
        with intervals.workprec(self.prec):
            la = iv.log(iv.mpf(N))
            tail = iv.log(1 + iv.exp(-12 * h * la - self.log_C2))
            return 2 * n * (24 * h * la + self.log_C2 + tail)

    def C_of_exact(self, N: int) -> int:
        """C(k, N) as an exact integer; only available when C2 = 1."""
        if not self.C2_exact_one:
            raise ValueError("C(k, N) is not an integer when C2 > 1")
        h, n = self.class_number, self.degree
        return (N ** (24 * h) + N ** (12 * h)) ** (2 * n)

    def prime_within(self, p: int) -> bool:
        """Certified p <= C(k, a)."""
        with intervals.workprec(self.prec):
            return iv.log(iv.mpf(p)).b <= self.log_bound.a

    def as_dict(self) -> dict:
        with intervals.workprec(self.prec):
            lg10 = self.log10_bound()
            top = intervals.endpoints(lg10)[1]
            k = int(mpmath.floor(top))
            mant = iv.exp((lg10 - k) * iv.log(10))
            return {
                "A1": _frac_str(self.A1),
                "delta_k": _frac_str(self.delta),
                "C1": str(self.C1),
                "C2": "1 ± 0" if self.C2_exact_one else intervals.fmt(self.C2()),
                "log10_a": intervals.fmt(self.log_a / iv.log(10)),
                "log10_bound": intervals.upper_str(lg10, 20),
                "bound_leading_digits": intervals.upper_str(mant, 15),
            }


def _frac_str(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    s = mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, 15)
    return s


def bound_constants(card: FieldCard, A1=40, delta=None, prec: int = 256) -> BoundConstants:
    """C1, C2, a = 2|d_k|^(A1 h) and C(k, a), all as outward-rounded intervals.

    C1 is an exact rational. log C(k, a) is carried instead of C(k, a)
    since the bound has tens of thousands of digits.
    """
    A1 = Fraction(A1)
    if A1 <= 1:
        raise ValueError("A1 must exceed 1")
    delta = Fraction(delta) if delta is not None else card.delta()
    r, n, h = card.unit_rank, card.degree, card.class_number
    C1 = Fraction(r ** (1 + r)) * delta ** (1 - r) / 2
    with intervals.workprec(prec):
        R = card.regulator_interval(prec)
        log_C2 = iv.mpf(0) if C1 == 0 else 24 * n * intervals.exact(C1) * R
        log_a = iv.log(2) + intervals.exact(A1) * h * iv.log(iv.mpf(abs(card.discriminant)))
        tail = iv.log(1 + iv.exp(-12 * h * log_a - log_C2))
        log_bound = 2 * n * (24 * h * log_a + log_C2 + tail)
    return BoundConstants(A1, delta, C1, log_C2, log_a, log_bound, n, h, prec)


# -- S^new ---------------------------------------------------------------------


@dataclass(frozen=True)
class SplitPrimeDatum:
    q: int
    ideal_hnf: tuple | None  # quadratic cards only
    ideal_class: tuple | None  # reduced form (a, b, c)
    alpha: RingElement
    alpha_norm: int
    within_prime_bound: bool


def select_Snew(card: FieldCard, bc: BoundConstants, config: Config = Config()) -> list[SplitPrimeDatum]:
    """Least completely split primes until their classes generate Cl_k (at least one)."""
    if not card.is_quadratic:
        if not card.snew:
            raise SnewError(f"{card.name}: non-quadratic cards must supply S^new")
        out = []
        for q, alpha in card.snew:
            alpha = reduce_generator(card, tuple(alpha), bc, config)
            out.append(_datum(card, q, None, None, alpha, bc))
        return out

    from .quadratic import class_group, ideal_class, ideal_pow, prime_above, principal_generator, split_type

    cg = class_group(card)
    chosen: list[SplitPrimeDatum] = []
    gens: list = []
    scanned = 0
    for q in prime_stream(2):
        if q > config.split_search_limit:
            break
        scanned += 1
        if split_type(card, q) != "split":
            continue
        ideal = prime_above(card, q)
        cls = ideal_class(card, ideal)
        if chosen and cls in cg.subgroup(gens):
            continue
        gen = principal_generator(card, ideal_pow(ideal, card.class_number, card))
        if gen is None:
            raise ArithmeticError(f"q^h is not principal for q = {q}")
        alpha = reduce_generator(card, gen, bc, config)
        gens.append(cls)
        chosen.append(_datum(card, q, ideal.hnf, tuple(cls), alpha, bc))
        if len(cg.subgroup(gens)) == cg.order_h:
            return chosen
    have = len(cg.subgroup(gens)) if gens else 0
    raise SnewError(
        f"split-prime search exhausted at {config.split_search_limit} ({scanned} primes scanned); "
        f"classes found generate a subgroup of order {have} of {cg.order_h}"
    )


def _datum(card, q, hnf_, cls, alpha, bc) -> SplitPrimeDatum:
    nrm = abs(norm(alpha, card))
    if nrm != q**card.class_number:
        raise ArithmeticError(f"|Norm(alpha_{q})| = {nrm}, expected {q}^{card.class_number}")
    with intervals.workprec(bc.prec):
        met = iv.log(q).b <= bc.log_a.a
    return SplitPrimeDatum(q, hnf_, cls, alpha, nrm, met)


# -- unit reduction ------------------------------------------------------------


def _height_score(x, card) -> mpmath.mpf:
    return sum(max(mpmath.mpf(0), v) for v in log_embedding(x, card))


def reduce_generator(card: FieldCard, gamma, bc: BoundConstants | None = None, config: Config = Config()):
    """Unit associate of gamma meeting H <= |N|^(1/n) exp(C1 R).

    Rounds the coordinates of gamma's log vector in the unit lattice, then
    searches the +-1 neighbourhood for the least height. Among associates of
    equal height the first found wins; the sign or root of unity is then
    fixed canonically. With no units of infinite order gamma is returned as is.
    """
    gamma = card.check(gamma)
    if not any(gamma):
        raise ValueError("cannot reduce 0")
    r = card.unit_rank
    if r == 0:
        best = gamma
    else:
        units = list(card.fundamental_units)
        inverses = [unit_inverse(u, card) for u in units]
        with mpmath.workprec(200):
            n = card.degree
            ev = [1 if p.kind == "real" else 2 for p in card.places]
            lg = log_embedding(gamma, card)
            ln = mpmath.log(abs(norm(gamma, card))) / n
            target = [lg[i] - ev[i] * ln for i in range(len(ev))]
            U = mpmath.matrix([[log_embedding(u, card)[i] for u in units] for i in range(r)])
            coeffs = mpmath.lu_solve(U, mpmath.matrix(target[:r]))
            shift = [int(mpmath.nint(c)) for c in coeffs]
            base = _apply_units(gamma, shift, units, inverses, card)
            best, best_key = None, None
            for off in itertools.product((-1, 0, 1), repeat=r):
                cand = _apply_units(base, off, units, inverses, card)
                key = (_height_score(cand, card), tuple(abs(o) for o in off), off)
                if best_key is None or _key_less(key, best_key):
                    best, best_key = cand, key
    best = _canonical_sign(card, best)
    if bc is not None:
        height_check(card, best, bc, config)
    return best


def _key_less(a, b) -> bool:
    # heights that agree to 40 digits are ties (e.g. 3 and 3(1+sqrt 2))
    if abs(a[0] - b[0]) > mpmath.mpf(10) ** -40:
        return a[0] < b[0]
    return a[1:] < b[1:]


def _apply_units(x, shift, units, inverses, card):
    for e, u, ui in zip(shift, units, inverses):
        if e:
            x = ring_mul(x, ring_pow(ui if e > 0 else u, abs(e), card), card)
    return x


def _canonical_sign(card: FieldCard, x):
    place = card.places[card.distinguished_place]
    if place.kind == "real":
        re, _ = card.embed(x)[card.distinguished_place]
        if re.b < 0:
            return ring_scale(-1, x)
        if re.a > 0:
            return x
        raise ArithmeticError("sign at the distinguished embedding is undecided")
    return max(ring_mul(u, x, card) for u in torsion_units(card))


@dataclass(frozen=True)
class HeightCheck:
    height: str
    bound: str
    holds: bool
    factor_is_one: bool


def height_check(card: FieldCard, alpha, bc: BoundConstants, config: Config = Config()) -> HeightCheck:
    """Certify H(alpha) <= |N(alpha)|^(1/n) exp(C1 R), via H^n = |N| * X."""
    n = card.degree
    prec = config.precision
    while True:
        with intervals.workprec(prec):
            X = height_excess(alpha, card, prec)
            factor = iv.exp(n * intervals.exact(bc.C1) * card.regulator_interval(prec))
            if X.b <= factor.a:
                H = height(alpha, card, prec, cap=config.precision_cap)
                bound = iv.mpf(abs(norm(alpha, card))) ** (iv.mpf(1) / n) * iv.exp(
                    intervals.exact(bc.C1) * card.regulator_interval(prec)
                )
                return HeightCheck(intervals.fmt(H), intervals.fmt(bound), True, bc.C1 == 0)
            if X.a > factor.b:
                raise ReductionError(
                    f"height bound violated for {alpha} (excess {intervals.fmt(X)} > {intervals.fmt(factor)}); "
                    "the card's delta_k may be inconsistent"
                )
        if prec >= config.precision_cap:
            raise ReductionError(f"height bound for {alpha} undecided at {prec} bits")
        prec = min(2 * prec, config.precision_cap)


# -- E(k) and M2 ----------------------------------------------------------------


def enumerate_E(card: FieldCard, cap: int = 12):
    """All exponent vectors (one entry per Galois element) in lexicographic order."""
    n = len(card.galois_group)
    if n > cap:
        raise EnumerationRefused(f"|E(k)| = 5^{n} = {5**n} vectors exceeds the cap of 5^{cap}")
    return itertools.product(E_VALUES, repeat=n)


@dataclass(frozen=True)
class M2Entry:
    m: int
    q: int
    eps: tuple[int, ...]
    a: int
    n: int
    roots: tuple[str, ...]
    beta_in_k: bool


def exponent_M(card: FieldCard) -> int:
    return 24 * card.class_number


def compute_M2_entry(card: FieldCard, datum: SplitPrimeDatum, eps, w: WeilNumber, gamma=None) -> M2Entry | None:
    """The norm m of alpha^eps - beta^M from k(beta) to Q, or None when m = 0."""
    if w.n != datum.q:
        raise ValueError(f"{w} is not a Weil number of {datum.q}")
    M = exponent_M(card)
    if gamma is None:
        gamma = group_ring_power(datum.alpha, eps, card)
    b = beta_in_field(w, card)
    if b is None:
        s = power_trace(w, M)
        g2 = ring_mul(gamma, gamma, card)
        elt = ring_add(ring_sub(g2, ring_scale(s, gamma)), card.from_int(w.n**M))
        roots = ("upper", "lower")
    else:
        elt = ring_sub(gamma, ring_pow(b, M, card))
        roots = (w.root_choice,)
    m = norm(elt, card)
    if m == 0:
        return None
    return M2Entry(m, datum.q, tuple(eps), w.a, w.n, roots, b is not None)


def weil_numbers_for(card: FieldCard, q: int) -> list[WeilNumber]:
    """FR(q) with one representative per conjugate pair when beta is not in k."""
    out = []
    for w in enumerate_FR(q):
        if w.root_choice == "lower" and beta_in_field(w, card) is None:
            continue
        out.append(w)
    return out


@dataclass(frozen=True)
class EmbeddingCheck:
    q: int
    eps: tuple[int, ...]
    status: str  # strict, equal, violated, undecided
    abs_value: str
    bound: str
    rel_radius: float


def embedding_check(card: FieldCard, datum: SplitPrimeDatum, eps, gamma, bc: BoundConstants, prec: int = 256):
    """|alpha^eps| at the distinguished embedding against N(q)^(24h) C2."""
    h = card.class_number
    N = datum.q
    rational = not any(gamma[1:])
    with intervals.workprec(prec):
        val = iv.mpf(1)
        emb = card.distinguished_place
        for s, a in enumerate(eps):
            if a:
                re, im = card.embed(galois_apply(s, datum.alpha, card), prec)[emb]
                val *= iv.sqrt(re * re + im * im) ** a
        limit = iv.mpf(N) ** (24 * h)
        bound = limit if bc.C2_exact_one else limit * iv.exp(bc.log_C2)
        if rational and bc.C2_exact_one:
            c = abs(gamma[0])
            exact_bound = N ** (24 * h)
            status = "strict" if c < exact_bound else ("equal" if c == exact_bound else "violated")
        elif val.b < bound.a:
            status = "strict"
        elif val.a > bound.b:
            status = "violated"
        elif rational and abs(gamma[0]) <= N ** (24 * h):
            status = "strict"  # C2 > 1 strictly when C1 > 0
        else:
            status = "undecided"
        return EmbeddingCheck(N, tuple(eps), status, intervals.fmt(val), intervals.fmt(bound), intervals.rel_radius(val))


def entry_within_bound(entry: M2Entry, bc: BoundConstants) -> bool:
    """|m| <= C(k, N(q)), exactly when C2 = 1."""
    if bc.C2_exact_one:
        return abs(entry.m) <= bc.C_of_exact(entry.q)
    with intervals.workprec(bc.prec):
        return iv.log(iv.mpf(abs(entry.m))).b <= bc.log_C_of(entry.q).a


# -- pipeline -------------------------------------------------------------------


@dataclass
class _TaskResult:
    entries: list
    zeros: list
    embedding_checks: EmbeddingCheck


_BC_CACHE: dict = {}


def _run_task(args) -> _TaskResult:
    card, datum, eps, A1, delta = args
    key = (card, A1, delta)
    if key not in _BC_CACHE:
        _BC_CACHE.clear()
        _BC_CACHE[key] = bound_constants(card, A1, delta)
    bc = _BC_CACHE[key]
    gamma = group_ring_power(datum.alpha, eps, card)
    entries, zeros = [], []
    for w in weil_numbers_for(card, datum.q):
        e = compute_M2_entry(card, datum, eps, w, gamma)
        if e is None:
            zeros.append({"q": str(datum.q), "eps": _eps_map(eps), "a": str(w.a), "n": str(w.n), "root": w.root_choice})
        else:
            entries.append(e)
    return _TaskResult(entries, zeros, embedding_check(card, datum, eps, gamma, bc))


@dataclass
class Pipeline:
    card: FieldCard
    config: Config
    bounds: BoundConstants
    snew: list[SplitPrimeDatum]
    height_checks: list[HeightCheck]
    entries: list[M2Entry] = field(default_factory=list)
    zeros: list = field(default_factory=list)
    embedding_checks: list[EmbeddingCheck] = field(default_factory=list)
    vectors: int = 0
    weil_processed: int = 0
    _n0_cache: dict = field(default_factory=dict, repr=False)

    @property
    def T(self) -> list[int]:
        return sorted({2, 3} | {d.q for d in self.snew})

    @property
    def Ram(self) -> list[int]:
        return sorted(self.card.ramified_primes)

    def membership(self, p: int) -> "Membership":
        """Exact test of p in N1; no factoring involved."""
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        sources = []
        witness = None
        for i, e in enumerate(self.entries):
            if divides_query(e.m, p):
                sources.append("N0")
                witness = i
                break
        if p in self.T:
            sources.append("T")
        if p in self.Ram:
            sources.append("Ram")
        return Membership(p, bool(sources), tuple(sources), witness)

    def n0_upto(self, X: int) -> list[int]:
        """Primes <= X dividing some entry.

        gcd(prod |m|, primorial(X)) is exactly the product of those primes,
        so one gcd replaces trial division of every entry by every p <= X.
        """
        if X not in self._n0_cache:
            g = int(gmpy2.gcd(_balanced_product([abs(e.m) for e in self.entries]), gmpy2.primorial(X)))
            self._n0_cache[X] = [p for p in primes_up_to(X) if g % p == 0] if g > 1 else []
        return list(self._n0_cache[X])

    def list_upto(self, X: int) -> list[int]:
        extra = [p for p in self.T + self.Ram if p <= X]
        return sorted(set(self.n0_upto(X)) | set(extra))

    def best_effort(self):
        """Prime factors of every entry as far as the budget allows."""
        primes: set[int] = set()
        per_value: dict[int, dict] = {}
        unresolved: list[int] = []
        for v in sorted({abs(e.m) for e in self.entries}):
            res = factor_bounded(v, self.config.effort_budget, self.config.trial_limit)
            primes.update(res.primes())
            status = {
                "status": "complete" if res.complete else "partial",
                "primes": [str(p) for p in res.primes()],
                "proven": res.all_proven,
            }
            if not res.complete:
                status["cofactor"] = res.cofactor
                unresolved.append(res.cofactor)
            per_value[v] = status
        return sorted(primes), per_value, sorted(set(unresolved))


@dataclass(frozen=True)
class Membership:
    p: int
    member: bool
    sources: tuple[str, ...]
    witness: int | None

    def as_dict(self) -> dict:
        return {
            "p": str(self.p),
            "member": self.member,
            "sources": list(self.sources),
            "witness_entry": self.witness,
        }


def _balanced_product(values):
    xs = [gmpy2.mpz(v) for v in values] or [gmpy2.mpz(1)]
    while len(xs) > 1:
        xs = [xs[i] * xs[i + 1] if i + 1 < len(xs) else xs[i] for i in range(0, len(xs), 2)]
    return xs[0]


def run_pipeline(card: FieldCard, config: Config = Config()) -> Pipeline:
    bc = bound_constants(card, config.A1_fraction(), config.delta_k)
    snew = select_Snew(card, bc, config)
    height_results = [height_check(card, d.alpha, bc, config) for d in snew]
    pipe = Pipeline(card, config, bc, snew, height_results)
    vectors = list(enumerate_E(card, config.enumeration_cap))
    pipe.vectors = len(vectors)
    # intervals do not pickle, so workers rebuild the constants themselves
    tasks = [(card, d, eps, bc.A1, config.delta_k) for d in snew for eps in vectors]
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as ex:
            results = list(ex.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * config.workers))))
    else:
        results = [_run_task(t) for t in tasks]
    for res in results:
        pipe.entries.extend(res.entries)
        pipe.zeros.extend(res.zeros)
        pipe.embedding_checks.append(res.embedding_checks)
    pipe.weil_processed = sum(len(enumerate_FR(d.q)) for d in snew) * len(vectors)
    return pipe


# -- report ------------------------------------------------------------------------


def big_int_json(m: int, threshold: int = 10**4, full: bool = False):
    # gmpy2 avoids the interpreter's cap on int-to-str conversion
    signed = gmpy2.mpz(m).digits()
    s = signed.lstrip("-")
    if full or len(s) <= threshold:
        return signed
    return {
        "digits": len(s),
        "sign": -1 if m < 0 else 1,
        "leading": s[:50],
        "trailing": s[-50:],
        "sha256": hashlib.sha256(signed.encode()).hexdigest(),
    }


def _eps_map(eps) -> dict:
    return {str(i): a for i, a in enumerate(eps)}


def _vec(xs) -> list[str]:
    return [str(x) for x in xs]


def field_summary(card: FieldCard) -> dict:
    return {
        "name": card.name,
        "degree": card.degree,
        "discriminant": str(card.discriminant),
        "class_number": card.class_number,
        "unit_rank": card.unit_rank,
        "regulator": f"{card.regulator[0]} ± {card.regulator[1]}",
        "ramified_primes": _vec(card.ramified_primes),
        "M": str(exponent_M(card)),
    }


def build_report(pipe: Pipeline, test_primes=(), mode: str | None = None) -> dict:
    """The deterministic JSON report (no timestamps, sorted sets)."""
    cfg = pipe.config
    mode = mode or cfg.factor_mode
    big = lambda m: big_int_json(m, cfg.digit_threshold, cfg.full_values)  # noqa: E731
    bc = pipe.bounds
    n0 = pipe.n0_upto(cfg.list_limit)
    n1 = pipe.list_upto(cfg.list_limit)
    per_value: dict = {}
    unresolved: list[int] = []
    found: list[int] = []
    if mode == "best_effort":
        found, per_value, unresolved = pipe.best_effort()

    entries = []
    for e in pipe.entries:
        fac = per_value.get(abs(e.m))
        if fac is None:
            fac = {"status": "not attempted"}
        elif "cofactor" in fac:
            fac = dict(fac, cofactor=big(fac["cofactor"]))
        entries.append(
            {
                "q": str(e.q),
                "eps": _eps_map(e.eps),
                "a": str(e.a),
                "n": str(e.n),
                "roots": list(e.roots),
                "beta_in_k": e.beta_in_k,
                "m": big(e.m),
                "factorization": fac,
            }
        )

    snew = []
    for d, hc in zip(pipe.snew, pipe.height_checks):
        snew.append(
            {
                "q": str(d.q),
                "ideal_hnf": None if d.ideal_hnf is None else [_vec(col) for col in d.ideal_hnf],
                "class": None if d.ideal_class is None else _vec(d.ideal_class),
                "alpha": _vec(d.alpha),
                "alpha_norm": str(d.alpha_norm),
                "within_prime_bound": d.within_prime_bound,
                "height": hc.height,
                "height_bound": hc.bound,
            }
        )

    all_listed = sorted(set(n1) | set(found) | set(pipe.T) | set(pipe.Ram))
    statuses = [r.status for r in pipe.embedding_checks]
    entry_violations = sum(not entry_within_bound(e, bc) for e in pipe.entries)
    report = {
        "schema": "shimbound.report/1",
        "field": field_summary(pipe.card),
        "config": cfg.as_dict(),
        "mode": mode,
        "snew": snew,
        "counts": {
            "exponent_vectors": pipe.vectors,
            "weil_numbers_processed": pipe.weil_processed,
            "entries": len(pipe.entries),
            "zero_cases": len(pipe.zeros),
        },
        "entries": entries,
        "zero_cases": pipe.zeros,
        "sets": {
            "N0_listed": _vec(n0),
            "N0_factored": _vec(found),
            "T": _vec(pipe.T),
            "Ram": _vec(pipe.Ram),
            "N1_listed": _vec(n1),
            "list_limit": str(cfg.list_limit),
            "unresolved_cofactors": [big(c) for c in unresolved],
        },
        "membership": [pipe.membership(p).as_dict() for p in test_primes],
        "bounds": bc.as_dict(),
        "checks": {
            "height": [
                {"q": str(d.q), "holds": c.holds, "factor_is_one": c.factor_is_one}
                for d, c in zip(pipe.snew, pipe.height_checks)
            ],
            "embedding": {
                "processed": len(statuses),
                "strict": statuses.count("strict"),
                "equal": statuses.count("equal"),
                "violated": statuses.count("violated"),
                "undecided": statuses.count("undecided"),
            },
            "entry_bound": {"processed": len(pipe.entries), "violations": entry_violations},
            "prime_bound": {
                "primes_checked": len(all_listed),
                "violations": sum(not bc.prime_within(p) for p in all_listed),
            },
        },
    }
    return report

