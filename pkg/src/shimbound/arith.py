"""Integer number theory: Kronecker symbols, primality, bounded factoring."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

# Deterministic Miller-Rabin witness set for n < 3.3 * 10^24, which covers 2^64.
_DETERMINISTIC_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_DETERMINISTIC_LIMIT = 3317044064679887385961981
PROBABLE_PRIME_ROUNDS = 64

DEFAULT_TRIAL_LIMIT = 10**7
DEFAULT_RHO_ITERATIONS = 10**6


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), extended to even and negative n."""
    if n == 0:
        raise ValueError("kronecker symbol undefined for n = 0")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    n >>= v
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # n is now odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_probable_prime(n: int, base: int) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def primality(n: int) -> tuple[bool, bool]:
    """Return ``(is_prime, proven)``.

    Below 3.3e24 (so in particular below 2^64) the verdict is a proof. Above,
    ``PROBABLE_PRIME_ROUNDS`` strong-probable-prime rounds with bases drawn
    from a generator seeded by ``n`` are run; a composite survives with
    probability at most 4^-64 and ``proven`` is False.
    """
    if n < 2:
        return False, True
    for p in _SMALL_PRIMES:
        if n == p:
            return True, True
        if n % p == 0:
            return False, True
    if n < _DETERMINISTIC_LIMIT:
        return all(_strong_probable_prime(n, b) for b in _DETERMINISTIC_WITNESSES), True
    rng = random.Random(n)
    for _ in range(PROBABLE_PRIME_ROUNDS):
        if not _strong_probable_prime(n, rng.randrange(2, n - 1)):
            return False, True
    return True, False


def is_prime(n: int) -> bool:
    return primality(n)[0]


@lru_cache(maxsize=8)
def primes_up_to(limit: int) -> tuple[int, ...]:
    """Sieve of Eratosthenes."""
    if limit < 2:
        return ()
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _sieve_size(bound: int) -> int:
    size = 1000
    while size < bound:
        size *= 10
    return size


def next_prime(n: int) -> int:
    """Least prime strictly greater than n."""
    candidate = max(n + 1, 2)
    while not is_prime(candidate):
        candidate += 1
    return candidate


def prime_stream(start: int = 2):
    """Yield the primes >= start in increasing order."""
    p = start - 1
    while True:
        p = next_prime(p)
        yield p


@dataclass
class FactorizationResult:
    known_factors: list[tuple[int, int]] = field(default_factory=list)
    cofactor: int = 1
    cofactor_is_probable_prime: bool = False
    all_proven: bool = True
    work_spent: int = 0

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def value(self) -> int:
        out = self.cofactor
        for p, e in self.known_factors:
            out *= p**e
        return out

    def primes(self) -> list[int]:
        return [p for p, _ in self.known_factors]


def _brent_rho(n: int, budget: int, seed: int) -> tuple[int | None, int]:
    """Pollard rho with Brent's cycle detection. Returns (factor or None, work used)."""
    rng = random.Random(seed)
    used = 0
    while used < budget:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                used += min(m, r - k)
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g, used
    return None, used


SMALL_TRIAL_LIMIT = 10**4


def _trial_divide(n: int, lo: int, hi: int, budget: int, factors: dict) -> tuple[int, int]:
    """Divide out primes in (lo, hi]; returns (remaining n, remaining budget)."""
    for p in primes_up_to(_sieve_size(hi)):
        if p <= lo:
            continue
        if p > hi or budget <= 0 or p * p > n:
            break
        budget -= 1
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors[p] = factors.get(p, 0) + e
    return n, budget


def factor_bounded(
    n: int,
    effort_budget: int | None = None,
    trial_limit: int = DEFAULT_TRIAL_LIMIT,
) -> FactorizationResult:
    """Partially factor ``n`` within ``effort_budget`` work units.

    One unit is one trial division or one rho iteration. Small primes (to
    ``SMALL_TRIAL_LIMIT``) go first, then rho on what is left; a piece rho
    cannot split is trial-divided up to ``trial_limit``. The default budget
    covers full trial division to ``trial_limit`` plus
    ``DEFAULT_RHO_ITERATIONS``. Whatever is left unsplit comes back as
    ``cofactor``.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    if effort_budget is None:
        effort_budget = len(primes_up_to(min(trial_limit, DEFAULT_TRIAL_LIMIT))) + DEFAULT_RHO_ITERATIONS
    budget = effort_budget
    factors: dict[int, int] = {}
    proven = True
    small = min(trial_limit, SMALL_TRIAL_LIMIT)

    if n > 1:
        n, budget = _trial_divide(n, 1, small, budget, factors)
    pending = [n] if n > 1 else []
    leftovers: list[int] = []
    deep_done: set[int] = set()
    while pending:
        m = pending.pop()
        prime, certain = primality(m)
        if prime:
            factors[m] = factors.get(m, 0) + 1
            proven &= certain
            continue
        if budget <= 0:
            leftovers.append(m)
            continue
        # perfect powers confuse rho
        root = _perfect_power_root(m)
        if root is not None:
            base, k = root
            pending.extend([base] * k)
            continue
        d, used = _brent_rho(m, budget, seed=m)
        budget -= used
        if d is not None:
            pending.extend([d, m // d])
            continue
        if trial_limit > small and m not in deep_done:
            deep_done.add(m)
            found: dict[int, int] = {}
            rest, budget = _trial_divide(m, small, trial_limit, budget, found)
            if found:
                for p, e in found.items():
                    factors[p] = factors.get(p, 0) + e
                if rest > 1:
                    pending.append(rest)
                continue
        leftovers.append(m)

    cofactor = 1
    for m in leftovers:
        cofactor *= m
    # merge cofactor pieces that are powers of primes already found
    for p in list(factors):
        while cofactor % p == 0:
            cofactor //= p
            factors[p] += 1
    known = sorted(factors.items())
    return FactorizationResult(
        known_factors=known,
        cofactor=cofactor,
        cofactor_is_probable_prime=False if cofactor == 1 else is_prime(cofactor),
        all_proven=proven,
        work_spent=effort_budget - max(budget, 0),
    )


def _perfect_power_root(n: int) -> tuple[int, int] | None:
    for k in primes_up_to(min(n.bit_length(), 64)):
        r = integer_root(n, k)
        if r**k == n:
            return r, k
    return None


def integer_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def divides_query(m: int, p: int) -> bool:
    """Exact test of p | m. Never factors anything."""
    if m == 0:
        raise ValueError("m must be nonzero")
    return m % p == 0


def factorize(n: int) -> list[tuple[int, int]]:
    """Complete factorization of a modest integer; raises if the budget runs out."""
    res = factor_bounded(n)
    if not res.complete:
        raise ArithmeticError(f"could not fully factor {n}")
    return res.known_factors


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    return all(e == 1 for _, e in factorize(n))


def sqrt_mod_prime(a: int, p: int) -> list[int]:
    """All square roots of a modulo the prime p, sorted."""
    a %= p
    if p == 2:
        return [a]
    if a == 0:
        return [0]
    if pow(a, (p - 1) // 2, p) != 1:
        return []
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return sorted({r, p - r})
