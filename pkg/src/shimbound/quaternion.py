"""Local splitting of an indefinite rational quaternion algebra B of discriminant d.

B is never built; everything here depends only on the primes dividing d.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import factorize, is_prime, kronecker, prime_stream
from .field import CardError, FieldCard, local_degree


class DiscriminantError(ValueError):
    pass


@dataclass(frozen=True)
class QuaternionDisc:
    d: int
    ramified_primes: tuple[int, ...]


def validate_disc(d: int) -> QuaternionDisc:
    if d <= 1:
        raise DiscriminantError("d must exceed 1")
    fac = factorize(d)
    if any(e > 1 for _, e in fac):
        raise DiscriminantError(f"{d} is not squarefree")
    if len(fac) % 2:
        raise DiscriminantError(f"{d} has an odd number of prime factors")
    return QuaternionDisc(d, tuple(p for p, _ in fac))


def imag_quadratic_disc(q: int) -> int:
    """Field discriminant of Q(sqrt(-q)) for a prime q."""
    if q == 2:
        return -8
    return -q if q % 4 == 3 else -4 * q


def quad_split_type(disc: int, ell: int) -> str:
    """How the prime ell behaves in the quadratic field of discriminant disc."""
    if disc % ell == 0:
        return "ramified"
    if ell == 2:
        return "split" if disc % 8 == 1 else "inert"
    return "split" if kronecker(disc, ell) == 1 else "inert"


def splits_imag_quadratic(D: QuaternionDisc, q: int) -> bool:
    """True iff B tensor Q(sqrt -q) is a matrix algebra: no ell | d splits there."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    disc = imag_quadratic_disc(q)
    return all(quad_split_type(disc, ell) != "split" for ell in D.ramified_primes)


def splits_over_field(D: QuaternionDisc, card: FieldCard) -> bool:
    """True iff B tensor k is a matrix algebra: every local degree above d is even."""
    if card.is_quadratic:
        return all(quad_split_type(card.discriminant, ell) != "split" for ell in D.ramified_primes)
    try:
        return all(local_degree(card, ell) % 2 == 0 for ell in D.ramified_primes)
    except CardError as exc:
        raise CardError(f"no usable local data for {card.name}: {exc}") from exc


@dataclass
class AdmissibleQ:
    q: int | None
    threshold: int | None  # 4q
    rejected: list[int] = field(default_factory=list)  # smaller split primes failing the condition
    scanned_up_to: int = 0

    @property
    def found(self) -> bool:
        return self.q is not None


def _splits_completely(card: FieldCard, q: int) -> bool:
    from .quadratic import split_type

    return split_type(card, q) == "split"


def find_admissible_q(D: QuaternionDisc, card: FieldCard, search_limit: int = 10**5) -> AdmissibleQ:
    """Least q splitting completely in k with B tensor Q(sqrt -q) not a matrix algebra."""
    rejected = []
    last = 1
    for q in prime_stream(2):
        if q > search_limit:
            break
        last = q
        if not _splits_completely(card, q):
            continue
        if not splits_imag_quadratic(D, q):
            return AdmissibleQ(q, 4 * q, rejected, q)
        rejected.append(q)
    return AdmissibleQ(None, None, rejected, last)
