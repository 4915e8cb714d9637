"""Applicability certificate: for which primes p the emptiness/ellipticity
conclusion for k-points of the Gamma_0(p)-type Shimura curve of B holds."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import is_prime, primes_up_to
from .config import Config
from .exceptional import EnumerationRefused, Pipeline, ReductionError, SnewError, field_summary, run_pipeline
from .field import FieldCard
from .quaternion import AdmissibleQ, QuaternionDisc, find_admissible_q, splits_over_field

CONCLUSIONS = {
    1: "M_0^B(p)(k) = ∅",
    2: "M_0^B(p)(k) ⊆ {elliptic points of order 2 or 3}",
}
REAL_POINTS = "M^B(ℝ) = ∅"


@dataclass
class Certificate:
    card: FieldCard
    disc: QuaternionDisc
    config: Config
    hypotheses: dict
    failures: list[str]
    admissible: AdmissibleQ
    branch: int
    pipeline: Pipeline | None
    test_primes: list[int] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return not self.failures

    @property
    def threshold(self) -> int:
        """Every p <= this is excluded outright: max(4q, 13)."""
        return max(4 * self.admissible.q, 13) if self.admissible.found else 13

    def reason(self, p: int) -> str | None:
        """The single recorded reason p is excluded, or None if the conclusion holds."""
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if self.disc.d % p == 0:
            return "p|d"
        if self.admissible.found and p <= 4 * self.admissible.q:
            return "p<=4q"
        if p < 11:
            return "p<11"
        if p == 13:
            return "p=13"
        if self.pipeline is None or self.pipeline.membership(p).member:
            return "p in N1"
        return None

    def decide(self, p: int) -> dict:
        if not self.certified:
            return {"p": str(p), "conclusion_holds": False, "reason": "refused"}
        r = self.reason(p)
        return {"p": str(p), "conclusion_holds": r is None, "reason": r}

    def explicit_exclusions(self) -> list[dict]:
        cands = set(primes_up_to(self.threshold)) | set(self.disc.ramified_primes)
        if self.pipeline is not None:
            cands |= set(self.pipeline.list_upto(self.config.list_limit))
        out = []
        for p in sorted(cands):
            r = self.reason(p)
            if r is not None:
                out.append({"p": str(p), "reason": r})
        return out

    def rule(self) -> str:
        q = self.admissible.q
        four_q = "4q" if q is None else str(4 * q)
        return (
            f"the conclusion holds for every prime p > {four_q} with p >= 11, p != 13, "
            f"p not dividing {self.disc.d} and p not in N1(k); membership in N1(k) is decided exactly "
            "for any given p by the membership oracle"
        )

    def to_dict(self) -> dict:
        bounds = self.pipeline.bounds.as_dict() if self.pipeline is not None else {}
        listed = self.pipeline.list_upto(self.config.list_limit) if self.pipeline else []
        out = {
            "schema": "shimbound.certificate/1",
            "status": "certified" if self.certified else "refused",
            "refusal_reasons": list(self.failures),
            "field": field_summary(self.card),
            "quaternion": {"d": str(self.disc.d), "ramified_primes": [str(p) for p in self.disc.ramified_primes]},
            "hypotheses": self.hypotheses,
            "branch": self.branch,
            "conclusion": CONCLUSIONS[self.branch],
            "excluded": {
                "explicit": self.explicit_exclusions(),
                "rule": self.rule(),
                "N1_listed": [str(p) for p in listed],
                "list_limit": str(self.config.list_limit),
            },
            "bound": {
                "statement": "every prime of N1(k) is at most C(k, 2|d_k|^(A1 h_k))",
                **bounds,
                "listed_primes_within": all(self.pipeline.bounds.prime_within(p) for p in listed)
                if self.pipeline
                else None,
            },
            "decisions": [self.decide(p) for p in self.test_primes],
            "config": self.config.as_dict(),
        }
        out["text"] = self.render_text(out)
        return out

    def render_text(self, data: dict | None = None) -> str:
        data = data or self.to_dict()
        lines = [
            f"Certificate for k = {self.card.name}, quaternion discriminant d = {self.disc.d}",
            f"Background: B is indefinite, so {REAL_POINTS}.",
            "",
            "Hypotheses:",
        ]
        for name, h in self.hypotheses.items():
            lines.append(f"  {name}: {h['status']} - {h['detail']}")
        lines.append("")
        if not self.certified:
            lines.append("Status: REFUSED")
            for r in self.failures:
                lines.append(f"  hypothesis failed: {r}")
            lines.append(f"(B tensor k would give branch ({self.branch}): {CONCLUSIONS[self.branch]})")
            return "\n".join(lines) + "\n"
        q = self.admissible.q
        lines.append(f"Status: CERTIFIED with q = {q} (threshold 4q = {4 * q})")
        lines.append(f"Branch ({self.branch}): {CONCLUSIONS[self.branch]}")
        lines.append(f"Rule: {self.rule()}.")
        ex = data["excluded"]["explicit"]
        shown = ", ".join(f"{e['p']} ({e['reason']})" for e in ex[:40])
        more = f", ... ({len(ex)} in total)" if len(ex) > 40 else ""
        lines.append(f"Explicitly excluded primes: {shown}{more}")
        b = data["bound"]
        if b:
            lines.append(f"A-priori bound: log10 C(k, a) <= {b['log10_bound']} (A1 = {b['A1']})")
        for dcs in data["decisions"]:
            verdict = "holds" if dcs["conclusion_holds"] else f"excluded ({dcs['reason']})"
            lines.append(f"  p = {dcs['p']}: {verdict}")
        return "\n".join(lines) + "\n"


def certify(card: FieldCard, disc: QuaternionDisc, config: Config = Config(), test_primes=()) -> Certificate:
    """Run every hypothesis check (collecting all failures) and the exceptional pipeline."""
    failures: list[str] = []
    hyp: dict = {}

    if card.is_quadratic:
        hyp["galois"] = {"status": "verified", "detail": "quadratic fields are Galois"}
    elif card.is_galois_asserted:
        hyp["galois"] = {"status": "asserted", "detail": "stated by the field card"}
    else:
        hyp["galois"] = {"status": "failed", "detail": "the card does not assert that k is Galois"}
        failures.append("k is not known to be Galois")

    if card.is_quadratic:
        from .quadratic import hcf_containment_check

        contains = hcf_containment_check(card)
        if contains:
            hyp["hcf_free"] = {
                "status": "failed",
                "detail": "h = 1, so k is its own Hilbert class field",
            }
            failures.append(f"{card.name} contains the Hilbert class field of an imaginary quadratic field")
        else:
            hyp["hcf_free"] = {"status": "verified", "detail": _hcf_detail(card)}
    elif card.hcf_free_asserted:
        hyp["hcf_free"] = {"status": "asserted", "detail": "stated by the field card"}
    else:
        hyp["hcf_free"] = {"status": "failed", "detail": "not asserted by the field card"}
        failures.append("Hilbert-class-field non-containment is not asserted")

    adm = find_admissible_q(disc, card, config.q_search_limit)
    if adm.found:
        hyp["admissible_q"] = {
            "status": "verified",
            "detail": f"q = {adm.q} splits completely in k and B tensor Q(sqrt -{adm.q}) is not split",
            "q": str(adm.q),
            "threshold": str(adm.threshold),
            "rejected_smaller": [str(p) for p in adm.rejected],
        }
    else:
        hyp["admissible_q"] = {
            "status": "failed",
            "detail": f"no admissible q up to {config.q_search_limit}",
            "rejected_smaller": [str(p) for p in adm.rejected],
        }
        failures.append(f"no admissible q found up to {config.q_search_limit}")

    split = splits_over_field(disc, card)
    hyp["B_tensor_k"] = {
        "status": "verified",
        "detail": "B tensor k is a matrix algebra" if split else "B tensor k is a division algebra",
    }
    try:
        pipeline = run_pipeline(card, config)
    except (SnewError, EnumerationRefused, ReductionError) as exc:
        pipeline = None
        hyp["exceptional_set"] = {"status": "failed", "detail": str(exc)}
        failures.append(f"exceptional set unavailable: {exc}")
    return Certificate(card, disc, config, hyp, failures, adm, 1 if split else 2, pipeline, list(test_primes))


def _hcf_detail(card: FieldCard) -> str:
    if card.quadratic_D > 0:
        return "k is real, so it contains no imaginary quadratic field"
    return f"h = {card.class_number} > 1, so k is not its own Hilbert class field"
