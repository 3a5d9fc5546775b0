"""Structured pass/fail records for verification runs."""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterator

PASS, FAIL, REFUTED, SKIPPED = "pass", "fail", "refuted", "skipped"
STATUSES = (PASS, FAIL, REFUTED, SKIPPED)

# Claim anchors: the mathematical statement each report row is checking.
ANCHORS = {
    "syzygy": "u*D1 + v*D2 + w*D3 = 0",
    "lambda_q": "lambda_q = ((u*D1)^q + (v*D2)^q + (w*D3)^q)/p",
    "lambda_q_degree": "deg(lambda_q) = (q,q,q,q)",
    "p_eta_q": "p*lambda_q in (D1^q, D2^q, D3^q)",
    "divisibility": "p | binom(p^e-1+r, p^e-1), 1 <= r <= p^e-1",
    "product_display": "binom(p^e-1+r, p^e-1) = (p^e/r) * prod_{t<r} (p^e/t + 1)",
    "decomposition": "(1/p)((A+B)^(k+1)(-1)^k - A^(k+1) - B^(k+1))(AB(A+B))^k = -(A+B)^(2k+1) S1 + A^(2k+1) S2 + B^(2k+1) S3",
    "family_support": "(A+B)^(q+k)[T,A]^k[T,B]^k, A^(q+k)[T,B]^k[T+B,A+B]^k, B^(q+k)[T,A]^k[T-A,A+B]^k",
    "bridge": "lambda (D1 D2 D3)^k / (uvw)^(q+2k) = (1/p)((A+B)^q + (-A)^q + (-B)^q)((A+B)AB)^k",
    "certificate": "lambda_q (D1 D2 D3)^k = c1 D1^(q+k) + c2 D2^(q+k) + c3 D3^(q+k)",
    "cofactor_degrees": "deg(c1) = (q+2k,k,k,2k), deg(c2) = (k,q+2k,k,2k), deg(c3) = (k,k,q+2k,2k)",
    "cofactor_support": "c1 in u^q [uy,vx]^k [uz,wx]^k",
    "oracle": "lambda_q (D1 D2 D3)^k is a Z-linear combination of the cofactor families",
    "eta_q": "eta_q = 0 in H^3_a(R) for k = q-1",
    "identity": "P1 - P2 - P3 = 0 in Z[A,B,T]",
    "coefficient_cases": "coefficient of T^m, reduced by binom(k,m)(AB)^(k-m)",
    "binom_product": "binom(k,m) binom(k-m,n-m) = binom(k,n) binom(n,m)",
    "lemma1": "sum_i (-1)^i binom(2k+1,s+i) binom(k+i,k) binom(k+m-i,k)",
    "lemma2": "sum_j (-1)^j binom(s,j) binom(a+j,k) = (-1)^s binom(a,k-s)",
    "lemma3": "sum_i binom(k-i,k-s) binom(k+i,k) binom(k+m-i,m) = binom(k+m-s,m) binom(2k+m+1,s)",
    "certificate1": "G(m,i+1) - G(m,i) = (2k+m+2)(m+s-k)F(m,i) - (m+1)(m+s+1)F(m+1,i)",
    "certificate2": "G(s,j+1) - G(s,j) = (k-s)F(s,j) + (a-k+s+1)F(s+1,j)",
    "certificate3": "G(s,i+1) - G(s,i) = (k-s)(2k+m-s+1)F(s,i) - (s+1)(k+m-s)F(s+1,i)",
    "torsion_integrality": "lambda = ((ux)^p + (vy)^p + (wz)^p)/p in R",
    "torsion_annihilation": "p*eta = 0",
    "torsion_uniqueness": "only monomial in c1 is u^p y^k z^k",
    "torsion_specialization": "coefficient of x^(p-1)y in (x^p+y^p+(-1)^p(x+y)^p)/p is (-1)^p",
    "torsion_oracle": "lambda (xyz)^k not in (x^(p+k), y^(p+k), z^(p+k))R",
}


@dataclass
class CheckResult:
    claim: str
    anchor: str
    status: str
    witness: Any = None
    millis: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.anchor not in ANCHORS.values():
            raise ValueError(f"unregistered anchor {self.anchor!r}")

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "paper_anchor": self.anchor,
            "status": self.status,
            "witness": self.witness,
            "millis": round(self.millis, 3),
        }


@dataclass
class VerificationReport:
    rows: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status != FAIL for r in self.rows)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.rows if r.status == FAIL]

    def add(self, claim: str, key: str, ok: bool | str, witness: Any = None, millis: float = 0.0) -> CheckResult:
        status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        row = CheckResult(claim, ANCHORS[key], status, witness, millis)
        self.rows.append(row)
        return row

    def extend(self, other: VerificationReport) -> VerificationReport:
        self.rows.extend(other.rows)
        return self

    def __iter__(self) -> Iterator[CheckResult]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)


@contextmanager
def timer() -> Iterator[list[float]]:
    """Yields a one-element list that receives elapsed milliseconds on exit."""
    box = [0.0]
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = (time.perf_counter() - t0) * 1000.0
