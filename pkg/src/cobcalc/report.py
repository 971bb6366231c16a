"""Shared pass/fail rows for identity verifiers.

Failures are data, not exceptions: each check yields an
:class:`IdentityResult` carrying the first failing degree and a witness
term so a broken identity can be located immediately.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pseries import TruncatedSeries, series_str


@dataclass(frozen=True)
class IdentityResult:
    identity: str
    law: str
    order: int
    passed: bool
    first_failing_degree: int | None = None
    witness_term: str | None = None

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "law": self.law,
            "order": self.order,
            "status": "pass" if self.passed else "fail",
            "first_failing_degree": self.first_failing_degree,
            "witness_term": self.witness_term,
        }

    def __str__(self) -> str:
        mark = "pass" if self.passed else "FAIL"
        extra = ""
        if not self.passed and self.first_failing_degree is not None:
            extra = f" (first failure at degree {self.first_failing_degree}: {self.witness_term})"
        return f"[{mark}] {self.identity} law={self.law} order={self.order}{extra}"


def check_zero(identity: str, law: str, difference: TruncatedSeries,
               order: int | None = None) -> IdentityResult:
    """Report whether a difference series vanishes at its trusted order."""
    if order is not None:
        difference = difference.truncate(min(order, difference.order))
    if difference.is_zero():
        return IdentityResult(identity, law, difference.order, True)
    degree, ev, coeff = difference.lowest_term()
    witness = series_str(difference.homogeneous_part(degree))
    return IdentityResult(identity, law, difference.order, False, degree, witness)
