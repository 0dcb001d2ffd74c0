"""Classification of signal pairs up to the irreducible phase-retrieval
ambiguities: global phase and conjugate reflection."""

from __future__ import annotations

import enum
from dataclasses import dataclass

__all__ = ["VerdictKind", "EquivalenceVerdict"]


class VerdictKind(enum.Enum):
    GLOBAL_PHASE = "global-phase"
    CONJUGATE_REFLECTION = "conjugate-reflection"
    DISTINCT = "distinct"


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Outcome of comparing two signals.

    ``constant`` is the best-fit unimodular factor (absent for distinct
    pairs); ``residual`` is the winning relative misfit.
    """

    kind: VerdictKind
    constant: complex | None
    residual: float

    def __post_init__(self):
        if self.kind is not VerdictKind.DISTINCT:
            if self.constant is None or abs(abs(self.constant) - 1) > 1e-10:
                raise ValueError(
                    f"non-distinct verdicts need a unimodular constant, got {self.constant}"
                )
        if self.residual < 0:
            raise ValueError("residual must be nonnegative")

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "constant": None
            if self.constant is None
            else [float(self.constant.real), float(self.constant.imag)],
            "residual": float(self.residual),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "EquivalenceVerdict":
        c = doc["constant"]
        return cls(
            VerdictKind(doc["kind"]),
            None if c is None else complex(c[0], c[1]),
            float(doc["residual"]),
        )
