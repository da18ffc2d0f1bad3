"""Odd-subgraph certificates and their JSON document form."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import PreconditionError
from .graph import Graph, VertexSet, verify_all_odd


class Branch(str, enum.Enum):
    GALLAI_ODD = "GallaiOdd"
    MAX_DEGREE = "MaxDegree"
    INDEPENDENT_SET = "IndependentSet"
    MATCHING = "Matching"
    CLUSTER = "Cluster"
    PIPELINE = "Pipeline"
    ORACLE = "Oracle"


@dataclass(frozen=True)
class OddCertificate:
    """A vertex set claimed to induce an all-odd subgraph.

    ``guarantee`` is the lower bound on ``len(set)`` promised by the
    procedure that produced it; it is a claim, checked by :meth:`check`.
    """

    set: VertexSet
    branch: Branch
    guarantee: Fraction = Fraction(0)
    trace_id: str | None = None

    @property
    def size(self) -> int:
        return len(self.set)

    def is_valid(self, g: Graph) -> bool:
        return (
            self.set.n == g.n
            and verify_all_odd(g, self.set)
            and self.size >= self.guarantee
        )

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "n": self.set.n,
            "set": self.set.to_list(),
            "branch": self.branch.value,
            "guarantee": {
                "num": self.guarantee.numerator,
                "den": self.guarantee.denominator,
            },
        }
        if self.trace_id is not None:
            doc["trace_id"] = self.trace_id
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> OddCertificate:
        try:
            n = int(doc["n"])
            ids = [int(v) for v in doc["set"]]
            branch = Branch(doc.get("branch", Branch.ORACLE.value))
            g = doc.get("guarantee", {"num": 0, "den": 1})
            guarantee = Fraction(int(g["num"]), int(g["den"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"malformed certificate document: {exc}") from None
        return cls(VertexSet.of(n, ids), branch, guarantee, doc.get("trace_id"))

    @classmethod
    def from_json(cls, text: str) -> OddCertificate:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PreconditionError(f"certificate is not valid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise PreconditionError("certificate document must be a JSON object")
        return cls.from_dict(doc)
