from __future__ import annotations

import json
import logging
from typing import Any, Iterable, Literal, Sequence

from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


class ClaimRecord(BaseModel):
    claim: str
    status: Literal["pass", "fail"]
    witness: dict[str, Any] | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @classmethod
    def check(cls, claim: str, passed: bool, witness: dict[str, Any] | None = None) -> ClaimRecord:
        record = cls(
            claim=claim,
            status="pass" if passed else "fail",
            witness=None if passed else witness,
        )
        if passed:
            logger.info("Claim passed", extra={"claim": claim})
        else:
            logger.warning("Claim failed", extra={"claim": claim, "witness": witness})
        return record

    @classmethod
    def from_checks(
        cls,
        claim: str,
        checks: Iterable[tuple[bool, dict[str, Any]]],
    ) -> ClaimRecord:
        # первый провалившийся элемент и есть минимальный свидетель: проверки идут по возрастанию
        for passed, witness in checks:
            if not passed:
                return cls.check(claim, False, witness)
        return cls.check(claim, True)


class VerificationResult(BaseModel):
    claims: list[ClaimRecord] = Field(default_factory=list)
    data: dict[str, Any] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(claim.passed for claim in self.claims)

    def failed(self) -> list[ClaimRecord]:
        return [claim for claim in self.claims if not claim.passed]


class SeriesPayload(BaseModel):
    var: str
    window: list[int] | None = None
    coeffs: dict[str, int] = Field(default_factory=dict)


class MonomialPayload(BaseModel):
    s: int = Field(ge=0)
    a: list[int]
    c: list[int]


class RunReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    command: str
    params: dict[str, Any] = Field(default_factory=dict)
    claims: list[ClaimRecord] = Field(default_factory=list)
    data: dict[str, Any] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(claim.passed for claim in self.claims)

    def extend(self, label: str, result: VerificationResult) -> None:
        self.claims.extend(
            claim.model_copy(update={"claim": f"{label}: {claim.claim}"}) for claim in result.claims
        )
        self.data[label] = result.data

    def to_json(self) -> str:
        payload = self.model_dump(by_alias=True, mode="json")
        payload["ok"] = self.ok
        return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2)

    def summary(self) -> str:
        failed = [claim for claim in self.claims if not claim.passed]
        lines: list[str] = [
            f"Команда {self.command}: проверок {len(self.claims)}, провалено {len(failed)}",
            *self._format_bullets(
                [claim.claim for claim in failed],
                fallback="- все тождества выполнены.",
            ),
        ]
        return "\n".join(lines)

    @staticmethod
    def _format_bullets(items: Sequence[str], fallback: str) -> list[str]:
        if not items:
            return [fallback]

        return [f"- {value}" for value in items]
