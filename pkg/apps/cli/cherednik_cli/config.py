from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from cherednik_core.params import DeformParam, StabParam, parse_rational

Command = Literal[
    "order",
    "homs",
    "fixed-points",
    "charts",
    "sections",
    "abl-verify",
    "shift-verify",
    "gr-verify",
    "ch-cycles",
    "sweep",
]


class CliSettings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", env_prefix="CHK_")

    threads: int = Field(default=1, ge=1)
    log_level: str = "INFO"
    default_window: int = Field(default=15, ge=1)
    default_cap: tuple[int, int] = (6, 6)
    default_depth: int = Field(default=10, ge=1)


class RunConfig(BaseModel):
    """Проверенные параметры одного запуска; классификация режимов идёт позже, в подкоманде."""

    model_config = ConfigDict(frozen=True)

    command: Command
    l: int | None = Field(default=None, ge=2)  # noqa: E741
    lam: tuple[str, ...] | None = None
    theta: tuple[int, ...] | None = None
    m: int = Field(default=1, ge=0)
    cap: tuple[int, int] = (6, 6)
    window: int = Field(default=15, ge=1)
    depth: int = Field(default=10, ge=1)
    top: int = Field(default=10, ge=0)
    seed: int | None = None
    samples: int = Field(default=5, ge=1)
    threads: int = Field(default=1, ge=1)
    out: str | None = None

    @field_validator("cap")
    @classmethod
    def _positive_cap(cls, value: tuple[int, int]) -> tuple[int, int]:
        if min(value) < 1:
            raise ValueError(f"Cap {list(value)} must be positive")
        return value

    @model_validator(mode="after")
    def _consistent_rank(self) -> RunConfig:
        for name, vector in (("lambda", self.lam), ("theta", self.theta)):
            if vector is not None and self.l is not None and len(vector) != self.l:
                raise ValueError(f"--{name} has {len(vector)} entries, expected {self.l}")
        if self.lam is not None:
            self.deform_param()
        if self.theta is not None:
            self.stab_param()
        if self.command == "sweep" and self.seed is None:
            raise ValueError("sweep needs --seed")
        return self

    @property
    def rank(self) -> int:
        for vector in (self.theta, self.lam):
            if vector is not None:
                return len(vector)
        if self.l is None:
            raise ValueError("Rank is unknown: pass --l, --lambda or --theta")
        return self.l

    def deform_param(self) -> DeformParam:
        if self.lam is None:
            raise ValueError(f"{self.command} needs --lambda")
        return DeformParam(values=tuple(parse_rational(value) for value in self.lam))

    def stab_param(self) -> StabParam:
        if self.theta is None:
            raise ValueError(f"{self.command} needs --theta")
        return StabParam(values=self.theta)

    def params(self) -> dict[str, object]:
        return self.model_dump(mode="json", exclude={"out", "threads"}, exclude_none=True)
