from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, field_validator, model_validator


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"
    MARKDOWN = "markdown"


class AlgebraModel(str, Enum):
    SCALAR_FREE = "scalar-free"
    CHEVALLEY = "chevalley"


class Factorization(str, Enum):
    COSTANDARD = "costandard"
    STANDARD = "standard"


class SystemDescriptor(BaseModel):
    type: str = Field(..., pattern="^[A-Ga-g]$")
    rank: int = Field(..., ge=1)
    order: list[int]

    @model_validator(mode="after")
    def check_order(self):
        if sorted(self.order) != list(range(self.rank + 1)):
            raise ValueError(
                f"Order {self.order} is not a permutation of 0..{self.rank}."
            )
        return self

    @property
    def text(self) -> str:
        return f"{self.type.upper()}{self.rank}:{','.join(map(str, self.order))}"


class RunConfig(BaseModel):
    system: SystemDescriptor
    max_k: int = Field(3, ge=1)
    format: OutputFormat = OutputFormat.TEXT
    cache: Optional[str] = None
    checks: list[str] = Field(default_factory=list)
    algebra: AlgebraModel = AlgebraModel.SCALAR_FREE
    factorization: Factorization = Factorization.COSTANDARD
    rotations: bool = False
    n_jobs: int = 1
    progress: bool = False

    @field_validator("checks", mode="before")
    @classmethod
    def split_checks(cls, value):
        if isinstance(value, str):
            return [name.strip() for name in value.split(",") if name.strip()]
        return list(value)


class CachedWord(BaseModel):
    degree: list[int]
    imagslot: Optional[int] = None
    word: str


class CacheFile(BaseModel):
    system: SystemDescriptor
    delta: list[int]
    watermark_k: int
    factorization: Factorization = Factorization.COSTANDARD
    words: list[CachedWord]


class Witness(BaseModel):
    roots: list[str]
    words: list[str]
    note: str = ""


class VerdictReport(BaseModel):
    check: str
    system: str
    bound: int
    passed: bool = Field(..., alias="pass")
    witnesses: list[Witness] = Field(default_factory=list)
    # supporting findings of a passing check, e.g. every conjecture witness
    evidence: list[Witness] = Field(default_factory=list)

    model_config = {"populate_by_name": True}

    @model_validator(mode="after")
    def failures_have_witnesses(self):
        if not self.passed and not self.witnesses:
            raise ValueError("A failed verdict needs at least one witness.")
        return self

    def text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.check} [{self.system}, k<={self.bound}]: {status}"]
        for marker, found in (("", self.witnesses), ("+ ", self.evidence)):
            for witness in found:
                roots = " ".join(witness.roots)
                words = " ".join(witness.words)
                lines.append(f"  {marker}{witness.note}: {roots} {words}".rstrip())
        return "\n".join(lines)
