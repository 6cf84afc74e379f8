"""Request/response schema shared by the HTTP service and the CLI.

Every command answers with the same document shape: instance and input
echo the request, result carries the command's verdict, and witness holds
enough evidence (traces, ancestor tables, zig-zags) to re-verify the run.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_ID = "permutile/v1"


class InstanceModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["lambda", "trs"]
    policy: Literal["symmetric", "leftmost"] = "symmetric"
    rules: str | None = None
    head: list[str] | None = None


class BoundsModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    fuel: int = Field(10_000, ge=0)
    closure: int = Field(4_096, ge=1)
    ext: int = Field(3, ge=0)
    zigzag: int = Field(0, ge=0)
    cone: int = Field(4, ge=0)
    universal: int = Field(0, ge=0)


class InputModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    term: str
    script: list[str] | None = None
    script2: list[str] | None = None
    bounds: BoundsModel = BoundsModel()


class DocumentModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    schema_id: str = Field(SCHEMA_ID, alias="schema")
    command: str
    instance: InstanceModel
    input: InputModel
    result: dict
    witness: dict | None = None

    def payload(self) -> dict:
        return self.model_dump(by_alias=True)


class StandardizeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    instance: InstanceModel
    term: str
    script: list[str] = []
    bounds: BoundsModel = BoundsModel()


class EquivRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    instance: InstanceModel
    term: str
    script: list[str] = []
    script2: list[str] = []
    bounds: BoundsModel = BoundsModel()


class FactorizeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    instance: InstanceModel
    term: str
    script: list[str] = []
    bounds: BoundsModel = BoundsModel()


class ConeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    instance: InstanceModel
    term: str
    bounds: BoundsModel = BoundsModel()


class StatespaceRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    instance: InstanceModel
    term: str
    script: list[str] = []
    bounds: BoundsModel = BoundsModel()


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    document: DocumentModel


class VerifyResponse(BaseModel):
    ok: bool
    detail: str
