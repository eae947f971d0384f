"""Request and response models of the evaluation service."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import ConfigDoc, PositionSpec

_MAX_SEED = 2**64 - 1


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ManifestModel(_Model):
    config_digest: str
    tool_version: str
    seed: int | None
    min_separation_m: float
    nlos_severity_r: float
    generated_at: str


class EvalRequest(_Model):
    config: ConfigDoc
    tx: PositionSpec | None = None
    tx_manhattan: float | None = Field(default=None, gt=0.0)
    rx: PositionSpec | None = None

    @model_validator(mode="after")
    def _exactly_one_tx(self) -> "EvalRequest":
        if (self.tx is None) == (self.tx_manhattan is None):
            raise ValueError("give exactly one of 'tx' or 'tx_manhattan'")
        return self


class EvalResponse(_Model):
    tx: PositionSpec
    rx: PositionSpec
    manhattan: float
    link_class: str
    p_noint: float
    p_x: float
    p_y: float
    p_c: float
    zeta: float
    kappa: float
    csv: str
    manifest: ManifestModel


class SweepRequest(_Model):
    config: ConfigDoc
    workers: int | None = Field(default=None, ge=1)


class Fig3RowModel(_Model):
    distance: float
    radius: float
    p_i_star: float | None
    feasible: bool


class Fig4RowModel(_Model):
    panel: float
    radius: float
    distance: float
    p_i_star: float
    outage: float


class Fig3Response(_Model):
    rows: list[Fig3RowModel]
    csv: str
    manifest: ManifestModel


class Fig4Response(_Model):
    rows: list[Fig4RowModel]
    csv: str
    manifest: ManifestModel


class McValidateRequest(_Model):
    config: ConfigDoc
    trials: int = Field(default=100_000, ge=1000)
    seed: int = Field(default=0, ge=0, le=_MAX_SEED)


class McCheckRowModel(_Model):
    scenario: str
    tx_road: str
    tx_offset: float
    radius: float
    p_i: float
    trials: int
    seed: int
    mc_mean: float
    std_error: float
    analytic_p_c: float
    abs_diff: float
    three_sigma: float
    passed: bool


class McValidateResponse(_Model):
    rows: list[McCheckRowModel]
    n_pass: int
    n_total: int
    required_passes: int
    passed: bool
    csv: str
    manifest: ManifestModel


class VersionResponse(_Model):
    name: str
    version: str
