"""Request and response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..quadrature import QuadratureConfig


class QuadratureSettings(BaseModel):
    abs_tol: float = Field(1e-10, gt=0)
    rel_tol: float = Field(1e-10, gt=0)
    max_subdivisions: int = Field(2000, ge=1)
    tail_mass: float = Field(1e-12, gt=0, lt=1e-3)

    def to_config(self) -> QuadratureConfig:
        return QuadratureConfig(
            abs_tol=self.abs_tol,
            rel_tol=self.rel_tol,
            max_subdivisions=self.max_subdivisions,
            tail_mass=self.tail_mass,
        )


class WindowModel(BaseModel):
    """Conditioning interval (c, d); validated by the core layer."""

    c: float
    d: float


class MeasureRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    dist: str
    measure: str
    weight: Optional[str] = None
    theta: Optional[float] = None
    lam: Optional[float] = Field(None, alias="lambda")
    interval: Optional[WindowModel] = None
    config: QuadratureSettings = Field(default_factory=QuadratureSettings)


class SweepRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    dist: str
    measure: str
    weight: Optional[str] = None
    theta: Optional[float] = None
    lam: Optional[float] = Field(None, alias="lambda")
    c_grid: list[float]
    d_grid: list[float]
    config: QuadratureSettings = Field(default_factory=QuadratureSettings)


class DiffDensityRequest(BaseModel):
    dist: str
    interval: WindowModel
    v_grid: list[float]
    convention: Literal["normalized", "paper_literal"] = "normalized"
    config: QuadratureSettings = Field(default_factory=QuadratureSettings)


class DiffExpectRequest(BaseModel):
    dist: str
    interval: WindowModel
    phi: str = "v"
    method: Literal["quad", "mc"] = "quad"
    n: int = Field(1_000_000, ge=1)
    seed: int = 0
    config: QuadratureSettings = Field(default_factory=QuadratureSettings)


class DiffWextropyRequest(BaseModel):
    dist: str
    interval: WindowModel
    weight: str
    config: QuadratureSettings = Field(default_factory=QuadratureSettings)


class VerifyTheorem1Request(BaseModel):
    dist: str
    c: float
    d_grid: list[float]
    config: QuadratureSettings = Field(default_factory=QuadratureSettings)


class VerifyTheorem2Request(BaseModel):
    dist: str
    weight: str
    c_grid: list[float]
    d_grid: list[float]
    config: QuadratureSettings = Field(default_factory=QuadratureSettings)


class VerifyLemmaARequest(BaseModel):
    dist: str
    phi: str = "v"
    c_grid: list[float]
    d_grid: list[float]
    config: QuadratureSettings = Field(default_factory=QuadratureSettings)


class VerifyLemmaBRequest(BaseModel):
    dist: str
    interval: WindowModel
    v_grid: list[float]
    convention: Literal["normalized", "paper_literal"] = "normalized"
    config: QuadratureSettings = Field(default_factory=QuadratureSettings)


class MeasureRow(BaseModel):
    c: Optional[float]
    d: Optional[float]
    measure: str
    weight: str
    value: Optional[float]
    err: Optional[float]
    status: str


class RowsResponse(BaseModel):
    rows: list[MeasureRow]


class DiscreteRequest(BaseModel):
    pmf: str


class DiscreteResponse(BaseModel):
    entropy: float
    extropy: float


class CatalogResponse(BaseModel):
    distributions: dict[str, str]
    measures: dict[str, dict[str, bool]]
    weights: dict[str, str]
    phis: dict[str, str]
    conventions: list[str]
