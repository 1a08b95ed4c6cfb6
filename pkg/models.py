from __future__ import annotations

from enum import Enum
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, conint


# Classification
class TilingCase(str, Enum):
    DetOne_NoTile = "DetOne_NoTile"
    Expanding_Exists = "Expanding_Exists"
    Mixed_RationalSlope_NoTile = "Mixed_RationalSlope_NoTile"
    Mixed_IrrationalSlope_Exists = "Mixed_IrrationalSlope_Exists"
    Unsupported = "Unsupported"

    @property
    def exists(self) -> Optional[bool]:
        if self in (TilingCase.Expanding_Exists, TilingCase.Mixed_IrrationalSlope_Exists):
            return True
        if self is TilingCase.Unsupported:
            return None
        return False


class SpectrumSummary(BaseModel):
    kind: str
    trace: str
    det: str
    discriminant: str
    lambda1: Optional[str] = None
    lambda2: Optional[str] = None
    modulus_sq: Optional[str] = None


class ClassificationReport(BaseModel):
    subject: Literal["lattice", "wavelet"] = "lattice"
    matrix: List[List[str]]
    lattice: Optional[List[List[str]]] = None
    normalized_matrix: List[List[str]]
    inverted: bool = False
    spectrum: SpectrumSummary
    case: TilingCase
    exists: Optional[bool] = None
    # P^-1 A' P, the frame in which the eigenvector is read
    conjugated_matrix: Optional[List[List[str]]] = None
    eigenvector: Optional[List[str]] = None
    slope_rational: Optional[bool] = None
    notes: List[str] = Field(default_factory=list)


# Diophantine
class BoundReport(BaseModel):
    n: int
    M: int
    c: str
    eps: str
    passed: bool
    witness: Optional[str] = Field(None, description="p/q attaining the smallest scaled gap, or the first failure")
    min_gap: Optional[str] = None
    min_scaled_gap: Optional[str] = None
    power_margin: Optional[str] = None
    margin_estimate: Optional[float] = None


class ContinuedFractionReport(BaseModel):
    beta: str
    partial_quotients: List[int]
    convergents: List[str]
    M: List[int]
    terminated: bool = False
    period_start: Optional[int] = None
    period_length: Optional[int] = None
    check: Optional[BoundReport] = None


# Verification
class VerificationMode(str, Enum):
    exact = "exact"
    raster = "raster"


class CheckKind(str, Enum):
    translational = "translational"
    multiplicative = "multiplicative"


class OverlapWitness(BaseModel):
    first: int
    second: int
    shift: List[str] = Field(..., description="lattice vector, or [j] for a dilation power")
    measure: str
    region: Optional[List[str]] = None


class RefinementPoint(BaseModel):
    resolution: int
    overlap_fraction: float
    defect_fraction: float


class VerificationReport(BaseModel):
    kind: CheckKind
    mode: VerificationMode = VerificationMode.exact
    passed: bool
    packs: bool
    covers: bool
    overlap_measure: str = "0"
    coverage_defect: str = "0"
    overlap_fraction: Optional[float] = None
    defect_fraction: Optional[float] = None
    window: List[str] = Field(default_factory=list)
    window_measure: str = "0"
    excluded_measure: str = "0"
    depth: Optional[int] = None
    resolution: Optional[int] = None
    contributing: List[str] = Field(default_factory=list)
    witnesses: List[OverlapWitness] = Field(default_factory=list)
    refinement: List[RefinementPoint] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)


class GramReport(BaseModel):
    indices: List[str]
    max_deviation: float
    worst_pair: List[int] = Field(default_factory=list)
    diagonal_min: float
    tolerance: float
    passed: bool
    precision_digits: int


# Construction
class Provenance(BaseModel):
    m: int
    alpha: List[str]
    source: List[str]
    piece: List[str]


class ConstructionReport(BaseModel):
    kind: Literal["prop32", "seed", "scb", "speegle"]
    measure: str
    boxes: int
    params: Dict[str, str] = Field(default_factory=dict)
    translational_defect: Optional[str] = None
    provenance: List[Provenance] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)


class IterationStep(BaseModel):
    n: int
    m: int
    truncation: str
    measure_s: str
    measure_u: str
    measure_tau_u: str
    measure_r: str
    measure_changed: str
    change_bound: Optional[str] = None
    measure_x: str
    x_bound: Optional[str] = None
    packs: bool
    address_matches: bool
    boxes: int


class IterationTrace(BaseModel):
    status: Literal["ok", "cap_exceeded"] = "ok"
    cap: int
    measure_omega: str
    measure_s1: Optional[str] = None
    steps: List[IterationStep] = Field(default_factory=list)
    chain_bound_ok: Optional[bool] = None
    half_measure_ok: Optional[bool] = None
    message: Optional[str] = None


# Pipeline
class PipelineReport(BaseModel):
    status: str
    classification: Optional[ClassificationReport] = None
    # V with V^-1 A V diagonal; constructions live in this frame
    frame: Optional[List[List[str]]] = None
    diagonal: Optional[List[List[str]]] = None
    frame_lattice: Optional[List[List[str]]] = None
    construction: Optional[ConstructionReport] = None
    iteration: Optional[IterationTrace] = None
    translational: Optional[VerificationReport] = None
    multiplicative: Optional[VerificationReport] = None
    error: Optional[str] = None


# Run settings
class RunConfig(BaseModel):
    depth: conint(ge=1) = 8
    cap: conint(ge=1) = 64
    resolution: conint(gt=1) = 256
    window: List[str] = Field(default_factory=lambda: ["-4", "4", "-4", "4"], min_length=4, max_length=4)
    exclude_axis: Optional[str] = None
    require_cover: bool = False
    bands: conint(ge=1) = 6
    steps: conint(ge=1) = 5
    results_dir: Optional[str] = None


__all__ = [
    "TilingCase",
    "SpectrumSummary",
    "ClassificationReport",
    "BoundReport",
    "ContinuedFractionReport",
    "VerificationMode",
    "CheckKind",
    "OverlapWitness",
    "RefinementPoint",
    "VerificationReport",
    "GramReport",
    "Provenance",
    "ConstructionReport",
    "IterationStep",
    "IterationTrace",
    "PipelineReport",
    "RunConfig",
]
