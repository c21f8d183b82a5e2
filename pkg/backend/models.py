from pydantic import BaseModel, Field
from typing import Any, Dict, List, Literal, Optional

from services.lookup_table_service import TableMode
from services.sexagesimal_service import ArcUnit, RadiusConstant, TRIJYA


OutputFormat = Literal['sexagesimal', 'decimal', 'json']
JyaMethod = Literal['series', 'cubic', 'bhaskara']


class CliConfig(BaseModel):
    """Options shared by every subcommand"""
    radius_thirds: int = Field(default=TRIJYA.thirds, gt=0)
    unit: ArcUnit = ArcUnit.MINUTES
    output_format: OutputFormat = 'sexagesimal'
    precision: int = Field(default=12, ge=1, le=40)
    trace: bool = False
    unicode: bool = False

    @property
    def radius(self) -> RadiusConstant:
        return RadiusConstant(self.radius_thirds)


class ArcResult(BaseModel):
    """Result envelope shared by the CLI's JSON output and the API"""
    method: str
    inputs: Dict[str, str]
    radius_thirds: int
    result_thirds: int
    result_sexagesimal: str
    value: Optional[str] = None  # decimal value of dimensionless results
    trace: Optional[List[Dict[str, Any]]] = None


class ArcRequest(BaseModel):
    """Common request fields; arcs are sexagesimal text or decimals in `unit`"""
    radius: Optional[str] = None
    unit: ArcUnit = ArcUnit.MINUTES
    precision: int = Field(default=12, ge=1, le=40)
    trace: bool = False
    unicode: bool = False


class BhaskaraSinRequest(ArcRequest):
    degrees: str


class BrahmaguptaArcsinRequest(ArcRequest):
    jya: str


class JyaRequest(ArcRequest):
    arc: str
    method: JyaMethod = 'series'


class SmallArcsinRequest(ArcRequest):
    jya: str


class IterativeArcsinRequest(ArcRequest):
    jya: str
    max_iter: int = Field(default=50, ge=1, le=1000)
    rounding: bool = True


class TableArcsinRequest(ArcRequest):
    jya: str
    mode: TableMode = TableMode.COMMENTARY


class LargeArcsinRequest(ArcRequest):
    jya: str


class CircumferenceRequest(ArcRequest):
    diameter: str
    approx: str


class ReportRequest(BaseModel):
    """Request model for the worked-example PDF"""
    radius: Optional[str] = None


class TableResponse(BaseModel):
    table: Literal['madhava', 'lookup']
    radius_thirds: int
    mode: Optional[TableMode] = None
    rows: List[Dict[str, Any]]


class ErrorScanRowModel(BaseModel):
    x_deg: str
    approx: str
    exact: str
    rel_err_percent: str


class ErrorScanResponse(BaseModel):
    step: str
    digits: int
    max_x_deg: str
    max_rel_err_percent: str
    small_x_limit_percent: str
    rows: List[ErrorScanRowModel]


class CoefficientRow(BaseModel):
    grade: int
    coefficient: str
    a001764: int
    matches: bool


class CoefficientsResponse(BaseModel):
    n: int
    order: int
    rows: List[CoefficientRow]
    prefix_matches: bool
