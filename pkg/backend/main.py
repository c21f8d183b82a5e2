from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import StreamingResponse
from datetime import datetime
from fractions import Fraction
import logging
import os
from dotenv import load_dotenv
from io import BytesIO
from contextlib import asynccontextmanager

from models import (
    ArcResult,
    BhaskaraSinRequest,
    BrahmaguptaArcsinRequest,
    CircumferenceRequest,
    CoefficientsResponse,
    ErrorScanResponse,
    IterativeArcsinRequest,
    JyaRequest,
    LargeArcsinRequest,
    ReportRequest,
    SmallArcsinRequest,
    TableArcsinRequest,
    TableResponse,
)
from services.arc_method_service import (
    arc_thirds_from_text,
    coefficients_response,
    error_scan_response,
    lookup_table_response,
    madhava_table_response,
    resolve_radius,
    run_bhaskara_sin,
    run_brahmagupta_arcsin,
    run_circumference,
    run_iterative_arcsin,
    run_jya,
    run_large_arcsin,
    run_small_arcsin,
    run_table_arcsin,
)
from services.errors import ConvergenceError, KeralaArcError, OutOfTableRangeError
from services.lookup_table_service import TableMode
from services.pdf_service import generate_report_pdf
from services.sexagesimal_service import ArcUnit, format_sexagesimal, parse_arc_text

# Load environment variables
load_dotenv()

logging.basicConfig(
    level=os.getenv("LOG_LEVEL", "INFO").upper(),
    format="%(asctime)s %(levelname)s %(name)s: %(message)s",
)
logger = logging.getLogger(__name__)

API_VERSION = "1.0.0"


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Lifespan context manager for startup and shutdown events"""
    radius = resolve_radius(None)
    logger.info(f"Kerala Arcsin API starting with radius {format_sexagesimal(radius.thirds)}")
    yield
    logger.info("Kerala Arcsin API shut down")


app = FastAPI(title="Kerala Arcsin API", version=API_VERSION, lifespan=lifespan)

# CORS configuration
origins = [
    origin.strip()
    for origin in os.getenv("CORS_ORIGINS", "http://localhost:5173,http://localhost:3000").split(",")
    if origin.strip()
]

app.add_middleware(
    CORSMiddleware,
    allow_origins=origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def arc_error(e: KeralaArcError) -> HTTPException:
    """Map a service error to a 400 response"""
    detail = {"error": type(e).__name__, "message": str(e)}
    if isinstance(e, ConvergenceError) and e.trace is not None:
        detail["trace"] = e.trace.to_rows()
    if isinstance(e, OutOfTableRangeError):
        detail["low"] = e.low
        detail["high"] = e.high
    return HTTPException(status_code=400, detail=detail)


@app.get("/healthz")
async def health_check():
    """Health check endpoint"""
    return {
        "status": "ok",
        "timestamp": datetime.utcnow().isoformat() + "Z"
    }


@app.get("/")
async def root():
    """Root endpoint"""
    return {"message": "Kerala Arcsin API", "version": API_VERSION}


@app.post("/api/v1/classical/bhaskara-sin", response_model=ArcResult, response_model_exclude_none=True)
async def bhaskara_sin_endpoint(request: BhaskaraSinRequest):
    """Bhāskara I's sine of an angle given in degrees"""
    try:
        degrees = parse_arc_text(request.degrees, ArcUnit.DEGREES) / 60
        return run_bhaskara_sin(degrees, resolve_radius(request.radius), request.precision, request.unicode)
    except KeralaArcError as e:
        raise arc_error(e)
    except Exception as e:
        logger.error(f"Error computing Bhaskara sine: {e}")
        raise HTTPException(status_code=500, detail=f"Error computing Bhaskara sine: {str(e)}")


@app.post("/api/v1/classical/brahmagupta-arcsin", response_model=ArcResult, response_model_exclude_none=True)
async def brahmagupta_arcsin_endpoint(request: BrahmaguptaArcsinRequest):
    try:
        m = parse_arc_text(request.jya, request.unit)
        return run_brahmagupta_arcsin(m, resolve_radius(request.radius), request.precision, request.unicode)
    except KeralaArcError as e:
        raise arc_error(e)
    except Exception as e:
        logger.error(f"Error computing Brahmagupta arcsin: {e}")
        raise HTTPException(status_code=500, detail=f"Error computing Brahmagupta arcsin: {str(e)}")


@app.post("/api/v1/jya", response_model=ArcResult, response_model_exclude_none=True)
async def jya_endpoint(request: JyaRequest):
    """jyā of an arc by the series, the cubic or Bhāskara's formula"""
    try:
        s = arc_thirds_from_text(request.arc, request.unit)
        return run_jya(s, resolve_radius(request.radius), request.method, request.unicode)
    except KeralaArcError as e:
        raise arc_error(e)
    except Exception as e:
        logger.error(f"Error computing jya: {e}")
        raise HTTPException(status_code=500, detail=f"Error computing jya: {str(e)}")


@app.post("/api/v1/arcsin/small", response_model=ArcResult, response_model_exclude_none=True)
async def small_arcsin_endpoint(request: SmallArcsinRequest):
    try:
        m = arc_thirds_from_text(request.jya, request.unit)
        return run_small_arcsin(m, resolve_radius(request.radius), request.unicode)
    except KeralaArcError as e:
        raise arc_error(e)
    except Exception as e:
        logger.error(f"Error computing small arcsin: {e}")
        raise HTTPException(status_code=500, detail=f"Error computing small arcsin: {str(e)}")


@app.post("/api/v1/arcsin/iterative", response_model=ArcResult, response_model_exclude_none=True)
async def iterative_arcsin_endpoint(request: IterativeArcsinRequest):
    """
    Iterative arcsin of a small jyā
    Returns 400 with the partial trace when the iteration does not settle
    """
    try:
        m = arc_thirds_from_text(request.jya, request.unit)
        return run_iterative_arcsin(
            m,
            resolve_radius(request.radius),
            max_iter=request.max_iter,
            rounding=request.rounding,
            trace=request.trace,
            unicode=request.unicode,
        )
    except KeralaArcError as e:
        raise arc_error(e)
    except Exception as e:
        logger.error(f"Error computing iterative arcsin: {e}")
        raise HTTPException(status_code=500, detail=f"Error computing iterative arcsin: {str(e)}")


@app.post("/api/v1/arcsin/table", response_model=ArcResult, response_model_exclude_none=True)
async def table_arcsin_endpoint(request: TableArcsinRequest):
    try:
        m = arc_thirds_from_text(request.jya, request.unit)
        return run_table_arcsin(m, resolve_radius(request.radius), request.mode, request.trace, request.unicode)
    except KeralaArcError as e:
        raise arc_error(e)
    except Exception as e:
        logger.error(f"Error looking up arc: {e}")
        raise HTTPException(status_code=500, detail=f"Error looking up arc: {str(e)}")


@app.post("/api/v1/arcsin/large", response_model=ArcResult, response_model_exclude_none=True)
async def large_arcsin_endpoint(request: LargeArcsinRequest):
    try:
        m = arc_thirds_from_text(request.jya, request.unit)
        return run_large_arcsin(m, resolve_radius(request.radius), request.trace, request.unicode)
    except KeralaArcError as e:
        raise arc_error(e)
    except Exception as e:
        logger.error(f"Error computing large arcsin: {e}")
        raise HTTPException(status_code=500, detail=f"Error computing large arcsin: {str(e)}")


@app.post("/api/v1/circumference", response_model=ArcResult, response_model_exclude_none=True)
async def circumference_endpoint(request: CircumferenceRequest):
    try:
        diameter = parse_arc_text(request.diameter, request.unit)
        approx = parse_arc_text(request.approx, request.unit)
        return run_circumference(diameter, approx, resolve_radius(request.radius), request.trace, request.unicode)
    except KeralaArcError as e:
        raise arc_error(e)
    except Exception as e:
        logger.error(f"Error refining circumference: {e}")
        raise HTTPException(status_code=500, detail=f"Error refining circumference: {str(e)}")


@app.get("/api/v1/tables/madhava", response_model=TableResponse, response_model_exclude_none=True)
async def madhava_table_endpoint(radius: str = Query(None), unicode: bool = False):
    try:
        return madhava_table_response(resolve_radius(radius), unicode)
    except KeralaArcError as e:
        raise arc_error(e)
    except Exception as e:
        logger.error(f"Error building sine table: {e}")
        raise HTTPException(status_code=500, detail=f"Error building sine table: {str(e)}")


@app.get("/api/v1/tables/lookup", response_model=TableResponse, response_model_exclude_none=True)
async def lookup_table_endpoint(
    radius: str = Query(None),
    mode: TableMode = TableMode.COMMENTARY,
    unicode: bool = False,
):
    try:
        return lookup_table_response(resolve_radius(radius), mode, unicode)
    except KeralaArcError as e:
        raise arc_error(e)
    except Exception as e:
        logger.error(f"Error building lookup table: {e}")
        raise HTTPException(status_code=500, detail=f"Error building lookup table: {str(e)}")


@app.get("/api/v1/coefficients", response_model=CoefficientsResponse)
async def coefficients_endpoint(n: int = Query(..., ge=0, le=12), order: int = Query(None, ge=0, le=24)):
    """Coefficients of the n-th iterate compared with (3j)!/(j!(2j+1)!)"""
    try:
        return coefficients_response(n, order)
    except KeralaArcError as e:
        raise arc_error(e)
    except Exception as e:
        logger.error(f"Error expanding coefficients: {e}")
        raise HTTPException(status_code=500, detail=f"Error expanding coefficients: {str(e)}")


@app.get("/api/v1/error-scan", response_model=ErrorScanResponse)
def error_scan_endpoint(step: str = Query("1"), digits: int = Query(None, ge=15, le=100)):
    try:
        try:
            step_value = Fraction(step)
        except (ValueError, ZeroDivisionError):
            raise HTTPException(status_code=400, detail=f"Invalid step: {step}")
        return error_scan_response(step_value, digits)
    except HTTPException:
        raise
    except KeralaArcError as e:
        raise arc_error(e)
    except Exception as e:
        logger.error(f"Error scanning Bhaskara sine: {e}")
        raise HTTPException(status_code=500, detail=f"Error scanning Bhaskara sine: {str(e)}")


@app.post("/api/v1/reports/pdf")
async def generate_pdf_report(request: ReportRequest):
    """
    PDF report generation endpoint
    Returns a PDF file as a streaming response
    """
    try:
        radius = resolve_radius(request.radius)
        pdf_bytes = generate_report_pdf(radius)
        return StreamingResponse(
            BytesIO(pdf_bytes),
            media_type="application/pdf",
            headers={"Content-Disposition": "attachment; filename=kerala-arcsin-report.pdf"}
        )
    except KeralaArcError as e:
        raise arc_error(e)
    except Exception as e:
        logger.error(f"Error generating PDF: {e}")
        raise HTTPException(status_code=500, detail=f"Error generating PDF: {str(e)}")
