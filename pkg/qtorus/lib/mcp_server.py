import json

from mcp.server.fastmcp import FastMCP

from qtorus.config import c_env
from qtorus.lib.conjugator import analyze as analyze_report
from qtorus.lib.conjugator import cocycle_scalar, conj_any, det_findings, path_model, trace_findings
from qtorus.lib.cyclotomic import CycParams
from qtorus.lib.logger import get_logger
from qtorus.lib.torus import SL2Matrix

log = get_logger(__name__)

mcp = FastMCP("qtorus", port=c_env.QTORUS_PORT)


def _params(n: int, q_exp: int | None) -> CycParams:
    return CycParams(n, c_env.DEFAULT_Q_EXP if q_exp is None else q_exp)


@mcp.tool()
def analyze(n: int, mat: str, q_exp: int | None = None) -> str:
    """
    Full conjugation report for B in SL2(Z) at an odd prime n, as JSON.
     - mat is "a,b,c,d" with ad - bc = 1
     - q_exp picks q = zeta**q_exp (default 1)
    """
    log.info(f"tool analyze n={n} mat={mat}")
    return analyze_report(SL2Matrix.parse(mat), _params(n, q_exp)).model_dump_json()


@mcp.tool()
def conj(n: int, mat: str, q_exp: int | None = None) -> str:
    """
    Conjugating matrix C(B) and the path used to build it, as JSON.
    """
    c = conj_any(SL2Matrix.parse(mat), _params(n, q_exp))
    return json.dumps({
        "path": path_model(c.path).model_dump(),
        "nu": c.nu.to_json(),
        "C": c.matrix.to_json(),
    })


@mcp.tool()
def cocycle(n: int, mat1: str, mat2: str, q_exp: int | None = None) -> str:
    """
    Scalar lambda with C(B1) C(B2) = lambda C(B1 B2), as JSON coefficients in zeta.
    """
    lam = cocycle_scalar(SL2Matrix.parse(mat1), SL2Matrix.parse(mat2), _params(n, q_exp))
    return json.dumps({"lambda": lam.to_json(), "norm": str(lam.norm())})


@mcp.tool()
def trace(n: int, mat: str, q_exp: int | None = None) -> str:
    """
    Trace of C(B) with K_B, its Legendre symbol and the Gauss-sum checks, as JSON.
    """
    params = _params(n, q_exp)
    return trace_findings(conj_any(SL2Matrix.parse(mat), params), params).model_dump_json()


@mcp.tool()
def det(n: int, mat: str, q_exp: int | None = None) -> str:
    """
    Determinant of C(B), the exact |det|^2 = nu^n check and the numeric phase, as JSON.
    """
    params = _params(n, q_exp)
    return det_findings(conj_any(SL2Matrix.parse(mat), params), params).model_dump_json()
