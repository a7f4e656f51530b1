"""
Conjugating matrices C(B) for the SL2(Z) action on rho_{1,1}, and their
trace/determinant analysis.

For B = (a b; c d) with b invertible mod n the matrix is

    C[i][j] = q**(-b'd(i - aj)**2 - 2cj(i - aj) - acj**2),   b' = b**-1 mod n

and satisfies C rho(x) = rho(Bx) C. When n | b we use C(B) = C(BT) C(T)*,
which stays inside Z[zeta] at the cost of C C* = n**2 I instead of n I.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Annotated, Literal

import numpy as np
from pydantic import BaseModel, Field

from qtorus.config import c_env
from qtorus.lib.cyclotomic import CycNum, CycParams
from qtorus.lib.cycmat import (
    AnyMatrix,
    CycMatrix,
    NotScalarError,
    PowMatrix,
    as_cyc,
    proportionality_scalar,
)
from qtorus.lib.logger import get_logger
from qtorus.lib.numtheory import gauss_closed_numeric, gauss_sum_twisted, legendre, mod_inverse
from qtorus.lib.rep import RepParams, rho_basis, shift_rows
from qtorus.lib.torus import BasisIndex, SL2Matrix, T

log = get_logger(__name__)

Orientation = Literal["left", "right", "both"]


class NoInverseError(ValueError):
    pass


class CocycleError(RuntimeError):
    pass


@dataclass(frozen=True)
class ConjPath:
    kind: Literal["direct", "composed"]
    factors: tuple[SL2Matrix, SL2Matrix] | None = None


@dataclass(frozen=True)
class Conjugator:
    B: SL2Matrix
    matrix: AnyMatrix
    nu: CycNum
    path: ConjPath


@dataclass(frozen=True)
class ConjugationCheck:
    ok: bool
    orientation: Orientation | None


def k_b(B: SL2Matrix, n: int) -> int | None:
    """-(b'd(1-a)**2 + c(2-a)) mod n; None when n | b."""
    if B.b % n == 0:
        return None
    b_inv = mod_inverse(B.b, n)
    return -(b_inv * B.d * (1 - B.a) ** 2 + B.c * (2 - B.a)) % n


def conj_direct(B: SL2Matrix, params: CycParams) -> PowMatrix:
    n = params.n
    if B.b % n == 0:
        raise NoInverseError(f"b = {B.b} is not invertible mod {n}")
    b_inv = mod_inverse(B.b, n)
    a, c, d = B.a, B.c, B.d
    return PowMatrix.from_function(
        params,
        lambda i, j: -b_inv * d * (i - a * j) ** 2 - 2 * c * j * (i - a * j) - a * c * j * j,
    )


def column_vector(B: SL2Matrix, params: CycParams) -> CycMatrix:
    """v[i] = q**(-b'd i**2) in column 0; column j of C(B) is rho(e[aj,cj]) v."""
    b_inv = mod_inverse(B.b, params.n)
    return CycMatrix.from_function(
        params, lambda i, j: CycNum.from_power(params, -b_inv * B.d * i * i) if j == 0 else 0
    )


def cc_star_scalar(C: AnyMatrix) -> CycNum:
    """nu with C C* = nu I."""
    star = C.ctranspose().dense if isinstance(C, PowMatrix) else C.ctranspose()
    nu = (as_cyc(C) @ star).is_scalar()
    if nu is None:
        raise NotScalarError("C C* is not a scalar matrix")
    return nu


def conj_any(B: SL2Matrix, params: CycParams) -> Conjugator:
    n = params.n
    if B.b % n:
        return Conjugator(B, conj_direct(B, params), CycNum.from_int(params, n), ConjPath("direct"))
    # det B = 1 and n | b force a to be a unit, so BT has a unit upper-right entry
    BT = B @ T
    log.debug(f"n | b for {B}; composing through {BT} and T")
    matrix = conj_direct(BT, params).dense @ conj_direct(T, params).ctranspose().dense
    nu = CycNum.from_int(params, n * n)
    found = cc_star_scalar(matrix)
    if found != nu:
        log.error(f"composed conjugator for {B} has C C* = ({found}) I")
        raise NotScalarError(f"composed conjugator for {B} has C C* = ({found}) I, expected {n * n}")
    return Conjugator(B, matrix, nu, ConjPath("composed", (BT, T)))


def verify_conjugation(C: AnyMatrix, B: SL2Matrix, rp: RepParams | None = None) -> ConjugationCheck:
    """
    Test C rho(x) = rho(Bx) C ("left") and rho(x) C = C rho(Bx) ("right") on every
    basis element e[r,s], 0 <= r, s < n. Neither identity needs C to be inverted.
    """
    m = as_cyc(C)
    rp = rp or RepParams(m.params)
    n = m.n
    left = right = True
    for r in range(n):
        for s in range(n):
            if not (left or right):
                return ConjugationCheck(False, None)
            moved = B.act(BasisIndex(r, s))
            # rho(.) C is a row shift of C; only the C rho(.) side needs a product
            left = left and m @ rho_basis(rp, r, s) == shift_rows(rp, m, moved.r, moved.s)
            right = right and shift_rows(rp, m, r, s) == m @ rho_basis(rp, moved.r, moved.s)
    orientation: Orientation | None = "both" if left and right else "left" if left else "right" if right else None
    return ConjugationCheck(left or right, orientation)


def cocycle_scalar(B1: SL2Matrix, B2: SL2Matrix, params: CycParams) -> CycNum:
    """lambda with C(B1) C(B2) = lambda C(B1 B2); lambda conj(lambda) is checked against the nu's."""
    c1, c2, c12 = conj_any(B1, params), conj_any(B2, params), conj_any(B1 @ B2, params)
    lam = proportionality_scalar(as_cyc(c1.matrix) @ as_cyc(c2.matrix), c12.matrix)
    if lam * lam.conj() * c12.nu != c1.nu * c2.nu:
        log.error(f"cocycle for {B1}, {B2} has |lambda|^2 = {lam * lam.conj()}")
        raise CocycleError(f"cocycle scalar {lam} for {B1}, {B2} has the wrong modulus")
    return lam


# ---------------------------------------------------------------- reports ---


class ComplexValue(BaseModel):
    re: float
    im: float

    @classmethod
    def of(cls, z: complex) -> ComplexValue:
        return cls(re=z.real, im=z.imag)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


class ParamsModel(BaseModel):
    n: int
    q_exp: int


class PathModel(BaseModel):
    kind: Literal["direct", "composed"]
    factors: list[list[int]] | None = None


class PowMatrixModel(BaseModel):
    form: Literal["pow"] = "pow"
    n: int
    q_exp: int
    exps: list[list[int]]


class CycMatrixModel(BaseModel):
    form: Literal["cyc"] = "cyc"
    entries: list[list[list[str]]]


MatrixModel = Annotated[PowMatrixModel | CycMatrixModel, Field(discriminator="form")]


def matrix_model(m: AnyMatrix) -> PowMatrixModel | CycMatrixModel:
    if isinstance(m, PowMatrix):
        return PowMatrixModel.model_validate(m.to_json())
    return CycMatrixModel(entries=m.to_json())


def path_model(path: ConjPath) -> PathModel:
    factors = [list(f.entries) for f in path.factors] if path.factors else None
    return PathModel(kind=path.kind, factors=factors)


class TraceFindings(BaseModel):
    K_B: int | None
    legendre_K: Literal[1, -1, "zero-class"] | None
    trace_exact: list[str]
    trace_identity_ok: bool | None
    trace_numeric: ComplexValue
    trace_closed_form: ComplexValue | None
    trace_numeric_ok: bool | None


class DetFindings(BaseModel):
    det_exact: list[str]
    det_modulus_ok: bool
    det_phase_numeric: ComplexValue
    det_sign_claim_ok: bool
    det_numeric: ComplexValue


class ConjugationReport(BaseModel):
    B: list[int]
    params: ParamsModel
    path: PathModel
    C: MatrixModel
    nu: list[str]
    K_B: int | None
    legendre_K: Literal[1, -1, "zero-class"] | None
    trace_exact: list[str]
    trace_identity_ok: bool | None
    trace_numeric: ComplexValue
    trace_closed_form: ComplexValue | None
    trace_numeric_ok: bool | None
    det_exact: list[str]
    det_modulus_ok: bool
    det_phase_numeric: ComplexValue
    det_sign_claim_ok: bool
    ratio_numeric: ComplexValue
    ratio_claim: ComplexValue | None
    cc_star_ok: bool
    conjugation_ok: bool
    orientation: Orientation | None

    @property
    def ok(self) -> bool:
        """Conjugation plus every enabled check; the +-sign claim on det is informational."""
        return (
            self.conjugation_ok
            and self.cc_star_ok
            and self.det_modulus_ok
            and self.trace_identity_ok is not False
            and self.trace_numeric_ok is not False
        )


def trace_findings(conj: Conjugator, params: CycParams) -> TraceFindings:
    """
    Tr C against the Gauss sum: exact on the direct path, numeric against the
    closed form when q = exp(2*pi*i/n). K_B = 0 is its own branch with Tr C = n.
    """
    n = params.n
    kb = k_b(conj.B, n)
    leg: Literal[1, -1, "zero-class"] | None = None
    if kb is not None:
        leg = "zero-class" if kb == 0 else legendre(kb, n)

    trace = conj.matrix.trace()
    trace_num = trace.embed()
    identity_ok: bool | None = None
    closed: complex | None = None
    numeric_ok: bool | None = None
    if conj.path.kind == "direct" and kb is not None:
        expected = CycNum.from_int(params, n) if kb == 0 else gauss_sum_twisted(params, kb)
        identity_ok = trace == expected
        if params.q_exp == 1:
            closed = complex(n) if kb == 0 else legendre(kb, n) * gauss_closed_numeric(n)
            numeric_ok = abs(trace_num - closed) < c_env.NUMERIC_TOL

    return TraceFindings(
        K_B=kb,
        legendre_K=leg,
        trace_exact=trace.to_json(),
        trace_identity_ok=identity_ok,
        trace_numeric=ComplexValue.of(trace_num),
        trace_closed_form=ComplexValue.of(closed) if closed is not None else None,
        trace_numeric_ok=numeric_ok,
    )


def det_findings(conj: Conjugator, params: CycParams) -> DetFindings:
    """det C with |det C|**2 = nu**n checked exactly; the phase det / nu**(n/2) is reported as is."""
    n = params.n
    nu = conj.nu.coeffs[0]
    det = as_cyc(conj.matrix).det()
    det_num = det.embed()
    phase = det_num / math.sqrt(nu) ** n
    return DetFindings(
        det_exact=det.to_json(),
        det_modulus_ok=det * det.conj() == CycNum.from_int(params, nu**n),
        det_phase_numeric=ComplexValue.of(phase),
        det_sign_claim_ok=min(abs(phase - 1), abs(phase + 1)) < c_env.NUMERIC_TOL,
        det_numeric=ComplexValue.of(det_num),
    )


def analyze(B: SL2Matrix, params: CycParams) -> ConjugationReport:
    n = params.n
    conj = conj_any(B, params)
    tf = trace_findings(conj, params)
    df = det_findings(conj, params)

    # Tr C / det(C)**(1/n), principal root
    ratio = tf.trace_numeric.value / complex(np.power(np.complex128(df.det_numeric.value), 1.0 / n))
    ratio_claim: complex | None = None
    if tf.trace_closed_form is not None and tf.K_B:
        claim = tf.trace_closed_form.value / math.sqrt(n)
        ratio_claim = claim if abs(ratio - claim) <= abs(ratio + claim) else -claim

    try:
        cc_star_ok = cc_star_scalar(conj.matrix) == conj.nu
    except NotScalarError:
        cc_star_ok = False

    check = verify_conjugation(conj.matrix, B, RepParams(params))

    report = ConjugationReport(
        B=list(B.entries),
        params=ParamsModel(n=n, q_exp=params.q_exp),
        path=path_model(conj.path),
        C=matrix_model(conj.matrix),
        nu=conj.nu.to_json(),
        **tf.model_dump(),
        **df.model_dump(exclude={"det_numeric"}),
        ratio_numeric=ComplexValue.of(ratio),
        ratio_claim=ComplexValue.of(ratio_claim) if ratio_claim is not None else None,
        cc_star_ok=cc_star_ok,
        conjugation_ok=check.ok,
        orientation=check.orientation,
    )
    log.info(f"analyze {B} n={n} q_exp={params.q_exp}: path={conj.path.kind} K_B={tf.K_B} ok={report.ok}")
    return report
