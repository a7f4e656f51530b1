"""
The n-dimensional representations rho_{a,b} of W_q with a = q**alpha and
b**(1/n) = q**rho_exp, so b = 1.

    rho(l) = L: ones below the diagonal, a in the top-right corner
    rho(m) = M: diag(q**(rho_exp - 2i))
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from qtorus.lib.cyclotomic import CycNum, CycParams, ParamsMismatchError
from qtorus.lib.cycmat import CycMatrix, MatrixUnit
from qtorus.lib.logger import get_logger
from qtorus.lib.torus import BasisIndex, SL2Matrix

log = get_logger(__name__)


class WitnessError(RuntimeError):
    pass


@dataclass(frozen=True)
class RepParams:
    params: CycParams
    alpha: int = 0
    rho_exp: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", self.alpha % self.params.n)
        object.__setattr__(self, "rho_exp", self.rho_exp % self.params.n)

    @property
    def beta(self) -> int:
        # b = (q**rho_exp)**n = 1
        return 0

    @property
    def a(self) -> CycNum:
        return CycNum.from_power(self.params, self.alpha)


@dataclass(frozen=True)
class RepMatrixPair:
    L: CycMatrix
    M: CycMatrix


def build_generators(rp: RepParams) -> RepMatrixPair:
    return RepMatrixPair(rho_basis(rp, 1, 0), rho_basis(rp, 0, 1))


@lru_cache(maxsize=8192)
def rho_basis(rp: RepParams, r: int, s: int) -> CycMatrix:
    """rho(e[r,s]) = q**(-rs) L**r M**s, using L**n = a*I for the part of r outside [0, n)."""
    params = rp.params
    n = params.n
    wraps, r0 = divmod(r, n)
    base = -r * s + rp.alpha * wraps

    def entry(i: int, j: int) -> CycNum | int:
        if i != (j + r0) % n:
            return 0
        e = base + s * (rp.rho_exp - 2 * j)
        if j + r0 >= n:
            e += rp.alpha
        return CycNum.from_power(params, e)

    return CycMatrix.from_function(params, entry)


def shift_rows(rp: RepParams, A: CycMatrix, r: int, s: int) -> CycMatrix:
    """rho(e[r,s]) A without a matrix product: row i is row i - r of A times a power of q."""
    params = rp.params
    if A.params != params:
        raise ParamsMismatchError(f"{A.params} vs {params}")
    n = params.n
    wraps, r0 = divmod(r, n)
    base = -r * s + rp.alpha * wraps
    scales = [
        CycNum.from_power(params, base + s * (rp.rho_exp - 2 * j) + (rp.alpha if j + r0 >= n else 0))
        for j in range(n)
    ]
    return CycMatrix.from_function(params, lambda i, k: scales[(i - r0) % n] * A.rows[(i - r0) % n][k])


@dataclass(frozen=True)
class Witness:
    unit: MatrixUnit
    expression: str


def matrix_unit_witness(rp: RepParams) -> list[Witness]:
    """
    Rebuild every matrix unit from L and M:

        sum_i (b**(-1/n) M)**i = n E[0,0]
        L**i E[0,0] = E[i,0]
        E[i,0] (L/a) L**(k-1) = E[i,n-k]

    Raises WitnessError on the first identity that fails.
    """
    params = rp.params
    n = params.n
    e00 = MatrixUnit(0, 0).matrix(params)

    total = CycMatrix.zero(params)
    for i in range(n):
        total = total + rho_basis(rp, 0, i).scale(CycNum.from_power(params, -rp.rho_exp * i))
    if total != e00.scale(n):
        raise WitnessError("sum of powers of M is not n * E[0,0]")
    out = [Witness(MatrixUnit(0, 0), "(1/n) sum_i M^i")]

    a_inv = CycNum.from_power(params, -rp.alpha)
    for i in range(n):
        col = shift_rows(rp, e00, i, 0)
        if col != MatrixUnit(i, 0).matrix(params):
            raise WitnessError(f"L^{i} E[0,0] is not E[{i},0]")
        if i:
            out.append(Witness(MatrixUnit(i, 0), f"L^{i} E[0,0]"))
        for k in range(1, n):
            got = (col @ rho_basis(rp, k, 0)).scale(a_inv)
            unit = MatrixUnit(i, n - k)
            if got != unit.matrix(params):
                raise WitnessError(f"E[{i},0] (L/a) L^{k - 1} is not {unit}")
            out.append(Witness(unit, f"E[{i},0] (L/a) L^{k - 1}"))
    log.debug(f"witnessed {len(out)} matrix units for n={n}")
    return out


def central_character(rp: RepParams) -> tuple[CycNum, CycNum]:
    """Scalars rho(e[n,0]) and rho(e[0,n]); they fix the kernel's intersection with the center."""
    n = rp.params.n
    out: list[CycNum] = []
    for r, s in ((n, 0), (0, n)):
        nu = rho_basis(rp, r, s).is_scalar()
        if nu is None:
            raise WitnessError(f"rho(e[{r},{s}]) is not scalar")
        out.append(nu)
    return out[0], out[1]


def _character_fixed(alpha: int, beta: int, B: SL2Matrix, n: int) -> bool:
    # lambda**(na) mu**(nb) = e and lambda**(nc) mu**(nd) = f, in exponents of q
    return (B.a * alpha + B.b * beta - alpha) % n == 0 and (B.c * alpha + B.d * beta - beta) % n == 0


def is_fixed_by(rp: RepParams, B: SL2Matrix) -> bool:
    return _character_fixed(rp.alpha, rp.beta, B, rp.params.n)


def fixed_pairs(B: SL2Matrix, n: int) -> list[tuple[int, int]]:
    """All (alpha, beta) mod n that B fixes in the sense of `is_fixed_by`."""
    return [(x, y) for x in range(n) for y in range(n) if _character_fixed(x, y, B, n)]


def fixed_order_bound(B: SL2Matrix) -> int:
    """|det(B - I)|; the order of a and b of a B-fixed rho_{a,b} divides it."""
    bound = abs(2 - B.a - B.d)
    if bound == 0:
        raise ValueError(f"1 is an eigenvalue of {B}")
    return bound


def pulled_back_character(rp: RepParams, B: SL2Matrix) -> tuple[CycNum, CycNum]:
    """
    Central character of rho after precomposing with B, read from the matrices:
    rho(B e[n,0]) and rho(B e[0,n]). B moves e[n,0] along its first column, so
    this matches `central_character(rp)` exactly when the transpose of B fixes rp.
    """
    n = rp.params.n
    out: list[CycNum] = []
    for idx in (BasisIndex(n, 0), BasisIndex(0, n)):
        moved = B.act(idx)
        nu = rho_basis(rp, moved.r, moved.s).is_scalar()
        if nu is None:
            raise WitnessError(f"rho({moved}) is not scalar")
        out.append(nu)
    return out[0], out[1]
