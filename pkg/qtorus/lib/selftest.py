"""Invariant suite behind `qtorus selftest`."""
from __future__ import annotations

import random
from collections.abc import Callable, Iterable

from pydantic import BaseModel

from qtorus.config import c_env
from qtorus.lib.conjugator import (
    analyze,
    cc_star_scalar,
    cocycle_scalar,
    conj_any,
    conj_direct,
    verify_conjugation,
)
from qtorus.lib.cyclotomic import CycNum, CycParams
from qtorus.lib.cycmat import CycMatrix
from qtorus.lib.logger import get_logger
from qtorus.lib.numtheory import gauss_sum_exact, legendre, legendre_oracle
from qtorus.lib.rep import RepParams, build_generators, is_fixed_by, matrix_unit_witness
from qtorus.lib.torus import S, SL2Matrix, T, TorusElement, random_word

log = get_logger(__name__)


class CheckResult(BaseModel):
    name: str
    n: int
    ok: bool
    detail: str = ""


class SelftestReport(BaseModel):
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def word_suite(count: int, seed: int, max_len: int) -> list[SL2Matrix]:
    """S, T, ST, TS followed by `count` seeded random words."""
    rng = random.Random(seed)
    return [S, T, S @ T, T @ S] + [SL2Matrix.from_word(random_word(rng, max_len)) for _ in range(count)]


def _random_cyc(rng: random.Random, params: CycParams, bound: int = 20) -> CycNum:
    return CycNum(params, tuple(rng.randint(-bound, bound) for _ in range(params.dim)))


def _ring_axioms(params: CycParams, rng: random.Random) -> bool:
    for _ in range(10):
        x, y, z = (_random_cyc(rng, params) for _ in range(3))
        if (x * y) * z != x * (y * z) or x * (y + z) != x * y + x * z or x * y != y * x:
            return False
        if not y.is_zero() and (x * y).exact_div(y) != x:
            return False
    return True


def _legendre(params: CycParams) -> bool:
    return all(legendre(a, params.n) == legendre_oracle(a, params.n) for a in range(1, params.n))


def _gauss(params: CycParams) -> bool:
    g1 = gauss_sum_exact(params, 1)
    twisted = all(gauss_sum_exact(params, a) == g1 * legendre(a, params.n) for a in range(1, params.n))
    return twisted and g1 * g1.conj() == CycNum.from_int(params, params.n)


def _torus(params: CycParams, rng: random.Random) -> bool:
    for _ in range(10):
        B = SL2Matrix.from_word(random_word(rng, 6))
        x = TorusElement.basis(params, rng.randint(-4, 4), rng.randint(-4, 4))
        y = TorusElement.basis(params, rng.randint(-4, 4), rng.randint(-4, 4)) + TorusElement.one(params)
        if (x * y).act(B) != x.act(B) * y.act(B):
            return False
    return True


def _generators(params: CycParams) -> bool:
    gens = build_generators(RepParams(params))
    ident = CycMatrix.identity(params)
    l_pow, m_pow = ident, ident
    for _ in range(params.n):
        l_pow, m_pow = l_pow @ gens.L, m_pow @ gens.M
    q2 = CycNum.from_power(params, 2)
    return l_pow == ident and m_pow == ident and gens.L @ gens.M == (gens.M @ gens.L).scale(q2)


def _conjugation(params: CycParams, suite: Iterable[SL2Matrix]) -> tuple[bool, str]:
    rp = RepParams(params)
    for B in suite:
        check = verify_conjugation(conj_any(B, params).matrix, B, rp)
        if check.orientation not in ("left", "both"):
            return False, f"{B}: orientation {check.orientation}"
        if not is_fixed_by(rp, B):
            return False, f"{B}: rho_11 not fixed"
    return True, ""


def _reports(params: CycParams, suite: Iterable[SL2Matrix]) -> tuple[bool, str]:
    for B in suite:
        report = analyze(B, params)
        if not report.ok:
            return False, f"{B}: report failed"
    return True, ""


def _cocycle(params: CycParams, suite: list[SL2Matrix]) -> bool:
    direct = [B for B in suite if B.b % params.n]
    pairs = [(B1, B2) for B1 in direct[:4] for B2 in direct[:4] if (B1 @ B2).b % params.n]
    for B1, B2 in pairs:
        cocycle_scalar(B1, B2, params)
    return True


def _cc_star(params: CycParams, suite: Iterable[SL2Matrix]) -> bool:
    n = CycNum.from_int(params, params.n)
    return all(cc_star_scalar(conj_direct(B, params)) == n for B in suite if B.b % params.n)


CheckFn = Callable[[], bool | tuple[bool, str]]


def _cases(params: CycParams, seed: int) -> list[tuple[str, CheckFn]]:
    n = params.n
    rng = random.Random(seed + n)
    suite = word_suite(12, seed + n, c_env.SCAN_WORD_LEN)
    return [
        ("ring-axioms", lambda: _ring_axioms(params, rng)),
        ("legendre-oracle", lambda: _legendre(params)),
        ("gauss-sums", lambda: _gauss(params)),
        ("torus-automorphism", lambda: _torus(params, rng)),
        ("generator-relations", lambda: _generators(params)),
        ("matrix-unit-witness", lambda: len(matrix_unit_witness(RepParams(params))) == n * n),
        ("cc-star", lambda: _cc_star(params, suite)),
        ("conjugation", lambda: _conjugation(params, suite)),
        ("trace-det-reports", lambda: _reports(params, suite)),
        ("cocycle", lambda: _cocycle(params, suite)),
    ]


def run_selftest(primes: Iterable[int] | None = None, seed: int = 0) -> SelftestReport:
    checks: list[CheckResult] = []
    for n in primes or c_env.SELFTEST_PRIMES:
        for name, fn in _cases(CycParams(n), seed):
            try:
                out = fn()
                ok, detail = out if isinstance(out, tuple) else (out, "")
            except (ArithmeticError, RuntimeError) as e:
                ok, detail = False, f"{type(e).__name__}: {e}"
            log.info(f"selftest n={n} {name}: {'ok' if ok else 'FAILED'} {detail}")
            checks.append(CheckResult(name=name, n=n, ok=ok, detail=detail))
    return SelftestReport(checks=checks)
