"""Batch analysis of seeded random SL2(Z) words."""
from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor

from pydantic import BaseModel

from qtorus.config import c_env
from qtorus.lib.conjugator import ConjugationReport, analyze
from qtorus.lib.cyclotomic import CycParams
from qtorus.lib.logger import get_logger
from qtorus.lib.torus import SL2Matrix, random_word

log = get_logger(__name__)


class ScanRow(BaseModel):
    index: int
    word: str
    report: ConjugationReport


class ScanResult(BaseModel):
    n: int
    q_exp: int
    seed: int
    rows: list[ScanRow]

    @property
    def passed(self) -> int:
        return sum(r.report.ok for r in self.rows)

    @property
    def ok(self) -> bool:
        return self.passed == len(self.rows)


def scan(
    params: CycParams,
    count: int,
    seed: int | None = None,
    *,
    max_len: int | None = None,
    workers: int | None = None,
) -> ScanResult:
    seed = c_env.SCAN_SEED if seed is None else seed
    rng = random.Random(seed)
    words = [random_word(rng, max_len or c_env.SCAN_WORD_LEN) for _ in range(count)]

    def _one(word: str) -> ConjugationReport:
        return analyze(SL2Matrix.from_word(word), params)

    # map() yields in input order whatever the completion order
    with ThreadPoolExecutor(max_workers=workers or c_env.SCAN_WORKERS) as pool:
        reports = list(pool.map(_one, words))

    rows = [ScanRow(index=i, word=w, report=r) for i, (w, r) in enumerate(zip(words, reports, strict=True))]
    result = ScanResult(n=params.n, q_exp=params.q_exp, seed=seed, rows=rows)
    log.info(f"scan n={params.n} count={count} seed={seed}: {result.passed}/{count} passed")
    return result
