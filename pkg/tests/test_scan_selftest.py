from qtorus.lib.cyclotomic import CycParams
from qtorus.lib.scan import ScanResult, scan
from qtorus.lib.selftest import run_selftest, word_suite
from qtorus.lib.torus import S, T


def test_word_suite_starts_with_generators():
    suite = word_suite(5, seed=1, max_len=4)
    assert suite[:4] == [S, T, S @ T, T @ S]
    assert len(suite) == 9
    assert word_suite(5, seed=1, max_len=4) == suite


def test_scan_is_deterministic_and_ordered(p3: CycParams):
    first = scan(p3, 10, seed=3, workers=4)
    second = scan(p3, 10, seed=3, workers=1)
    assert [r.index for r in first.rows] == list(range(10))
    assert [r.word for r in first.rows] == [r.word for r in second.rows]
    assert first == second
    assert first.ok
    assert first.passed == 10


def test_scan_json_round_trip(p5: CycParams):
    result = scan(p5, 4, seed=11, max_len=6)
    assert ScanResult.model_validate_json(result.model_dump_json()) == result
    assert all(len(r.word) <= 6 for r in result.rows)


def test_scan_default_seed_comes_from_config(p3: CycParams):
    assert scan(p3, 2).seed == 0


def test_selftest_passes_at_3():
    report = run_selftest([3])
    assert report.ok, [c for c in report.checks if not c.ok]
    assert {c.name for c in report.checks} >= {"ring-axioms", "conjugation", "cocycle", "matrix-unit-witness"}
    assert all(c.n == 3 for c in report.checks)
