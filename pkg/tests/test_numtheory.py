import math
from collections.abc import Callable

import pytest
from sympy import primerange
from sympy.functions.combinatorial.numbers import legendre_symbol

from qtorus.lib.cyclotomic import CycNum, CycParams
from qtorus.lib.numtheory import (
    gauss_closed_numeric,
    gauss_sum_exact,
    gauss_sum_twisted,
    legendre,
    legendre_oracle,
    mod_inverse,
)


@pytest.mark.parametrize(("a", "n", "want"), [(2, 5, 3), (1, 7, 1), (-1, 3, 2), (10, 7, 5)])
def test_mod_inverse(a: int, n: int, want: int):
    assert mod_inverse(a, n) == want


def test_mod_inverse_of_zero_class():
    with pytest.raises(ZeroDivisionError):
        mod_inverse(10, 5)


@pytest.mark.parametrize(("a", "n", "want"), [(1, 5, 1), (2, 3, -1), (4, 7, 1), (3, 7, -1), (-1, 5, 1), (-1, 7, -1)])
def test_legendre(a: int, n: int, want: int):
    assert legendre(a, n) == want


@pytest.mark.parametrize(("a", "n", "want"), [(2, 7, 1), (3, 7, -1), (9, 11, 1)])
def test_legendre_oracle(a: int, n: int, want: int):
    assert legendre_oracle(a, n) == want


@pytest.mark.parametrize("fn", [legendre, legendre_oracle])
def test_legendre_rejects_zero_class(fn: Callable[[int, int], int]):
    with pytest.raises(ZeroDivisionError):
        fn(14, 7)


def test_legendre_agrees_with_oracle_and_sympy():
    for n in primerange(3, 98):
        for a in range(1, n):
            got = legendre(a, n)
            assert got == legendre_oracle(a, n), (a, n)
            assert got == legendre_symbol(a, n), (a, n)


def test_legendre_is_multiplicative():
    for n in (7, 11, 13):
        for a in range(1, n):
            for b in range(1, n):
                assert legendre(a * b, n) == legendre(a, n) * legendre(b, n)


def test_gauss_sum_examples(p3: CycParams, params: CycParams):
    assert gauss_sum_exact(p3, 1).coeffs == (1, 2)
    assert gauss_sum_exact(p3, 2).coeffs == (-1, -2)
    assert gauss_sum_exact(params, 0) == CycNum.from_int(params, params.n)


def test_twisting_identity(params: CycParams):
    g1 = gauss_sum_exact(params, 1)
    for a in range(1, params.n):
        assert gauss_sum_exact(params, a) == g1 * legendre(a, params.n)
        assert gauss_sum_twisted(params, a) == gauss_sum_exact(params, a)


@pytest.mark.parametrize(("n", "k"), [(5, 2), (7, 3), (11, 6)])
def test_twisting_identity_at_other_roots(n: int, k: int):
    params = CycParams(n, k)
    g1 = gauss_sum_exact(params, 1)
    for a in range(1, n):
        assert gauss_sum_exact(params, a) == g1 * legendre(a, n)


def test_gauss_norm_is_n(params: CycParams):
    g1 = gauss_sum_exact(params, 1)
    assert g1 * g1.conj() == CycNum.from_int(params, params.n)


@pytest.mark.parametrize(("n", "want"), [(3, 1j * math.sqrt(3)), (5, math.sqrt(5)), (7, 1j * math.sqrt(7))])
def test_gauss_closed_numeric(n: int, want: complex):
    assert abs(gauss_closed_numeric(n) - want) < 1e-12


@pytest.mark.parametrize("n", [3, 5, 7, 11, 13])
def test_gauss_exact_matches_closed_form(n: int):
    assert abs(gauss_sum_exact(CycParams(n), 1).embed() - gauss_closed_numeric(n)) < 1e-9
