"""Modular inverses, Legendre symbols and quadratic Gauss sums."""
from __future__ import annotations

import math
from typing import Literal

from qtorus.lib.cyclotomic import CycNum, CycParams, is_odd_prime

LegendreValue = Literal[1, -1]

__all__ = [
    "LegendreValue",
    "gauss_closed_numeric",
    "gauss_sum_exact",
    "gauss_sum_twisted",
    "is_odd_prime",
    "legendre",
    "legendre_oracle",
    "mod_inverse",
]


def _require_unit(a: int, n: int) -> int:
    r = a % n
    if r == 0:
        raise ZeroDivisionError(f"{a} is not invertible mod {n}")
    return r


def mod_inverse(a: int, n: int) -> int:
    return pow(_require_unit(a, n), -1, n)


def legendre(a: int, n: int) -> LegendreValue:
    """Euler's criterion: a**((n-1)/2) mod n."""
    r = pow(_require_unit(a, n), (n - 1) // 2, n)
    return 1 if r == 1 else -1


def legendre_oracle(a: int, n: int) -> LegendreValue:
    """Brute-force square search, kept independent of `legendre`."""
    r = _require_unit(a, n)
    return 1 if any(x * x % n == r for x in range(1, n)) else -1


def gauss_sum_exact(params: CycParams, a: int) -> CycNum:
    """sum over x mod n of q**(a*x*x); a = 0 gives n."""
    return sum(
        (CycNum.from_power(params, a * x * x) for x in range(params.n)),
        CycNum.zero(params),
    )


def gauss_sum_twisted(params: CycParams, a: int) -> CycNum:
    """(a/n) * G(1), the right-hand side of the twisting identity."""
    return gauss_sum_exact(params, 1) * legendre(a, params.n)


def gauss_closed_numeric(n: int) -> complex:
    """(1 + i**-n) / (1 + i**-1) * sqrt(n)."""
    i_pow = (1, -1j, -1, 1j)[n % 4]  # i**-n
    return (1 + i_pow) / (1 - 1j) * math.sqrt(n)
