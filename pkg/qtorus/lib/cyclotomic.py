"""
Exact arithmetic in Z[zeta], zeta = exp(2*pi*i/n), n an odd prime.

Elements are stored on the basis 1, zeta, ..., zeta**(n-2); zeta**(n-1) is
always rewritten through 1 + zeta + ... + zeta**(n-1) = 0, so two numbers are
equal iff their coefficient tuples are.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd

import numpy as np
from sympy import isprime


class InvalidParamsError(ValueError):
    pass


class ParamsMismatchError(ValueError):
    pass


class InexactDivisionError(ArithmeticError):
    """Quotient is not a cyclotomic integer."""


def is_odd_prime(n: int) -> bool:
    return n > 2 and bool(isprime(n))


@dataclass(frozen=True)
class CycParams:
    """Arithmetic context: the prime n and the chosen primitive root q = zeta**q_exp."""

    n: int
    q_exp: int = 1

    def __post_init__(self) -> None:
        if not is_odd_prime(self.n):
            raise InvalidParamsError("n must be an odd prime")
        if not 1 <= self.q_exp <= self.n - 1 or gcd(self.q_exp, self.n) != 1:
            raise InvalidParamsError(f"q_exp must lie in [1, {self.n - 1}] and be prime to n")

    @property
    def dim(self) -> int:
        return self.n - 1

    def zeta_exp(self, e: int) -> int:
        """Exponent of zeta representing q**e."""
        return (self.q_exp * e) % self.n


def _canonical(params: CycParams, w: list[int]) -> CycNum:
    # w has length n; fold the zeta**(n-1) coefficient into the others
    top = w[-1]
    return CycNum(params, tuple(c - top for c in w[:-1]))


@dataclass(frozen=True)
class CycNum:
    params: CycParams
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.params.dim:
            raise ValueError(f"expected {self.params.dim} coefficients, got {len(self.coeffs)}")

    # ------------- construction ------------- #
    @classmethod
    def zero(cls, params: CycParams) -> CycNum:
        return cls(params, (0,) * params.dim)

    @classmethod
    def from_int(cls, params: CycParams, c: int) -> CycNum:
        return cls(params, (c,) + (0,) * (params.dim - 1))

    @classmethod
    def from_zeta_power(cls, params: CycParams, e: int) -> CycNum:
        w = [0] * params.n
        w[e % params.n] = 1
        return _canonical(params, w)

    @classmethod
    def from_power(cls, params: CycParams, e: int) -> CycNum:
        """q**e for any integer e."""
        return cls.from_zeta_power(params, params.zeta_exp(e))

    @classmethod
    def from_json(cls, params: CycParams, data: Sequence[str | int]) -> CycNum:
        return cls(params, tuple(int(c) for c in data))

    # ---------------- queries ---------------- #
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @cached_property
    def monomial(self) -> tuple[int, int] | None:
        """(sign, e) when this number equals sign * zeta**e, otherwise None."""
        nonzero = [(i, c) for i, c in enumerate(self.coeffs) if c]
        if len(nonzero) == 1 and nonzero[0][1] in (1, -1):
            i, c = nonzero[0]
            return c, i
        if len(nonzero) == self.params.dim and len(set(self.coeffs)) == 1 and self.coeffs[0] in (1, -1):
            return -self.coeffs[0], self.params.n - 1
        return None

    def norm(self) -> int:
        """Field norm down to Z; positive for every nonzero element."""
        return _norm_data(self)[1]

    def is_unit(self) -> bool:
        if self.monomial is not None:
            return True
        return not self.is_zero() and self.norm() == 1

    # -------------- arithmetic --------------- #
    def _coerce(self, other: object) -> CycNum | None:
        if isinstance(other, CycNum):
            if other.params != self.params:
                raise ParamsMismatchError(f"cannot combine {self.params} with {other.params}")
            return other
        if isinstance(other, int):
            return CycNum.from_int(self.params, other)
        return None

    def _shift(self, sign: int, e: int) -> CycNum:
        n = self.params.n
        w = [0] * n
        for i, c in enumerate(self.coeffs):
            w[(i + e) % n] += sign * c
        return _canonical(self.params, w)

    def __add__(self, other: CycNum | int) -> CycNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNum(self.params, tuple(a + b for a, b in zip(self.coeffs, o.coeffs, strict=True)))

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        return CycNum(self.params, tuple(-c for c in self.coeffs))

    def __sub__(self, other: CycNum | int) -> CycNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: int) -> CycNum:
        return (-self) + other

    def __mul__(self, other: CycNum | int) -> CycNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.monomial is not None:
            return self._shift(*o.monomial)
        if self.monomial is not None:
            return o._shift(*self.monomial)
        n = self.params.n
        w = [0] * n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    w[(i + j) % n] += a * b
        return _canonical(self.params, w)

    __rmul__ = __mul__

    def galois(self, k: int) -> CycNum:
        """Image under the automorphism zeta -> zeta**k."""
        n = self.params.n
        if k % n == 0:
            raise ValueError("k must be prime to n")
        w = [0] * n
        for i, c in enumerate(self.coeffs):
            w[(i * k) % n] += c
        return _canonical(self.params, w)

    def conj(self) -> CycNum:
        """Complex conjugation, zeta -> zeta**-1."""
        return self.galois(self.params.n - 1)

    def exact_div(self, other: CycNum | int) -> CycNum:
        """z with other * z == self; raises InexactDivisionError when z is not in Z[zeta]."""
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot divide by {type(other).__name__}")
        if o.is_zero():
            raise ZeroDivisionError("division by zero in Z[zeta]")
        if o.monomial is not None:
            sign, e = o.monomial
            return self._shift(sign, -e)
        cofactor, norm = _norm_data(o)
        num = self * cofactor
        if any(c % norm for c in num.coeffs):
            raise InexactDivisionError(f"({self}) / ({o}) is not a cyclotomic integer")
        return CycNum(self.params, tuple(c // norm for c in num.coeffs))

    # ------------- presentation -------------- #
    def embed(self) -> complex:
        """Numeric value at zeta = exp(2*pi*i/n). Display and cross-checks only."""
        z = np.exp(2j * np.pi / self.params.n)
        return complex(np.polynomial.polynomial.polyval(z, [float(c) for c in self.coeffs]))

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        out = ""
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            term = str(abs(c)) if i == 0 else f"{abs(c)}*z" if i == 1 else f"{abs(c)}*z^{i}"
            if not out:
                out = term if c > 0 else f"-{term}"
            else:
                out += f" + {term}" if c > 0 else f" - {term}"
        return out or "0"


@lru_cache(maxsize=4096)
def _norm_data(y: CycNum) -> tuple[CycNum, int]:
    """(product of the non-trivial Galois conjugates of y, norm of y)."""
    cofactor = CycNum.from_int(y.params, 1)
    for k in range(2, y.params.n):
        cofactor = cofactor * y.galois(k)
    full = y * cofactor
    if any(full.coeffs[1:]):
        raise RuntimeError(f"norm of {y} is not rational")
    return cofactor, full.coeffs[0]
