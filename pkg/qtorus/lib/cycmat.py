"""n x n matrices over Z[zeta], plus the compact all-powers-of-q form."""
from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Any

import numpy as np

from qtorus.lib.cyclotomic import CycNum, CycParams, InexactDivisionError, ParamsMismatchError


class NotProportionalError(ArithmeticError):
    pass


class NotScalarError(ArithmeticError):
    pass


@dataclass(frozen=True)
class MatrixUnit:
    """E[i,j]: one in entry (i, j), zero elsewhere. Indices run from 0 to n-1."""

    i: int
    j: int

    def matrix(self, params: CycParams) -> CycMatrix:
        if not (0 <= self.i < params.n and 0 <= self.j < params.n):
            raise ValueError(f"{self} out of range for n={params.n}")
        one = CycNum.from_int(params, 1)
        return CycMatrix.from_function(params, lambda i, j: one if (i, j) == (self.i, self.j) else 0)

    def __str__(self) -> str:
        return f"E[{self.i},{self.j}]"


@dataclass(frozen=True)
class CycMatrix:
    params: CycParams
    rows: tuple[tuple[CycNum, ...], ...]

    def __post_init__(self) -> None:
        n = self.params.n
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise ValueError(f"matrix must be {n}x{n}")

    # ------------- construction ------------- #
    @classmethod
    def from_function(cls, params: CycParams, f: Callable[[int, int], CycNum | int]) -> CycMatrix:
        n = params.n
        zero = CycNum.zero(params)
        return cls(params, tuple(tuple(zero + f(i, j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_rows(cls, params: CycParams, rows: Iterable[Iterable[CycNum | int]]) -> CycMatrix:
        zero = CycNum.zero(params)
        return cls(params, tuple(tuple(zero + x for x in row) for row in rows))

    @classmethod
    def diagonal(cls, params: CycParams, entries: Sequence[CycNum | int]) -> CycMatrix:
        return cls.from_function(params, lambda i, j: entries[i] if i == j else 0)

    @classmethod
    def identity(cls, params: CycParams) -> CycMatrix:
        return cls.diagonal(params, [1] * params.n)

    @classmethod
    def zero(cls, params: CycParams) -> CycMatrix:
        return cls.from_function(params, lambda i, j: 0)

    @property
    def n(self) -> int:
        return self.params.n

    def _check(self, other: CycMatrix) -> None:
        if other.params != self.params:
            raise ParamsMismatchError(f"cannot combine matrices over {self.params} and {other.params}")

    # -------------- arithmetic --------------- #
    def __add__(self, other: CycMatrix) -> CycMatrix:
        self._check(other)
        return CycMatrix(
            self.params,
            tuple(tuple(a + b for a, b in zip(ra, rb, strict=True)) for ra, rb in zip(self.rows, other.rows, strict=True)),
        )

    def __neg__(self) -> CycMatrix:
        return CycMatrix(self.params, tuple(tuple(-a for a in row) for row in self.rows))

    def __sub__(self, other: CycMatrix) -> CycMatrix:
        return self + (-other)

    def scale(self, s: CycNum | int) -> CycMatrix:
        return CycMatrix(self.params, tuple(tuple(a * s for a in row) for row in self.rows))

    def __matmul__(self, other: CycMatrix) -> CycMatrix:
        self._check(other)
        n = self.n
        zero = CycNum.zero(self.params)
        # sparse rows of the right factor; rho-images have one entry per row
        nonzero = [[(j, b) for j, b in enumerate(row) if not b.is_zero()] for row in other.rows]
        out: list[tuple[CycNum, ...]] = []
        for row in self.rows:
            acc = [zero] * n
            for k, a in enumerate(row):
                if a.is_zero():
                    continue
                for j, b in nonzero[k]:
                    acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return CycMatrix(self.params, tuple(out))

    def ctranspose(self) -> CycMatrix:
        n = self.n
        return CycMatrix(self.params, tuple(tuple(self.rows[j][i].conj() for j in range(n)) for i in range(n)))

    def trace(self) -> CycNum:
        return sum((self.rows[i][i] for i in range(self.n)), CycNum.zero(self.params))

    def det(self) -> CycNum:
        """Fraction-free (Bareiss) elimination; every division is exact in Z[zeta]."""
        size = self.n
        m = [list(row) for row in self.rows]
        prev = CycNum.from_int(self.params, 1)
        sign = 1
        for k in range(size - 1):
            if m[k][k].is_zero():
                swap = next((i for i in range(k + 1, size) if not m[i][k].is_zero()), None)
                if swap is None:
                    return CycNum.zero(self.params)
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            pivot = m[k][k]
            for i in range(k + 1, size):
                for j in range(k + 1, size):
                    m[i][j] = (pivot * m[i][j] - m[i][k] * m[k][j]).exact_div(prev)
            prev = pivot
        det = m[-1][-1]
        return det if sign > 0 else -det

    def is_scalar(self) -> CycNum | None:
        """nu when self == nu * I, else None."""
        nu = self.rows[0][0]
        for i, row in enumerate(self.rows):
            for j, a in enumerate(row):
                if (i == j and a != nu) or (i != j and not a.is_zero()):
                    return None
        return nu

    # ------------- presentation -------------- #
    def to_numpy(self) -> np.ndarray[Any, np.dtype[np.complex128]]:
        return np.array([[a.embed() for a in row] for row in self.rows], dtype=np.complex128)

    def to_json(self) -> list[list[list[str]]]:
        return [[a.to_json() for a in row] for row in self.rows]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(f"({a})" for a in row) + "]" for row in self.rows)


@dataclass(frozen=True)
class PowMatrix:
    """Dense matrix whose (i, j) entry is q**exps[i][j]; exponents kept mod n."""

    params: CycParams
    exps: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = self.params.n
        if len(self.exps) != n or any(len(r) != n for r in self.exps):
            raise ValueError(f"exponent matrix must be {n}x{n}")
        object.__setattr__(self, "exps", tuple(tuple(e % n for e in row) for row in self.exps))

    @classmethod
    def from_function(cls, params: CycParams, f: Callable[[int, int], int]) -> PowMatrix:
        n = params.n
        return cls(params, tuple(tuple(f(i, j) for j in range(n)) for i in range(n)))

    @cached_property
    def dense(self) -> CycMatrix:
        return CycMatrix.from_function(self.params, lambda i, j: CycNum.from_power(self.params, self.exps[i][j]))

    def ctranspose(self) -> PowMatrix:
        return PowMatrix.from_function(self.params, lambda i, j: -self.exps[j][i])

    def trace(self) -> CycNum:
        return sum(
            (CycNum.from_power(self.params, self.exps[i][i]) for i in range(self.params.n)),
            CycNum.zero(self.params),
        )

    def to_json(self) -> dict[str, Any]:
        return {"n": self.params.n, "q_exp": self.params.q_exp, "exps": [list(r) for r in self.exps]}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> PowMatrix:
        params = CycParams(int(data["n"]), int(data["q_exp"]))
        return cls(params, tuple(tuple(int(e) for e in row) for row in data["exps"]))

    def __str__(self) -> str:
        width = len(str(self.params.n - 1))
        return "\n".join(" ".join(f"{e:>{width}}" for e in row) for row in self.exps)


AnyMatrix = CycMatrix | PowMatrix


def as_cyc(m: AnyMatrix) -> CycMatrix:
    return m.dense if isinstance(m, PowMatrix) else m


def proportionality_scalar(a: AnyMatrix, b: AnyMatrix) -> CycNum:
    """lambda with a == lambda * b, read off the first unit entry of b and checked everywhere."""
    a, b = as_cyc(a), as_cyc(b)
    a._check(b)  # pyright: ignore[reportPrivateUsage]
    cells = [(i, j) for i, row in enumerate(b.rows) for j, x in enumerate(row) if not x.is_zero()]
    if not cells:
        raise NotProportionalError("reference matrix is zero")
    i, j = next(((i, j) for i, j in cells if b.rows[i][j].is_unit()), cells[0])
    try:
        lam = a.rows[i][j].exact_div(b.rows[i][j])
    except InexactDivisionError as e:
        raise NotProportionalError(f"no scalar in Z[zeta] at entry ({i}, {j})") from e
    if a != b.scale(lam):
        raise NotProportionalError("matrices are not proportional")
    return lam
