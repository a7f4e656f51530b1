"""
The noncommutative torus W_q at q a primitive n-th root of unity.

Elements are finite combinations of e[r,s] = q**(-rs) l**r m**s over the
whole lattice Z^2, multiplied by

    e[p,t] * e[r,s] = q**(ps - rt) e[p+r, t+s]

and acted on by SL2(Z) through e[p,t] -> e[ap+bt, cp+dt].
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any

from qtorus.lib.cyclotomic import CycNum, CycParams, ParamsMismatchError


class NotSL2Error(ValueError):
    pass


@dataclass(frozen=True, order=True)
class BasisIndex:
    r: int
    s: int

    def __str__(self) -> str:
        return f"e[{self.r},{self.s}]"


@dataclass(frozen=True)
class SL2Matrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        det = self.a * self.d - self.b * self.c
        if det != 1:
            raise NotSL2Error(f"matrix {self} has determinant {det}, expected 1")

    @classmethod
    def parse(cls, text: str) -> SL2Matrix:
        """'a,b,c,d' -> (a b; c d)."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected four comma-separated integers, got {text!r}")
        try:
            a, b, c, d = (int(p) for p in parts)
        except ValueError as e:
            raise ValueError(f"expected four comma-separated integers, got {text!r}") from e
        return cls(a, b, c, d)

    @classmethod
    def from_word(cls, word: str) -> SL2Matrix:
        """Product of letters read left to right; S, T and their inverses s, t."""
        out = IDENTITY
        for letter in word:
            try:
                out = out @ _LETTERS[letter]
            except KeyError:
                raise ValueError(f"unknown generator {letter!r} in word {word!r}") from None
        return out

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d

    def __matmul__(self, other: SL2Matrix) -> SL2Matrix:
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> SL2Matrix:
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def act(self, idx: BasisIndex) -> BasisIndex:
        return BasisIndex(self.a * idx.r + self.b * idx.s, self.c * idx.r + self.d * idx.s)

    def __str__(self) -> str:
        return f"({self.a},{self.b};{self.c},{self.d})"


IDENTITY = SL2Matrix(1, 0, 0, 1)
S = SL2Matrix(0, -1, 1, 0)
T = SL2Matrix(1, 1, 0, 1)
_LETTERS = {"S": S, "T": T, "s": S.inverse(), "t": T.inverse()}


def random_word(rng: random.Random, max_len: int) -> str:
    """Uniform letters in {S, T}, length uniform in [1, max_len]."""
    return "".join(rng.choice("ST") for _ in range(rng.randint(1, max_len)))


def basis_mul(left: BasisIndex, right: BasisIndex, params: CycParams) -> tuple[CycNum, BasisIndex]:
    p, t = left.r, left.s
    r, s = right.r, right.s
    return CycNum.from_power(params, p * s - r * t), BasisIndex(p + r, t + s)


def decompose(r: int, s: int, n: int) -> tuple[int, BasisIndex, BasisIndex]:
    """
    Split e[r,s] over the center: returns (k, e[pn,tn], e[i,j]) with 0 <= i, j < n and

        e[r,s] = q**k * e[pn,tn] * e[i,j]
    """
    p, i = divmod(r, n)
    t, j = divmod(s, n)
    return -(p * n * j - i * t * n), BasisIndex(p * n, t * n), BasisIndex(i, j)


@dataclass(frozen=True)
class TorusElement:
    params: CycParams
    terms: dict[BasisIndex, CycNum]

    def __post_init__(self) -> None:
        clean = {k: v for k, v in self.terms.items() if not v.is_zero()}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def basis(cls, params: CycParams, r: int, s: int, coeff: CycNum | int = 1) -> TorusElement:
        return cls(params, {BasisIndex(r, s): CycNum.zero(params) + coeff})

    @classmethod
    def one(cls, params: CycParams) -> TorusElement:
        return cls.basis(params, 0, 0)

    @classmethod
    def zero(cls, params: CycParams) -> TorusElement:
        return cls(params, {})

    def _check(self, other: TorusElement) -> None:
        if other.params != self.params:
            raise ParamsMismatchError(f"cannot combine torus elements over {self.params} and {other.params}")

    def __add__(self, other: TorusElement) -> TorusElement:
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return TorusElement(self.params, out)

    def __neg__(self) -> TorusElement:
        return TorusElement(self.params, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: TorusElement) -> TorusElement:
        return self + (-other)

    def scale(self, c: CycNum | int) -> TorusElement:
        return TorusElement(self.params, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: TorusElement) -> TorusElement:
        self._check(other)
        zero = CycNum.zero(self.params)
        out: dict[BasisIndex, CycNum] = {}
        for i1, c1 in self.terms.items():
            for i2, c2 in other.terms.items():
                coeff, idx = basis_mul(i1, i2, self.params)
                out[idx] = out.get(idx, zero) + c1 * c2 * coeff
        return TorusElement(self.params, out)

    def act(self, B: SL2Matrix) -> TorusElement:
        zero = CycNum.zero(self.params)
        out: dict[BasisIndex, CycNum] = {}
        for idx, c in self.terms.items():
            moved = B.act(idx)
            out[moved] = out.get(moved, zero) + c
        return TorusElement(self.params, out)

    def commutes_with(self, other: TorusElement) -> bool:
        return self * other == other * self

    def is_central(self) -> bool:
        # e[1,0] and e[0,1] generate W_q
        return all(
            self.commutes_with(TorusElement.basis(self.params, r, s)) for r, s in ((1, 0), (0, 1))
        )

    def to_json(self) -> list[dict[str, Any]]:
        return [{"r": k.r, "s": k.s, "coeff": v.to_json()} for k, v in sorted(self.terms.items())]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        n = self.params.n
        q_inv = pow(self.params.q_exp, -1, n)
        parts: list[str] = []
        for idx, c in sorted(self.terms.items()):
            if c.monomial is not None:
                sign, e = c.monomial
                parts.append(f"{'-' if sign < 0 else ''}q^{e * q_inv % n} * {idx}")
            else:
                parts.append(f"({c}) * {idx}")
        return " + ".join(parts)
