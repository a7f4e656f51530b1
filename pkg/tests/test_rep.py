import random
from itertools import product

import pytest

from qtorus.lib.cyclotomic import CycNum, CycParams, ParamsMismatchError
from qtorus.lib.cycmat import CycMatrix, MatrixUnit
from qtorus.lib.rep import (
    RepParams,
    build_generators,
    central_character,
    fixed_order_bound,
    fixed_pairs,
    is_fixed_by,
    matrix_unit_witness,
    pulled_back_character,
    rho_basis,
    shift_rows,
)
from qtorus.lib.torus import IDENTITY, S, SL2Matrix, T, random_word


def _power(m: CycMatrix, k: int) -> CycMatrix:
    out = CycMatrix.identity(m.params)
    for _ in range(k):
        out = out @ m
    return out


def test_generators_n3(p3: CycParams):
    gens = build_generators(RepParams(p3))
    cycle = CycMatrix.from_rows(p3, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert gens.L == cycle
    assert gens.M == CycMatrix.diagonal(p3, [CycNum.from_power(p3, e) for e in (0, 1, 2)])


def test_generator_corner_holds_a(p5: CycParams):
    gens = build_generators(RepParams(p5, alpha=2))
    assert gens.L.rows[0][4] == CycNum.from_power(p5, 2)
    assert all(gens.L.rows[i][i - 1] == CycNum.from_int(p5, 1) for i in range(1, 5))


@pytest.mark.parametrize("n", [3, 5, 7, 11, 13])
@pytest.mark.parametrize(("alpha", "rho_exp"), [(0, 0), (1, 2), (2, 1)])
def test_generator_relations(n: int, alpha: int, rho_exp: int):
    params = CycParams(n)
    rp = RepParams(params, alpha, rho_exp)
    gens = build_generators(rp)
    ident = CycMatrix.identity(params)
    assert _power(gens.L, n) == ident.scale(rp.a)
    # b = (q**rho_exp)**n = 1
    assert _power(gens.M, n) == ident
    assert gens.L @ gens.M == (gens.M @ gens.L).scale(CycNum.from_power(params, 2))


def test_rho_basis_examples(p3: CycParams):
    rp = RepParams(p3)
    assert rho_basis(rp, 0, 0) == CycMatrix.identity(p3)
    assert rho_basis(rp, 0, 1) == CycMatrix.diagonal(p3, [CycNum.from_power(p3, e) for e in (0, -2, -4)])


@pytest.mark.parametrize("n", [3, 5])
def test_rho_is_a_homomorphism(n: int):
    params = CycParams(n)
    rp = RepParams(params, alpha=1, rho_exp=1)
    for p, t, r, s in product(range(n), repeat=4):
        lhs = rho_basis(rp, p, t) @ rho_basis(rp, r, s)
        rhs = rho_basis(rp, p + r, t + s).scale(CycNum.from_power(params, p * s - r * t))
        assert lhs == rhs, (p, t, r, s)


def test_rho_basis_negative_indices(p5: CycParams):
    rp = RepParams(p5, alpha=3)
    gens = build_generators(rp)
    l_inv = rho_basis(rp, -1, 0)
    m_inv = rho_basis(rp, 0, -1)
    ident = CycMatrix.identity(p5)
    assert gens.L @ l_inv == ident
    assert gens.M @ m_inv == ident
    # e[-1,-1] = q**-1 l**-1 m**-1
    assert rho_basis(rp, -1, -1) == (l_inv @ m_inv).scale(CycNum.from_power(p5, -1))


def test_shift_rows_matches_products(params: CycParams, rng: random.Random):
    n = params.n
    a = CycMatrix.from_function(params, lambda i, j: CycNum.from_power(params, rng.randint(0, n - 1)) * rng.randint(-3, 3))
    for rp in (RepParams(params), RepParams(params, alpha=1, rho_exp=2)):
        for r, s in ((0, 0), (1, 0), (0, 1), (2, 3), (n + 1, -2), (-1, -1), (-2 * n, 5)):
            assert shift_rows(rp, a, r, s) == rho_basis(rp, r, s) @ a, (rp, r, s)


def test_shift_rows_rejects_other_params(p3: CycParams, p5: CycParams):
    with pytest.raises(ParamsMismatchError):
        shift_rows(RepParams(p5), CycMatrix.identity(p3), 1, 0)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_matrix_unit_witness(n: int):
    params = CycParams(n)
    witness = matrix_unit_witness(RepParams(params))
    units = {(w.unit.i, w.unit.j) for w in witness}
    assert len(witness) == n * n
    assert units == {(i, j) for i in range(n) for j in range(n)}


def test_matrix_unit_witness_identities(p3: CycParams):
    rp = RepParams(p3)
    gens = build_generators(rp)
    e00 = MatrixUnit(0, 0).matrix(p3)
    total = CycMatrix.zero(p3)
    for i in range(3):
        total = total + _power(gens.M, i)
    assert total == e00.scale(3)
    assert _power(gens.L, 2) @ e00 == MatrixUnit(2, 0).matrix(p3)


def test_matrix_unit_witness_with_twists(p5: CycParams):
    assert len(matrix_unit_witness(RepParams(p5, alpha=2, rho_exp=3))) == 25


def test_central_character(params: CycParams):
    one = CycNum.from_int(params, 1)
    assert central_character(RepParams(params)) == (one, one)
    a, b = central_character(RepParams(params, alpha=2, rho_exp=1))
    assert a == CycNum.from_power(params, 2)
    assert b == one


def test_central_character_independent_of_root(p5: CycParams):
    chars = {central_character(RepParams(p5, alpha=1, rho_exp=k)) for k in range(5)}
    assert len(chars) == 1


def test_is_fixed_by_examples(p3: CycParams, rng: random.Random):
    rp11 = RepParams(p3)
    for _ in range(100):
        assert is_fixed_by(rp11, SL2Matrix.from_word(random_word(rng, 12)))
    assert not is_fixed_by(RepParams(p3, alpha=1), S)
    for alpha in range(3):
        assert is_fixed_by(RepParams(p3, alpha=alpha), IDENTITY)


def test_t_fixes_every_alpha_with_beta_zero(p3: CycParams):
    # 1*alpha + 1*0 = alpha and 0*alpha + 1*0 = 0
    for alpha in range(3):
        assert is_fixed_by(RepParams(p3, alpha=alpha), T) is True
    # (1,0;1,1): the second congruence reads 1*alpha + 1*0 = 0
    assert is_fixed_by(RepParams(p3, alpha=1), SL2Matrix(1, 0, 1, 1)) is False


def test_pulled_back_character_sees_the_transpose(p5: CycParams):
    for alpha in range(5):
        rp = RepParams(p5, alpha=alpha)
        for B in (S, T, S @ T, SL2Matrix(2, 1, 1, 1), SL2Matrix(1, 0, 5, 1), SL2Matrix(1, 0, 1, 1)):
            Bt = SL2Matrix(B.a, B.c, B.b, B.d)
            fixed = pulled_back_character(rp, B) == central_character(rp)
            assert is_fixed_by(rp, Bt) == fixed, (alpha, B)


def test_fixed_pairs():
    n = 5
    assert fixed_pairs(IDENTITY, n) == [(x, y) for x in range(n) for y in range(n)]
    assert fixed_pairs(S, n) == [(0, 0)]
    # first congruence forces beta = 0, the second is vacuous for T
    assert fixed_pairs(T, n) == [(x, 0) for x in range(n)]
    assert fixed_pairs(SL2Matrix(1, 0, 1, 1), n) == [(0, y) for y in range(n)]


@pytest.mark.parametrize(("B", "want"), [(S, 2), (SL2Matrix(2, 1, 1, 1), 1), (SL2Matrix(-1, 0, 0, -1), 4)])
def test_fixed_order_bound(B: SL2Matrix, want: int):
    assert fixed_order_bound(B) == want


def test_fixed_order_bound_needs_no_unit_eigenvalue():
    with pytest.raises(ValueError):
        fixed_order_bound(T)
