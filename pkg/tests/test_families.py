import random
import warnings
from fractions import Fraction

import pytest
from instances import balanced_vector

from nilherm.exterior import pair, wedge
from nilherm.families import (
    FamilyError,
    abc_astheno_constraint,
    abc_gamma,
    astheno_b_last,
    balanced_constraint,
    build_abc_family,
    build_heisenberg,
    expected_skt_obstruction,
    heisenberg_form,
    skt_obstruction_heisenberg,
    solve_astheno_abc,
    solve_astheno_abc_symbolic,
    solve_astheno_diagonal,
    solve_balanced,
)
from nilherm.hermitian import (
    HermitianMetric,
    is_astheno_kahler,
    is_balanced,
    is_k_gauduchon,
)
from nilherm.oracle import OracleStructure, oracle_gauduchon_constant
from nilherm.scalars import GaussianRational, ParamSpace
from nilherm.structure import is_abelian


def test_build_heisenberg():
    S = build_heisenberg(4, [1, 1, -2])
    assert S.validate().ok and is_abelian(S)
    assert build_heisenberg(3, [1, -1]).validate().ok
    with pytest.warns(UserWarning):
        S0 = build_heisenberg(4, [0, 0, 0])
    assert S0.validate().ok
    with pytest.raises(FamilyError):
        build_heisenberg(4, [1, 1])
    with pytest.raises(FamilyError):
        build_heisenberg(2, [1])


def test_solve_balanced():
    assert solve_balanced([1, 1]) == -2
    assert solve_balanced([1, 2, 3]) == -6
    space = ParamSpace.declare(["a1", "a2", "a3"])
    a = [space.var(s) for s in ("a1", "a2", "a3")]
    assert balanced_constraint(a) == a[0] + a[1] + a[2]


def test_b_last_formula():
    assert astheno_b_last([1, 1], 4) == 4
    assert astheno_b_last([1, 1, 1], 5) == 3
    assert astheno_b_last([Fraction(1, 2), 1, 2], 5) == Fraction(7, 2)
    with pytest.raises(FamilyError):
        astheno_b_last([1], 3)


def test_solve_astheno_diagonal_examples():
    assert solve_astheno_diagonal(4, [1, 1, -2]) == HermitianMetric.diagonal([1, 1, 4, 1])
    assert solve_astheno_diagonal(5, [1, 1, 1, -3]) == HermitianMetric.diagonal([1, 1, 1, 3, 1])
    assert solve_astheno_diagonal(5, [1, 1, 1]) == HermitianMetric.diagonal([1, 1, 1, 3, 1])
    with pytest.raises(FamilyError):
        solve_astheno_diagonal(3, [1, -1])
    with pytest.raises(FamilyError):
        solve_astheno_diagonal(4, [1, -1, 0])
    with pytest.raises(FamilyError):
        solve_astheno_diagonal(4, [1, 1, -1])


def test_solved_metric_is_astheno_and_k_gauduchon():
    rng = random.Random(21)
    for n in (4, 5, 6):
        a = balanced_vector(rng, n)
        S = build_heisenberg(n, a)
        M = solve_astheno_diagonal(n, a)
        assert is_balanced(S, HermitianMetric.identity(n)).holds
        assert is_astheno_kahler(S, M).holds
        for k in range(1, n):
            assert is_k_gauduchon(S, M, k).holds


def test_skt_obstruction_matches_square():
    n, a = 4, [1, 1, -2]
    got = skt_obstruction_heisenberg(n, a)
    M = HermitianMetric.generic(n)
    assert got == expected_skt_obstruction(n, a, M)
    A = heisenberg_form(n, a)
    h44 = M.entry(4, 4)
    assert got == wedge(A, A).scale(h44.scale(GaussianRational(0, Fraction(-1, 2))))
    assert got


def test_skt_obstruction_single_coefficient_vanishes():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert not skt_obstruction_heisenberg(4, [0, 3, 0])


def test_skt_obstruction_numeric_metric_nonzero():
    got = skt_obstruction_heisenberg(4, [1, 1, -2], HermitianMetric.identity(4))
    assert got
    assert got == expected_skt_obstruction(4, [1, 1, -2], HermitianMetric.identity(4))


def test_abc_family_basics():
    S = build_abc_family(1, 0, 0)
    assert S.validate().ok and not is_abelian(S)
    assert build_abc_family(0, 0, 0) == build_heisenberg(4, [1, 1, -2])
    assert is_balanced(S, HermitianMetric.identity(4)).holds


def test_abc_gamma_pinned_by_oracle():
    for (A, B, C), expected in [((0, 0, 0), 4), ((1, 0, 0), 8)]:
        gamma = abc_gamma(A, B, C, 1, 1)
        assert gamma == expected
        S = build_abc_family(A, B, C)
        h = [[0] * 4 for _ in range(4)]
        for j, v in enumerate([1, 1, gamma, 1]):
            h[j][j] = v
        # k = n - 2 constant vanishes exactly when the astheno top term does
        assert oracle_gauduchon_constant(OracleStructure.from_structure(S), h, 2) == 0
        assert is_astheno_kahler(S, solve_astheno_abc(A, B, C)).holds


def test_abc_guards():
    with pytest.raises(FamilyError):
        abc_gamma(GaussianRational(1, 1), 0, 0, 1, 1)
    with pytest.raises(FamilyError):
        abc_gamma(0, 0, 0, 0, 1)
    with pytest.raises(FamilyError):
        abc_gamma(0, 0, 0, 1, -1)


def test_abc_symbolic_constraint_matches_formula():
    constraint, space = abc_astheno_constraint()
    v = {s: space.var(s) for s in ("A", "B", "C", "Abar", "Bbar", "Cbar", "alpha", "beta", "gamma")}
    expected = (
        v["gamma"] * (2 - v["A"] * v["Abar"])
        - v["alpha"] * (v["C"] * v["Cbar"] + 4)
        - v["beta"] * (v["B"] * v["Bbar"] + 4)
    )
    assert constraint == expected.monic()
    gamma = solve_astheno_abc_symbolic(A=1, B=0, C=0)
    assert gamma.substitute({"alpha": 1, "beta": 1}) == 8


def test_abc_random_instances():
    rng = random.Random(8)
    for _ in range(5):
        A = GaussianRational(Fraction(rng.randint(-2, 2), 2), Fraction(rng.randint(-2, 2), 2))
        if A.norm2() >= 2:
            continue
        B = GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
        C = GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
        alpha, beta = Fraction(rng.randint(1, 5), rng.randint(1, 3)), Fraction(rng.randint(1, 5), rng.randint(1, 3))
        gamma = abc_gamma(A, B, C, alpha, beta)
        assert gamma == (alpha * (C.norm2() + 4) + beta * (B.norm2() + 4)) / (2 - A.norm2())
        M = solve_astheno_abc(A, B, C, alpha, beta)
        S = build_abc_family(A, B, C)
        for k in range(1, 4):
            assert is_k_gauduchon(S, M, k).holds


def test_heisenberg_form_is_sum_of_pairs():
    f = heisenberg_form(4, [2, 0, -1])
    assert f == pair(4, 1, 2) - pair(4, 3, 1)
