import random
from fractions import Fraction

import pytest
from instances import random_diagonal_metric, random_hermitian_metric, random_structure

from nilherm import build_abc_family, build_heisenberg
from nilherm.exterior import Form, conjugate_form, pair, top_coefficient, wedge
from nilherm.hermitian import (
    DegenerateMetricError,
    HermitianMetric,
    MetricError,
    fundamental_form,
    gauduchon_constant,
    gauduchon_constants,
    is_astheno_kahler,
    is_balanced,
    is_gauduchon,
    is_k_gauduchon,
    is_positive_definite,
    is_skt,
    kgauduchon_identity_terms,
    verify_constant_relation,
    verify_duality,
    verify_kgauduchon_identity,
    verify_power_rule,
)
from nilherm.oracle import OracleStructure, oracle_gauduchon_constant
from nilherm.scalars import GaussianRational, ParamSpace

HALF_I = GaussianRational(0, Fraction(1, 2))
HEIS4 = build_heisenberg(4, [1, 1, -2])
FTILDE = HermitianMetric.identity(4)
FAST = HermitianMetric.diagonal([1, 1, 4, 1])


def oracle_constant(S, M, k):
    h = [[M.entry(j, l).constant_value() for l in range(1, M.n + 1)] for j in range(1, M.n + 1)]
    return oracle_gauduchon_constant(OracleStructure.from_structure(S), h, k)


def test_fundamental_form_of_identity():
    F = fundamental_form(FTILDE)
    assert F == sum((pair(4, j, HALF_I) for j in range(1, 5)), Form.zero(4))


def test_fundamental_form_of_parametric_diagonal():
    space = ParamSpace.declare(["alpha", "beta", "gamma"])
    al, be, ga = (space.var(s) for s in ("alpha", "beta", "gamma"))
    F = fundamental_form(HermitianMetric.diagonal([al, be, ga, 1], space))
    expected = pair(4, 1, al) + pair(4, 2, be) + pair(4, 3, ga) + pair(4, 4, 1, space)
    assert F == expected.scale(HALF_I)


def test_fundamental_form_is_real():
    rng = random.Random(2)
    for n in (2, 3, 4):
        F = fundamental_form(random_hermitian_metric(rng, n))
        assert conjugate_form(F) == F


def test_metric_must_be_hermitian():
    with pytest.raises(MetricError):
        HermitianMetric([[1, 1], [2, 1]])
    with pytest.raises(MetricError):
        HermitianMetric([[GaussianRational(0, 1), 0], [0, 1]])


def test_positivity():
    assert is_positive_definite(FAST)
    assert not is_positive_definite(HermitianMetric.diagonal([1, -1, 1]))
    assert not is_positive_definite(HermitianMetric.from_upper(2, {(1, 1): 1, (1, 2): 2, (2, 2): 1}))


def test_balanced_examples():
    assert is_balanced(HEIS4, FTILDE).holds
    bad = is_balanced(build_heisenberg(4, [1, 1, 1]), FTILDE)
    assert bad.holds is False and bad.certificate
    assert is_balanced(build_abc_family(GaussianRational(1, 2), -3, GaussianRational(0, 1)), FTILDE).holds


def test_skt_fails_with_certificate_proportional_to_square():
    rep = is_skt(HEIS4, FAST)
    assert rep.holds is False
    A = pair(4, 1, 1) + pair(4, 2, 1) - pair(4, 3, 2)
    assert rep.certificate == wedge(A, A).scale(-HALF_I)


def test_astheno_examples():
    assert is_astheno_kahler(HEIS4, FAST).holds
    rep = is_astheno_kahler(HEIS4, FTILDE)
    assert rep.holds is False
    assert rep.certificate


def test_gauduchon_constants_pinned_by_oracle():
    for k, expected in [(1, Fraction(1, 2)), (2, Fraction(1, 2)), (3, Fraction(0))]:
        assert oracle_constant(HEIS4, FTILDE, k) == expected
        assert gauduchon_constant(HEIS4, FTILDE, k).value() == expected
    for k in (1, 2, 3):
        assert oracle_constant(HEIS4, FAST, k) == 0
        assert gauduchon_constant(HEIS4, FAST, k).is_zero()


def test_k_gauduchon_examples():
    for k in (1, 2, 3):
        assert is_k_gauduchon(HEIS4, FAST, k).holds
    assert is_gauduchon(HEIS4, FTILDE).holds
    assert is_k_gauduchon(HEIS4, FTILDE, 1).holds is False
    with pytest.raises(MetricError):
        is_k_gauduchon(HEIS4, FTILDE, 4)


def test_always_gauduchon_on_random_instances():
    rng = random.Random(9)
    for _ in range(8):
        n = rng.randint(3, 6)
        S = random_structure(rng, n)
        assert is_gauduchon(S, random_hermitian_metric(rng, n)).holds


def test_power_rule():
    assert verify_power_rule(HEIS4, FTILDE, 1)
    for k in (2, 3):
        assert verify_power_rule(HEIS4, FTILDE, k)
    assert verify_power_rule(build_abc_family(1, 0, 0), HermitianMetric.diagonal([1, 1, 8, 1]), 2)


def test_kgauduchon_identity_examples():
    n = 4
    t = kgauduchon_identity_terms(HEIS4, FTILDE, 1)
    assert t["lhs"] == t["rhs"] == t["main"]
    rng = random.Random(4)
    S5 = build_heisenberg(5, [1, 1, 1, -3])
    for _ in range(3):
        M = random_diagonal_metric(rng, 5)
        for k in (2, 3):
            assert verify_kgauduchon_identity(S5, M, k)
    t = kgauduchon_identity_terms(HEIS4, FAST, 2)
    assert not t["lhs"] and not t["rhs"]
    for k in range(1, n):
        assert not top_coefficient(kgauduchon_identity_terms(HEIS4, FTILDE, k)["exact"])


def test_identity_with_off_diagonal_metric():
    rng = random.Random(12)
    for _ in range(3):
        n = rng.randint(4, 5)
        S = random_structure(rng, n)
        M = random_hermitian_metric(rng, n)
        for k in range(1, n):
            assert verify_kgauduchon_identity(S, M, k)


def test_constant_relation():
    assert verify_constant_relation(HEIS4, FTILDE)
    C = gauduchon_constants(HEIS4, FTILDE)
    assert C[1] == C[2] and C[3].is_zero()
    assert verify_constant_relation(HEIS4, FAST)
    assert all(c.is_zero() for c in gauduchon_constants(HEIS4, FAST).values())


def test_degenerate_metric_is_an_error():
    M = HermitianMetric.diagonal([1, 1, 0, 1])
    with pytest.raises(DegenerateMetricError):
        gauduchon_constants(HEIS4, M)
    with pytest.raises(DegenerateMetricError):
        verify_constant_relation(HEIS4, M)


def test_duality_examples():
    from nilherm import solve_astheno_diagonal

    S6 = build_heisenberg(6, [1, 1, 1, 1, -4])
    M = solve_astheno_diagonal(6, [1, 1, 1, 1, -4])
    assert is_k_gauduchon(S6, M, 1).holds and is_k_gauduchon(S6, M, 4).holds
    assert verify_duality(S6, M, 1)
    I6 = HermitianMetric.identity(6)
    assert is_k_gauduchon(S6, I6, 1).holds is False
    assert is_k_gauduchon(S6, I6, 4).holds is False
    assert verify_duality(S6, I6, 1)
    assert verify_duality(S6, I6, 2)
    with pytest.raises(MetricError):
        verify_duality(S6, I6, 3)


def test_parametric_predicates_return_constraints():
    space = ParamSpace.declare(["b1", "b2", "b3"])
    M = HermitianMetric.diagonal([space.var("b1"), space.var("b2"), space.var("b3"), 1], space)
    rep = is_astheno_kahler(HEIS4, M)
    assert rep.holds is None
    (c,) = rep.constraints
    assert c.substitute({"b1": 1, "b2": 1, "b3": 4}) == 0
    assert c.substitute({"b1": 1, "b2": 1, "b3": 1}) != 0


def test_dimension_mismatch():
    with pytest.raises(MetricError):
        is_balanced(HEIS4, HermitianMetric.identity(3))
