"""Builders and solvers for two explicit families of complex nilmanifolds.

* Heisenberg-type: ``d w^j = 0`` for ``j < n`` and ``d w^n = sum a_j w^j^cw^j``
  (real Lie algebra h_{2n+1} x R).  Carries a balanced canonical metric
  when ``sum a_j = 0`` and an astheno-Kahler diagonal metric.
* ABC family in dimension 4: ``d w^4 = A w^12 + B w^13 + C w^23 + w^1^cw^1
  + w^2^cw^2 - 2 w^3^cw^3`` with A, B, C in Q(i); not abelian unless
  A = B = C = 0.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from typing import Sequence

from .exterior import Form, pair, wedge
from .hermitian import (
    HermitianMetric,
    MetricError,
    fundamental_form,
    is_astheno_kahler,
    is_balanced,
)
from .scalars import (
    EMPTY_SPACE,
    GaussianRational,
    ParamSpace,
    PolyScalar,
    RatScalar,
    solve_linear,
)
from .structure import StructureEquations


class FamilyError(ValueError):
    pass


HEISENBERG_LABEL = "h_{2n+1} x R"


def _poly(x, space=None) -> PolyScalar:
    return PolyScalar.coerce(x, space)


def _rational(x, what: str) -> Fraction:
    """Exact real rational value of a numeric coefficient."""
    if isinstance(x, PolyScalar):
        if not x.is_constant():
            raise FamilyError(f"{what} must be numeric, got {x}")
        x = x.constant_value()
    z = GaussianRational.coerce(x)
    if not z.is_real():
        raise FamilyError(f"{what} must be real, got {z}")
    return z.re


# ---------------------------------------------------------------------------
# Heisenberg-type family
# ---------------------------------------------------------------------------


def heisenberg_form(n: int, coeffs: Sequence[object], space: ParamSpace | None = None) -> Form:
    """sum_j coeffs[j-1] * w^j ^ cw^j over j = 1..len(coeffs)."""
    out = Form.zero(n, space or EMPTY_SPACE)
    for j, c in enumerate(coeffs, start=1):
        out = out + pair(n, j, _poly(c, space), space)
    return out


def build_heisenberg(n: int, a: Sequence[object], space: ParamSpace | None = None) -> StructureEquations:
    if n < 3:
        raise FamilyError("Heisenberg-type family needs n >= 3")
    if len(a) != n - 1:
        raise FamilyError(f"expected {n - 1} coefficients a_j, got {len(a)}")
    coeffs = [_poly(x, space) for x in a]
    if space is None:
        space = next((c.space for c in coeffs if c.space.symbols), EMPTY_SPACE)
    if any(c.is_zero() for c in coeffs):
        warnings.warn("some a_j vanish; the family is stated for nonzero coefficients", stacklevel=2)
    return StructureEquations(n, {n: heisenberg_form(n, coeffs, space)}, space)


def balanced_constraint(a: Sequence[object]) -> PolyScalar:
    """The polynomial a_1 + ... + a_{n-1} whose vanishing makes the canonical metric balanced."""
    total = PolyScalar()
    for x in a:
        total = total + _poly(x)
    return total


def solve_balanced(a_head: Sequence[object]):
    """Value of a_{n-1} making the canonical metric balanced, given a_1..a_{n-2}."""
    total = balanced_constraint(a_head)
    if total.is_constant():
        return -total.constant_value()
    return -total


def astheno_b_last(a_head: Sequence[object], n: int) -> Fraction:
    """b_{n-1} = 2 (a_1 + ... + a_{n-2}) / (n - 3)."""
    if n <= 3:
        raise FamilyError("the diagonal astheno-Kahler solution needs n >= 4 (division by n-3)")
    space = ParamSpace.declare(["b_last"])
    x = space.var("b_last")
    s = sum((_rational(v, "a_j") for v in a_head), Fraction(0))
    condition = x * (n - 3) - PolyScalar.constant(2 * s, space)
    return solve_linear(condition, "b_last").value().re


def solve_astheno_diagonal(n: int, a: Sequence[object], check: bool = True) -> HermitianMetric:
    """Diagonal astheno-Kahler metric b = (a_1, ..., a_{n-2}, 2 sum/(n-3), 1).

    ``a`` holds a_1..a_{n-1} (the last entry must be minus the sum of the
    others) or just a_1..a_{n-2}.
    """
    if n <= 3:
        raise FamilyError("the diagonal astheno-Kahler solution needs n >= 4 (division by n-3)")
    vals = [_rational(x, f"a_{j + 1}") for j, x in enumerate(a)]
    if len(vals) == n - 2:
        vals.append(-sum(vals, Fraction(0)))
    if len(vals) != n - 1:
        raise FamilyError(f"expected {n - 2} or {n - 1} coefficients, got {len(vals)}")
    head = vals[: n - 2]
    if any(v <= 0 for v in head):
        raise FamilyError("a_1..a_{n-2} must be positive")
    if sum(vals) != 0:
        raise FamilyError("coefficients are not balanced: a_1 + ... + a_{n-1} != 0")
    b = head + [astheno_b_last(head, n), Fraction(1)]
    M = HermitianMetric.diagonal(b)
    if check:
        S = build_heisenberg(n, vals)
        if not is_astheno_kahler(S, M).holds:
            raise AssertionError("solved metric is not astheno-Kahler")
        if not is_balanced(S, HermitianMetric.identity(n)).holds:
            raise AssertionError("canonical metric is not balanced")
    return M


def skt_obstruction_heisenberg(n: int, a: Sequence[object], M: HermitianMetric | None = None) -> Form:
    """partial partial_bar F for a (by default fully parametric) Hermitian metric."""
    if M is None:
        M = HermitianMetric.generic(n)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        S = build_heisenberg(n, [_poly(x) for x in a])
    F = fundamental_form(M)
    return S.partial(S.partial_bar(F))


def expected_skt_obstruction(n: int, a: Sequence[object], M: HermitianMetric) -> Form:
    """-(i/2) h_{n nbar} A ^ A with A = sum a_j w^j^cw^j."""
    A = heisenberg_form(n, a)
    AA = wedge(A, A)
    c = M.entry(n, n).scale(GaussianRational(0, Fraction(-1, 2)))
    return AA.scale(c)


# ---------------------------------------------------------------------------
# ABC family (n = 4)
# ---------------------------------------------------------------------------


def abc_differential(A, B, C, space: ParamSpace | None = None) -> Form:
    n = 4
    A, B, C = (_poly(x, space) for x in (A, B, C))
    f = heisenberg_form(n, [1, 1, -2], space)
    for coeff, (j, k) in ((A, (1, 2)), (B, (1, 3)), (C, (2, 3))):
        f = f + Form.monomial(n, [(j, False), (k, False)], coeff, space)
    return f


def build_abc_family(A=0, B=0, C=0, space: ParamSpace | None = None) -> StructureEquations:
    """d w^1 = d w^2 = d w^3 = 0, d w^4 = A w^12 + B w^13 + C w^23 + w^11bar + w^22bar - 2 w^33bar."""
    f = abc_differential(A, B, C, space)
    return StructureEquations(4, {4: f}, f.space)


def abc_gamma(A, B, C, alpha, beta) -> Fraction:
    """gamma = (alpha(|C|^2+4) + beta(|B|^2+4)) / (2 - |A|^2)."""
    A, B, C = (GaussianRational.coerce(x) for x in (A, B, C))
    alpha = _rational(alpha, "alpha")
    beta = _rational(beta, "beta")
    if alpha <= 0 or beta <= 0:
        raise FamilyError("alpha and beta must be positive")
    if A.norm2() >= 2:
        raise FamilyError(f"|A|^2 = {A.norm2()} >= 2: need |A| < sqrt(2) for a positive gamma")
    space = ParamSpace.declare(["gamma"])
    g = space.var("gamma")
    condition = g * (2 - A.norm2()) - PolyScalar.constant(alpha * (C.norm2() + 4) + beta * (B.norm2() + 4), space)
    return solve_linear(condition, "gamma").value().re


def solve_astheno_abc(A, B, C, alpha=1, beta=1, check: bool = True) -> HermitianMetric:
    """diag(alpha, beta, gamma, 1) with the unique astheno-Kahler gamma."""
    gamma = abc_gamma(A, B, C, alpha, beta)
    M = HermitianMetric.diagonal([_rational(alpha, "alpha"), _rational(beta, "beta"), gamma, 1])
    if check:
        S = build_abc_family(A, B, C)
        if not is_astheno_kahler(S, M).holds:
            raise AssertionError("solved metric is not astheno-Kahler")
    return M


def abc_astheno_constraint(A=None, B=None, C=None) -> tuple[PolyScalar, ParamSpace]:
    """Residual astheno-Kahler condition of diag(alpha, beta, gamma, 1) as a polynomial.

    Any of A, B, C left as None stays symbolic.  Returns the constraint
    normalised to leading coefficient 1, together with its parameter space.
    """
    cplx = [name for name, v in (("A", A), ("B", B), ("C", C)) if v is None]
    space = ParamSpace.declare(["alpha", "beta", "gamma"], cplx)
    coeffs = [space.var(nm) if v is None else _poly(v, space) for nm, v in (("A", A), ("B", B), ("C", C))]
    S = StructureEquations(4, {4: abc_differential(*coeffs, space=space)}, space)
    M = HermitianMetric.diagonal([space.var("alpha"), space.var("beta"), space.var("gamma"), 1], space)
    rep = is_astheno_kahler(S, M)
    if rep.holds is not None or len(rep.constraints) != 1:
        raise MetricError(f"unexpected astheno residual: {rep.certificate}")
    return rep.constraints[0], space


def solve_astheno_abc_symbolic(A=None, B=None, C=None) -> RatScalar:
    """gamma as a rational function of alpha, beta (and any symbolic A, B, C)."""
    constraint, _ = abc_astheno_constraint(A, B, C)
    return solve_linear(constraint, "gamma")


__all__ = [
    "FamilyError",
    "HEISENBERG_LABEL",
    "abc_astheno_constraint",
    "abc_differential",
    "abc_gamma",
    "astheno_b_last",
    "balanced_constraint",
    "build_abc_family",
    "build_heisenberg",
    "expected_skt_obstruction",
    "heisenberg_form",
    "skt_obstruction_heisenberg",
    "solve_astheno_abc",
    "solve_astheno_abc_symbolic",
    "solve_astheno_diagonal",
    "solve_balanced",
]
