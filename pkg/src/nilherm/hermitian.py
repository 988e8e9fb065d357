"""Invariant Hermitian metrics, their fundamental forms and the metric conditions.

On invariant forms the integral over the nilmanifold is a positive multiple
of the coefficient of the volume blade, so every integral identity is checked
here as an exact statement about top coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .exterior import Form, power, top_coefficient, wedge
from .scalars import (
    EMPTY_SPACE,
    HALF_I,
    GaussianRational,
    ParamSpace,
    PolyScalar,
    RatScalar,
)
from .structure import StructureEquations, StructureError


class MetricError(ValueError):
    pass


class DegenerateMetricError(MetricError, ZeroDivisionError):
    pass


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------


class HermitianMetric:
    """Hermitian matrix ``h[j][k]`` (0-based) with PolyScalar entries.

    Symmetry ``h[k][j] == conj(h[j][k])`` is enforced on construction.
    Positive-definiteness is only checked on request, see
    :func:`is_positive_definite`.
    """

    def __init__(self, h: Sequence[Sequence[object]], space: ParamSpace | None = None):
        n = len(h)
        if n < 1 or any(len(row) != n for row in h):
            raise MetricError("metric matrix must be square and non-empty")
        entries = [[PolyScalar.coerce(x) for x in row] for row in h]
        if space is None:
            space = next((x.space for row in entries for x in row if x.space.symbols), EMPTY_SPACE)
        self.n = n
        self.space = space
        self.h = [[x if x.space == space else x.promote(space) for x in row] for row in entries]
        for j in range(n):
            for k in range(j, n):
                if self.h[k][j] != self.h[j][k].conjugate():
                    raise MetricError(f"entry ({k + 1},{j + 1}) is not the conjugate of ({j + 1},{k + 1})")

    @classmethod
    def diagonal(cls, values: Sequence[object], space: ParamSpace | None = None) -> "HermitianMetric":
        n = len(values)
        zero = PolyScalar(space or EMPTY_SPACE)
        h = [[PolyScalar.coerce(values[j], space) if j == k else zero for k in range(n)] for j in range(n)]
        return cls(h, space)

    @classmethod
    def identity(cls, n: int) -> "HermitianMetric":
        return cls.diagonal([1] * n)

    @classmethod
    def from_upper(cls, n: int, entries: Mapping[tuple[int, int], object], space: ParamSpace | None = None) -> "HermitianMetric":
        """Build from 1-based entries ``(j, k)`` with ``j <= k``; the rest by conjugation."""
        zero = PolyScalar(space or EMPTY_SPACE)
        h = [[zero] * n for _ in range(n)]
        for (j, k), v in entries.items():
            if not (1 <= j <= k <= n):
                raise MetricError(f"entry ({j},{k}) must satisfy 1 <= j <= k <= {n}")
            p = PolyScalar.coerce(v, space)
            h[j - 1][k - 1] = p
            h[k - 1][j - 1] = p.conjugate()
        return cls(h, space)

    @classmethod
    def generic(cls, n: int, prefix: str = "h", space: ParamSpace | None = None) -> "HermitianMetric":
        """Fully parametric metric: real ``h11..hnn`` and complex ``hjk`` for j < k."""
        real = [f"{prefix}{j}{j}" for j in range(1, n + 1)]
        cplx = [f"{prefix}{j}{k}" for j in range(1, n + 1) for k in range(j + 1, n + 1)]
        base = space or EMPTY_SPACE
        space = base.extend(real, cplx)
        entries = {(j, j): space.var(f"{prefix}{j}{j}") for j in range(1, n + 1)}
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                entries[(j, k)] = space.var(f"{prefix}{j}{k}")
        return cls.from_upper(n, entries, space)

    @property
    def is_diagonal(self) -> bool:
        return all(not self.h[j][k] for j in range(self.n) for k in range(self.n) if j != k)

    @property
    def is_canonical(self) -> bool:
        return self.is_diagonal and all(self.h[j][j] == 1 for j in range(self.n))

    def entry(self, j: int, k: int) -> PolyScalar:
        """1-based entry h_{j kbar}."""
        return self.h[j - 1][k - 1]

    def subs(self, assignment) -> "HermitianMetric":
        return HermitianMetric([[x.subs(assignment) for x in row] for row in self.h], self.space)

    def __eq__(self, other):
        if not isinstance(other, HermitianMetric):
            return NotImplemented
        return self.n == other.n and all(a == b for ra, rb in zip(self.h, other.h) for a, b in zip(ra, rb))

    __hash__ = None

    def __repr__(self):
        if self.is_diagonal:
            return f"HermitianMetric(diag({', '.join(str(self.h[j][j]) for j in range(self.n))}))"
        return f"HermitianMetric({[[str(x) for x in row] for row in self.h]})"


def fundamental_form(M: HermitianMetric) -> Form:
    """F = (i/2) * sum h_{j kbar} w^j ^ cw^k."""
    n = M.n
    terms = {}
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            c = M.entry(j, k)
            if not c:
                continue
            f = Form.monomial(n, [(j, False), (k, True)], c.scale(HALF_I), M.space)
            for m, v in f.terms.items():
                terms[m] = v
    return Form(n, terms, M.space)


def leading_minors(M: HermitianMetric, assignment: Mapping[str, object] | None = None) -> list[GaussianRational]:
    """Leading principal minors at a numeric point, computed exactly over Q(i)."""
    if assignment:
        a = [[x.substitute(assignment) for x in row] for row in M.h]
    else:
        a = [[x.constant_value() for x in row] for row in M.h]
    return [_det([row[:k] for row in a[:k]]) for k in range(1, M.n + 1)]


def _det(a: list[list[GaussianRational]]) -> GaussianRational:
    a = [row[:] for row in a]
    n = len(a)
    det = GaussianRational(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            return GaussianRational(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k]
        for r in range(k + 1, n):
            factor = a[r][k] / a[k][k]
            if factor:
                for c in range(k, n):
                    a[r][c] = a[r][c] - factor * a[k][c]
    return det


def is_positive_definite(M: HermitianMetric, assignment: Mapping[str, object] | None = None) -> bool:
    return all(m.is_real() and m.re > 0 for m in leading_minors(M, assignment))


# ---------------------------------------------------------------------------
# condition reports
# ---------------------------------------------------------------------------


@dataclass
class ConditionReport:
    """Outcome of a metric condition.

    ``holds`` is True/False for parameter-free certificates and None when the
    answer depends on parameters; ``constraints`` then lists the polynomial
    conditions (normalised to leading coefficient 1) that must all vanish.
    """

    name: str
    holds: bool | None
    certificate: object
    k: int | None = None
    constraints: tuple[PolyScalar, ...] = field(default=())

    def __bool__(self):
        return self.holds is True

    def as_dict(self) -> dict:
        cert = self.certificate
        if isinstance(cert, RatScalar):
            num, den = cert.as_pair()
            cert_out = {"numerator": num, "denominator": den}
        else:
            cert_out = str(cert)
        out = {
            "condition": self.name,
            "holds": self.holds,
            "certificate": cert_out,
            "constraints": [str(c) for c in self.constraints],
        }
        if self.k is not None:
            out["k"] = self.k
        return out


def _constraints(coeffs) -> tuple[bool | None, tuple[PolyScalar, ...]]:
    coeffs = [c for c in coeffs if c]
    if not coeffs:
        return True, ()
    if any(c.is_constant() for c in coeffs):
        return False, ()
    seen: list[PolyScalar] = []
    for c in coeffs:
        m = c.monic()
        if not any(m == s for s in seen):
            seen.append(m)
    return None, tuple(seen)


def form_report(name: str, cert: Form, k: int | None = None) -> ConditionReport:
    holds, cons = _constraints(cert.terms.values())
    return ConditionReport(name, holds, cert, k, cons)


def _require(S: StructureEquations, M: HermitianMetric):
    if S.n != M.n:
        raise MetricError(f"metric has n={M.n}, structure has n={S.n}")
    if not S.is_valid:
        raise StructureError("structure equations failed validation: " + "; ".join(S.validate().failures))


def _ddbar(S: StructureEquations, f: Form) -> Form:
    return S.partial(S.partial_bar(f))


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------


def is_balanced(S: StructureEquations, M: HermitianMetric) -> ConditionReport:
    """d(F^{n-1}) = 0."""
    _require(S, M)
    F = fundamental_form(M)
    return form_report("balanced", S.d(power(F, S.n - 1)))


def is_skt(S: StructureEquations, M: HermitianMetric) -> ConditionReport:
    _require(S, M)
    if S.n < 3:
        raise MetricError("SKT check needs n >= 3")
    return form_report("skt", _ddbar(S, fundamental_form(M)))


def is_astheno_kahler(S: StructureEquations, M: HermitianMetric) -> ConditionReport:
    _require(S, M)
    if S.n < 3:
        raise MetricError("astheno-Kahler check needs n >= 3")
    F = fundamental_form(M)
    return form_report("astheno", _ddbar(S, power(F, S.n - 2)))


def _check_k(n: int, k: int):
    if not 1 <= k <= n - 1:
        raise MetricError(f"k must satisfy 1 <= k <= {n - 1}, got {k}")


def kgauduchon_form(S: StructureEquations, M: HermitianMetric, k: int) -> Form:
    """ddbar(F^k) ^ F^(n-k-1)."""
    _require(S, M)
    _check_k(S.n, k)
    F = fundamental_form(M)
    return wedge(_ddbar(S, power(F, k)), power(F, S.n - k - 1))


def is_k_gauduchon(S: StructureEquations, M: HermitianMetric, k: int) -> ConditionReport:
    return form_report("kgauduchon", kgauduchon_form(S, M, k), k)


def is_gauduchon(S: StructureEquations, M: HermitianMetric) -> ConditionReport:
    rep = is_k_gauduchon(S, M, S.n - 1)
    rep.name = "gauduchon"
    return rep


def volume_coefficient(M: HermitianMetric) -> PolyScalar:
    """Top coefficient of F^n."""
    return top_coefficient(power(fundamental_form(M), M.n))


def gauduchon_constant(S: StructureEquations, M: HermitianMetric, k: int) -> RatScalar:
    """C_{F,k} with (i/2) ddbar(F^k) ^ F^(n-k-1) = C_{F,k} F^n."""
    form = kgauduchon_form(S, M, k)
    num = top_coefficient(form).scale(HALF_I)
    den = volume_coefficient(M)
    if not den:
        raise DegenerateMetricError("F^n has zero volume coefficient")
    return RatScalar(num, den)


def gauduchon_constants(S: StructureEquations, M: HermitianMetric) -> dict[int, RatScalar]:
    _require(S, M)
    F = fundamental_form(M)
    n = S.n
    powers = [Form.scalar(n, 1, F.space)]
    for _ in range(n):
        powers.append(wedge(powers[-1], F))
    den = top_coefficient(powers[n])
    if not den:
        raise DegenerateMetricError("F^n has zero volume coefficient")
    out = {}
    for k in range(1, n):
        form = wedge(_ddbar(S, powers[k]), powers[n - k - 1])
        out[k] = RatScalar(top_coefficient(form).scale(HALF_I), den)
    return out


# ---------------------------------------------------------------------------
# identity verifiers
# ---------------------------------------------------------------------------


def verify_power_rule(S: StructureEquations, M: HermitianMetric, k: int) -> bool:
    """partial(F^k) = k partial(F)^F^(k-1), and likewise for partial_bar."""
    _require(S, M)
    if k < 1:
        raise MetricError("k must be >= 1")
    F = fundamental_form(M)
    Fk1 = power(F, k - 1)
    Fk = wedge(Fk1, F)
    lhs_d = S.partial(Fk)
    lhs_db = S.partial_bar(Fk)
    return lhs_d == wedge(S.partial(F), Fk1) * k and lhs_db == wedge(S.partial_bar(F), Fk1) * k


def kgauduchon_identity_terms(S: StructureEquations, M: HermitianMetric, k: int) -> dict[str, Form]:
    """Both sides of the exact integration-by-parts identity for k-th Gauduchon forms.

    ``lhs = (n-2) ddbar(F^k)^F^(n-k-1)`` and
    ``rhs = k(n-k-1) ddbar(F)^F^(n-2) + (k-1) d(partial_bar(F^k)^F^(n-k-1))``;
    ``exact`` is the last d-exact (2n)-form on its own.
    """
    _require(S, M)
    n = S.n
    _check_k(n, k)
    F = fundamental_form(M)
    Fk = power(F, k)
    rest = power(F, n - k - 1)
    lhs = wedge(_ddbar(S, Fk), rest) * (n - 2)
    main = wedge(_ddbar(S, F), power(F, n - 2)) * (k * (n - k - 1))
    exact = S.d(wedge(S.partial_bar(Fk), rest))
    rhs = main + exact * (k - 1)
    return {"lhs": lhs, "rhs": rhs, "main": main, "exact": exact}


def verify_kgauduchon_identity(S: StructureEquations, M: HermitianMetric, k: int) -> bool:
    t = kgauduchon_identity_terms(S, M, k)
    return t["lhs"] == t["rhs"]


def verify_constant_relation(S: StructureEquations, M: HermitianMetric) -> bool:
    """(n-2) C_k = k(n-k-1) C_1 for 1 <= k <= n-2, and C_{n-1} = 0."""
    n = S.n
    if n < 3:
        raise MetricError("constant relation needs n >= 3")
    C = gauduchon_constants(S, M)
    if not C[n - 1].is_zero():
        return False
    return all(C[k] * (n - 2) == C[1] * (k * (n - k - 1)) for k in range(1, n - 1))


def verify_duality(S: StructureEquations, M: HermitianMetric, k: int) -> bool:
    """k-th Gauduchon iff (n-k-1)-th Gauduchon, for 1 <= k <= floor(n/2)-1."""
    n = S.n
    if not 1 <= k <= n // 2 - 1:
        raise MetricError(f"duality needs 1 <= k <= {n // 2 - 1}, got {k}")
    a = is_k_gauduchon(S, M, k)
    b = is_k_gauduchon(S, M, n - k - 1)
    if a.holds != b.holds:
        return False
    if a.holds is None:
        return len(a.constraints) == len(b.constraints) and all(
            any(x == y for y in b.constraints) for x in a.constraints
        )
    return True


def canonical_metric(n: int) -> HermitianMetric:
    return HermitianMetric.identity(n)


__all__ = [
    "ConditionReport",
    "DegenerateMetricError",
    "HermitianMetric",
    "MetricError",
    "canonical_metric",
    "form_report",
    "fundamental_form",
    "gauduchon_constant",
    "gauduchon_constants",
    "is_astheno_kahler",
    "is_balanced",
    "is_gauduchon",
    "is_k_gauduchon",
    "is_positive_definite",
    "is_skt",
    "kgauduchon_form",
    "kgauduchon_identity_terms",
    "leading_minors",
    "verify_constant_relation",
    "verify_duality",
    "verify_kgauduchon_identity",
    "verify_power_rule",
    "volume_coefficient",
]
