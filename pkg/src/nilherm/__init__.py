"""Exact invariant Hermitian geometry on complex nilmanifolds."""

from ._accel import HAS_NUMBA, backend
from .dsl import DSLError, ManifoldFile, parse, parse_file, to_text
from .exterior import (
    Form,
    bidegree_component,
    conjugate_form,
    power,
    top_coefficient,
    wedge,
)
from .families import (
    build_abc_family,
    build_heisenberg,
    skt_obstruction_heisenberg,
    solve_astheno_abc,
    solve_astheno_diagonal,
    solve_balanced,
)
from .hermitian import (
    ConditionReport,
    HermitianMetric,
    fundamental_form,
    gauduchon_constant,
    gauduchon_constants,
    is_astheno_kahler,
    is_balanced,
    is_gauduchon,
    is_k_gauduchon,
    is_skt,
    verify_constant_relation,
    verify_duality,
    verify_kgauduchon_identity,
    verify_power_rule,
)
from .scalars import GaussianRational, ParamSpace, PolyScalar, RatScalar, solve_linear
from .structure import (
    StructureEquations,
    canonical_form_closed,
    is_abelian,
    partial,
    partial_bar,
)

__version__ = "0.1.0"

__all__ = [
    "ConditionReport",
    "DSLError",
    "Form",
    "GaussianRational",
    "HAS_NUMBA",
    "HermitianMetric",
    "ManifoldFile",
    "ParamSpace",
    "PolyScalar",
    "RatScalar",
    "StructureEquations",
    "backend",
    "bidegree_component",
    "build_abc_family",
    "build_heisenberg",
    "canonical_form_closed",
    "conjugate_form",
    "fundamental_form",
    "gauduchon_constant",
    "gauduchon_constants",
    "is_abelian",
    "is_astheno_kahler",
    "is_balanced",
    "is_gauduchon",
    "is_k_gauduchon",
    "is_skt",
    "parse",
    "parse_file",
    "partial",
    "partial_bar",
    "power",
    "skt_obstruction_heisenberg",
    "solve_astheno_abc",
    "solve_astheno_diagonal",
    "solve_balanced",
    "solve_linear",
    "to_text",
    "top_coefficient",
    "verify_constant_relation",
    "verify_duality",
    "verify_kgauduchon_identity",
    "verify_power_rule",
    "wedge",
]
