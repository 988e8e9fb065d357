"""Command line interface.

Exit status: 0 when every requested check holds, 1 when one fails (or only
holds under parameter constraints), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources

from . import families
from .dsl import DSLError, parse_file
from .hermitian import (
    ConditionReport,
    DegenerateMetricError,
    HermitianMetric,
    MetricError,
    gauduchon_constants,
    is_astheno_kahler,
    is_balanced,
    is_gauduchon,
    is_k_gauduchon,
    is_skt,
    verify_constant_relation,
    verify_kgauduchon_identity,
)
from .scalars import ScalarError, parse_gaussian
from .structure import (
    StructureEquations,
    StructureError,
    canonical_form_closed,
    is_abelian,
)

SCHEMA_RESOURCE = "report.schema.json"
CONDITION_NAMES = ("balanced", "skt", "astheno", "gauduchon", "kgauduchon", "all")


class InputError(Exception):
    pass


def load_schema() -> dict:
    """JSON schema that every ``--output json`` document satisfies."""
    return json.loads(resources.files("nilherm").joinpath(SCHEMA_RESOURCE).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------


def _new_report(command: str, name: str | None = None, n: int | None = None) -> dict:
    return {
        "command": command,
        "manifold": name,
        "n": n,
        "validation": None,
        "structure": None,
        "conditions": [],
        "constants": None,
        "identities": {},
        "family": None,
        "ok": True,
    }


def _finish(report: dict) -> dict:
    ok = True
    if report["validation"] is not None and not report["validation"]["ok"]:
        ok = False
    if any(c["holds"] is not True for c in report["conditions"]):
        ok = False
    if any(v is not True for v in report["identities"].values()):
        ok = False
    report["ok"] = ok
    return report


def _constants_table(S, M) -> dict:
    return {str(k): dict(zip(("numerator", "denominator"), v.as_pair())) for k, v in gauduchon_constants(S, M).items()}


def parse_conditions(spec: str, n: int, k_flag: int | None) -> list[tuple[str, int | None]]:
    out: list[tuple[str, int | None]] = []
    for raw in [s.strip() for s in spec.split(",") if s.strip()]:
        if raw.startswith("kgauduchon="):
            try:
                k = int(raw.split("=", 1)[1])
            except ValueError:
                raise InputError(f"bad condition {raw!r}") from None
            out.append(("kgauduchon", k))
        elif raw == "kgauduchon":
            ks = [k_flag] if k_flag is not None else list(range(1, n))
            out.extend(("kgauduchon", k) for k in ks)
        elif raw in CONDITION_NAMES:
            out.append((raw, None))
        else:
            raise InputError(f"unknown condition {raw!r}; choose from {', '.join(CONDITION_NAMES)} or kgauduchon=<k>")
    if not out:
        raise InputError("no condition given")
    for name, k in out:
        if name == "kgauduchon" and not 1 <= k <= n - 1:
            raise InputError(f"k must satisfy 1 <= k <= {n - 1}, got {k}")
    return out


def run_conditions(S: StructureEquations, M: HermitianMetric, conds, report: dict):
    n = S.n
    for name, k in conds:
        if name == "all":
            reps = [is_balanced(S, M)]
            if n >= 3:
                reps += [is_skt(S, M), is_astheno_kahler(S, M)]
            reps.append(is_gauduchon(S, M))
            reps += [is_k_gauduchon(S, M, kk) for kk in range(1, n)]
            report["conditions"].extend(r.as_dict() for r in reps)
            if n >= 3:
                report["identities"]["constant_relation"] = verify_constant_relation(S, M)
                for kk in range(1, n):
                    report["identities"][f"kgauduchon_identity_k{kk}"] = verify_kgauduchon_identity(S, M, kk)
            continue
        if name in ("skt", "astheno") and n < 3:
            raise InputError(f"{name} needs n >= 3")
        rep: ConditionReport = {
            "balanced": lambda: is_balanced(S, M),
            "skt": lambda: is_skt(S, M),
            "astheno": lambda: is_astheno_kahler(S, M),
            "gauduchon": lambda: is_gauduchon(S, M),
            "kgauduchon": lambda: is_k_gauduchon(S, M, k),
        }[name]()
        report["conditions"].append(rep.as_dict())


def _load(path):
    try:
        m = parse_file(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except DSLError as exc:
        raise InputError(f"{path}:{exc}") from None
    return m


def _structure_info(S: StructureEquations) -> dict | None:
    if not S.is_valid:
        return None
    return {"abelian": is_abelian(S), "canonical_bundle_form_closed": canonical_form_closed(S)}


def cmd_validate(args) -> dict:
    m = _load(args.file)
    S = m.structure()
    report = _new_report("validate", m.name, m.n)
    report["validation"] = S.validate().as_dict()
    report["structure"] = _structure_info(S)
    return _finish(report)


def _metric(m, name):
    if name is None:
        raise InputError("--metric is required")
    try:
        return m.metric(name)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None


def cmd_check(args) -> dict:
    m = _load(args.file)
    S = m.structure()
    M = _metric(m, args.metric)
    report = _new_report("check", m.name, m.n)
    report["validation"] = S.validate().as_dict()
    if not S.is_valid:
        return _finish(report)
    report["structure"] = _structure_info(S)
    conds = parse_conditions(args.condition, m.n, args.k)
    run_conditions(S, M, conds, report)
    return _finish(report)


def cmd_constants(args) -> dict:
    m = _load(args.file)
    S = m.structure()
    M = _metric(m, args.metric)
    report = _new_report("constants", m.name, m.n)
    report["validation"] = S.validate().as_dict()
    if not S.is_valid:
        return _finish(report)
    if m.n < 3:
        raise InputError("constants need n >= 3")
    report["constants"] = _constants_table(S, M)
    report["identities"]["constant_relation"] = verify_constant_relation(S, M)
    return _finish(report)


def _parse_rational(text: str, what: str) -> Fraction:
    try:
        z = parse_gaussian(text)
    except ScalarError as exc:
        raise InputError(f"bad value for {what}: {exc}") from None
    if not z.is_real():
        raise InputError(f"{what} must be real, got {z}")
    return z.re


def _parse_gauss(text: str, what: str):
    try:
        return parse_gaussian(text)
    except ScalarError as exc:
        raise InputError(f"bad value for {what}: {exc}") from None


def _family_checks(S, M, report):
    conds = [("astheno", None)] + [("kgauduchon", k) for k in range(1, S.n)]
    run_conditions(S, M, conds, report)
    report["constants"] = _constants_table(S, M)
    report["identities"]["constant_relation"] = verify_constant_relation(S, M)


def cmd_family(args) -> dict:
    if args.kind == "heisenberg":
        n = args.n
        if n is None or args.a is None:
            raise InputError("family heisenberg needs --n and --a")
        a = [_parse_rational(x, "--a") for x in args.a.split(",") if x.strip()]
        if len(a) == n - 2:
            a.append(families.solve_balanced(a).re)
        if len(a) != n - 1:
            raise InputError(f"--a needs {n - 2} or {n - 1} values, got {len(a)}")
        S = families.build_heisenberg(n, a)
        report = _new_report("family", "heisenberg", n)
        report["validation"] = S.validate().as_dict()
        report["structure"] = _structure_info(S)
        bal = is_balanced(S, HermitianMetric.identity(n))
        report["conditions"].append(bal.as_dict())
        M = families.solve_astheno_diagonal(n, a)
        b = [M.entry(j, j).constant_value().re for j in range(1, n + 1)]
        report["family"] = {
            "kind": "heisenberg",
            "lie_algebra": families.HEISENBERG_LABEL,
            "a": [str(x) for x in a],
            "metric_diagonal": [str(x) for x in b],
            "skt_obstruction": str(families.skt_obstruction_heisenberg(n, a, M)),
        }
        _family_checks(S, M, report)
        return _finish(report)

    A = _parse_gauss(args.A, "--A")
    B = _parse_gauss(args.B, "--B")
    C = _parse_gauss(args.C, "--C")
    alpha = _parse_rational(args.alpha, "--alpha")
    beta = _parse_rational(args.beta, "--beta")
    S = families.build_abc_family(A, B, C)
    report = _new_report("family", "abc", 4)
    report["validation"] = S.validate().as_dict()
    report["structure"] = _structure_info(S)
    bal = is_balanced(S, HermitianMetric.identity(4))
    report["conditions"].append(bal.as_dict())
    M = families.solve_astheno_abc(A, B, C, alpha, beta)
    gamma = M.entry(3, 3).constant_value().re
    report["family"] = {
        "kind": "remark",
        "A": str(A),
        "B": str(B),
        "C": str(C),
        "alpha": str(alpha),
        "beta": str(beta),
        "gamma": str(gamma),
        "metric_diagonal": [str(alpha), str(beta), str(gamma), "1"],
    }
    _family_checks(S, M, report)
    return _finish(report)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def render_text(report: dict) -> str:
    lines = []
    head = report["command"]
    if report.get("manifold"):
        head += f" {report['manifold']}"
    if report.get("n") is not None:
        head += f" (n={report['n']})"
    lines.append(head)
    v = report.get("validation")
    if v is not None:
        lines.append(
            f"  validation: d^2=0 {_yn(v['d_squared_zero'])}, integrable {_yn(v['integrable'])}, "
            f"nilpotent {_yn(v['nilpotent'])}"
        )
        for f in v["failures"]:
            lines.append(f"    ! {f}")
    s = report.get("structure")
    if s:
        lines.append(f"  abelian: {_yn(s['abelian'])}; d(w1^...^wn) = 0: {_yn(s['canonical_bundle_form_closed'])}")
    fam = report.get("family")
    if fam:
        lines.append(f"  family {fam['kind']}: metric diag({', '.join(fam['metric_diagonal'])})")
    for c in report["conditions"]:
        label = c["condition"] + (f" k={c['k']}" if "k" in c else "")
        state = {True: "holds", False: "fails", None: "holds iff constraints vanish"}[c["holds"]]
        lines.append(f"  {label}: {state}")
        if c["holds"] is False:
            lines.append(f"    residual: {c['certificate']}")
        for con in c["constraints"]:
            lines.append(f"    constraint: {con} = 0")
    if report.get("constants"):
        lines.append("  constants C_{F,k}:")
        for k, v in sorted(report["constants"].items(), key=lambda kv: int(kv[0])):
            val = v["numerator"] if v["denominator"] == "1" else f"{v['numerator']}/{v['denominator']}"
            lines.append(f"    k={k}: {val}")
    for name, val in sorted(report["identities"].items()):
        lines.append(f"  {name}: {_yn(val)}")
    lines.append("  result: " + ("all checks hold" if report["ok"] else "some check fails"))
    return "\n".join(lines)


def _yn(b) -> str:
    return "yes" if b else "no"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nilherm", description="Exact Hermitian-metric checks on complex nilmanifolds.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", choices=("text", "json"), default="text")

    sp = sub.add_parser("validate", help="validate structure equations")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("check", help="check metric conditions")
    sp.add_argument("file")
    sp.add_argument("--metric")
    sp.add_argument("--condition", default="all")
    sp.add_argument("--k", type=int)
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("constants", help="generalized Gauduchon constants")
    sp.add_argument("file")
    sp.add_argument("--metric")
    common(sp)
    sp.set_defaults(func=cmd_constants)

    sp = sub.add_parser("family", help="build and solve a built-in family")
    sp.add_argument("kind", choices=("heisenberg", "remark"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--a")
    sp.add_argument("--A", default="0")
    sp.add_argument("--B", default="0")
    sp.add_argument("--C", default="0")
    sp.add_argument("--alpha", default="1")
    sp.add_argument("--beta", default="1")
    common(sp)
    sp.set_defaults(func=cmd_family)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except (
        InputError,
        families.FamilyError,
        MetricError,
        DegenerateMetricError,
        StructureError,
        ScalarError,
        DSLError,
    ) as exc:
        msg = str(exc)
        if args.output == "json":
            print(json.dumps({"command": args.command, "error": msg, "ok": False}, indent=2, sort_keys=True))
        print(f"nilherm: error: {msg}", file=sys.stderr)
        return 2
    print(render_json(report) if args.output == "json" else render_text(report))
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
