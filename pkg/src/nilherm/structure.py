"""Structure equations d w^j of a nilpotent Lie algebra with complex structure."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .exterior import Form, FormError, bidegree_component, conjugate_form, gen_bit
from .kernels import blade_sign
from .scalars import EMPTY_SPACE, ParamSpace


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class ValidationReport:
    d_squared_zero: bool
    integrable: bool
    nilpotent: bool
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.d_squared_zero and self.integrable and self.nilpotent

    def as_dict(self) -> dict:
        return {
            "d_squared_zero": self.d_squared_zero,
            "integrable": self.integrable,
            "nilpotent": self.nilpotent,
            "ok": self.ok,
            "failures": list(self.failures),
        }


class StructureEquations:
    """Differentials of the (1,0)-coframe w^1..w^n.

    Only ``d w^j`` is stored; ``d cw^j`` is its conjugate.  ``d``, ``partial``
    and ``partial_bar`` are the antiderivations determined by these.
    """

    def __init__(self, n: int, differentials: Mapping[int, Form] | Sequence[Form], space: ParamSpace | None = None):
        if isinstance(differentials, Mapping):
            diffs = dict(differentials)
        else:
            diffs = {j + 1: f for j, f in enumerate(differentials)}
        for j in diffs:
            if not 1 <= j <= n:
                raise StructureError(f"differential declared for w{j} but n={n}")
        if space is None:
            space = next((f.space for f in diffs.values() if f.space.symbols), EMPTY_SPACE)
        self.n = n
        self.space = space
        self.diffs: dict[int, Form] = {}
        for j in range(1, n + 1):
            f = diffs.get(j, Form.zero(n, space))
            if f.n != n:
                raise StructureError(f"d w{j} lives in dimension {f.n}, expected {n}")
            if f.terms and f.degrees() != {2}:
                raise StructureError(f"d w{j} must be a 2-form")
            self.diffs[j] = f if f.space == space else f.promote(space)

        # per-generator differential and its bidegree-raising parts, keyed by bit
        self._gen_d: dict[int, Form] = {}
        self._gen_del: dict[int, Form] = {}
        self._gen_delbar: dict[int, Form] = {}
        for j, f in self.diffs.items():
            fb = conjugate_form(f)
            for bit, df, (p, q) in ((gen_bit(j), f, (1, 0)), (gen_bit(j, True), fb, (0, 1))):
                self._gen_d[bit] = df
                self._gen_del[bit] = bidegree_component(df, p + 1, q)
                self._gen_delbar[bit] = bidegree_component(df, p, q + 1)
        self._caches: dict[str, dict[int, dict]] = {"d": {}, "del": {}, "delbar": {}}
        self._report: ValidationReport | None = None

    def __repr__(self):
        body = "; ".join(f"d w{j} = {f}" for j, f in sorted(self.diffs.items()))
        return f"StructureEquations(n={self.n}: {body})"

    def __eq__(self, other):
        if not isinstance(other, StructureEquations):
            return NotImplemented
        return self.n == other.n and all(self.diffs[j] == other.diffs[j] for j in self.diffs)

    __hash__ = None

    def dw(self, j: int, barred: bool = False) -> Form:
        return self._gen_d[gen_bit(j, barred)]

    # antiderivations ------------------------------------------------------
    def _blade_image(self, mask: int, table: dict[int, Form], cache: dict[int, dict]) -> dict:
        hit = cache.get(mask)
        if hit is not None:
            return hit
        acc: dict = {}
        pos = 0
        rest_bits = mask
        while rest_bits:
            low = rest_bits & -rest_bits
            rest_bits ^= low
            rest = mask ^ low
            image = table.get(low.bit_length() - 1)
            if image is not None:
                parity = -1 if pos & 1 else 1
                for gm, gc in image.terms.items():
                    s = blade_sign(gm, rest)
                    if not s:
                        continue
                    m = gm | rest
                    v = gc if s * parity > 0 else -gc
                    prev = acc.get(m)
                    acc[m] = v if prev is None else prev + v
            pos += 1
        acc = {m: c for m, c in acc.items() if c}
        cache[mask] = acc
        return acc

    def _apply(self, f: Form, which: str) -> Form:
        if f.n != self.n:
            raise FormError(f"form has n={f.n}, structure has n={self.n}")
        table = {"d": self._gen_d, "del": self._gen_del, "delbar": self._gen_delbar}[which]
        space = f._space_with(Form.zero(self.n, self.space))
        cache = self._caches[which]
        out: dict = {}
        for mask, c in f.terms.items():
            for m, v in self._blade_image(mask, table, cache).items():
                p = c * v
                prev = out.get(m)
                out[m] = p if prev is None else prev + p
        out = {m: (c if c.space == space else c.promote(space)) for m, c in out.items() if c}
        return Form._make(self.n, out, space)

    def d(self, f: Form) -> Form:
        return self._apply(f, "d")

    def partial(self, f: Form) -> Form:
        self._require_valid()
        return self._apply(f, "del")

    def partial_bar(self, f: Form) -> Form:
        self._require_valid()
        return self._apply(f, "delbar")

    # validation -----------------------------------------------------------
    def validate(self) -> ValidationReport:
        if self._report is None:
            self._report = _validate(self)
        return self._report

    @property
    def is_valid(self) -> bool:
        return self.validate().ok

    def _require_valid(self):
        rep = self.validate()
        if not rep.ok:
            raise StructureError("structure equations failed validation: " + "; ".join(rep.failures))


def _validate(S: StructureEquations) -> ValidationReport:
    failures = []
    d2 = True
    integrable = True
    for j in range(1, S.n + 1):
        for barred in (False, True):
            dd = S.d(S.dw(j, barred))
            if dd:
                d2 = False
                failures.append(f"d(d {'cw' if barred else 'w'}{j}) = {dd}")
        bad = bidegree_component(S.diffs[j], 0, 2)
        if bad:
            integrable = False
            failures.append(f"d w{j} has (0,2)-part {bad}")

    # nilpotent filtration: accept w^j once d w^j only involves accepted indices
    accepted: set[int] = set()
    changed = True
    while changed:
        changed = False
        for j in range(1, S.n + 1):
            if j in accepted:
                continue
            used = set()
            for mask in S.diffs[j].terms:
                used |= _indices(mask)
            if used <= accepted:
                accepted.add(j)
                changed = True
    nilpotent = len(accepted) == S.n
    if not nilpotent:
        missing = sorted(set(range(1, S.n + 1)) - accepted)
        failures.append(f"no nilpotent filtration reaches w{missing}")
    return ValidationReport(d2, integrable, nilpotent, tuple(failures))


def _indices(mask: int) -> set[int]:
    out = set()
    pos = 0
    while mask:
        if mask & 3:
            out.add(pos + 1)
        mask >>= 2
        pos += 1
    return out


# ---------------------------------------------------------------------------
# functional interface
# ---------------------------------------------------------------------------


def differential(S: StructureEquations, f: Form) -> Form:
    return S.d(f)


def partial(S: StructureEquations, f: Form) -> Form:
    """The (p+1, q) part of d."""
    return S.partial(f)


def partial_bar(S: StructureEquations, f: Form) -> Form:
    """The (p, q+1) part of d."""
    return S.partial_bar(f)


def validate(S: StructureEquations) -> ValidationReport:
    return S.validate()


def is_abelian(S: StructureEquations) -> bool:
    """True when every d w^j is of pure type (1,1)."""
    S._require_valid()
    return all(not bidegree_component(S.diffs[j], 2, 0) for j in S.diffs)


def holomorphic_volume(n: int, space: ParamSpace | None = None) -> Form:
    """Omega = w^1 ^ ... ^ w^n."""
    return Form.monomial(n, [(j, False) for j in range(1, n + 1)], 1, space)


def canonical_form_closed(S: StructureEquations) -> bool:
    """Whether d(w^1 ^ ... ^ w^n) = 0.

    Always true on a nilpotent structure, since d w^j never involves w^j;
    only d^2 = 0 and integrability are required so that non-nilpotent
    examples can be tested too.
    """
    rep = S.validate()
    if not (rep.d_squared_zero and rep.integrable):
        raise StructureError("structure equations failed validation: " + "; ".join(rep.failures))
    return not S.d(holomorphic_volume(S.n, S.space))


def from_terms(n: int, spec: Mapping[int, Sequence[tuple[object, Sequence[tuple[int, bool]]]]], space: ParamSpace | None = None) -> StructureEquations:
    """Build structure equations from ``{j: [(coeff, [(index, barred), ...]), ...]}``."""
    diffs = {}
    for j, terms in spec.items():
        f = Form.zero(n, space or EMPTY_SPACE)
        for coeff, gens in terms:
            f = f + Form.monomial(n, gens, coeff, space)
        diffs[j] = f
    return StructureEquations(n, diffs, space)


__all__ = [
    "StructureEquations",
    "StructureError",
    "ValidationReport",
    "canonical_form_closed",
    "differential",
    "from_terms",
    "holomorphic_volume",
    "is_abelian",
    "partial",
    "partial_bar",
    "validate",
]
