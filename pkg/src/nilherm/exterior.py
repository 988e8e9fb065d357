"""Complex exterior algebra on w^1, cw^1, ..., w^n, cw^n.

Blades are bitmasks (see :mod:`nilherm.kernels`).  A :class:`Form` maps
blade masks to non-zero :class:`~nilherm.scalars.PolyScalar` coefficients
and may be inhomogeneous.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .kernels import MAX_BITS, blade_sign, wedge_table
from .scalars import EMPTY_SPACE, HALF_I, ParamSpace, PolyScalar, ScalarError

# pair-count above which the batched kernel beats the scalar loop
_TABLE_THRESHOLD = 48


class FormError(ValueError):
    pass


# ---------------------------------------------------------------------------
# generators and blades
# ---------------------------------------------------------------------------


def gen_bit(index: int, barred: bool = False) -> int:
    """Bit position of w^index (or its conjugate)."""
    if index < 1:
        raise FormError(f"generator index must be >= 1, got {index}")
    return 2 * (index - 1) + (1 if barred else 0)


def blade_mask(gens: Iterable[tuple[int, bool]]) -> tuple[int, int]:
    """Mask and reordering sign of an arbitrary word of generators.

    Returns ``(mask, sign)`` with ``sign == 0`` if a generator repeats.
    """
    mask = 0
    sign = 1
    for index, barred in gens:
        bit = 1 << gen_bit(index, barred)
        s = blade_sign(mask, bit)
        if not s:
            return 0, 0
        sign *= s
        mask |= bit
    return mask, sign


def blade_generators(mask: int) -> list[tuple[int, bool]]:
    out = []
    pos = 0
    while mask:
        if mask & 1:
            out.append((pos // 2 + 1, bool(pos & 1)))
        mask >>= 1
        pos += 1
    return out


def blade_bidegree(mask: int) -> tuple[int, int]:
    unbarred = (mask & 0x5555555555555555).bit_count()
    barred = (mask & 0xAAAAAAAAAAAAAAAA).bit_count()
    return unbarred, barred


def blade_max_index(mask: int) -> int:
    return (mask.bit_length() + 1) // 2


def volume_mask(n: int) -> int:
    return (1 << (2 * n)) - 1


def conjugate_mask(mask: int) -> tuple[int, int]:
    """Swap barred/unbarred generators; return the new mask and reordering sign."""
    even = mask & 0x5555555555555555
    odd = mask & 0xAAAAAAAAAAAAAAAA
    new = (even << 1) | (odd >> 1)
    # within each index pair the order only flips when both are present
    both = (even & (odd >> 1)).bit_count()
    return new, (-1 if both & 1 else 1)


def format_blade(mask: int) -> str:
    if not mask:
        return "1"
    return "^".join(("cw" if barred else "w") + str(j) for j, barred in blade_generators(mask))


# ---------------------------------------------------------------------------
# forms
# ---------------------------------------------------------------------------


class Form:
    """Finite sum of coefficient * blade over n complex generators."""

    __slots__ = ("n", "terms", "space")

    def __init__(self, n: int, terms: Mapping[int, object] | None = None, space: ParamSpace | None = None):
        if n < 1 or 2 * n > MAX_BITS:
            raise FormError(f"unsupported dimension n={n}")
        self.n = n
        coeffs = {m: PolyScalar.coerce(c) for m, c in (terms or {}).items()}
        if space is None:
            space = next((c.space for c in coeffs.values() if c.space.symbols), EMPTY_SPACE)
        limit = 1 << (2 * n)
        clean = {}
        for mask, c in coeffs.items():
            if mask < 0 or mask >= limit:
                raise FormError(f"blade {format_blade(mask)} exceeds dimension {n}")
            if c:
                clean[mask] = c if c.space == space else c.promote(space)
        self.terms = clean
        self.space = space

    @classmethod
    def _make(cls, n: int, terms: dict, space: ParamSpace) -> "Form":
        f = cls.__new__(cls)
        f.n = n
        f.terms = terms
        f.space = space
        return f

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, n: int, space: ParamSpace = EMPTY_SPACE) -> "Form":
        return cls._make(n, {}, space)

    @classmethod
    def scalar(cls, n: int, value=1, space: ParamSpace | None = None) -> "Form":
        return cls(n, {0: PolyScalar.coerce(value, space)}, space)

    @classmethod
    def generator(cls, n: int, index: int, barred: bool = False, space: ParamSpace | None = None) -> "Form":
        if index > n:
            raise FormError(f"generator index {index} exceeds n={n}")
        return cls(n, {1 << gen_bit(index, barred): 1}, space)

    @classmethod
    def monomial(cls, n: int, gens: Iterable[tuple[int, bool]], coeff=1, space: ParamSpace | None = None) -> "Form":
        gens = list(gens)
        for j, _ in gens:
            if j > n:
                raise FormError(f"generator index {j} exceeds n={n}")
        mask, sign = blade_mask(gens)
        if not sign:
            return cls.zero(n, space or EMPTY_SPACE)
        return cls(n, {mask: PolyScalar.coerce(coeff, space) * sign}, space)

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degrees(self) -> set[int]:
        return {m.bit_count() for m in self.terms}

    def degree(self) -> int:
        """Total degree of a homogeneous form (0 for the zero form)."""
        degs = self.degrees()
        if not degs:
            return 0
        if len(degs) > 1:
            raise FormError("form is not homogeneous")
        return degs.pop()

    def bidegrees(self) -> set[tuple[int, int]]:
        return {blade_bidegree(m) for m in self.terms}

    def coefficient(self, mask: int) -> PolyScalar:
        return self.terms.get(mask, PolyScalar(self.space))

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "Form"):
        if not isinstance(other, Form):
            raise TypeError(f"expected Form, got {type(other).__name__}")
        if other.n != self.n:
            raise FormError(f"ambient dimension mismatch: {self.n} vs {other.n}")

    def _space_with(self, other: "Form") -> ParamSpace:
        if self.space == other.space:
            return self.space
        if not self.space.symbols:
            return other.space
        if not other.space.symbols:
            return self.space
        raise ScalarError(f"parameter spaces differ: {self.space!r} vs {other.space!r}")

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        space = self._space_with(other)
        out = {m: c if c.space == space else c.promote(space) for m, c in self.terms.items()}
        for m, c in other.terms.items():
            if m in out:
                s = out[m] + c
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c if c.space == space else c.promote(space)
        return Form._make(self.n, out, space)

    def __neg__(self):
        return Form._make(self.n, {m: -c for m, c in self.terms.items()}, self.space)

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Form":
        if isinstance(c, PolyScalar):
            space = self._space_with(Form._make(self.n, {}, c.space))
            products = ((m, v * c) for m, v in self.terms.items())
        else:
            space = self.space
            products = ((m, v.scale(c)) for m, v in self.terms.items())
        out = {}
        for m, p in products:
            if p:
                out[m] = p if p.space == space else p.promote(space)
        return Form._make(self.n, out, space)

    def __mul__(self, c):
        if isinstance(c, Form):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __xor__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if other.n != self.n or self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    __hash__ = None

    # evaluation -----------------------------------------------------------
    def subs(self, assignment) -> "Form":
        out = {}
        for m, c in self.terms.items():
            v = c.subs(assignment)
            if v:
                out[m] = v
        return Form._make(self.n, out, self.space)

    def substitute(self, assignment) -> "Form":
        """Fully numeric form (coefficients in the empty parameter space)."""
        out = {}
        for m, c in self.terms.items():
            v = c.substitute(assignment)
            if v:
                out[m] = PolyScalar.constant(v)
        return Form._make(self.n, out, EMPTY_SPACE)

    def promote(self, space: ParamSpace) -> "Form":
        return Form._make(self.n, {m: c.promote(space) for m, c in self.terms.items()}, space)

    # display --------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (mc[0].bit_count(), _order_key(mc[0])))

    def __str__(self):
        return format_form(self)

    def __repr__(self):
        return f"Form(n={self.n}, {self})"


def _order_key(mask: int) -> tuple:
    return tuple(b for b in range(mask.bit_length()) if (mask >> b) & 1)


def format_form(f: Form) -> str:
    """Display in the shared surface syntax, e.g. ``(1/2)i*w1^cw1 - 2*w3^cw3``."""
    if not f.terms:
        return "0"
    pieces = []
    for k, (mask, c) in enumerate(f.sorted_terms()):
        blade = format_blade(mask)
        neg, body = _coeff_prefix(c)
        if mask == 0:
            text = body
        elif body == "1":
            text = blade
        else:
            text = f"{body}*{blade}"
        if k == 0:
            pieces.append(f"-{text}" if neg else text)
        else:
            pieces.append(f" - {text}" if neg else f" + {text}")
    return "".join(pieces)


def _coeff_prefix(c: PolyScalar) -> tuple[bool, str]:
    from .scalars import _term_strings

    items = list(_term_strings(c))
    if len(items) == 1:
        neg, body = items[0]
        if body.startswith("-"):
            return False, body
        return neg, body
    return False, f"({c})"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def wedge(f: Form, g: Form) -> Form:
    """Exterior product."""
    f._check(g)
    space = f._space_with(g)
    n = f.n
    if not f.terms or not g.terms:
        return Form.zero(n, space)
    out: dict = {}
    if len(f.terms) * len(g.terms) >= _TABLE_THRESHOLD:
        fm = list(f.terms)
        gm = list(g.terms)
        masks, signs = wedge_table(fm, gm, 2 * n)
        fc = [f.terms[m] for m in fm]
        gc = [g.terms[m] for m in gm]
        masks = masks.tolist()
        signs = signs.tolist()
        for i, ca in enumerate(fc):
            row_s = signs[i]
            row_m = masks[i]
            for j, cb in enumerate(gc):
                s = row_s[j]
                if not s:
                    continue
                p = ca * cb
                if s < 0:
                    p = -p
                m = row_m[j]
                prev = out.get(m)
                out[m] = p if prev is None else prev + p
    else:
        for ma, ca in f.terms.items():
            for mb, cb in g.terms.items():
                s = blade_sign(ma, mb)
                if not s:
                    continue
                p = ca * cb
                if s < 0:
                    p = -p
                m = ma | mb
                prev = out.get(m)
                out[m] = p if prev is None else prev + p
    out = {m: c for m, c in out.items() if c}
    if space.symbols:
        out = {m: (c if c.space == space else c.promote(space)) for m, c in out.items()}
    return Form._make(n, out, space)


def wedge_all(*forms: Form) -> Form:
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def power(f: Form, k: int) -> Form:
    """k-fold wedge power by repeated multiplication."""
    if k < 0:
        raise FormError("negative power")
    out = Form.scalar(f.n, 1, f.space)
    for _ in range(k):
        out = wedge(out, f)
    return out


def conjugate_form(f: Form) -> Form:
    out = {}
    for m, c in f.terms.items():
        nm, s = conjugate_mask(m)
        cc = c.conjugate()
        out[nm] = -cc if s < 0 else cc
    return Form._make(f.n, out, f.space)


def bidegree_component(f: Form, p: int, q: int) -> Form:
    out = {m: c for m, c in f.terms.items() if blade_bidegree(m) == (p, q)}
    return Form._make(f.n, out, f.space)


def degree_component(f: Form, k: int) -> Form:
    return Form._make(f.n, {m: c for m, c in f.terms.items() if m.bit_count() == k}, f.space)


def top_coefficient(f: Form) -> PolyScalar:
    """Coefficient of w1^cw1^...^wn^cwn."""
    return f.coefficient(volume_mask(f.n))


def pair(n: int, j: int, coeff=1, space: ParamSpace | None = None) -> Form:
    """``coeff * w^j ^ cw^j``."""
    return Form(n, {(1 << gen_bit(j)) | (1 << gen_bit(j, True)): PolyScalar.coerce(coeff, space)}, space)


def half_i() -> PolyScalar:
    return PolyScalar.constant(HALF_I)
