"""Exact coefficient arithmetic.

Three layers:

* :class:`GaussianRational` -- elements of Q(i) with arbitrary precision
  rational parts.
* :class:`PolyScalar` -- polynomials over Q(i) in a fixed, declared list of
  parameters (:class:`ParamSpace`).  Complex parameters come in conjugate
  pairs that are independent variables tied together only by
  :meth:`PolyScalar.conjugate`.
* :class:`RatScalar` -- quotients of two polynomials, compared by
  cross-multiplication and never reduced by a gcd.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union


class ScalarError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Rational)):
            return cls._raw(Fraction(value), Fraction(0))
        if isinstance(value, str):
            return parse_gaussian(value)
        if isinstance(value, PolyScalar):
            return value.constant_value()
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __sub__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def norm2(self) -> Fraction:
        """``|z|**2`` as a rational."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm2()
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except (TypeError, ScalarError):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # display --------------------------------------------------------------
    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        return format_gaussian(self)


ZERO = GaussianRational._raw(Fraction(0), Fraction(0))
ONE = GaussianRational._raw(Fraction(1), Fraction(0))
I = GaussianRational._raw(Fraction(0), Fraction(1))
HALF_I = GaussianRational._raw(Fraction(0), Fraction(1, 2))


def format_gaussian(z: GaussianRational) -> str:
    """Canonical literal: ``3``, ``-1/2``, ``i``, ``(1/2)i``, ``(2-3i)``."""
    re_, im = z.re, z.im
    if not im:
        return str(re_)
    if not re_:
        if im == 1:
            return "i"
        if im == -1:
            return "-i"
        if im.denominator == 1:
            return f"{im}i"
        if im < 0:
            return f"-({-im})i"
        return f"({im})i"
    mag = -im if im < 0 else im
    if mag == 1:
        ipart = "i"
    elif mag.denominator == 1:
        ipart = f"{mag}i"
    else:
        ipart = f"({mag})i"
    sign = "-" if im < 0 else "+"
    return f"({re_}{sign}{ipart})"


_LIT_TOKEN = re.compile(r"\s*(?:(\d+)(?:\s*/\s*(\d+))?|(i)|([-+()]))")


def parse_gaussian(text: str) -> GaussianRational:
    """Parse a standalone numeric literal such as ``1+i``, ``(2-3i)``, ``(1/2)i``.

    Accepts sums of rational and imaginary terms; a number directly followed
    by ``i`` (or a parenthesised group followed by ``i``) means multiplication
    by ``i``.
    """
    pos = 0
    tokens = []
    s = text.strip()
    while pos < len(s):
        m = _LIT_TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ScalarError(f"bad numeric literal {text!r} at column {pos + 1}")
        if m.group(1) is not None:
            num = int(m.group(1))
            den = int(m.group(2)) if m.group(2) is not None else 1
            if den == 0:
                raise ScalarError(f"zero denominator in {text!r}")
            tokens.append(("num", GaussianRational(Fraction(num, den))))
        elif m.group(3):
            tokens.append(("i", None))
        else:
            tokens.append((m.group(4), None))
        pos = m.end()
    if not tokens:
        raise ScalarError("empty numeric literal")

    idx = 0

    def expr():
        nonlocal idx
        total = ZERO
        first = True
        while True:
            sign = 1
            if idx < len(tokens) and tokens[idx][0] in "+-":
                sign = -1 if tokens[idx][0] == "-" else 1
                idx += 1
            elif not first:
                break
            total = total + atom() * sign
            first = False
            if idx >= len(tokens) or tokens[idx][0] not in "+-":
                break
        return total

    def atom():
        nonlocal idx
        if idx >= len(tokens):
            raise ScalarError(f"truncated literal {text!r}")
        kind, val = tokens[idx]
        if kind == "num":
            idx += 1
            out = val
        elif kind == "i":
            idx += 1
            return I
        elif kind == "(":
            idx += 1
            out = expr()
            if idx >= len(tokens) or tokens[idx][0] != ")":
                raise ScalarError(f"unbalanced parentheses in {text!r}")
            idx += 1
        else:
            raise ScalarError(f"unexpected {kind!r} in {text!r}")
        if idx < len(tokens) and tokens[idx][0] == "i":
            idx += 1
            out = out * I
        return out

    value = expr()
    if idx != len(tokens):
        raise ScalarError(f"trailing characters in literal {text!r}")
    return value


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParamSymbol:
    name: str
    kind: str = "real"  # "real" | "complex"
    partner: str | None = None
    is_conjugate: bool = False

    def __post_init__(self):
        if self.kind not in ("real", "complex"):
            raise ScalarError(f"unknown parameter kind {self.kind!r}")
        if self.kind == "complex" and self.partner is None:
            raise ScalarError(f"complex symbol {self.name!r} needs a partner")
        if self.kind == "real" and self.partner not in (None, self.name):
            raise ScalarError(f"real symbol {self.name!r} cannot have a partner")


def conjugate_name(name: str) -> str:
    return f"{name}bar"


class ParamSpace:
    """Ordered, immutable list of declared parameters.

    Declaring a complex parameter ``A`` also declares its partner ``Abar``.
    Exponent vectors of :class:`PolyScalar` are dense over ``symbols``.
    """

    __slots__ = ("symbols", "_index", "_conj_perm", "_hash")

    def __init__(self, symbols: Iterable[ParamSymbol] = ()):
        symbols = tuple(symbols)
        index = {}
        for pos, sym in enumerate(symbols):
            if sym.name in index:
                raise ScalarError(f"duplicate parameter {sym.name!r}")
            index[sym.name] = pos
        perm = []
        for sym in symbols:
            if sym.kind == "real":
                perm.append(index[sym.name])
            else:
                if sym.partner not in index:
                    raise ScalarError(f"partner of {sym.name!r} not declared")
                other = symbols[index[sym.partner]]
                if other.partner != sym.name or other.kind != "complex":
                    raise ScalarError(f"inconsistent partner links for {sym.name!r}")
                perm.append(index[sym.partner])
        self.symbols = symbols
        self._index = index
        self._conj_perm = tuple(perm)
        self._hash = hash(symbols)

    @classmethod
    def declare(cls, real: Iterable[str] = (), complex: Iterable[str] = ()) -> "ParamSpace":
        syms = [ParamSymbol(name, "real") for name in real]
        for name in complex:
            bar = conjugate_name(name)
            syms.append(ParamSymbol(name, "complex", bar))
            syms.append(ParamSymbol(bar, "complex", name, is_conjugate=True))
        return cls(syms)

    def extend(self, real: Iterable[str] = (), complex: Iterable[str] = ()) -> "ParamSpace":
        more = ParamSpace.declare(real, complex)
        return ParamSpace(self.symbols + more.symbols)

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, ParamSpace) and self.symbols == other.symbols

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"ParamSpace({[s.name for s in self.symbols]})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ScalarError(f"undeclared parameter {name!r}") from None

    def symbol(self, name: str) -> ParamSymbol:
        return self.symbols[self.index(name)]

    def var(self, name: str) -> "PolyScalar":
        exps = [0] * len(self.symbols)
        exps[self.index(name)] = 1
        return PolyScalar(self, {tuple(exps): ONE})

    def const(self, value) -> "PolyScalar":
        return PolyScalar.constant(value, self)

    @property
    def zero_exps(self) -> tuple:
        return (0,) * len(self.symbols)


EMPTY_SPACE = ParamSpace()


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

Number = Union[int, Fraction, GaussianRational]


def _unify(a: "PolyScalar", b: "PolyScalar"):
    if a.space is b.space or a.space == b.space:
        return a, b
    if not a.space.symbols and a.is_constant():
        return a.promote(b.space), b
    if not b.space.symbols and b.is_constant():
        return a, b.promote(a.space)
    raise ScalarError(f"parameter spaces differ: {a.space!r} vs {b.space!r}")


class PolyScalar:
    """Sparse polynomial over Q(i) with dense exponent vectors.

    ``terms`` maps exponent tuples (one entry per symbol of ``space``) to
    non-zero :class:`GaussianRational` coefficients.
    """

    __slots__ = ("space", "terms")

    def __init__(self, space: ParamSpace = EMPTY_SPACE, terms: Mapping[tuple, GaussianRational] | None = None):
        self.space = space
        if terms:
            self.terms = {e: c for e, c in terms.items() if c}
        else:
            self.terms = {}

    @classmethod
    def constant(cls, value, space: ParamSpace = EMPTY_SPACE) -> "PolyScalar":
        if isinstance(value, PolyScalar):
            return value.promote(space) if value.space != space else value
        c = GaussianRational.coerce(value)
        if not c:
            return cls(space)
        return cls(space, {space.zero_exps: c})

    @classmethod
    def coerce(cls, value, space: ParamSpace | None = None) -> "PolyScalar":
        if isinstance(value, PolyScalar):
            if space is not None and value.space != space:
                return value.promote(space)
            return value
        return cls.constant(value, space if space is not None else EMPTY_SPACE)

    def promote(self, space: ParamSpace) -> "PolyScalar":
        """Re-express a polynomial in a larger space containing its symbols."""
        if space == self.space:
            return self
        mapping = [space.index(s.name) for s in self.space.symbols]
        for s in self.space.symbols:
            if space.symbol(s.name).kind != s.kind:
                raise ScalarError(f"symbol {s.name!r} changes kind")
        zero = [0] * len(space)
        out = {}
        for e, c in self.terms.items():
            ne = list(zero)
            for pos, k in zip(mapping, e):
                ne[pos] = k
            out[tuple(ne)] = c
        return PolyScalar(space, out)

    # structure ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        if not self.terms:
            return True
        if len(self.terms) > 1:
            return False
        (e,) = self.terms
        return not any(e)

    def constant_value(self) -> GaussianRational:
        if not self.terms:
            return ZERO
        if not self.is_constant():
            raise ScalarError(f"polynomial {self} is not constant")
        return next(iter(self.terms.values()))

    def degree_in(self, name: str) -> int:
        pos = self.space.index(name)
        return max((e[pos] for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def free_symbols(self) -> set[str]:
        used = set()
        for e in self.terms:
            for pos, k in enumerate(e):
                if k:
                    used.add(self.space.symbols[pos].name)
        return used

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, PolyScalar):
            try:
                other = PolyScalar.constant(other, self.space)
            except TypeError:
                return NotImplemented
        a, b = _unify(self, other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                s = v + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        res = PolyScalar.__new__(PolyScalar)
        res.space = a.space
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = PolyScalar.__new__(PolyScalar)
        res.space = self.space
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if not isinstance(other, PolyScalar):
            try:
                other = PolyScalar.constant(other, self.space)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PolyScalar):
            try:
                c = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
            return self.scale(c)
        a, b = _unify(self, other)
        if not a.terms or not b.terms:
            return PolyScalar(a.space)
        if len(b.terms) == 1 and b.is_constant():
            return a.scale(next(iter(b.terms.values())))
        if len(a.terms) == 1 and a.is_constant():
            return b.scale(next(iter(a.terms.values())))
        out: dict = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        res = PolyScalar.__new__(PolyScalar)
        res.space = a.space
        res.terms = {e: c for e, c in out.items() if c}
        return res

    __rmul__ = __mul__

    def scale(self, c) -> "PolyScalar":
        c = GaussianRational.coerce(c)
        res = PolyScalar.__new__(PolyScalar)
        res.space = self.space
        if not c:
            res.terms = {}
        elif c == ONE:
            res.terms = self.terms
        else:
            res.terms = {e: v * c for e, v in self.terms.items()}
        return res

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = PolyScalar.constant(1, self.space)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> "PolyScalar":
        """Conjugate coefficients and swap each complex symbol with its partner."""
        perm = self.space._conj_perm
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(e)
            for pos, k in enumerate(e):
                if k:
                    ne[perm[pos]] = k
            out[tuple(ne)] = c.conjugate()
        res = PolyScalar.__new__(PolyScalar)
        res.space = self.space
        res.terms = out
        return res

    def is_real(self) -> bool:
        return self == self.conjugate()

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, PolyScalar):
            try:
                other = PolyScalar.constant(other, self.space)
            except (TypeError, ScalarError):
                return NotImplemented
        try:
            a, b = _unify(self, other)
        except ScalarError:
            return False
        return a.terms == b.terms

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash(frozenset(self.terms.items()))

    # evaluation -----------------------------------------------------------
    def _values(self, assignment: Mapping[str, object]):
        """Resolve an assignment to per-slot values (None where unassigned)."""
        values: list = [None] * len(self.space)
        lookup = {k: GaussianRational.coerce(v) for k, v in assignment.items()}
        for name in lookup:
            if name not in self.space:
                raise ScalarError(f"assignment to undeclared parameter {name!r}")
        for pos, sym in enumerate(self.space.symbols):
            if sym.name in lookup:
                val = lookup[sym.name]
                if sym.kind == "real" and not val.is_real():
                    raise ScalarError(f"complex value {val} assigned to real parameter {sym.name!r}")
                if sym.kind == "complex" and sym.partner in lookup:
                    if lookup[sym.partner] != val.conjugate():
                        raise ScalarError(f"{sym.name!r} and {sym.partner!r} must be assigned conjugate values")
                values[pos] = val
            elif sym.kind == "complex" and sym.partner in lookup:
                values[pos] = lookup[sym.partner].conjugate()
        return values

    def subs(self, assignment: Mapping[str, object]) -> "PolyScalar":
        """Partial substitution; unassigned symbols stay symbolic."""
        values = self._values(assignment)
        out = PolyScalar(self.space)
        for e, c in self.terms.items():
            coeff = c
            ne = list(e)
            for pos, k in enumerate(e):
                if k and values[pos] is not None:
                    coeff = coeff * values[pos] ** k
                    ne[pos] = 0
            if coeff:
                out = out + PolyScalar(self.space, {tuple(ne): coeff})
        return out

    def substitute(self, assignment: Mapping[str, object]) -> GaussianRational:
        """Evaluate at a complete numeric assignment."""
        values = self._values(assignment)
        total = ZERO
        for e, c in self.terms.items():
            term = c
            for pos, k in enumerate(e):
                if k:
                    v = values[pos]
                    if v is None:
                        raise ScalarError(f"missing value for parameter {self.space.symbols[pos].name!r}")
                    term = term * v ** k
            total = total + term
        return total

    # linear solving helpers ----------------------------------------------
    def coefficient_in(self, name: str, power: int) -> "PolyScalar":
        """Coefficient of ``name**power`` as a polynomial free of ``name``."""
        pos = self.space.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[pos] == power:
                ne = list(e)
                ne[pos] = 0
                out[tuple(ne)] = c
        return PolyScalar(self.space, out)

    def leading_term(self):
        """Largest monomial in graded-lex order, with its coefficient."""
        if not self.terms:
            return None, ZERO
        e = max(self.terms, key=lambda x: (sum(x), x))
        return e, self.terms[e]

    def monic(self) -> "PolyScalar":
        """Divide by the leading coefficient; used to normalise constraints."""
        _, c = self.leading_term()
        if not c:
            return self
        return self.scale(c.inverse())

    # display --------------------------------------------------------------
    def __repr__(self):
        return f"PolyScalar({self})"

    def __str__(self):
        return format_poly(self)


def _monomial_str(space: ParamSpace, e: tuple) -> str:
    parts = []
    for pos, k in enumerate(e):
        if not k:
            continue
        sym = space.symbols[pos]
        name = f"conj({sym.partner})" if sym.is_conjugate else sym.name
        parts.append(name if k == 1 else f"{name}^{k}")
    return "*".join(parts)


def _term_strings(p: PolyScalar):
    """Yield (negative, body) for each term in a deterministic order."""
    for e in sorted(p.terms, key=lambda x: (-sum(x), tuple(-k for k in x))):
        c = p.terms[e]
        mono = _monomial_str(p.space, e)
        neg = False
        if c.is_real() and c.re < 0:
            neg, c = True, -c
        elif not c.re and c.im < 0:
            neg, c = True, -c
        if not mono:
            body = format_gaussian(c)
        elif c == ONE:
            body = mono
        else:
            body = f"{format_gaussian(c)}*{mono}"
        yield neg, body


def format_poly(p: PolyScalar) -> str:
    if not p.terms:
        return "0"
    out = []
    for i, (neg, body) in enumerate(_term_strings(p)):
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RatScalar:
    """Quotient of polynomials, equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = PolyScalar.coerce(num)
        den = PolyScalar.coerce(den, num.space) if not isinstance(den, PolyScalar) else den
        num, den = _unify(num, den)
        if den.is_zero():
            raise ZeroDivisionError("RatScalar with zero denominator")
        # a constant denominator is folded into the numerator
        if den.is_constant() and den.constant_value() != ONE:
            num = num.scale(den.constant_value().inverse())
            den = PolyScalar.constant(1, num.space)
        self.num = num
        self.den = den

    @property
    def space(self):
        return self.num.space

    @classmethod
    def coerce(cls, value) -> "RatScalar":
        if isinstance(value, RatScalar):
            return value
        return cls(value)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def value(self) -> GaussianRational:
        """Exact value of a parameter-free quotient."""
        return self.num.constant_value() / self.den.constant_value()

    def __add__(self, other):
        other = RatScalar.coerce(other)
        return RatScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatScalar(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RatScalar.coerce(other))

    def __rsub__(self, other):
        return RatScalar.coerce(other) - self

    def __mul__(self, other):
        other = RatScalar.coerce(other)
        return RatScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatScalar.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero RatScalar")
        return RatScalar(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        try:
            other = RatScalar.coerce(other)
        except (TypeError, ScalarError):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def substitute(self, assignment) -> GaussianRational:
        den = self.den.substitute(assignment)
        if not den:
            raise ZeroDivisionError("denominator vanishes at this assignment")
        return self.num.substitute(assignment) / den

    def subs(self, assignment) -> "RatScalar":
        return RatScalar(self.num.subs(assignment), self.den.subs(assignment))

    def conjugate(self) -> "RatScalar":
        return RatScalar(self.num.conjugate(), self.den.conjugate())

    def as_pair(self) -> tuple[str, str]:
        """``(numerator, denominator)`` strings; integers when parameter-free and real."""
        if self.is_constant():
            v = self.value()
            if v.is_real():
                return str(v.re.numerator), str(v.re.denominator)
            return format_gaussian(v), "1"
        return str(self.num), str(self.den)

    def __repr__(self):
        return f"RatScalar({self})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def scalar_arith(a, b, op: str) -> PolyScalar:
    a = PolyScalar.coerce(a)
    b = PolyScalar.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ScalarError(f"unknown operation {op!r}")


def conjugate_scalar(a) -> PolyScalar:
    return PolyScalar.coerce(a).conjugate()


def substitute(a, assignment: Mapping[str, object]) -> GaussianRational:
    return PolyScalar.coerce(a).substitute(assignment)


def solve_linear(p: PolyScalar, x: str) -> RatScalar:
    """Root of ``p`` viewed as a polynomial of degree one in ``x``."""
    if isinstance(x, ParamSymbol):
        x = x.name
    deg = p.degree_in(x)
    if deg > 1:
        raise ScalarError(f"polynomial is not linear in {x!r}")
    lead = p.coefficient_in(x, 1)
    if lead.is_zero():
        raise ScalarError(f"coefficient of {x!r} vanishes identically")
    rest = p.coefficient_in(x, 0)
    return RatScalar(-rest, lead)
