"""Brute-force reference implementation used to cross-check the engine.

Nothing here touches the bitmask machinery of :mod:`nilherm.exterior`.
Forms are dictionaries from *words* (tuples of ``(index, barred)`` pairs)
to numbers; a word is put in canonical order by bubble-sorting it and
counting transpositions.  Differentials are computed by the literal
Leibniz expansion ``sum (-1)^i g_1..g_{i-1} dg_i g_{i+1}..g_k``.
All coefficients must already be numeric.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GaussianRational, PolyScalar

Word = tuple  # tuple[tuple[int, bool], ...]


class OracleError(ValueError):
    pass


def _key(g):
    index, barred = g
    return (index, 1 if barred else 0)


def normalize(word) -> tuple[Word, int]:
    """Sort a word, returning (sorted word, sign); sign 0 on a repeated generator."""
    w = list(word)
    sign = 1
    for i in range(len(w)):
        for j in range(len(w) - 1 - i):
            a, b = _key(w[j]), _key(w[j + 1])
            if a == b:
                return (), 0
            if a > b:
                w[j], w[j + 1] = w[j + 1], w[j]
                sign = -sign
    for j in range(len(w) - 1):
        if _key(w[j]) == _key(w[j + 1]):
            return (), 0
    return tuple(w), sign


class DenseForm:
    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms: dict[Word, GaussianRational] = {}
        for word, c in (terms or {}).items():
            self.add(word, c)

    def add(self, word, c):
        for index, _ in word:
            if not 1 <= index <= self.n:
                raise OracleError(f"generator index {index} outside 1..{self.n}")
        w, s = normalize(word)
        if not s:
            return
        c = GaussianRational.coerce(c) * s
        total = self.terms.get(w, GaussianRational(0)) + c
        if total:
            self.terms[w] = total
        else:
            self.terms.pop(w, None)

    def __add__(self, other):
        out = DenseForm(self.n, self.terms)
        for w, c in other.terms.items():
            out.add(w, c)
        return out

    def scale(self, c):
        c = GaussianRational.coerce(c)
        return DenseForm(self.n, {w: v * c for w, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, DenseForm) and self.n == other.n and self.terms == other.terms

    def __repr__(self):
        return f"DenseForm(n={self.n}, {self.terms})"


def from_form(f) -> DenseForm:
    """Convert a parameter-free engine Form by decoding its bitmasks."""
    out = DenseForm(f.n)
    for mask, c in f.terms.items():
        if not isinstance(c, PolyScalar) or not c.is_constant():
            raise OracleError("oracle needs numeric coefficients; substitute parameters first")
        word = []
        for bit in range(2 * f.n):
            if (mask >> bit) & 1:
                word.append((bit // 2 + 1, bit % 2 == 1))
        out.add(tuple(word), c.constant_value())
    return out


def oracle_wedge(f: DenseForm, g: DenseForm) -> DenseForm:
    if f.n != g.n:
        raise OracleError("dimension mismatch")
    out = DenseForm(f.n)
    for wa, ca in f.terms.items():
        for wb, cb in g.terms.items():
            out.add(wa + wb, ca * cb)
    return out


def oracle_power(f: DenseForm, k: int) -> DenseForm:
    out = DenseForm(f.n, {(): 1})
    for _ in range(k):
        out = oracle_wedge(out, f)
    return out


def oracle_conjugate(f: DenseForm) -> DenseForm:
    out = DenseForm(f.n)
    for w, c in f.terms.items():
        out.add(tuple((j, not b) for j, b in w), c.conjugate())
    return out


class OracleStructure:
    """Generator differentials as dense forms, with conjugates computed here."""

    def __init__(self, n: int, diffs: dict[int, DenseForm]):
        self.n = n
        self.gen_d = {}
        for j in range(1, n + 1):
            dj = diffs.get(j, DenseForm(n))
            self.gen_d[(j, False)] = dj
            self.gen_d[(j, True)] = oracle_conjugate(dj)

    @classmethod
    def from_structure(cls, S, assignment=None) -> "OracleStructure":
        diffs = {}
        for j, f in S.diffs.items():
            diffs[j] = from_form(f.substitute(assignment or {}))
        return cls(S.n, diffs)


def oracle_d(S: OracleStructure, f: DenseForm) -> DenseForm:
    out = DenseForm(f.n)
    for w, c in f.terms.items():
        for i, g in enumerate(w):
            sign = -1 if i % 2 else 1
            for dw, dc in S.gen_d[g].terms.items():
                out.add(w[:i] + dw + w[i + 1 :], c * dc * sign)
    return out


def _bidegree(word):
    q = sum(1 for _, b in word if b)
    return len(word) - q, q


def oracle_partial(S: OracleStructure, f: DenseForm, bar: bool = False) -> DenseForm:
    """Bidegree-(p+1,q) (or (p,q+1) with ``bar``) part of d, term by term."""
    out = DenseForm(f.n)
    for w, c in f.terms.items():
        p, q = _bidegree(w)
        target = (p, q + 1) if bar else (p + 1, q)
        for w2, c2 in oracle_d(S, DenseForm(f.n, {w: c})).terms.items():
            if _bidegree(w2) == target:
                out.add(w2, c2)
    return out


def volume_word(n: int) -> Word:
    return tuple(g for j in range(1, n + 1) for g in ((j, False), (j, True)))


def oracle_top(f: DenseForm) -> GaussianRational:
    return f.terms.get(volume_word(f.n), GaussianRational(0))


def oracle_fundamental_form(h) -> DenseForm:
    """(i/2) sum h[j][k] w^j cw^k from a numeric matrix (0-based lists)."""
    n = len(h)
    half_i = GaussianRational(0, Fraction(1, 2))
    out = DenseForm(n)
    for j in range(n):
        for k in range(n):
            if h[j][k]:
                out.add(((j + 1, False), (k + 1, True)), GaussianRational.coerce(h[j][k]) * half_i)
    return out


def oracle_gauduchon_constant(S: OracleStructure, h, k: int) -> GaussianRational:
    n = S.n
    F = oracle_fundamental_form(h)
    ddbar = oracle_partial(S, oracle_partial(S, oracle_power(F, k), bar=True))
    num = oracle_top(oracle_wedge(ddbar, oracle_power(F, n - k - 1)))
    den = oracle_top(oracle_power(F, n))
    if not den:
        raise OracleError("degenerate metric")
    return num * GaussianRational(0, Fraction(1, 2)) / den
