"""Text format for structure equations and metrics.

Example::

    # Heisenberg-type, n = 4
    name heis4
    dim 4
    param a1 a2 a3 : real
    d w1 = 0
    d w2 = 0
    d w3 = 0
    d w4 = a1*w1^cw1 + a2*w2^cw2 + a3*w3^cw3
    metric Ftilde = diag(1, 1, 1, 1)
    metric G = herm(1 1 2, 1 2 (1/2)i, 2 2 1, 3 3 1, 4 4 1)

Grammar::

    file   := ["name" IDENT] "dim" INT decl*
    decl   := param | diff | metric
    param  := "param" IDENT+ ":" ("real" | "complex")
    diff   := "d" GEN "=" ("0" | sum)
    sum    := ["+"|"-"] term (("+"|"-") term)*
    term   := (factor "*")* GEN ("^" GEN)*
    metric := "metric" IDENT "=" ( "diag" "(" expr {"," expr} ")"
                                  | "herm" "(" INT INT expr {"," INT INT expr} ")" )
    expr   := ["+"|"-"] prod (("+"|"-") prod)*
    prod   := factor ("*" factor)*
    factor := atom ["^" INT]
    atom   := (INT ["/" INT] | "i" | IDENT | "conj" "(" expr ")" | "(" expr ")") ["i"]
    GEN    := "w" INT | "cw" INT

A complex parameter ``A`` has conjugate written ``conj(A)``.  ``herm``
lists entries with j <= k only; the rest follow by Hermitian symmetry.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .exterior import MAX_BITS, Form, format_form
from .hermitian import HermitianMetric, MetricError
from .scalars import (
    I,
    ParamSpace,
    ParamSymbol,
    PolyScalar,
    ScalarError,
    conjugate_name,
    format_poly,
)
from .structure import StructureEquations

KEYWORDS = {"name", "dim", "param", "d", "metric", "diag", "herm", "real", "complex", "conj", "i"}
MAX_EXPONENT = 64
MAX_DEPTH = 64
MAX_DIM = MAX_BITS // 2


class DSLError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # INT IDENT GEN KW PUNCT EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\f\v]+)|(?P<nl>\n)|(?P<comment>\#[^\n]*)"
    r"|(?P<gen>c?w\d+(?![A-Za-z0-9_]))|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[=+\-*/^(),:])"
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise DSLError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "gen":
            tokens.append(Token("GEN", value, line, col))
        elif kind == "int":
            tokens.append(Token("INT", value, line, col))
        elif kind == "ident":
            tokens.append(Token("KW" if value in KEYWORDS else "IDENT", value, line, col))
        elif kind == "punct":
            tokens.append(Token("PUNCT", value, line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


# ---------------------------------------------------------------------------
# abstract syntax
# ---------------------------------------------------------------------------


@dataclass
class MetricDecl:
    name: str
    kind: str  # "diag" | "herm"
    metric: HermitianMetric

    def __eq__(self, other):
        if not isinstance(other, MetricDecl):
            return NotImplemented
        return self.name == other.name and self.kind == other.kind and self.metric == other.metric


@dataclass
class ManifoldFile:
    name: str
    n: int
    params: tuple[tuple[tuple[str, ...], str], ...]
    space: ParamSpace
    diffs: dict[int, Form]
    metrics: dict[str, MetricDecl]
    spans: dict = field(default_factory=dict, compare=False, repr=False)

    def __eq__(self, other):
        if not isinstance(other, ManifoldFile):
            return NotImplemented
        return (
            self.name == other.name
            and self.n == other.n
            and self.params == other.params
            and self.diffs.keys() == other.diffs.keys()
            and all(self.diffs[j] == other.diffs[j] for j in self.diffs)
            and self.metrics == other.metrics
        )

    def structure(self) -> StructureEquations:
        return StructureEquations(self.n, self.diffs, self.space)

    def metric(self, name: str) -> HermitianMetric:
        try:
            return self.metrics[name].metric
        except KeyError:
            known = ", ".join(sorted(self.metrics)) or "none"
            raise KeyError(f"unknown metric {name!r} (declared: {known})") from None


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, default_name: str):
        self.toks = tokenize(text)
        self.pos = 0
        self.default_name = default_name
        self.symbols: list[ParamSymbol] = []
        self.space = ParamSpace()
        self.depth = 0
        self.n = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise DSLError(msg, tok.line, tok.col)

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "EOF":
            self.pos += 1
        return t

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def expect(self, kind: str, text: str | None = None) -> Token:
        if not self.at(kind, text):
            want = text if text is not None else kind
            got = self.tok.text or "end of input"
            self.error(f"expected {want!r}, found {got!r}")
        return self.advance()

    def expect_int(self) -> int:
        return int(self.expect("INT").text)

    # file
    def parse(self) -> ManifoldFile:
        spans: dict = {}
        name = self.default_name
        if self.at("KW", "name"):
            self.advance()
            name = self.expect("IDENT").text
        dim_tok = self.expect("KW", "dim")
        n = self.expect_int()
        if not 1 <= n <= MAX_DIM:
            self.error(f"dimension must be between 1 and {MAX_DIM}", dim_tok)
        self.n = n
        params: list[tuple[tuple[str, ...], str]] = []
        diffs: dict[int, Form] = {}
        metrics: dict[str, MetricDecl] = {}
        while not self.at("EOF"):
            t = self.tok
            if self.at("KW", "param"):
                names, kind = self.parse_param()
                params.append((names, kind))
            elif self.at("KW", "d"):
                j, form = self.parse_diff()
                if j in diffs:
                    self.error(f"duplicate differential for w{j}", t)
                diffs[j] = form
                spans[("d", j)] = (t.line, t.col)
            elif self.at("KW", "metric"):
                decl = self.parse_metric()
                if decl.name in metrics:
                    self.error(f"duplicate metric {decl.name!r}", t)
                metrics[decl.name] = decl
                spans[("metric", decl.name)] = (t.line, t.col)
            else:
                self.error(f"unexpected {t.text!r}; expected param, d or metric")
        missing = [j for j in range(1, n + 1) if j not in diffs]
        if missing:
            self.error(f"missing differential for w{missing[0]} (write 'd w{missing[0]} = 0')")
        diffs = {j: (f if f.space == self.space else f.promote(self.space)) for j, f in sorted(diffs.items())}
        for decl in metrics.values():
            if decl.metric.space != self.space:
                decl.metric = HermitianMetric(
                    [[x.promote(self.space) for x in row] for row in decl.metric.h], self.space
                )
        return ManifoldFile(name, n, tuple(params), self.space, diffs, metrics, spans)

    def parse_param(self):
        start = self.advance()
        names = []
        while self.at("IDENT"):
            names.append(self.advance())
        if not names:
            self.error("expected parameter names")
        self.expect("PUNCT", ":")
        if not (self.at("KW", "real") or self.at("KW", "complex")):
            self.error("expected 'real' or 'complex'")
        kind = self.advance().text
        declared = {s.name for s in self.symbols}
        for t in names:
            new = [t.text] if kind == "real" else [t.text, conjugate_name(t.text)]
            for nm in new:
                if nm in declared:
                    self.error(f"parameter {nm!r} already declared", t)
                declared.add(nm)
            if kind == "real":
                self.symbols.append(ParamSymbol(t.text, "real"))
            else:
                bar = conjugate_name(t.text)
                self.symbols.append(ParamSymbol(t.text, "complex", bar))
                self.symbols.append(ParamSymbol(bar, "complex", t.text, is_conjugate=True))
        try:
            self.space = ParamSpace(self.symbols)
        except ScalarError as exc:  # pragma: no cover - guarded above
            self.error(str(exc), start)
        return tuple(t.text for t in names), kind

    def parse_gen(self) -> tuple[int, bool]:
        t = self.expect("GEN")
        barred = t.text.startswith("c")
        j = int(t.text[2:] if barred else t.text[1:])
        if not 1 <= j <= self.n:
            self.error(f"generator index {j} out of range 1..{self.n}", t)
        return j, barred

    def parse_diff(self) -> tuple[int, Form]:
        self.advance()
        gt = self.tok
        j, barred = self.parse_gen()
        if barred:
            self.error("differentials are declared for w<j> only; d cw<j> is derived by conjugation", gt)
        self.expect("PUNCT", "=")
        if self.at("INT", "0") and self.toks[self.pos + 1].text not in ("*", "/", "^") and self.toks[self.pos + 1].text != "i":
            self.advance()
            return j, Form.zero(self.n, self.space)
        form = self.parse_sum()
        return j, form

    def parse_sum(self) -> Form:
        total = Form.zero(self.n, self.space)
        sign = 1
        if self.at("PUNCT", "+") or self.at("PUNCT", "-"):
            sign = -1 if self.advance().text == "-" else 1
        while True:
            term = self.parse_term()
            total = total + (term if sign > 0 else -term)
            if self.at("PUNCT", "+") or self.at("PUNCT", "-"):
                sign = -1 if self.advance().text == "-" else 1
                continue
            return total

    def parse_term(self) -> Form:
        coeff = PolyScalar.constant(1, self.space)
        while not self.at("GEN"):
            if self.at("EOF"):
                self.error("expected a generator such as w1 or cw1")
            coeff = coeff * self.parse_factor()
            self.expect("PUNCT", "*")
        start = self.tok
        gens = [self.parse_gen()]
        while self.at("PUNCT", "^"):
            self.advance()
            gens.append(self.parse_gen())
        if len(gens) != 2:
            self.error(f"structure equations are 2-forms; this term has degree {len(gens)}", start)
        return Form.monomial(self.n, gens, coeff, self.space)

    def parse_expr(self) -> PolyScalar:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            self.error("expression nested too deeply")
        sign = 1
        if self.at("PUNCT", "+") or self.at("PUNCT", "-"):
            sign = -1 if self.advance().text == "-" else 1
        total = PolyScalar(self.space)
        while True:
            p = self.parse_prod()
            total = total + (p if sign > 0 else -p)
            if self.at("PUNCT", "+") or self.at("PUNCT", "-"):
                sign = -1 if self.advance().text == "-" else 1
                continue
            self.depth -= 1
            return total

    def parse_prod(self) -> PolyScalar:
        p = self.parse_factor()
        while self.at("PUNCT", "*") and self.toks[self.pos + 1].kind != "GEN":
            self.advance()
            p = p * self.parse_factor()
        return p

    def parse_factor(self) -> PolyScalar:
        base = self.parse_atom()
        if self.at("PUNCT", "^") and self.toks[self.pos + 1].kind == "INT":
            self.advance()
            t = self.tok
            k = self.expect_int()
            if k > MAX_EXPONENT:
                self.error(f"exponent {k} exceeds {MAX_EXPONENT}", t)
            base = base**k
        return base

    def parse_atom(self) -> PolyScalar:
        t = self.tok
        if t.kind == "INT":
            self.advance()
            num = int(t.text)
            if self.at("PUNCT", "/"):
                self.advance()
                dt = self.tok
                den = self.expect_int()
                if den == 0:
                    self.error("zero denominator", dt)
                val = PolyScalar.constant(Fraction(num, den), self.space)
            else:
                val = PolyScalar.constant(num, self.space)
        elif t.kind == "KW" and t.text == "i":
            self.advance()
            return PolyScalar.constant(I, self.space)
        elif t.kind == "KW" and t.text == "conj":
            self.advance()
            self.expect("PUNCT", "(")
            val = self.parse_expr().conjugate()
            self.expect("PUNCT", ")")
        elif t.kind == "IDENT":
            self.advance()
            if t.text not in self.space or self.space.symbol(t.text).is_conjugate:
                self.error(f"undeclared parameter {t.text!r}", t)
            val = self.space.var(t.text)
        elif t.kind == "PUNCT" and t.text == "(":
            self.advance()
            val = self.parse_expr()
            self.expect("PUNCT", ")")
        else:
            self.error(f"expected a number, 'i', a parameter or '(', found {t.text or 'end of input'!r}")
        if self.at("KW", "i"):
            self.advance()
            val = val * I
        return val

    def parse_metric(self) -> MetricDecl:
        self.advance()
        name = self.expect("IDENT").text
        self.expect("PUNCT", "=")
        kt = self.tok
        if self.at("KW", "diag"):
            self.advance()
            self.expect("PUNCT", "(")
            vals = [self.parse_expr()]
            while self.at("PUNCT", ","):
                self.advance()
                vals.append(self.parse_expr())
            self.expect("PUNCT", ")")
            if len(vals) != self.n:
                self.error(f"diag needs {self.n} entries, got {len(vals)}", kt)
            for v in vals:
                if not v.is_real():
                    self.error(f"diagonal entry {v} is not real", kt)
            return MetricDecl(name, "diag", HermitianMetric.diagonal(vals, self.space))
        if self.at("KW", "herm"):
            self.advance()
            self.expect("PUNCT", "(")
            entries = {}
            while True:
                et = self.tok
                j = self.expect_int()
                k = self.expect_int()
                v = self.parse_expr()
                if not (1 <= j <= k <= self.n):
                    self.error(f"herm entry ({j},{k}) must satisfy 1 <= j <= k <= {self.n}", et)
                if (j, k) in entries:
                    self.error(f"duplicate herm entry ({j},{k})", et)
                if j == k and not v.is_real():
                    self.error(f"diagonal entry ({j},{j}) is not real", et)
                entries[(j, k)] = v
                if not self.at("PUNCT", ","):
                    break
                self.advance()
            self.expect("PUNCT", ")")
            try:
                metric = HermitianMetric.from_upper(self.n, entries, self.space)
            except MetricError as exc:  # pragma: no cover - entries are pre-checked
                self.error(str(exc), kt)
            return MetricDecl(name, "herm", metric)
        self.error("expected 'diag' or 'herm'")


def parse(text: str | bytes, name: str = "manifold") -> ManifoldFile:
    """Parse a manifold file; every failure is a :class:`DSLError` with a position."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            prefix = text[: exc.start]
            line = prefix.count(b"\n") + 1
            col = exc.start - (prefix.rfind(b"\n") + 1) + 1
            raise DSLError("invalid UTF-8", line, col) from None
    try:
        return _Parser(text, name).parse()
    except DSLError:
        raise
    except (ScalarError, MetricError, ValueError, RecursionError) as exc:
        raise DSLError(str(exc), 0, 0) from None


def parse_file(path) -> ManifoldFile:
    import pathlib

    p = pathlib.Path(path)
    return parse(p.read_bytes(), name=_safe_name(p.stem))


def _safe_name(stem: str) -> str:
    cleaned = re.sub(r"[^A-Za-z0-9_]", "_", stem) or "manifold"
    if cleaned[0].isdigit():
        cleaned = "m_" + cleaned
    if cleaned in KEYWORDS:
        cleaned = cleaned + "_"
    return cleaned


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------


def _scalar(p: PolyScalar) -> str:
    return format_poly(p)


def to_text(m: ManifoldFile) -> str:
    lines = [f"name {m.name}", f"dim {m.n}"]
    for names, kind in m.params:
        lines.append(f"param {' '.join(names)} : {kind}")
    for j in range(1, m.n + 1):
        f = m.diffs.get(j)
        lines.append(f"d w{j} = {format_form(f) if f else '0'}")
    for decl in m.metrics.values():
        M = decl.metric
        if decl.kind == "diag":
            body = ", ".join(_scalar(M.entry(j, j)) for j in range(1, M.n + 1))
            lines.append(f"metric {decl.name} = diag({body})")
        else:
            entries = [
                f"{j} {k} {_scalar(M.entry(j, k))}"
                for j in range(1, M.n + 1)
                for k in range(j, M.n + 1)
                if M.entry(j, k) or j == k
            ]
            lines.append(f"metric {decl.name} = herm({', '.join(entries)})")
    return "\n".join(lines) + "\n"


# ``print`` is the conventional name for the inverse of ``parse``
print_file = to_text


__all__ = ["DSLError", "ManifoldFile", "MetricDecl", "parse", "parse_file", "print_file", "to_text", "tokenize"]
