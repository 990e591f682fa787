"""Text formats: algebra files, equations, proof s-expressions, certificates.

All formats are line- or token-oriented UTF-8.  Emission is canonical
(single spaces, signature order, trailing newline) so that emit after
parse is idempotent and parse after emit is the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .core import FiniteAlgebra, Signature, UalgError, Violation, validate
from .closure import HspCertificate
from .terms import App, Equation, Substitution, Term, Var
from . import entail
from .free import FreeAlgebra


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    col_start: int
    col_end: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col_start}-{self.col_end}"


class ParseError(UalgError):
    def __init__(self, message: str, span: SourceSpan):
        self.span = span
        super().__init__(f"{span}: {message}")


class AlgebraValidationError(UalgError):
    """Raised when a parsed algebra fails its table invariants."""

    def __init__(self, failures: list[tuple[str, Violation]]):
        self.failures = failures
        detail = "; ".join(f"{name}: {v}" for name, v in failures)
        super().__init__(f"validation failed: {detail}")


_TOKEN_RE = re.compile(
    r"""
      (?P<ws>[ \t\r\n]+)
    | (?P<comment>[#;][^\n]*)
    | (?P<lparen>\() | (?P<rparen>\)) | (?P<comma>,) | (?P<equals>=)
    | (?P<var>\?[A-Za-z0-9_]+)
    | (?P<int>[0-9]+)
    | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


class _Tokenizer:
    """Shared scanner for terms, equations and proof s-expressions."""

    def __init__(self, text: str, file: str = "<string>", first_line: int = 1):
        self.tokens: list[Token] = []
        self.pos = 0
        line, col = first_line, 1
        i = 0
        while i < len(text):
            m = _TOKEN_RE.match(text, i)
            if m is None:
                span = SourceSpan(file, line, col, col)
                raise ParseError(f"unexpected character {text[i]!r}", span)
            kind = m.lastgroup
            chunk = m.group()
            if kind not in ("ws", "comment"):
                span = SourceSpan(file, line, col, col + len(chunk) - 1)
                self.tokens.append(Token(kind, chunk, span))
            newlines = chunk.count("\n")
            if newlines:
                line += newlines
                col = len(chunk) - chunk.rfind("\n")
            else:
                col += len(chunk)
            i = m.end()
        self.eof_span = SourceSpan(file, line, col, col)

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self, expect: str | None = None) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(
                f"unexpected end of input (wanted {expect or 'a token'})",
                self.eof_span,
            )
        if expect is not None and tok.kind != expect:
            raise ParseError(f"expected {expect}, found {tok.text!r}", tok.span)
        self.pos += 1
        return tok

    def expect_end(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"trailing input {tok.text!r}", tok.span)


def _parse_term(tz: _Tokenizer) -> Term:
    tok = tz.next()
    if tok.kind == "var":
        return Var(tok.text[1:])
    if tok.kind != "name":
        raise ParseError(f"expected a term, found {tok.text!r}", tok.span)
    nxt = tz.peek()
    if nxt is None or nxt.kind != "lparen":
        return App(tok.text)
    tz.next("lparen")
    if tz.peek() is not None and tz.peek().kind == "rparen":
        tz.next("rparen")
        return App(tok.text)
    children = [_parse_term(tz)]
    while True:
        sep = tz.next()
        if sep.kind == "rparen":
            return App(tok.text, tuple(children))
        if sep.kind != "comma":
            raise ParseError(f"expected ',' or ')', found {sep.text!r}", sep.span)
        children.append(_parse_term(tz))


def parse_term(text: str, file: str = "<string>", first_line: int = 1) -> Term:
    tz = _Tokenizer(text, file, first_line)
    t = _parse_term(tz)
    tz.expect_end()
    return t


def parse_equation(text: str, file: str = "<string>", first_line: int = 1) -> Equation:
    tz = _Tokenizer(text, file, first_line)
    lhs = _parse_term(tz)
    tz.next("equals")
    rhs = _parse_term(tz)
    tz.expect_end()
    return Equation(lhs, rhs)


def parse_equation_file(text: str, file: str = "<equations>") -> list[Equation]:
    """One `term = term` per line; '#' comments; blank lines ignored."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        out.append(parse_equation(line, file, lineno))
    return out


def _parse_proof(tz: _Tokenizer) -> entail.Proof:
    tz.next("lparen")
    head = tz.next("name")
    kind = head.text
    if kind == "hyp":
        index = tz.next("int")
        tz.next("rparen")
        return entail.Hyp(int(index.text))
    if kind == "refl":
        term = _parse_term(tz)
        tz.next("rparen")
        return entail.Refl(term)
    if kind == "sym":
        body = _parse_proof(tz)
        tz.next("rparen")
        return entail.Sym(body)
    if kind == "trans":
        left = _parse_proof(tz)
        right = _parse_proof(tz)
        tz.next("rparen")
        return entail.Trans(left, right)
    if kind == "app":
        symbol = tz.next("name")
        children = []
        while tz.peek() is not None and tz.peek().kind == "lparen":
            children.append(_parse_proof(tz))
        tz.next("rparen")
        return entail.App(symbol.text, tuple(children))
    if kind == "sub":
        body = _parse_proof(tz)
        tz.next("lparen")
        bindings: dict[str, Term] = {}
        while True:
            tok = tz.next()
            if tok.kind == "rparen":
                break
            if tok.kind != "lparen":
                raise ParseError(
                    f"expected a (var term) binding, found {tok.text!r}", tok.span
                )
            var_tok = tz.next()
            if var_tok.kind == "var":
                var_name = var_tok.text[1:]
            elif var_tok.kind == "name":
                var_name = var_tok.text
            else:
                raise ParseError(
                    f"expected a variable, found {var_tok.text!r}", var_tok.span
                )
            term = _parse_term(tz)
            tz.next("rparen")
            if var_name in bindings:
                raise ParseError(f"duplicate binding for {var_name}", var_tok.span)
            bindings[var_name] = term
        tz.next("rparen")
        return entail.Sub(body, Substitution(bindings))
    raise ParseError(f"unknown proof constructor {kind!r}", head.span)


def parse_proof(text: str, file: str = "<proof>") -> entail.Proof:
    tz = _Tokenizer(text, file)
    p = _parse_proof(tz)
    tz.expect_end()
    return p


def parse_term_equation_proof(text: str, kind: str, file: str = "<string>"):
    """Dispatch on kind in {"term", "equation", "proof"}."""
    if kind == "term":
        return parse_term(text, file)
    if kind == "equation":
        return parse_equation(text, file)
    if kind == "proof":
        return parse_proof(text, file)
    raise ValueError(f"unknown kind {kind!r}")


def term_to_text(t: Term) -> str:
    """Canonical surface form: no spaces, nullary symbols written bare."""
    if type(t) is Var:
        return f"?{t.name}"
    if not t.children:
        return t.symbol
    return f"{t.symbol}({','.join(term_to_text(c) for c in t.children)})"


def equation_to_text(eq: Equation) -> str:
    return f"{term_to_text(eq.lhs)} = {term_to_text(eq.rhs)}"


def proof_to_text(p: entail.Proof) -> str:
    kind = type(p)
    if kind is entail.Hyp:
        return f"(hyp {p.index})"
    if kind is entail.Refl:
        return f"(refl {term_to_text(p.term)})"
    if kind is entail.Sym:
        return f"(sym {proof_to_text(p.body)})"
    if kind is entail.Trans:
        return f"(trans {proof_to_text(p.left)} {proof_to_text(p.right)})"
    if kind is entail.App:
        parts = " ".join(proof_to_text(c) for c in p.children)
        return f"(app {p.symbol} {parts})" if parts else f"(app {p.symbol})"
    if kind is entail.Sub:
        bindings = " ".join(
            f"({name} {term_to_text(term)})" for name, term in p.sigma.assoc.items()
        )
        return f"(sub {proof_to_text(p.body)} ({bindings}))"
    raise ValueError(f"not a proof node: {p!r}")


def parse_certificate(text: str, file: str = "<certificate>") -> HspCertificate:
    """(cert (factors (i power)*) (gens n*) (image n*))"""
    tz = _Tokenizer(text, file)
    tz.next("lparen")
    head = tz.next("name")
    if head.text != "cert":
        raise ParseError(f"expected 'cert', found {head.text!r}", head.span)

    def section(name: str) -> list[Token]:
        tz.next("lparen")
        label = tz.next("name")
        if label.text != name:
            raise ParseError(f"expected '{name}', found {label.text!r}", label.span)
        body = []
        nesting = 0
        while True:
            tok = tz.next()
            if tok.kind == "lparen":
                nesting += 1
            elif tok.kind == "rparen":
                if nesting == 0:
                    return body
                nesting -= 1
            body.append(tok)

    factor_tokens = section("factors")
    gens_tokens = section("gens")
    image_tokens = section("image")
    tz.next("rparen")
    tz.expect_end()

    factors = []
    stack: list[int] = []
    depth = 0
    for tok in factor_tokens:
        if tok.kind == "lparen":
            depth += 1
        elif tok.kind == "rparen":
            depth -= 1
            if depth != 0 or len(stack) != 2:
                raise ParseError("factors want (index power) pairs", tok.span)
            factors.append((stack[0], stack[1]))
            stack = []
        elif tok.kind == "int" and depth == 1:
            stack.append(int(tok.text))
        else:
            raise ParseError(f"unexpected {tok.text!r} in factors", tok.span)
    if depth != 0 or stack:
        raise ParseError("unbalanced factors section", tz.eof_span)

    def ints(tokens: list[Token], label: str) -> tuple[int, ...]:
        out = []
        for tok in tokens:
            if tok.kind != "int":
                raise ParseError(f"expected integers in {label}", tok.span)
            out.append(int(tok.text))
        return tuple(out)

    return HspCertificate(
        factors=tuple(factors),
        gens=ints(gens_tokens, "gens"),
        image=ints(image_tokens, "image"),
    )


def certificate_to_text(cert: HspCertificate) -> str:
    factors = " ".join(f"({i} {p})" for i, p in cert.factors)
    gens = " ".join(str(g) for g in cert.gens)
    image = " ".join(str(b) for b in cert.image)
    return f"(cert (factors {factors}) (gens {gens}) (image {image}))"


def parse_algebra_file(
    text: str, file: str = "<algebra>"
) -> tuple[Signature, list[tuple[str, FiniteAlgebra]]]:
    """Parse a signature block followed by named algebra blocks.

    Raises ParseError on syntax problems and AlgebraValidationError when a
    table breaks the size/range invariants.
    """
    lines: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((lineno, stripped.split()))
    last_line = len(text.splitlines()) or 1

    def span(lineno: int) -> SourceSpan:
        return SourceSpan(file, lineno, 1, 1)

    pos = 0

    def take() -> tuple[int, list[str]]:
        nonlocal pos
        if pos >= len(lines):
            raise ParseError("missing 'end'", span(last_line))
        pos += 1
        return lines[pos - 1]

    lineno, words = take()
    if words != ["signature"]:
        raise ParseError("file must start with a 'signature' block", span(lineno))
    ops: list[tuple[str, int]] = []
    while True:
        lineno, words = take()
        if words == ["end"]:
            break
        if len(words) != 3 or words[0] != "op" or not words[2].isdigit():
            raise ParseError("expected 'op <name> <arity>' or 'end'", span(lineno))
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", words[1]):
            raise ParseError(f"bad operation name {words[1]!r}", span(lineno))
        ops.append((words[1], int(words[2])))
    try:
        sig = Signature(tuple(ops))
    except ValueError as e:
        raise ParseError(str(e), span(lineno)) from None

    algebras: list[tuple[str, FiniteAlgebra]] = []
    failures: list[tuple[str, Violation]] = []
    while pos < len(lines):
        lineno, words = take()
        if len(words) != 2 or words[0] != "algebra":
            raise ParseError("expected 'algebra <name>'", span(lineno))
        name = words[1]
        lineno, words = take()
        if len(words) != 2 or words[0] != "size" or not words[1].isdigit():
            raise ParseError("expected 'size <n>'", span(lineno))
        size = int(words[1])
        if size < 1:
            raise ParseError("size must be at least 1", span(lineno))
        tables: dict[str, tuple[int, ...]] = {}
        while True:
            lineno, words = take()
            if words == ["end"]:
                break
            if len(words) < 2 or words[0] != "op":
                raise ParseError("expected 'op <name> <entries...>' or 'end'", span(lineno))
            symbol = words[1]
            if symbol not in sig.symbols:
                raise ParseError(f"unknown operation symbol {symbol!r}", span(lineno))
            if symbol in tables:
                raise ParseError(f"duplicate table for {symbol!r}", span(lineno))
            entries = words[2:]
            if not all(e.lstrip("-").isdigit() for e in entries):
                raise ParseError("table entries must be integers", span(lineno))
            tables[symbol] = tuple(int(e) for e in entries)
        missing = [s for s in sig.symbols if s not in tables]
        if missing:
            raise ParseError(f"algebra {name} misses tables for {missing}", span(lineno))
        alg = FiniteAlgebra(sig, size, tuple(tables[s] for s in sig.symbols))
        for violation in validate(alg):
            failures.append((name, violation))
        algebras.append((name, alg))
    if failures:
        raise AlgebraValidationError(failures)
    return sig, algebras


def emit_algebra_file(
    sig: Signature, algebras: Sequence[tuple[str, FiniteAlgebra]]
) -> str:
    """Canonical text: single spaces, signature order, trailing newline."""
    blocks = []
    sig_lines = ["signature"]
    sig_lines.extend(f"op {name} {arity}" for name, arity in sig.ops)
    sig_lines.append("end")
    blocks.append("\n".join(sig_lines))
    for name, alg in algebras:
        lines = [f"algebra {name}", f"size {alg.size}"]
        for (symbol, _), table in zip(sig.ops, alg.tables):
            lines.append(f"op {symbol} {' '.join(str(v) for v in table)}")
        lines.append("end")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def emit_free_sidecar(free: FreeAlgebra) -> str:
    """One `elem <i> repr <term>` line per element, with `gen <vars...>`
    appended on elements that carry variable projections."""
    by_element: dict[int, list[str]] = {}
    for name in free.variables:
        by_element.setdefault(free.gens[name], []).append(name)
    lines = []
    for i, term in enumerate(free.reprs):
        line = f"elem {i} repr {term_to_text(term)}"
        if i in by_element:
            line += " gen " + " ".join(by_element[i])
        lines.append(line)
    return "\n".join(lines) + "\n"
