"""Terms over a signature: substitution, evaluation, and enumeration.

A term is a finite tree of variables and operation applications.  Depth
counts operation layers above the leaves; applications of nullary symbols
are leaves (depth 0), so depth-0 terms are exactly the generator layer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence, Union

from .core import (
    ArityMismatchError,
    CapExceededError,
    FiniteAlgebra,
    Signature,
    UalgError,
    UnknownSymbolError,
    apply_op,
)


class UnboundVariableError(UalgError):
    pass


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self) -> str:
        return f"?{self.name}"


@dataclass(frozen=True, slots=True)
class App:
    symbol: str
    children: tuple["Term", ...] = ()

    def __str__(self) -> str:
        if not self.children:
            return self.symbol
        return f"{self.symbol}({','.join(map(str, self.children))})"


Term = Union[Var, App]


def depth(t: Term) -> int:
    if type(t) is Var or not t.children:
        return 0
    return 1 + max(depth(c) for c in t.children)


def term_size(t: Term) -> int:
    """Number of tree nodes."""
    if type(t) is Var:
        return 1
    return 1 + sum(term_size(c) for c in t.children)


def subterms(t: Term) -> Iterator[Term]:
    """t and all its subterms, pre-order."""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        if type(node) is App:
            stack.extend(reversed(node.children))


def term_vars(t: Term) -> list[str]:
    """Variable names in order of first occurrence."""
    seen: dict[str, None] = {}
    stack = [t]
    while stack:
        node = stack.pop()
        if type(node) is Var:
            seen.setdefault(node.name, None)
        else:
            stack.extend(reversed(node.children))
    return list(seen)


def check_term(sig: Signature, t: Term) -> None:
    """Raise unless every application matches its symbol's arity."""
    if type(t) is Var:
        return
    arity = sig.arity(t.symbol)
    if len(t.children) != arity:
        raise ArityMismatchError(
            f"op {t.symbol} expects {arity} arguments, got {len(t.children)}"
        )
    for c in t.children:
        check_term(sig, c)


@dataclass(frozen=True)
class Substitution:
    """Maps variable names to terms; unlisted variables map to themselves."""

    assoc: Mapping[str, Term]

    def lookup(self, name: str) -> Term:
        return self.assoc.get(name, Var(name))


def substitute(sigma: Substitution, t: Term) -> Term:
    if type(t) is Var:
        return sigma.lookup(t.name)
    return App(t.symbol, tuple(substitute(sigma, c) for c in t.children))


@dataclass
class Environment:
    """An assignment of carrier values to variables, tied to an algebra."""

    alg: FiniteAlgebra
    assoc: dict[str, int]

    def __post_init__(self) -> None:
        for name, value in self.assoc.items():
            if not 0 <= value < self.alg.size:
                raise ValueError(f"binding {name}={value} outside carrier")


def _binding_map(rho: Environment | Mapping[str, int]) -> Mapping[str, int]:
    return rho.assoc if isinstance(rho, Environment) else rho


def evaluate(alg: FiniteAlgebra, t: Term, rho: Environment | Mapping[str, int]) -> int:
    """Interpret t in alg under the variable bindings of rho."""
    bindings = _binding_map(rho)
    ops = alg._ops
    n = alg.size

    def go(node: Term) -> int:
        if type(node) is Var:
            try:
                return bindings[node.name]
            except KeyError:
                raise UnboundVariableError(f"unbound variable ?{node.name}") from None
        entry = ops.get(node.symbol)
        if entry is None:
            raise UnknownSymbolError(f"unknown operation symbol {node.symbol!r}")
        arity, table = entry
        children = node.children
        if len(children) != arity:
            raise ArityMismatchError(
                f"op {node.symbol} expects {arity} arguments, got {len(children)}"
            )
        idx = 0
        for c in children:
            idx = idx * n + go(c)
        return table[idx]

    return go(t)


def free_lift(
    alg: FiniteAlgebra, h: Environment | Mapping[str, int], t: Term
) -> int:
    """Extend the variable assignment h to the whole term tree.

    Same value as evaluate(alg, t, h); computed by an explicit post-order
    so the agreement is a meaningful test rather than shared code.
    """
    h = _binding_map(h)
    out: dict[int, int] = {}
    stack: list[tuple[Term, bool]] = [(t, False)]
    while stack:
        node, expanded = stack.pop()
        if type(node) is Var:
            if node.name not in h:
                raise UnboundVariableError(f"unbound variable ?{node.name}")
            out[id(node)] = h[node.name]
        elif expanded:
            out[id(node)] = apply_op(
                alg, node.symbol, [out[id(c)] for c in node.children]
            )
        else:
            stack.append((node, True))
            stack.extend((c, False) for c in node.children)
    return out[id(t)]


@dataclass(frozen=True)
class Equation:
    """An ordered pair of terms read as the identity lhs = rhs."""

    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


def equation_vars(eq: Equation) -> list[str]:
    """Variables of both sides, in first-occurrence order (lhs first)."""
    names = term_vars(eq.lhs)
    seen = set(names)
    for v in term_vars(eq.rhs):
        if v not in seen:
            seen.add(v)
            names.append(v)
    return names


def collect_arities(t: Term, arities: dict[str, int]) -> None:
    """Record symbol arities from usage; raise on conflicting use."""
    for node in subterms(t):
        if type(node) is App:
            known = arities.setdefault(node.symbol, len(node.children))
            if known != len(node.children):
                raise UalgError(
                    f"symbol {node.symbol} used with arities {known} "
                    f"and {len(node.children)}"
                )


def infer_signature(equations: Sequence[Equation]) -> Signature:
    """Signature implied by the symbols of the equations, in name order."""
    arities: dict[str, int] = {}
    for eq in equations:
        collect_arities(eq.lhs, arities)
        collect_arities(eq.rhs, arities)
    return Signature(tuple(sorted(arities.items())))


DEFAULT_TERM_CAP = 1_000_000


def enumerate_terms(
    sig: Signature,
    variables: Sequence[str],
    max_depth: int,
    cap: int = DEFAULT_TERM_CAP,
) -> list[Term]:
    """All distinct terms of depth <= max_depth, deterministically ordered.

    Layer 0 is variables (in the given order) then nullary symbols (in
    signature order); layer d applies each symbol of arity >= 1, in
    signature order, to child tuples drawn lexicographically by index from
    the layers below, keeping tuples whose deepest child has depth d-1.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    if len(set(variables)) != len(variables):
        raise ValueError("variable names must be distinct")
    terms: list[Term] = [Var(v) for v in variables]
    terms.extend(App(c) for c in sig.constants())
    depths = [0] * len(terms)
    if len(terms) > cap:
        raise CapExceededError(f"term enumeration exceeded cap {cap}")
    for d in range(1, max_depth + 1):
        base = len(terms)
        for name, arity in sig.ops:
            if arity == 0:
                continue
            for combo in itertools.product(range(base), repeat=arity):
                if max(depths[i] for i in combo) != d - 1:
                    continue
                terms.append(App(name, tuple(terms[i] for i in combo)))
                depths.append(d)
                if len(terms) > cap:
                    raise CapExceededError(f"term enumeration exceeded cap {cap}")
        if len(terms) == base:
            break
    return terms


def all_environments(
    variables: Sequence[str], size: int
) -> Iterator[dict[str, int]]:
    """Environments over the variables in lexicographic value order."""
    for values in itertools.product(range(size), repeat=len(variables)):
        yield dict(zip(variables, values))
