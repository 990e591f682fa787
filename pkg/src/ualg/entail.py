"""Equational entailment as checkable proof objects.

The calculus has six constructors: hypothesis, reflexivity, symmetry,
transitivity, congruence, and substitution.  Congruence is simultaneous
over all argument positions (one subproof per position); rewriting a
single argument takes Refl proofs on the untouched positions.  check_proof
synthesizes the conclusion of a proof tree bottom-up; search_proof looks
for a proof by iterative deepening and makes no completeness claim;
soundness_audit replays conclusions against every model of the axioms in
a pool and must never find a violation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .core import FiniteAlgebra, Signature, UalgError
from .terms import (
    App as TApp,
    Equation,
    Substitution,
    Term,
    Var,
    collect_arities,
    subterms,
    substitute,
    term_size,
)
from .eqlogic import mod_check, satisfies


class ProofCheckError(UalgError):
    pass


class BadHypothesisError(ProofCheckError):
    pass


class TransMismatchError(ProofCheckError):
    def __init__(self, left_middle: Term, right_middle: Term):
        self.left_middle = left_middle
        self.right_middle = right_middle
        super().__init__(
            f"transitivity middles differ: {left_middle} vs {right_middle}"
        )


class ProofArityError(ProofCheckError):
    pass


@dataclass(frozen=True)
class Hyp:
    index: int


@dataclass(frozen=True)
class Refl:
    term: Term


@dataclass(frozen=True)
class Sym:
    body: "Proof"


@dataclass(frozen=True)
class Trans:
    left: "Proof"
    right: "Proof"


@dataclass(frozen=True)
class App:
    symbol: str
    children: tuple["Proof", ...]


@dataclass(frozen=True)
class Sub:
    body: "Proof"
    sigma: Substitution


Proof = Union[Hyp, Refl, Sym, Trans, App, Sub]


def check_proof(sig: Signature, axioms: Sequence[Equation], p: Proof) -> Equation:
    """Synthesize the conclusion of p, or raise a ProofCheckError."""
    kind = type(p)
    if kind is Hyp:
        if not 0 <= p.index < len(axioms):
            raise BadHypothesisError(
                f"hypothesis index {p.index} outside axioms[0..{len(axioms) - 1}]"
            )
        return axioms[p.index]
    if kind is Refl:
        return Equation(p.term, p.term)
    if kind is Sym:
        inner = check_proof(sig, axioms, p.body)
        return Equation(inner.rhs, inner.lhs)
    if kind is Trans:
        left = check_proof(sig, axioms, p.left)
        right = check_proof(sig, axioms, p.right)
        if left.rhs != right.lhs:
            raise TransMismatchError(left.rhs, right.lhs)
        return Equation(left.lhs, right.rhs)
    if kind is App:
        arity = sig.arity(p.symbol)
        if len(p.children) != arity:
            raise ProofArityError(
                f"congruence at {p.symbol} needs {arity} subproofs, got {len(p.children)}"
            )
        parts = [check_proof(sig, axioms, c) for c in p.children]
        return Equation(
            TApp(p.symbol, tuple(e.lhs for e in parts)),
            TApp(p.symbol, tuple(e.rhs for e in parts)),
        )
    if kind is Sub:
        inner = check_proof(sig, axioms, p.body)
        return Equation(
            substitute(p.sigma, inner.lhs), substitute(p.sigma, inner.rhs)
        )
    raise ProofCheckError(f"not a proof node: {p!r}")


def match_term(pattern: Term, target: Term, binding: dict[str, Term]) -> bool:
    """One-way matching: extend binding so that substituting it into the
    pattern yields the target."""
    if type(pattern) is Var:
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = target
            return True
        return bound == target
    if type(target) is not TApp or pattern.symbol != target.symbol:
        return False
    if len(pattern.children) != len(target.children):
        return False
    return all(
        match_term(pc, tc, binding)
        for pc, tc in zip(pattern.children, target.children)
    )


def match_equation(axiom: Equation, goal: Equation) -> Substitution | None:
    binding: dict[str, Term] = {}
    if match_term(axiom.lhs, goal.lhs, binding) and match_term(
        axiom.rhs, goal.rhs, binding
    ):
        return Substitution(binding)
    return None


@dataclass(frozen=True)
class SearchLimits:
    max_depth: int = 4
    max_term_size: int = 24
    node_budget: int = 50_000


@dataclass(frozen=True)
class SearchOutcome:
    """status is "found", "refuted" (exhausted within limits) or "budget"."""

    status: str
    proof: Proof | None = None


class _BudgetExhausted(Exception):
    pass


def search_proof(
    sig: Signature,
    axioms: Sequence[Equation],
    goal: Equation,
    limits: SearchLimits = SearchLimits(),
) -> SearchOutcome:
    """Iterative-deepening search for a proof of the goal.

    Deterministic for fixed limits; sound by construction (every result
    re-checks); incomplete, so "refuted" means only "no proof within the
    explored space".
    """
    if limits.max_depth < 1 or limits.node_budget < 1:
        raise ValueError("limits must be positive")
    swapped = [Equation(a.rhs, a.lhs) for a in axioms]
    budget = limits.node_budget

    def middles(p: Term, q: Term) -> list[Term]:
        # candidate bridging terms: subterms of both sides and of the
        # axioms, plus single root rewrites of either side
        out: list[Term] = []
        seen: set[Term] = set()
        pool: list[Term] = []
        pool.extend(subterms(p))
        pool.extend(subterms(q))
        for a in axioms:
            pool.extend((a.lhs, a.rhs))
        for side in (p, q):
            for a in itertools.chain(axioms, swapped):
                binding: dict[str, Term] = {}
                if match_term(a.lhs, side, binding) and all(
                    v in binding for v in _pattern_vars(a.rhs)
                ):
                    pool.append(substitute(Substitution(binding), a.rhs))
        for t in pool:
            if t not in seen and t != p and t != q:
                if term_size(t) <= limits.max_term_size:
                    seen.add(t)
                    out.append(t)
        return out

    failed: dict[Equation, int] = {}

    def prove(g: Equation, depth: int) -> Proof | None:
        nonlocal budget
        budget -= 1
        if budget < 0:
            raise _BudgetExhausted
        if failed.get(g, 0) >= depth:
            return None
        if g.lhs == g.rhs:
            return Refl(g.lhs)
        for i, a in enumerate(axioms):
            if a == g:
                return Hyp(i)
            if Equation(a.rhs, a.lhs) == g:
                return Sym(Hyp(i))
            sigma = match_equation(a, g)
            if sigma is not None:
                return Sub(Hyp(i), sigma)
            sigma = match_equation(Equation(a.rhs, a.lhs), g)
            if sigma is not None:
                return Sub(Sym(Hyp(i)), sigma)
        if depth > 1:
            if (
                type(g.lhs) is TApp
                and type(g.rhs) is TApp
                and g.lhs.symbol == g.rhs.symbol
                and len(g.lhs.children) == len(g.rhs.children)
            ):
                parts = []
                for lc, rc in zip(g.lhs.children, g.rhs.children):
                    part = prove(Equation(lc, rc), depth - 1)
                    if part is None:
                        break
                    parts.append(part)
                else:
                    return App(g.lhs.symbol, tuple(parts))
            flipped = prove(Equation(g.rhs, g.lhs), depth - 1)
            if flipped is not None:
                return Sym(flipped)
            for r in middles(g.lhs, g.rhs):
                left = prove(Equation(g.lhs, r), depth - 1)
                if left is None:
                    continue
                right = prove(Equation(r, g.rhs), depth - 1)
                if right is not None:
                    return Trans(left, right)
        failed[g] = max(failed.get(g, 0), depth)
        return None

    try:
        for depth in range(1, limits.max_depth + 1):
            failed.clear()
            proof = prove(goal, depth)
            if proof is not None:
                assert check_proof(sig, axioms, proof) == goal
                return SearchOutcome("found", proof)
    except _BudgetExhausted:
        return SearchOutcome("budget")
    return SearchOutcome("refuted")


def _pattern_vars(t: Term) -> Iterable[str]:
    return (node.name for node in subterms(t) if type(node) is Var)


def collect_proof_arities(p: Proof, arities: dict[str, int]) -> None:
    """Record symbol arities used anywhere in a proof tree."""
    kind = type(p)
    if kind is Refl:
        collect_arities(p.term, arities)
    elif kind is Sym:
        collect_proof_arities(p.body, arities)
    elif kind is Trans:
        collect_proof_arities(p.left, arities)
        collect_proof_arities(p.right, arities)
    elif kind is App:
        known = arities.setdefault(p.symbol, len(p.children))
        if known != len(p.children):
            raise ProofArityError(
                f"symbol {p.symbol} used with arities {known} and {len(p.children)}"
            )
        for c in p.children:
            collect_proof_arities(c, arities)
    elif kind is Sub:
        collect_proof_arities(p.body, arities)
        for t in p.sigma.assoc.values():
            collect_arities(t, arities)


@dataclass(frozen=True)
class AuditEntry:
    algebra_index: int
    conclusion: Equation
    holds: bool


@dataclass(frozen=True)
class AuditReport:
    entries: tuple[AuditEntry, ...]
    model_indices: tuple[int, ...]

    @property
    def clean(self) -> bool:
        return all(e.holds for e in self.entries)

    def violations(self) -> list[AuditEntry]:
        return [e for e in self.entries if not e.holds]


def soundness_audit(
    sig: Signature,
    axioms: Sequence[Equation],
    proofs: Sequence[Proof],
    model_pool: Sequence[FiniteAlgebra],
) -> AuditReport:
    """Check every proof, then test each conclusion in every pool algebra
    that models the axioms.  Any failing entry is an artifact bug."""
    conclusions = [check_proof(sig, axioms, p) for p in proofs]
    model_indices = [
        i for i, alg in enumerate(model_pool) if mod_check(alg, axioms).holds
    ]
    entries = []
    for i in model_indices:
        for eq in conclusions:
            entries.append(
                AuditEntry(i, eq, satisfies(model_pool[i], eq).holds)
            )
    return AuditReport(tuple(entries), tuple(model_indices))
