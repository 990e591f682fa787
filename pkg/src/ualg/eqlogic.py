"""Satisfaction of term identities by finite algebras and classes.

An algebra satisfies lhs = rhs when both sides evaluate equally under
every environment over the equation's variables; the search order is
lexicographic with variables in first-occurrence order, so the reported
counterexample is reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import CapExceededError, FiniteAlgebra, same_signature
from .terms import (
    Environment,
    Equation,
    enumerate_terms,
    equation_vars,
    evaluate,
)

DEFAULT_ENV_CAP = 1_000_000


@dataclass(frozen=True)
class SatResult:
    holds: bool
    counterexample: Environment | None = None


def satisfies(
    alg: FiniteAlgebra, eq: Equation, cap: int = DEFAULT_ENV_CAP
) -> SatResult:
    """Decide alg |= eq by checking every environment over its variables."""
    names = equation_vars(eq)
    if alg.size ** len(names) > cap:
        raise CapExceededError(
            f"environment space {alg.size}^{len(names)} exceeds cap {cap}"
        )
    for values in itertools.product(range(alg.size), repeat=len(names)):
        rho = dict(zip(names, values))
        if evaluate(alg, eq.lhs, rho) != evaluate(alg, eq.rhs, rho):
            return SatResult(False, Environment(alg, rho))
    return SatResult(True)


@dataclass(frozen=True)
class ClassSatResult:
    holds: bool
    failing_index: int | None = None
    counterexample: Environment | None = None


def class_satisfies(
    K: Sequence[FiniteAlgebra], eq: Equation, cap: int = DEFAULT_ENV_CAP
) -> ClassSatResult:
    """Conjunction of satisfies over K; empty classes hold vacuously."""
    for i, alg in enumerate(K):
        res = satisfies(alg, eq, cap=cap)
        if not res.holds:
            return ClassSatResult(False, i, res.counterexample)
    return ClassSatResult(True)


@dataclass(frozen=True)
class ModCheckResult:
    holds: bool
    failing_index: int | None = None
    counterexample: Environment | None = None


def mod_check(
    alg: FiniteAlgebra, E: Sequence[Equation], cap: int = DEFAULT_ENV_CAP
) -> ModCheckResult:
    """Membership of alg in the model class of the finite equation list E."""
    for i, eq in enumerate(E):
        res = satisfies(alg, eq, cap=cap)
        if not res.holds:
            return ModCheckResult(False, i, res.counterexample)
    return ModCheckResult(True)


def theory_upto(
    K: Sequence[FiniteAlgebra],
    variables: Sequence[str],
    max_depth: int,
    term_cap: int = 1_000_000,
    env_cap: int = DEFAULT_ENV_CAP,
) -> list[Equation]:
    """The depth- and variable-bounded equational theory of K.

    All ordered pairs (p, q) of enumerated terms that every member of K
    satisfies, in lexicographic (p index, q index) order; the diagonal is
    always included.
    """
    if not K:
        raise ValueError("theory_upto needs a nonempty class to fix the signature")
    sig = same_signature(*K)
    terms = enumerate_terms(sig, variables, max_depth, cap=term_cap)
    out = []
    for p, q in itertools.product(terms, repeat=2):
        eq = Equation(p, q)
        if class_satisfies(K, eq, cap=env_cap).holds:
            out.append(eq)
    return out
