"""The relatively free algebra in the variety generated by a finite class.

Elements are evaluation tuples: one coordinate per (algebra, environment)
pair, where the environments range over all assignments of the chosen
variables into each algebra's carrier.  The algebra is the subalgebra of
the big product generated by the variable-projection tuples; two terms
land on the same element exactly when the class satisfies their identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import (
    CapExceededError,
    Caps,
    FiniteAlgebra,
    Signature,
    apply_op,
    same_signature,
)
from .closure import EmptyCarrierError
from .homs import CarrierMap, hom_violation
from .terms import App, Term, Var, evaluate


@dataclass(frozen=True)
class FreeAlgebra:
    """alg is the free algebra; index lists the (class index, environment
    values) coordinates; tuples/reprs give each element's evaluation tuple
    and canonical representative term; gens maps variables to elements."""

    alg: FiniteAlgebra
    k_algebras: tuple[FiniteAlgebra, ...]
    variables: tuple[str, ...]
    index: tuple[tuple[int, tuple[int, ...]], ...]
    tuples: tuple[tuple[int, ...], ...]
    reprs: tuple[Term, ...]
    gens: Mapping[str, int]

    def lookup(self, tup: tuple[int, ...]) -> int:
        try:
            return self.tuples.index(tup)
        except ValueError:
            raise KeyError(tup) from None


def build_free(
    K: Sequence[FiniteAlgebra],
    variables: Sequence[str],
    caps: Caps = Caps(),
    sig: Signature | None = None,
) -> FreeAlgebra:
    """Close the variable-projection tuples of the indexed product under
    pointwise operations; discovery order fixes labels and representatives.
    """
    if K:
        sig = same_signature(*K)
    elif sig is None:
        raise ValueError("empty class: pass the signature explicitly")
    variables = list(variables)
    if not variables and not sig.constants():
        raise EmptyCarrierError(
            "no variables and no constants: empty carrier not representable"
        )

    index: list[tuple[int, tuple[int, ...]]] = []
    for ki, alg in enumerate(K):
        for env in itertools.product(range(alg.size), repeat=len(variables)):
            index.append((ki, env))
    width = len(index)
    if width * max(1, len(variables)) > caps.cells:
        raise CapExceededError(
            f"tuple cells: index width {width} exceeds cap {caps.cells}"
        )

    elements: list[tuple[int, ...]] = []
    reprs: list[Term] = []
    label: dict[tuple[int, ...], int] = {}
    gens: dict[str, int] = {}

    def add(tup: tuple[int, ...], term: Term) -> int:
        if len(elements) + 1 > caps.carrier:
            raise CapExceededError(
                f"free carrier would exceed cap {caps.carrier} elements"
            )
        if (len(elements) + 1) * width > caps.cells:
            raise CapExceededError(
                f"tuple cells would exceed cap {caps.cells}"
            )
        label[tup] = len(elements)
        elements.append(tup)
        reprs.append(term)
        return label[tup]

    for pos, name in enumerate(variables):
        tup = tuple(env[pos] for _, env in index)
        gens[name] = label[tup] if tup in label else add(tup, Var(name))

    def pointwise(name: str, arg_labels: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(
            apply_op(K[ki], name, [elements[a][j] for a in arg_labels])
            for j, (ki, _) in enumerate(index)
        )

    while True:
        base = len(elements)
        for name, arity in sig.ops:
            for args in itertools.product(range(base), repeat=arity):
                tup = pointwise(name, args)
                if tup not in label:
                    add(tup, App(name, tuple(reprs[a] for a in args)))
        if len(elements) == base:
            break

    tables = []
    for name, arity in sig.ops:
        table = tuple(
            label[pointwise(name, args)]
            for args in itertools.product(range(len(elements)), repeat=arity)
        )
        tables.append(table)
    free = FreeAlgebra(
        alg=FiniteAlgebra(sig, len(elements), tuple(tables)),
        k_algebras=tuple(K),
        variables=tuple(variables),
        index=tuple(index),
        tuples=tuple(elements),
        reprs=tuple(reprs),
        gens=gens,
    )
    _assert_invariants(free)
    return free


def _assert_invariants(free: FreeAlgebra) -> None:
    # distinct tuples: the embedding into the product is injective
    assert len(set(free.tuples)) == len(free.tuples)
    # every representative evaluates to its element's tuple, coordinatewise
    for tup, term in zip(free.tuples, free.reprs):
        for j, (ki, env) in enumerate(free.index):
            rho = dict(zip(free.variables, env))
            assert evaluate(free.k_algebras[ki], term, rho) == tup[j]
    # generators carry the projection tuples
    for pos, name in enumerate(free.variables):
        expected = tuple(env[pos] for _, env in free.index)
        assert free.tuples[free.gens[name]] == expected


def nat_epi(free: FreeAlgebra, t: Term) -> int:
    """Image of a term under the natural map onto the free algebra."""
    tup = tuple(
        evaluate(free.k_algebras[ki], t, dict(zip(free.variables, env)))
        for ki, env in free.index
    )
    return free.lookup(tup)


@dataclass(frozen=True)
class UniversalMapFailure:
    """Why no homomorphism onto the target extends the assignment.

    kind "hom" carries the violating (symbol, args); that pair witnesses an
    identity holding in the free algebra but not in the target.  kind
    "surjectivity" carries the first unreached target element.  image is
    the rejected candidate map, so the failure replays through classify.
    """

    kind: str
    image: tuple[int, ...]
    symbol: str | None = None
    args: tuple[int, ...] | None = None
    unreached: int | None = None


def universal_map(
    free: FreeAlgebra, B: FiniteAlgebra, assign: Mapping[str, int]
) -> CarrierMap | UniversalMapFailure:
    """The hom free -> B extending assign on the generators, built by
    evaluating representatives; verified to be a surjective hom."""
    same_signature(free.alg, B)
    for name in free.variables:
        if name not in assign:
            raise ValueError(f"assignment misses variable {name}")
    image = tuple(evaluate(B, term, assign) for term in free.reprs)
    candidate = CarrierMap(free.alg, B, image)
    witness = hom_violation(candidate)
    if witness is not None:
        return UniversalMapFailure("hom", image, symbol=witness[0], args=witness[1])
    reached = set(image)
    for b in range(B.size):
        if b not in reached:
            return UniversalMapFailure("surjectivity", image, unreached=b)
    return candidate
