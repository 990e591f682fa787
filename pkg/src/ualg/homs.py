"""Homomorphisms between finite algebras.

A carrier map is just the image list of a function between carriers; the
classifier decides whether it commutes with every basic operation and
whether it is injective/surjective.  find_homs enumerates all maps passing
the classifier by backtracking with compatibility pruning.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .core import (
    CapExceededError,
    FiniteAlgebra,
    UalgError,
    apply_op,
    same_signature,
)


class NotAHomError(UalgError):
    def __init__(self, witness: tuple[str, tuple[int, ...]]):
        self.witness = witness
        super().__init__(f"map is not a homomorphism at {witness[0]}{witness[1]}")


class NotSurjectiveError(UalgError):
    def __init__(self, missing: int):
        self.missing = missing
        super().__init__(f"map is not surjective: {missing} has no preimage")


class KernelInclusionError(UalgError):
    def __init__(self, pair: tuple[int, int]):
        self.pair = pair
        super().__init__(f"kernel inclusion fails at pair {pair}")


class SearchCapError(CapExceededError):
    pass


@dataclass(frozen=True)
class CarrierMap:
    """A function src -> dst given by its image list."""

    src: FiniteAlgebra
    dst: FiniteAlgebra
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.image) != self.src.size:
            raise ValueError(
                f"image length {len(self.image)} != source size {self.src.size}"
            )
        for a, b in enumerate(self.image):
            if not 0 <= b < self.dst.size:
                raise ValueError(f"image[{a}] = {b} outside target carrier")

    def __call__(self, a: int) -> int:
        return self.image[a]


def identity_map(alg: FiniteAlgebra) -> CarrierMap:
    return CarrierMap(alg, alg, tuple(range(alg.size)))


@dataclass(frozen=True)
class HomClassification:
    is_hom: bool
    witness: tuple[str, tuple[int, ...]] | None
    injective: bool
    surjective: bool


def hom_violation(m: CarrierMap) -> tuple[str, tuple[int, ...]] | None:
    """First (symbol, args) where the map fails to commute, else None."""
    same_signature(m.src, m.dst)
    image = m.image
    for name, arity in m.src.sig.ops:
        for args in itertools.product(range(m.src.size), repeat=arity):
            mapped = [image[a] for a in args]
            if image[apply_op(m.src, name, args)] != apply_op(m.dst, name, mapped):
                return (name, args)
    return None


def classify(m: CarrierMap) -> HomClassification:
    witness = hom_violation(m)
    values = set(m.image)
    return HomClassification(
        is_hom=witness is None,
        witness=witness,
        injective=len(values) == m.src.size,
        surjective=len(values) == m.dst.size,
    )


def compose(g: CarrierMap, h: CarrierMap) -> CarrierMap:
    """h after g: first apply g, then h."""
    if g.dst != h.src:
        raise UalgError("compose: middle algebras differ")
    return CarrierMap(g.src, h.dst, tuple(h.image[b] for b in g.image))


def kernel_pairs(m: CarrierMap) -> set[tuple[int, int]]:
    """All pairs of source elements the map identifies (incl. diagonal)."""
    return {
        (x, y)
        for x in range(m.src.size)
        for y in range(m.src.size)
        if m.image[x] == m.image[y]
    }


def hom_factor(g: CarrierMap, h: CarrierMap) -> CarrierMap:
    """Given homs g, h from a common source with h surjective and
    ker h <= ker g, return phi with g = phi o h.

    phi sends c to g(least h-preimage of c); kernel inclusion makes the
    choice of preimage irrelevant.
    """
    if g.src != h.src:
        raise UalgError("hom_factor: sources differ")
    for m in (g, h):
        witness = hom_violation(m)
        if witness is not None:
            raise NotAHomError(witness)
    preimage: dict[int, int] = {}
    for a in range(h.src.size):
        preimage.setdefault(h.image[a], a)
    for c in range(h.dst.size):
        if c not in preimage:
            raise NotSurjectiveError(c)
    for (x, y) in sorted(kernel_pairs(h)):
        if g.image[x] != g.image[y]:
            raise KernelInclusionError((x, y))
    return CarrierMap(h.dst, g.dst, tuple(g.image[preimage[c]] for c in range(h.dst.size)))


def iter_homs(
    src: FiniteAlgebra,
    dst: FiniteAlgebra,
    surjective: bool | None = None,
    injective: bool | None = None,
    fixed: Mapping[int, int] | None = None,
    cap: int = 1_000_000,
) -> Iterator[CarrierMap]:
    """Yield every hom src -> dst meeting the constraints, in lexicographic
    image order.  fixed pins chosen source elements to target values."""
    same_signature(src, dst)
    fixed = dict(fixed or {})
    for a, b in fixed.items():
        if not 0 <= a < src.size or not 0 <= b < dst.size:
            raise ValueError(f"fixed assignment {a}->{b} out of range")
    free = src.size - len(fixed)
    if dst.size**free > cap:
        raise SearchCapError(
            f"search space {dst.size}^{free} exceeds cap {cap}"
        )

    n, m = src.size, dst.size
    ops = list(zip(src.sig.ops, src.tables, dst.tables))
    image = [-1] * n

    def compatible(v: int) -> bool:
        # check every op tuple that involves v and is otherwise decided
        for (name, arity), src_table, dst_table in ops:
            if arity == 0:
                res = src_table[0]
                if image[res] >= 0 and dst_table[0] != image[res]:
                    return False
                continue
            for args in itertools.product(
                [a for a in range(n) if image[a] >= 0], repeat=arity
            ):
                res = src_table[_row_index(n, args)]
                if image[res] < 0:
                    continue
                if v in args or res == v:
                    mapped = _row_index(m, [image[a] for a in args])
                    if dst_table[mapped] != image[res]:
                        return False
        return True

    def missing_values() -> int:
        used = {b for b in image if b >= 0}
        return m - len(used)

    def extend(a: int) -> Iterator[CarrierMap]:
        if a == n:
            cm = CarrierMap(src, dst, tuple(image))
            cls = classify(cm)
            if cls.is_hom and _flags_ok(cls, surjective, injective):
                yield cm
            return
        if a in fixed:
            candidates = [fixed[a]]
        elif injective:
            used = {b for b in image if b >= 0}
            candidates = [b for b in range(m) if b not in used]
        else:
            candidates = list(range(m))
        for b in candidates:
            image[a] = b
            if compatible(b):
                if not (surjective and missing_values() > n - a - 1):
                    yield from extend(a + 1)
            image[a] = -1

    return extend(0)


def _row_index(size: int, args: Sequence[int]) -> int:
    idx = 0
    for a in args:
        idx = idx * size + a
    return idx


def _flags_ok(
    cls: HomClassification, surjective: bool | None, injective: bool | None
) -> bool:
    if surjective is not None and cls.surjective != surjective:
        return False
    if injective is not None and cls.injective != injective:
        return False
    return True


def find_homs(
    src: FiniteAlgebra,
    dst: FiniteAlgebra,
    surjective: bool | None = None,
    injective: bool | None = None,
    fixed: Mapping[int, int] | None = None,
    cap: int = 1_000_000,
) -> list[CarrierMap]:
    return list(iter_homs(src, dst, surjective, injective, fixed, cap))


def find_isomorphism(
    a: FiniteAlgebra, b: FiniteAlgebra, cap: int = 1_000_000
) -> tuple[CarrierMap, CarrierMap] | None:
    """A mutually inverse pair of homs a -> b and b -> a, if any."""
    if a.size != b.size:
        return None
    for f in iter_homs(a, b, surjective=True, injective=True, cap=cap):
        inverse = [0] * b.size
        for x, y in enumerate(f.image):
            inverse[y] = x
        g = CarrierMap(b, a, tuple(inverse))
        if hom_violation(g) is None:
            return f, g
    return None


def is_isomorphic(a: FiniteAlgebra, b: FiniteAlgebra, cap: int = 1_000_000) -> bool:
    return find_isomorphism(a, b, cap) is not None
