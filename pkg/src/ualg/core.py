"""Finite signatures and algebras.

An algebra is a carrier {0..n-1} together with one flat operation table per
symbol of its signature.  Tables are row-major: the tuple (a1, .., ak) of a
k-ary operation on a size-n carrier lives at index a1*n^(k-1) + .. + ak.
Everything is immutable and safe to share.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Mapping, Sequence


class UalgError(Exception):
    """Base class for all errors raised by this package."""


class UnknownSymbolError(UalgError):
    pass


class ArityMismatchError(UalgError):
    pass


class OutOfRangeError(UalgError):
    pass


class SignatureMismatchError(UalgError):
    pass


class CapExceededError(UalgError):
    """A configured resource cap was hit; never a silent truncation."""


@dataclass(frozen=True)
class Caps:
    """Resource limits for the search- and closure-heavy operations.

    carrier bounds product/free-algebra carrier sizes, cells bounds table
    cells and enumeration counts, search bounds homomorphism-search spaces.
    """

    carrier: int = 4096
    cells: int = 1_000_000
    search: int = 1_000_000

    @staticmethod
    def from_env(environ: Mapping[str, str] | None = None) -> "Caps":
        """Read overrides from UALG_CAPS, e.g. "carrier=512,cells=10000"."""
        environ = os.environ if environ is None else environ
        raw = environ.get("UALG_CAPS", "")
        values = {}
        for part in filter(None, (p.strip() for p in raw.split(","))):
            key, _, num = part.partition("=")
            if key not in ("carrier", "cells", "search") or not num.isdigit():
                raise UalgError(f"bad UALG_CAPS entry: {part!r}")
            values[key] = int(num)
        return Caps(**values)


DEFAULT_CAPS = Caps()


@dataclass(frozen=True, slots=True)
class Signature:
    """Ordered operation symbols with finite arities.

    The sequence order is the canonical symbol order used for every
    deterministic enumeration downstream.
    """

    ops: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        names = [name for name, _ in self.ops]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate operation symbols in {names}")
        for name, arity in self.ops:
            if arity < 0:
                raise ValueError(f"negative arity for {name}")

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.ops)

    def arity(self, symbol: str) -> int:
        for name, arity in self.ops:
            if name == symbol:
                return arity
        raise UnknownSymbolError(f"unknown operation symbol {symbol!r}")

    def constants(self) -> tuple[str, ...]:
        return tuple(name for name, arity in self.ops if arity == 0)


def signature(*ops: tuple[str, int]) -> Signature:
    return Signature(tuple(ops))


@dataclass(frozen=True)
class FiniteAlgebra:
    """A finite algebra: carrier {0..size-1} plus one table per symbol.

    tables[i] belongs to sig.ops[i] and holds size**arity row-major entries.
    """

    sig: Signature
    size: int
    tables: tuple[tuple[int, ...], ...]
    _ops: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("carrier must be nonempty")
        if len(self.tables) != len(self.sig.ops):
            raise ValueError(
                f"expected {len(self.sig.ops)} tables, got {len(self.tables)}"
            )
        index = {
            name: (arity, self.tables[i])
            for i, (name, arity) in enumerate(self.sig.ops)
        }
        object.__setattr__(self, "_ops", index)


def algebra(sig: Signature, size: int, tables: Mapping[str, Sequence[int]]) -> FiniteAlgebra:
    """Build a FiniteAlgebra from a symbol->table mapping."""
    missing = [name for name, _ in sig.ops if name not in tables]
    if missing:
        raise ValueError(f"missing tables for {missing}")
    extra = [name for name in tables if name not in sig.symbols]
    if extra:
        raise UnknownSymbolError(f"tables for symbols not in signature: {extra}")
    return FiniteAlgebra(sig, size, tuple(tuple(tables[n]) for n, _ in sig.ops))


@dataclass(frozen=True)
class Violation:
    """One invariant failure, naming the offending symbol and table index."""

    symbol: str
    index: int | None
    message: str

    def __str__(self) -> str:
        where = f" index {self.index}" if self.index is not None else ""
        return f"op {self.symbol}{where}: {self.message}"


def validate(alg: FiniteAlgebra) -> list[Violation]:
    """Check all table invariants; empty result means the algebra is valid."""
    out = []
    for (name, arity), table in zip(alg.sig.ops, alg.tables):
        expected = alg.size**arity
        if len(table) != expected:
            out.append(
                Violation(name, None, f"expected {expected} entries, got {len(table)}")
            )
            continue
        for i, entry in enumerate(table):
            if not 0 <= entry < alg.size:
                out.append(Violation(name, i, f"entry {entry} ≥ size {alg.size}"))
    return out


def row_major_index(size: int, args: Sequence[int]) -> int:
    idx = 0
    for a in args:
        idx = idx * size + a
    return idx


def decode_args(size: int, arity: int, index: int) -> tuple[int, ...]:
    """Inverse of row_major_index for a fixed arity."""
    out = [0] * arity
    for pos in range(arity - 1, -1, -1):
        index, out[pos] = divmod(index, size)
    return tuple(out)


def apply_op(alg: FiniteAlgebra, symbol: str, args: Sequence[int]) -> int:
    """Look up one operation value, checking symbol, arity and ranges."""
    entry = alg._ops.get(symbol)
    if entry is None:
        raise UnknownSymbolError(f"unknown operation symbol {symbol!r}")
    arity, table = entry
    if len(args) != arity:
        raise ArityMismatchError(
            f"op {symbol} expects {arity} arguments, got {len(args)}"
        )
    n = alg.size
    idx = 0
    for a in args:
        if not 0 <= a < n:
            raise OutOfRangeError(f"argument {a} out of range for size {n}")
        idx = idx * n + a
    return table[idx]


def same_signature(*algebras: FiniteAlgebra) -> Signature:
    """Return the shared signature or raise SignatureMismatchError."""
    sig = algebras[0].sig
    for alg in algebras[1:]:
        if alg.sig != sig:
            raise SignatureMismatchError(
                f"signatures differ: {sig.ops} vs {alg.sig.ops}"
            )
    return sig
