"""Finite algebras given by operation tables, and structures derived from them.

Carriers are always ``{0, ..., k-1}``.  Every function symbol of the
signature gets a numpy lookup table of shape ``(k,) * arity``; nullary
symbols are stored as 0-d arrays.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "Signature", "MAGMA", "MONOID", "GROUP", "RING",
    "FiniteAlgebra", "PowerElement", "StructuralSubset", "Violation",
    "AlgebraError", "MalformedAlgebraError", "SignatureMismatch",
    "UnsupportedOperation", "SizeError",
    "validate_algebra", "direct_product", "direct_power", "product_of",
    "support", "center", "right_annihilator", "magma_from_term",
    "is_commutative", "load_algebra", "save_algebra", "algebra_to_json",
    "algebra_from_json",
]

MUL, INV, ADD, NEG = "*", "^-1", "+", "-"

# largest carrier a product/power may have; tables are size**2 entries
DEFAULT_MAX_SIZE = 4096


class AlgebraError(ValueError):
    pass


class MalformedAlgebraError(AlgebraError):
    """Tables have the wrong shape or entries outside the carrier."""


class SignatureMismatch(AlgebraError):
    pass


class UnsupportedOperation(AlgebraError):
    pass


class SizeError(AlgebraError):
    """A construction or enumeration would exceed its size budget."""


@dataclass(frozen=True)
class Signature:
    symbols: tuple[tuple[str, int], ...]
    kind: str = "custom"

    _required = {
        "magma": {MUL: 2},
        "monoid": {MUL: 2, "e": 0},
        "group": {MUL: 2, INV: 1, "e": 0},
        "ring": {ADD: 2, NEG: 1, MUL: 2, "0": 0},
        "custom": {},
    }

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple((str(n), int(a)) for n, a in self.symbols))
        names = [n for n, _ in self.symbols]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate symbol names in {names}")
        if self.kind not in self._required:
            raise AlgebraError(f"unknown signature kind {self.kind!r}")
        for n, a in self.symbols:
            if a not in (0, 1, 2):
                raise AlgebraError(f"symbol {n!r} has unsupported arity {a}")
        arities = dict(self.symbols)
        for n, a in self._required[self.kind].items():
            if arities.get(n) != a:
                raise AlgebraError(f"{self.kind} signature requires symbol {n!r} of arity {a}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.symbols)

    def arity(self, name: str) -> int:
        for n, a in self.symbols:
            if n == name:
                return a
        raise KeyError(name)

    def __contains__(self, name) -> bool:
        return any(n == name for n, _ in self.symbols)

    @property
    def neutral_symbol(self) -> str | None:
        """The nullary symbol naming the neutral element, if the kind has one."""
        return {"monoid": "e", "group": "e", "ring": "0"}.get(self.kind)


MAGMA = Signature(((MUL, 2),), "magma")
MONOID = Signature(((MUL, 2), ("e", 0)), "monoid")
GROUP = Signature(((MUL, 2), (INV, 1), ("e", 0)), "group")
RING = Signature(((ADD, 2), (NEG, 1), (MUL, 2), ("0", 0)), "ring")

_STANDARD = {s.kind: s for s in (MAGMA, MONOID, GROUP, RING)}


class FiniteAlgebra:
    """An algebra on ``{0..size-1}`` with one lookup table per symbol.

    ``components`` is set for products and powers; elements are then the
    mixed-radix encoding of coordinate tuples, first coordinate most
    significant, so numeric order equals lexicographic tuple order.
    """

    def __init__(self, signature: Signature, size: int, tables, neutral: int | None = None,
                 name: str = "A", element_names: Sequence[str] | None = None,
                 components: Sequence["FiniteAlgebra"] | None = None):
        if int(size) < 1:
            raise MalformedAlgebraError("size must be positive")
        self.signature = signature
        self.size = int(size)
        self.name = name
        self.element_names = tuple(element_names) if element_names is not None else None
        self.components = tuple(components) if components is not None else None
        if self.element_names is not None and len(self.element_names) != self.size:
            raise MalformedAlgebraError("element_names length differs from size")

        self.tables: dict[str, np.ndarray] = {}
        for sym, arity in signature.symbols:
            if sym not in tables:
                raise MalformedAlgebraError(f"missing table for symbol {sym!r}")
            t = np.array(tables[sym], dtype=np.int64)
            if t.shape != (self.size,) * arity:
                raise MalformedAlgebraError(
                    f"table for {sym!r} has shape {t.shape}, expected {(self.size,) * arity}")
            bad = np.argwhere((t < 0) | (t >= self.size))
            if bad.size:
                where = tuple(int(i) for i in bad[0])
                raise MalformedAlgebraError(
                    f"table {sym!r} entry at {where} is {int(t[where])}, outside 0..{self.size - 1}")
            t.setflags(write=False)
            self.tables[sym] = t
        extra = set(tables) - set(signature.names)
        if extra:
            raise MalformedAlgebraError(f"tables for symbols not in signature: {sorted(extra)}")

        nsym = signature.neutral_symbol
        if neutral is None and nsym is not None:
            neutral = int(self.tables[nsym])
        if neutral is not None:
            neutral = int(neutral)
            if not 0 <= neutral < self.size:
                raise MalformedAlgebraError(f"neutral {neutral} outside carrier")
            if nsym is not None and int(self.tables[nsym]) != neutral:
                raise MalformedAlgebraError(
                    f"neutral {neutral} disagrees with table of {nsym!r} ({int(self.tables[nsym])})")
        self.neutral = neutral

    # -- basic access -------------------------------------------------

    @property
    def kind(self) -> str:
        return self.signature.kind

    @property
    def elements(self) -> range:
        return range(self.size)

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FiniteAlgebra({self.name!r}, kind={self.kind}, size={self.size})"

    def op(self, symbol: str, *args: int) -> int:
        return int(self.tables[symbol][tuple(args)])

    def mul(self, x: int, y: int) -> int:
        return int(self.tables[MUL][x, y])

    def element_name(self, x: int) -> str:
        if self.element_names is not None:
            return self.element_names[x]
        if self.components is not None:
            return "(" + ",".join(c.element_name(v) for c, v in zip(self.components, self.decode(x))) + ")"
        return str(x)

    # -- coordinate codec for products and powers ----------------------

    @property
    def width(self) -> int:
        if self.components is None:
            raise UnsupportedOperation(f"{self.name} is not a product or power")
        return len(self.components)

    def _radices(self):
        if self.components is None:
            raise UnsupportedOperation(f"{self.name} is not a product or power")
        return [c.size for c in self.components]

    def encode(self, coords: Sequence[int]) -> int:
        radices = self._radices()
        if len(coords) != len(radices):
            raise AlgebraError(f"expected {len(radices)} coordinates, got {len(coords)}")
        idx = 0
        for v, r in zip(coords, radices):
            v = int(v)
            if not 0 <= v < r:
                raise AlgebraError(f"coordinate value {v} outside 0..{r - 1}")
            idx = idx * r + v
        return idx

    def decode(self, index: int) -> tuple[int, ...]:
        radices = self._radices()
        if not 0 <= index < self.size:
            raise AlgebraError(f"element {index} outside carrier")
        out = []
        for r in reversed(radices):
            index, v = divmod(int(index), r)
            out.append(v)
        return tuple(reversed(out))

    def power_element(self, index: int) -> "PowerElement":
        return PowerElement(self.decode(index))


@dataclass(frozen=True)
class PowerElement:
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(v) for v in self.entries))
        if not self.entries:
            raise AlgebraError("power element needs width >= 1")

    @property
    def width(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


@dataclass(frozen=True)
class StructuralSubset:
    elements: frozenset[int]
    role: str

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __len__(self):
        return len(self.elements)

    def sorted(self) -> list[int]:
        return sorted(self.elements)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...] = field(default=())

    def __str__(self):
        return f"{self.axiom} {self.witness}" if self.witness else self.axiom


# ---------------------------------------------------------------------
# axioms

def _check_assoc(t, label):
    k = t.shape[0]
    # (x*y)*z vs x*(y*z) over all triples at once
    lhs = t[t[:, :, None], np.arange(k)[None, None, :]]
    rhs = t[np.arange(k)[:, None, None], t[None, :, :]]
    for x, y, z in np.argwhere(lhs != rhs):
        yield Violation(f"{label} not associative", (int(x), int(y), int(z)))


def _check_identity(t, e, label):
    for x in range(t.shape[0]):
        if t[e, x] != x or t[x, e] != x:
            yield Violation(f"{e} is not a two-sided identity for {label}", (x,))


def validate_algebra(a: FiniteAlgebra, kind: str | None = None) -> list[Violation]:
    """Exhaustively check the axioms of ``kind`` (default: the algebra's own kind).

    Returns every failed axiom instance; an empty list means valid.  Passing
    a different ``kind`` checks whether the tables *would* form such a
    structure, deriving inverses from ``*`` when no inverse table exists.
    """
    kind = kind or a.kind
    for sym, t in a.tables.items():
        if np.any((t < 0) | (t >= a.size)):
            raise MalformedAlgebraError(f"table {sym!r} has entries outside the carrier")
    if kind == "custom":
        return []
    out: list[Violation] = []
    if kind in ("magma", "monoid", "group"):
        if MUL not in a.tables:
            raise UnsupportedOperation(f"{kind} needs a binary '*' table")
        t = a.tables[MUL]
        if kind == "magma":
            return out
        out.extend(_check_assoc(t, "*"))
        e = a.neutral
        if e is None:
            return out + [Violation("no neutral element")]
        out.extend(_check_identity(t, e, "*"))
        if kind == "group":
            inv = a.tables.get(INV)
            for x in range(a.size):
                if inv is not None:
                    y = int(inv[x])
                    if t[x, y] != e or t[y, x] != e:
                        out.append(Violation(f"inverse table wrong for {x}", (x, y)))
                elif not any(t[x, y] == e and t[y, x] == e for y in range(a.size)):
                    out.append(Violation(f"no inverse for {x}", (x,)))
        return out
    if kind == "ring":
        for sym in (ADD, NEG, MUL):
            if sym not in a.tables:
                raise UnsupportedOperation(f"ring needs a {sym!r} table")
        add, neg, mul = a.tables[ADD], a.tables[NEG], a.tables[MUL]
        zero = a.neutral
        out.extend(_check_assoc(add, "+"))
        out.extend(_check_assoc(mul, "*"))
        for x, y in np.argwhere(add != add.T):
            if x < y:
                out.append(Violation("+ not commutative", (int(x), int(y))))
        if zero is None:
            return out + [Violation("no zero element")]
        out.extend(_check_identity(add, zero, "+"))
        for x in range(a.size):
            if add[x, neg[x]] != zero:
                out.append(Violation(f"-{x} is not an additive inverse", (x,)))
        for x, y, z in itertools.product(range(a.size), repeat=3):
            if mul[x, add[y, z]] != add[mul[x, y], mul[x, z]]:
                out.append(Violation("left distributivity fails", (x, y, z)))
            if mul[add[x, y], z] != add[mul[x, z], mul[y, z]]:
                out.append(Violation("right distributivity fails", (x, y, z)))
        return out
    raise AlgebraError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------
# products and powers

def product_of(factors: Sequence[FiniteAlgebra], name: str | None = None,
               max_size: int = DEFAULT_MAX_SIZE) -> FiniteAlgebra:
    """Direct product of several algebras over one signature, mixed-radix encoded."""
    if not factors:
        raise AlgebraError("need at least one factor")
    sig = factors[0].signature
    for f in factors[1:]:
        if f.signature != sig:
            raise SignatureMismatch(f"{f.name} has signature {f.signature}, expected {sig}")
    radices = [f.size for f in factors]
    size = int(np.prod(radices, dtype=object))
    if size > max_size:
        raise SizeError(f"product would have {size} elements (limit {max_size})")

    # digits[i, c] = coordinate c of element i
    idx = np.arange(size)
    digits = np.empty((size, len(factors)), dtype=np.int64)
    rest = idx.copy()
    for c in range(len(factors) - 1, -1, -1):
        digits[:, c] = rest % radices[c]
        rest //= radices[c]
    weights = np.ones(len(factors), dtype=np.int64)
    for c in range(len(factors) - 2, -1, -1):
        weights[c] = weights[c + 1] * radices[c + 1]

    tables = {}
    for sym, arity in sig.symbols:
        if arity == 0:
            tables[sym] = int(sum(int(f.tables[sym]) * w for f, w in zip(factors, weights)))
        elif arity == 1:
            acc = np.zeros(size, dtype=np.int64)
            for c, f in enumerate(factors):
                acc += f.tables[sym][digits[:, c]] * weights[c]
            tables[sym] = acc
        else:
            acc = np.zeros((size, size), dtype=np.int64)
            for c, f in enumerate(factors):
                acc += f.tables[sym][digits[:, None, c], digits[None, :, c]] * weights[c]
            tables[sym] = acc

    neutral = None
    if all(f.neutral is not None for f in factors):
        neutral = int(sum(f.neutral * w for f, w in zip(factors, weights)))
    if name is None:
        name = "x".join(f.name for f in factors)
    return FiniteAlgebra(sig, size, tables, neutral=neutral, name=name, components=factors)


def direct_product(a: FiniteAlgebra, b: FiniteAlgebra, max_size: int = DEFAULT_MAX_SIZE) -> FiniteAlgebra:
    if a.kind != b.kind:
        raise SignatureMismatch(f"cannot multiply a {a.kind} by a {b.kind}")
    return product_of([a, b], name=f"{a.name}x{b.name}", max_size=max_size)


def direct_power(a: FiniteAlgebra, width: int, max_size: int = DEFAULT_MAX_SIZE) -> FiniteAlgebra:
    """Width-``width`` truncation of the infinite direct power of ``a``."""
    if width < 1:
        raise AlgebraError("width must be at least 1")
    if a.size ** width > max_size:
        raise SizeError(f"{a.name}^{width} would have {a.size ** width} elements (limit {max_size})")
    return product_of([a] * width, name=f"{a.name}^{width}", max_size=max_size)


def support(e: PowerElement | Sequence[int], base: FiniteAlgebra) -> frozenset[int]:
    """Coordinates (1-based) where ``e`` differs from the neutral element of ``base``."""
    if base.neutral is None:
        raise UnsupportedOperation(f"{base.name} has no neutral element; support is undefined")
    entries = e.entries if isinstance(e, PowerElement) else tuple(e)
    for v in entries:
        if not 0 <= v < base.size:
            raise AlgebraError(f"entry {v} outside carrier of {base.name}")
    return frozenset(i + 1 for i, v in enumerate(entries) if v != base.neutral)


# ---------------------------------------------------------------------
# structural subsets

def center(a: FiniteAlgebra) -> StructuralSubset:
    if MUL not in a.tables:
        raise UnsupportedOperation("center needs a binary '*' operation")
    t = a.tables[MUL]
    commuting = np.all(t == t.T, axis=1)
    return StructuralSubset(frozenset(int(i) for i in np.flatnonzero(commuting)), "center")


def right_annihilator(r: FiniteAlgebra) -> StructuralSubset:
    if r.kind != "ring":
        raise UnsupportedOperation(f"right annihilator needs a ring, got {r.kind}")
    t = r.tables[MUL]
    killed = np.all(t == r.neutral, axis=0)
    return StructuralSubset(frozenset(int(i) for i in np.flatnonzero(killed)), "right-annihilator")


def is_commutative(a: FiniteAlgebra, symbol: str = MUL) -> bool:
    t = a.tables[symbol]
    return bool(np.array_equal(t, t.T))


def magma_from_term(a: FiniteAlgebra, p, x: str = "x", y: str = "y", name: str | None = None) -> FiniteAlgebra:
    """The magma ``(A, p)``: same carrier, product ``p(x, y)``."""
    from .terms import free_variables, symbols_of
    from .solver import eval_term

    extra = set(free_variables(p)) - {x, y}
    if extra:
        raise AlgebraError(f"term has variables other than {x}, {y}: {sorted(extra)}")
    missing = symbols_of(p) - set(a.signature.names)
    if missing:
        raise UnsupportedOperation(f"term uses symbols not in {a.name}'s signature: {sorted(missing)}")
    table = np.empty((a.size, a.size), dtype=np.int64)
    for u in range(a.size):
        for v in range(a.size):
            table[u, v] = eval_term(p, {x: u, y: v}, a)
    from .terms import print_term
    return FiniteAlgebra(MAGMA, a.size, {MUL: table}, name=name or f"({a.name},{print_term(p)})",
                         element_names=a.element_names)


# ---------------------------------------------------------------------
# JSON files

def algebra_to_json(a: FiniteAlgebra) -> str:
    doc = {"name": a.name, "kind": a.kind, "size": a.size,
           "tables": {sym: a.tables[sym].tolist() for sym in a.signature.names}}
    if a.neutral is not None:
        doc["neutral"] = a.neutral
    if a.element_names is not None:
        doc["element_names"] = list(a.element_names)
    return json.dumps(doc, separators=(", ", ": ")) + "\n"


def algebra_from_json(text: str) -> FiniteAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedAlgebraError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedAlgebraError("algebra file must hold a JSON object")
    for key in ("kind", "size", "tables"):
        if key not in doc:
            raise MalformedAlgebraError(f"algebra file lacks {key!r}")
    kind = doc["kind"]
    tables = doc["tables"]
    if not isinstance(tables, dict) or not isinstance(doc["size"], int):
        raise MalformedAlgebraError("'tables' must be an object and 'size' an integer")
    if kind in _STANDARD:
        sig = _STANDARD[kind]
    else:
        sig = Signature(tuple((s, np.ndim(t)) for s, t in tables.items()), "custom")
    try:
        return FiniteAlgebra(sig, doc["size"], tables, neutral=doc.get("neutral"),
                             name=doc.get("name", "A"), element_names=doc.get("element_names"))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, AlgebraError):
            raise
        raise MalformedAlgebraError(str(exc)) from None


def load_algebra(path) -> FiniteAlgebra:
    with open(path, encoding="utf-8") as fh:
        return algebra_from_json(fh.read())


def save_algebra(a: FiniteAlgebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(algebra_to_json(a))
