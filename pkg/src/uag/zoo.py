"""Small named algebras used throughout the tests and demos.

The builders here generate the JSON files under ``uag/data``; ``load``
reads the shipped files.
"""
from __future__ import annotations

from importlib import resources

import numpy as np

from .algebra import (GROUP, MONOID, RING, FiniteAlgebra, algebra_from_json,
                      algebra_to_json)

__all__ = ["NAMES", "load", "build", "cyclic_group", "symmetric3", "dihedral4",
           "quaternion8", "cyclic_ring", "zero_ring", "semilattice2", "m3"]


def _group_from_mult(name, mul, names=None):
    mul = np.asarray(mul)
    k = len(mul)
    e = next(i for i in range(k) if all(mul[i, x] == x for x in range(k)))
    inv = [next(y for y in range(k) if mul[x, y] == e) for x in range(k)]
    return FiniteAlgebra(GROUP, k, {"*": mul, "^-1": inv, "e": e}, name=name, element_names=names)


def cyclic_group(n: int) -> FiniteAlgebra:
    mul = [[(x + y) % n for y in range(n)] for x in range(n)]
    return _group_from_mult(f"Z{n}", mul)


def _perm_group(name, perms, names):
    index = {p: i for i, p in enumerate(perms)}
    # composition: (p*q)(i) = q(p(i)), apply p first
    mul = [[index[tuple(q[p[i]] for i in range(len(p)))] for q in perms] for p in perms]
    return _group_from_mult(name, mul, names)


def symmetric3() -> FiniteAlgebra:
    perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
    return _perm_group("S3", perms, names)


def dihedral4() -> FiniteAlgebra:
    # symmetries of a square acting on vertices 0..3
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)

    def compose(p, q):
        return tuple(q[p[i]] for i in range(4))

    elems = [(0, 1, 2, 3)]
    for _ in range(3):
        elems.append(compose(elems[-1], r))
    elems += [compose(s, g) for g in elems[:4]]
    names = ["e", "r", "r2", "r3", "s", "sr", "sr2", "sr3"]
    return _perm_group("D4", elems, names)


def quaternion8() -> FiniteAlgebra:
    basis = ["1", "i", "j", "k"]
    unit = {("1", b): (1, b) for b in basis}
    unit.update({(b, "1"): (1, b) for b in basis})
    unit.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, b) for s in (1, -1) for b in basis]
    index = {el: i for i, el in enumerate(elems)}
    mul = [[index[(s1 * s2 * unit[b1, b2][0], unit[b1, b2][1])] for (s2, b2) in elems]
           for (s1, b1) in elems]
    names = [("" if s == 1 else "-") + b for s, b in elems]
    return _group_from_mult("Q8", mul, names)


def cyclic_ring(n: int) -> FiniteAlgebra:
    add = [[(x + y) % n for y in range(n)] for x in range(n)]
    mul = [[(x * y) % n for y in range(n)] for x in range(n)]
    neg = [(-x) % n for x in range(n)]
    return FiniteAlgebra(RING, n, {"+": add, "-": neg, "*": mul, "0": 0}, name=f"Z{n}ring")


def zero_ring(n: int) -> FiniteAlgebra:
    """``Z_n`` with zero multiplication."""
    add = [[(x + y) % n for y in range(n)] for x in range(n)]
    neg = [(-x) % n for x in range(n)]
    return FiniteAlgebra(RING, n, {"+": add, "-": neg, "*": np.zeros((n, n), int), "0": 0},
                         name=f"Z{n}zero")


def semilattice2() -> FiniteAlgebra:
    """``L2 = {0, 1}`` under min; 1 is the identity."""
    return FiniteAlgebra(MONOID, 2, {"*": [[0, 0], [0, 1]], "e": 1}, name="L2")


def m3() -> FiniteAlgebra:
    """``{1, a, b}`` with ``ab = a``, ``ba = b`` (a left-zero band with identity adjoined)."""
    mul = [[0, 1, 2],
           [1, 1, 1],
           [2, 2, 2]]
    return FiniteAlgebra(MONOID, 3, {"*": mul, "e": 0}, name="M3", element_names=["1", "a", "b"])


_BUILDERS = {
    "s3": symmetric3,
    "d4": dihedral4,
    "q8": quaternion8,
    "z2": lambda: cyclic_group(2),
    "z4": lambda: cyclic_group(4),
    "z2ring": lambda: cyclic_ring(2),
    "z4ring": lambda: cyclic_ring(4),
    "z2zero": lambda: zero_ring(2),
    "z4zero": lambda: zero_ring(4),
    "l2": semilattice2,
    "m3": m3,
}

NAMES = tuple(_BUILDERS)


def build(name: str) -> FiniteAlgebra:
    return _BUILDERS[name]()


def load(name: str) -> FiniteAlgebra:
    """Read a bundled algebra file, e.g. ``load("s3")``."""
    if name not in _BUILDERS:
        raise KeyError(f"no bundled algebra {name!r}; choose from {', '.join(NAMES)}")
    text = resources.files("uag").joinpath("data", f"{name}.json").read_text(encoding="utf-8")
    return algebra_from_json(text)


def write_data(directory) -> None:
    from pathlib import Path
    for name in NAMES:
        Path(directory, f"{name}.json").write_text(algebra_to_json(build(name)), encoding="utf-8")
