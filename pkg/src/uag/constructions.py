"""Equation systems witnessing the failure of q-compactness in direct powers,
the product projection, and end-to-end checks that tie them together.

All infinite powers are replaced by width-``N`` truncations.  In the
builders, the constant for prefix length ``j`` is ``a`` in the first ``j``
coordinates and a pad value (the neutral element, or a central element for
bare magmas) elsewhere.
"""
from __future__ import annotations

import enum
import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import algebra as alg
from .algebra import (INV, MUL, AlgebraError, FiniteAlgebra, PowerElement,
                      UnsupportedOperation, center, direct_power, support, validate_algebra)
from .solver import descent_profile, entails, eval_term, holds, solve
from .terms import App, Const, EqSystem, Equation, Term, Var, commutator

__all__ = [
    "TheoremKind", "VerificationReport", "group_system", "ring_system", "monoid_system",
    "magma_system", "semilattice_system", "witness_pair", "project_to_factor",
    "product_bijection", "random_term", "random_system", "verify_theorem", "target_equation",
]

X, Y = Var("x"), Var("y")


class TheoremKind(str, enum.Enum):
    GROUP = "GroupQCompactness"
    RING = "RingQCompactness"
    MONOID = "MonoidQCompactness"
    MAGMA = "MagmaQCompactness"
    SEMILATTICE = "SemilatticeChain"
    PRODUCT = "ProductNoetherian"

    @classmethod
    def parse(cls, text) -> "TheoremKind":
        if isinstance(text, cls):
            return text
        short = {"group": cls.GROUP, "ring": cls.RING, "monoid": cls.MONOID,
                 "magma": cls.MAGMA, "semilattice": cls.SEMILATTICE, "chain": cls.SEMILATTICE,
                 "product": cls.PRODUCT}
        if text in short:
            return short[text]
        return cls(text)


# ---------------------------------------------------------------------
# system builders

def _check_width(width):
    if width < 1:
        raise AlgebraError("width must be at least 1")


def _pad_constant(a: int, j: int, pad: int, width: int) -> Const:
    return Const((a,) * j + (pad,) * (width - j))


def _two_blocks(base, width, depth, pad, make):
    """x-block (a-major, j-minor) followed by its y-clone."""
    _check_width(width)
    depth = width if depth is None else depth
    if not 0 <= depth <= width:
        raise AlgebraError(f"prefix depth {depth} outside 0..{width}")
    blocks = []
    for var in (X, Y):
        for a in base.elements:
            for j in range(1, depth + 1):
                blocks.append(make(var, _pad_constant(a, j, pad, width)))
    return EqSystem(tuple(blocks), ("x", "y"))


def group_system(g: FiniteAlgebra, width: int, depth: int | None = None) -> EqSystem:
    """``[x, c(a^j, e^(N-j))] = e`` for every ``a`` and ``j <= depth``, plus the y-clone."""
    return _two_blocks(g, width, depth, g.neutral,
                       lambda v, c: Equation(commutator(v, c), App("e")))


def ring_system(r: FiniteAlgebra, width: int, depth: int | None = None) -> EqSystem:
    """``c(a^j, 0^(N-j)) * x = 0`` and the y-clone."""
    return _two_blocks(r, width, depth, r.neutral,
                       lambda v, c: Equation(App(MUL, (c, v)), App("0")))


def monoid_system(m: FiniteAlgebra, width: int, depth: int | None = None) -> EqSystem:
    """``x * c = c * x`` for ``c = c(a^j, 1^(N-j))``, and the y-clone."""
    return _two_blocks(m, width, depth, m.neutral,
                       lambda v, c: Equation(App(MUL, (v, c)), App(MUL, (c, v))))


def magma_system(m: FiniteAlgebra, width: int, depth: int | None = None,
                 pad: int | None = None) -> EqSystem:
    """Commutation system padded with a central element (smallest by default)."""
    if pad is None:
        z = center(m)
        if not z.elements:
            raise UnsupportedOperation(f"{m.name} has empty center; no pad element")
        pad = min(z.elements)
    return _two_blocks(m, width, depth, pad,
                       lambda v, c: Equation(App(MUL, (v, c)), App(MUL, (c, v))))


def semilattice_system(width: int, zero: int = 0, one: int = 1) -> EqSystem:
    """``x * c(0^j, 1^(N-j)) = x`` for ``j = 0 .. N-1`` over ``L2^N``."""
    _check_width(width)
    eqs = [Equation(App(MUL, (X, Const((zero,) * j + (one,) * (width - j)))), X)
           for j in range(width)]
    return EqSystem(tuple(eqs), ("x",))


def target_equation(kind: TheoremKind) -> Equation:
    kind = TheoremKind.parse(kind)
    if kind is TheoremKind.GROUP:
        return Equation(commutator(X, Y), App("e"))
    if kind is TheoremKind.RING:
        return Equation(App(MUL, (X, Y)), App("0"))
    if kind in (TheoremKind.MONOID, TheoremKind.MAGMA):
        return Equation(App(MUL, (X, Y)), App(MUL, (Y, X)))
    raise ValueError(f"{kind.value} has no target equation")


def witness_pair(base: FiniteAlgebra, alpha: int, beta: int, n: int, width: int,
                 pad: int | None = None) -> tuple[PowerElement, PowerElement]:
    """Pad everywhere except coordinate ``n + 1`` (1-based), which holds alpha / beta."""
    if width < n + 1:
        raise AlgebraError(f"width {width} too small for prefix depth {n}; need at least {n + 1}")
    if pad is None:
        if base.neutral is None:
            raise UnsupportedOperation(f"{base.name} has no neutral element; pass a pad")
        pad = base.neutral
    for v in (alpha, beta, pad):
        if not 0 <= v < base.size:
            raise AlgebraError(f"element {v} outside carrier of {base.name}")
    g = [pad] * width
    h = [pad] * width
    g[n], h[n] = alpha, beta
    return PowerElement(g), PowerElement(h)


# ---------------------------------------------------------------------
# product projection

def _project_term(t: Term, c: FiniteAlgebra, side: int, names: dict) -> Term:
    if isinstance(t, Var):
        return Var(names[t.name])
    if isinstance(t, Const):
        coords = t.value if isinstance(t.value, tuple) else c.decode(t.value)
        return Const(coords[side])
    return App(t.op, tuple(_project_term(s, c, side, names) for s in t.args))


def project_to_factor(s: EqSystem, c: FiniteAlgebra, factor: str = "left") -> EqSystem:
    """Replace each constant ``(a, b)`` by ``a`` (left) or ``b`` (right).

    Variables are renamed positionally to ``y1, y2, ...`` (left) or
    ``z1, z2, ...`` (right); equation order is preserved.
    """
    if c.components is None or len(c.components) != 2:
        raise UnsupportedOperation(f"{c.name} was not built by direct_product")
    if factor not in ("left", "right"):
        raise ValueError("factor must be 'left' or 'right'")
    side = 0 if factor == "left" else 1
    prefix = "y" if side == 0 else "z"
    names = {v: f"{prefix}{i + 1}" for i, v in enumerate(s.variables)}
    eqs = tuple(Equation(_project_term(e.lhs, c, side, names), _project_term(e.rhs, c, side, names))
                for e in s.equations)
    return EqSystem(eqs, tuple(names[v] for v in s.variables))


def product_bijection(s: EqSystem, c: FiniteAlgebra, budget=None, workers: int = 1) -> dict:
    """Check that splitting coordinates maps ``V_C(S)`` onto ``V_A(S^A) x V_B(S^B)`` bijectively."""
    a, b = c.components
    vc = solve(s, c, budget, workers)
    va = solve(project_to_factor(s, c, "left"), a, budget, workers)
    vb = solve(project_to_factor(s, c, "right"), b, budget, workers)
    image = set()
    for row in vc.rows:
        pairs = [c.decode(v) for v in row]
        image.add((tuple(p[0] for p in pairs), tuple(p[1] for p in pairs)))
    expected = {(ra, rb) for ra in va.rows for rb in vb.rows}
    return {"size_c": len(vc), "size_a": len(va), "size_b": len(vb),
            "injective": len(image) == len(vc), "onto": image == expected,
            "bijective": len(image) == len(vc) and image == expected}


# ---------------------------------------------------------------------
# random systems

def random_term(rng: random.Random, a: FiniteAlgebra, variables: Sequence[str], depth: int) -> Term:
    """A random term of height at most ``depth`` over ``a``'s signature."""
    leaves = [Var(v) for v in variables]
    ops = [(s, k) for s, k in a.signature.symbols if k > 0]
    nullary = [s for s, k in a.signature.symbols if k == 0]

    def leaf():
        roll = rng.random()
        if leaves and roll < 0.6:
            return rng.choice(leaves)
        if nullary and roll < 0.7:
            return App(rng.choice(nullary))
        if a.components is not None:
            return Const(a.decode(rng.randrange(a.size)))
        return Const(rng.randrange(a.size))

    def grow(d):
        if d == 0 or not ops or rng.random() < 0.3:
            return leaf()
        sym, arity = rng.choice(ops)
        return App(sym, tuple(grow(d - 1) for _ in range(arity)))

    return grow(depth)


def random_system(rng: random.Random, a: FiniteAlgebra, max_equations: int = 3,
                  max_variables: int = 2, depth: int = 3) -> EqSystem:
    n = rng.randint(1, max_variables)
    variables = ("x", "y", "z", "u", "v", "w")[:n]
    eqs = tuple(Equation(random_term(rng, a, variables, depth), random_term(rng, a, variables, depth))
                for _ in range(rng.randint(1, max_equations)))
    return EqSystem(eqs, variables)


# ---------------------------------------------------------------------
# verification

@dataclass
class VerificationReport:
    kind: str
    base: str
    width: int
    prefix: int | None
    hypotheses: dict = field(default_factory=dict)
    failed_hypothesis: str | None = None
    inclusion: bool | None = None
    x_block_is_center_power: bool | None = None
    witness: dict | None = None
    prefix_entails_target: bool | None = None
    profile: list | None = None
    minimal_prefix: int | None = None
    bijection: dict | None = None
    passed: bool = False

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["pass"] = d.pop("passed")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _first_pair(a: FiniteAlgebra, bad) -> tuple[int, int] | None:
    for x, y in itertools.product(a.elements, repeat=2):
        if bad(x, y):
            return x, y
    return None


_EXPECTED_KIND = {
    TheoremKind.GROUP: ("group",),
    TheoremKind.RING: ("ring",),
    TheoremKind.MONOID: ("monoid", "group"),
    TheoremKind.SEMILATTICE: ("monoid",),
}


def verify_theorem(kind, base: FiniteAlgebra, width: int, prefix: int | None = None,
                   budget=None, workers: int = 1, trials: int = 100, seed: int = 0) -> VerificationReport:
    """Run the finite-width proof obligations for one theorem on ``base``.

    For the q-compactness kinds: check the hypothesis and pick the smallest
    violating pair, check that the full width-``N`` system entails the target
    equation, and check that the witness pair solves the depth-``prefix``
    subsystem while violating the target.
    """
    kind = TheoremKind.parse(kind)
    allowed = _EXPECTED_KIND.get(kind)
    if allowed and base.kind not in allowed:
        raise AlgebraError(f"{kind.value} needs a {' or '.join(allowed)}, got a {base.kind}")
    if kind is TheoremKind.SEMILATTICE:
        return _verify_chain(base, width, budget, workers)
    if kind is TheoremKind.PRODUCT:
        return _verify_product(base, trials, seed, budget, workers)

    if prefix is None:
        raise AlgebraError(f"{kind.value} needs a prefix depth")
    if prefix < 0 or width < prefix + 1:
        raise AlgebraError(f"need 0 <= prefix and width >= prefix + 1 (got N={width}, n={prefix})")
    if MUL not in base.tables:
        raise UnsupportedOperation(f"{base.name} has no binary '*'")

    report = VerificationReport(kind.value, base.name, width, prefix)
    t = base.tables[MUL]
    hyp = report.hypotheses
    problems = validate_algebra(base)
    hyp["axioms"] = not problems
    pad = base.neutral
    if kind is TheoremKind.GROUP:
        inv, e = base.tables[INV], base.neutral
        pair = _first_pair(base, lambda a, b: t[t[t[inv[a], inv[b]], a], b] != e)
        hyp["non-abelian"] = pair is not None
        build = group_system
    elif kind is TheoremKind.RING:
        pair = _first_pair(base, lambda a, b: t[a, b] != base.neutral)
        hyp["nonzero-multiplication"] = pair is not None
        build = ring_system
    else:
        pair = _first_pair(base, lambda a, b: t[a, b] != t[b, a])
        hyp["non-commutative"] = pair is not None
        build = monoid_system
        if kind is TheoremKind.MAGMA:
            z = center(base)
            hyp["non-empty-center"] = bool(z.elements)
            pad = min(z.elements) if z.elements else None
            build = lambda m, w, depth=None: magma_system(m, w, depth, pad)
    report.failed_hypothesis = next((h for h, ok in hyp.items() if not ok), None)
    if pad is None:
        return report

    power = direct_power(base, width)
    full = build(base, width)
    target = target_equation(kind)
    report.inclusion = entails(full, target, power, budget, workers)

    x_sols = solve(full.restricted_to(["x"]), power, budget, workers)
    if kind is TheoremKind.RING:
        core = alg.right_annihilator(base).elements
    else:
        core = center(base).elements
    expected = sorted(power.encode(c) for c in itertools.product(sorted(core), repeat=width))
    report.x_block_is_center_power = [r[0] for r in x_sols.rows] == expected

    if pair is not None:
        alpha, beta = pair
        g, h = witness_pair(base, alpha, beta, prefix, width, pad=pad)
        asg = {"x": power.encode(g.entries), "y": power.encode(h.entries)}
        partial = build(base, width, prefix)
        satisfies = all(holds(eq, asg, power) for eq in partial.equations)
        lhs = eval_term(target.lhs, asg, power)
        rhs = eval_term(target.rhs, asg, power)
        report.witness = {
            "alpha": alpha, "beta": beta,
            "alpha_name": base.element_name(alpha), "beta_name": base.element_name(beta),
            "x": list(g.entries), "y": list(h.entries),
            "support": sorted(support(g, _with_neutral(base, pad))),
            "satisfies_prefix": satisfies,
            "target_lhs": list(power.decode(lhs)), "target_rhs": list(power.decode(rhs)),
            "violates_target": lhs != rhs,
        }
        report.prefix_entails_target = entails(partial, target, power, budget, workers)

    report.passed = bool(
        report.failed_hypothesis is None and report.inclusion
        and report.witness is not None and report.witness["satisfies_prefix"]
        and report.witness["violates_target"])
    return report


def _with_neutral(base, pad):
    if base.neutral == pad:
        return base
    return FiniteAlgebra(base.signature, base.size, base.tables, neutral=pad, name=base.name)


def _is_semilattice(m: FiniteAlgebra) -> bool:
    t = m.tables[MUL]
    return (not validate_algebra(m) and bool(np.array_equal(t, t.T))
            and all(t[x, x] == x for x in m.elements))


def _verify_chain(base, width, budget, workers) -> VerificationReport:
    report = VerificationReport(TheoremKind.SEMILATTICE.value, base.name, width, None)
    report.hypotheses["two-element-semilattice"] = base.size == 2 and _is_semilattice(base)
    if not report.hypotheses["two-element-semilattice"]:
        report.failed_hypothesis = "two-element-semilattice"
        return report
    one = base.neutral
    zero = 1 - one
    s = semilattice_system(width, zero, one)
    power = direct_power(base, width)
    profile = descent_profile(s, power, budget, workers)
    report.profile = profile
    report.minimal_prefix = next(i for i, v in enumerate(profile) if v == profile[-1])
    tail = profile[1:]
    strict = all(p > q for p, q in zip(tail, tail[1:]))
    report.passed = strict and report.minimal_prefix == width
    return report


def _verify_product(c, trials, seed, budget, workers) -> VerificationReport:
    report = VerificationReport(TheoremKind.PRODUCT.value, c.name, c.width if c.components else 0, None)
    report.hypotheses["is-binary-product"] = c.components is not None and len(c.components) == 2
    if not report.hypotheses["is-binary-product"]:
        report.failed_hypothesis = "is-binary-product"
        return report
    rng = random.Random(seed)
    failures = []
    sizes = []
    for i in range(trials):
        s = random_system(rng, c)
        res = product_bijection(s, c, budget, workers)
        sizes.append(res["size_c"])
        if not (res["bijective"] and res["size_c"] == res["size_a"] * res["size_b"]):
            failures.append(i)
    report.bijection = {"trials": trials, "seed": seed, "failures": failures, "solution_sizes": sizes}
    report.passed = not failures
    return report
