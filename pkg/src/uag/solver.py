"""Exact brute-force solving of equation systems over finite algebras.

Assignments are enumerated in lexicographic order of the system's variable
list.  Each chunk of the assignment space is evaluated with numpy, and
equations are applied one at a time so rejected assignments drop out early.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .algebra import AlgebraError, FiniteAlgebra, SizeError
from .terms import Const, EqSystem, Equation, Term, Var, free_variables

__all__ = [
    "DEFAULT_BUDGET", "BudgetExceeded", "SolutionSet", "default_budget",
    "eval_term", "holds", "solve", "entails", "counterexample", "equivalent",
    "minimal_equivalent_prefix", "descent_profile",
]

DEFAULT_BUDGET = 10 ** 8
CHUNK = 1 << 16


class BudgetExceeded(SizeError):
    pass


class EvaluationError(AlgebraError):
    pass


def default_budget() -> int:
    env = os.environ.get("UAG_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _const_value(c: Const, a: FiniteAlgebra) -> int:
    if isinstance(c.value, tuple):
        return a.encode(c.value)
    if not 0 <= c.value < a.size:
        raise EvaluationError(f"constant #{c.value} outside carrier of {a.name}")
    return c.value


def eval_term(t: Term, asg: Mapping[str, int], a: FiniteAlgebra) -> int:
    if isinstance(t, Var):
        try:
            return int(asg[t.name])
        except KeyError:
            raise EvaluationError(f"variable {t.name!r} is unbound") from None
    if isinstance(t, Const):
        return _const_value(t, a)
    table = a.tables.get(t.op)
    if table is None:
        raise EvaluationError(f"symbol {t.op!r} is not in {a.name}'s signature")
    args = tuple(eval_term(s, asg, a) for s in t.args)
    return int(table[args])


def holds(e: Equation, asg: Mapping[str, int], a: FiniteAlgebra) -> bool:
    return eval_term(e.lhs, asg, a) == eval_term(e.rhs, asg, a)


def _eval_vec(t: Term, cols: Mapping[str, np.ndarray], a: FiniteAlgebra):
    """Evaluate ``t`` on many assignments at once; constants stay scalars."""
    if isinstance(t, Var):
        try:
            return cols[t.name]
        except KeyError:
            raise EvaluationError(f"variable {t.name!r} is unbound") from None
    if isinstance(t, Const):
        return np.int64(_const_value(t, a))
    table = a.tables.get(t.op)
    if table is None:
        raise EvaluationError(f"symbol {t.op!r} is not in {a.name}'s signature")
    args = tuple(_eval_vec(s, cols, a) for s in t.args)
    return table[args] if args else table[()]


@dataclass(frozen=True)
class SolutionSet:
    """Solutions as lexicographically sorted tuples over ``variables``."""
    variables: tuple[str, ...]
    algebra: str
    rows: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __contains__(self, row) -> bool:
        return tuple(row) in self.as_set()

    def as_set(self) -> frozenset:
        return frozenset(self.rows)

    def __eq__(self, other):
        if not isinstance(other, SolutionSet):
            return NotImplemented
        return self.variables == other.variables and self.as_set() == other.as_set()

    def __hash__(self):
        return hash((self.variables, self.as_set()))

    def assignments(self) -> Iterable[dict[str, int]]:
        for row in self.rows:
            yield dict(zip(self.variables, row))

    def to_dict(self) -> dict:
        return {"variables": list(self.variables), "algebra": self.algebra,
                "solutions": [list(r) for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "SolutionSet":
        doc = json.loads(text)
        rows = tuple(sorted(tuple(r) for r in doc["solutions"]))
        return cls(tuple(doc["variables"]), doc["algebra"], rows)


def _check_vars(s: EqSystem, a: FiniteAlgebra, budget: int | None) -> int:
    budget = default_budget() if budget is None else budget
    total = a.size ** len(s.variables)
    if total > budget:
        raise BudgetExceeded(
            f"{a.size}^{len(s.variables)} = {total} assignments exceeds budget {budget}")
    return total


def _columns(idx: np.ndarray, n: int, k: int) -> list[np.ndarray]:
    cols = []
    for v in range(n):
        cols.append((idx // k ** (n - 1 - v)) % k)
    return cols


def _filter(equations, variables, a, cols):
    """Apply equations in order, keeping the columns of surviving assignments."""
    sizes = []
    for eq in equations:
        env = dict(zip(variables, cols))
        lhs, rhs = _eval_vec(eq.lhs, env, a), _eval_vec(eq.rhs, env, a)
        keep = np.broadcast_to(lhs == rhs, cols[0].shape if cols else ())
        if cols:
            cols = [c[keep] for c in cols]
            sizes.append(len(cols[0]))
        else:
            sizes.append(1 if bool(keep) else 0)
            if not keep:
                break
    return cols, sizes


def _solve_chunk(args):
    equations, variables, a, lo, hi = args
    n, k = len(variables), a.size
    if n == 0:
        cols, sizes = _filter(equations, variables, a, [])
        ok = not sizes or sizes[-1] == 1
        return np.empty((1 if ok else 0, 0), dtype=np.int64), sizes
    idx = np.arange(lo, hi, dtype=np.int64)
    cols, sizes = _filter(equations, variables, a, _columns(idx, n, k))
    return np.stack(cols, axis=1), sizes


def _chunks(total):
    return [(lo, min(lo + CHUNK, total)) for lo in range(0, total, CHUNK)] or [(0, 0)]


def _run(s: EqSystem, a: FiniteAlgebra, budget, workers):
    total = _check_vars(s, a, budget)
    if not s.variables:
        total = 1
    jobs = [(s.equations, s.variables, a, lo, hi) for lo, hi in _chunks(total)]
    if workers and workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_solve_chunk, jobs))
    else:
        parts = [_solve_chunk(j) for j in jobs]
    return total, parts


def solve(s: EqSystem, a: FiniteAlgebra, budget: int | None = None, workers: int = 1) -> SolutionSet:
    """All assignments in ``a^n`` satisfying every equation of ``s``."""
    _, parts = _run(s, a, budget, workers)
    rows = np.concatenate([p for p, _ in parts], axis=0)
    return SolutionSet(s.variables, a.name, tuple(tuple(int(v) for v in r) for r in rows))


def descent_profile(s: EqSystem, a: FiniteAlgebra, budget: int | None = None,
                    workers: int = 1) -> list[int]:
    """``[|V(first 0)|, |V(first 1)|, ..., |V(all)|]``."""
    total, parts = _run(s, a, budget, workers)
    profile = [total]
    for i in range(len(s.equations)):
        profile.append(sum(sizes[i] if i < len(sizes) else 0 for _, sizes in parts))
    return profile


def minimal_equivalent_prefix(s: EqSystem, a: FiniteAlgebra, budget: int | None = None,
                              workers: int = 1) -> tuple[int, list[int]]:
    """Smallest ``k`` whose first-``k`` subsystem has the full solution set.

    Prefix solution sets are nested, so equal sizes mean equal sets.
    """
    profile = descent_profile(s, a, budget, workers)
    k = next(i for i, size in enumerate(profile) if size == profile[-1])
    return k, profile


def counterexample(s: EqSystem, e: Equation, a: FiniteAlgebra, budget: int | None = None,
                   workers: int = 1) -> dict[str, int] | None:
    """First solution of ``s`` (lexicographically) violating ``e``, or None."""
    extra = set(free_variables(e)) - set(s.variables)
    if extra:
        raise EvaluationError(f"equation uses variables outside the system: {sorted(extra)}")
    sols = solve(s, a, budget, workers)
    if not sols.rows:
        return None
    arr = np.array(sols.rows, dtype=np.int64).reshape(len(sols.rows), len(s.variables))
    env = {v: arr[:, i] for i, v in enumerate(s.variables)}
    good = np.broadcast_to(_eval_vec(e.lhs, env, a) == _eval_vec(e.rhs, env, a), (len(arr),))
    bad = np.flatnonzero(~good)
    if not bad.size:
        return None
    return dict(zip(s.variables, sols.rows[bad[0]]))


def entails(s: EqSystem, e: Equation, a: FiniteAlgebra, budget: int | None = None,
            workers: int = 1) -> bool:
    """Whether every solution of ``s`` satisfies ``e`` (``V(s)`` inside ``V(e)``)."""
    return counterexample(s, e, a, budget, workers) is None


def equivalent(s1: EqSystem, s2: EqSystem, a: FiniteAlgebra, budget: int | None = None,
               workers: int = 1) -> bool:
    if s1.variables != s2.variables:
        raise ValueError(f"variable lists differ: {s1.variables} vs {s2.variables}")
    return solve(s1, a, budget, workers) == solve(s2, a, budget, workers)
