"""Propositional formulas and two interchangeable entailment engines.

``entails``/``consistent`` decide by exhaustive truth tables (vectorised with
numpy) and are the reference. ``entails_fast``/``consistent_fast`` clausify by
rewriting and distribution, then run a unit-propagating DPLL search. No
definitional variables are introduced, so both engines range over exactly
the same atoms.

:class:`Theory` is the oracle the operator calls: it fixes an ontology and
answers "what does the ontology plus these positive and negative units
entail" for many unit sets, with memoisation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import SignatureTooLarge

DEFAULT_MAX_ATOMS = 20


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Falsum:
    """The contradiction constant."""


Formula = Union[Atom, Not, And, Or, Implies, Iff, Falsum]
FALSUM = Falsum()


def atoms_of(formulas: Union[Formula, Iterable[Formula]]) -> list[str]:
    """Atom names in order of first occurrence."""
    if not isinstance(formulas, (list, tuple)):
        formulas = [formulas]
    seen: dict[str, None] = {}
    stack = list(reversed(formulas))
    while stack:
        f = stack.pop()
        if isinstance(f, Atom):
            seen.setdefault(f.name)
        elif isinstance(f, Not):
            stack.append(f.arg)
        elif isinstance(f, (And, Or, Implies, Iff)):
            stack.append(f.right)
            stack.append(f.left)
    return list(seen)


def evaluate(f: Formula, value: Mapping[str, bool]) -> bool:
    if isinstance(f, Atom):
        return value[f.name]
    if isinstance(f, Not):
        return not evaluate(f.arg, value)
    if isinstance(f, And):
        return evaluate(f.left, value) and evaluate(f.right, value)
    if isinstance(f, Or):
        return evaluate(f.left, value) or evaluate(f.right, value)
    if isinstance(f, Implies):
        return (not evaluate(f.left, value)) or evaluate(f.right, value)
    if isinstance(f, Iff):
        return evaluate(f.left, value) == evaluate(f.right, value)
    if isinstance(f, Falsum):
        return False
    raise TypeError(f"not a formula: {f!r}")


# -- truth tables -------------------------------------------------------------


def _columns(n: int) -> np.ndarray:
    rows = np.arange(1 << n, dtype=np.uint64)
    shifts = np.arange(n, dtype=np.uint64)[:, None]
    return ((rows[None, :] >> shifts) & np.uint64(1)).astype(bool)


def _table(f: Formula, index: Mapping[str, int], cols: np.ndarray) -> np.ndarray:
    if isinstance(f, Atom):
        return cols[index[f.name]]
    if isinstance(f, Not):
        return ~_table(f.arg, index, cols)
    if isinstance(f, Falsum):
        return np.zeros(cols.shape[1], dtype=bool)
    left = _table(f.left, index, cols)
    right = _table(f.right, index, cols)
    if isinstance(f, And):
        return left & right
    if isinstance(f, Or):
        return left | right
    if isinstance(f, Implies):
        return ~left | right
    if isinstance(f, Iff):
        return left == right
    raise TypeError(f"not a formula: {f!r}")


def _satisfying_rows(formulas: Sequence[Formula], names: Sequence[str], max_atoms: int) -> np.ndarray:
    if len(names) > max_atoms:
        raise SignatureTooLarge(f"{len(names)} atoms exceeds the truth-table cap of {max_atoms}")
    index = {name: i for i, name in enumerate(names)}
    cols = _columns(len(names))
    ok = np.ones(cols.shape[1], dtype=bool)
    for f in formulas:
        ok &= _table(f, index, cols)
    return ok


def consistent(premises: Sequence[Formula], max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    premises = list(premises)
    return bool(_satisfying_rows(premises, atoms_of(premises), max_atoms).any())


def entails(premises: Sequence[Formula], conclusion: Formula, max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    """Every assignment satisfying all premises satisfies ``conclusion``."""
    premises = list(premises)
    return not consistent(premises + [Not(conclusion)], max_atoms)


# -- clausal search -----------------------------------------------------------

Clause = frozenset


def _product(left: list[Clause], right: list[Clause]) -> list[Clause]:
    out = []
    for a, b in product(left, right):
        c = a | b
        if not any(-lit in c for lit in c):
            out.append(c)
    return out


def _cnf(f: Formula, index: Mapping[str, int], positive: bool) -> list[Clause]:
    if isinstance(f, Atom):
        v = index[f.name] + 1
        return [Clause([v if positive else -v])]
    if isinstance(f, Not):
        return _cnf(f.arg, index, not positive)
    if isinstance(f, Falsum):
        return [Clause()] if positive else []
    if isinstance(f, Implies):
        return _cnf(Or(Not(f.left), f.right), index, positive)
    if isinstance(f, Iff):
        l, r = f.left, f.right
        if positive:
            rewritten = And(Or(Not(l), r), Or(l, Not(r)))
        else:
            rewritten = And(Or(l, r), Or(Not(l), Not(r)))
        return _cnf(rewritten, index, True)
    conjunctive = isinstance(f, And) == positive
    left = _cnf(f.left, index, positive)
    right = _cnf(f.right, index, positive)
    return left + right if conjunctive else _product(left, right)


def clausify(formulas: Iterable[Formula], index: Mapping[str, int]) -> list[Clause]:
    """CNF clauses over literals ``±(index[name] + 1)``."""
    clauses: list[Clause] = []
    for f in formulas:
        clauses.extend(_cnf(f, index, True))
    return clauses


def _assign(clauses: list[Clause], lit: int) -> list[Clause] | None:
    out = []
    for c in clauses:
        if lit in c:
            continue
        if -lit in c:
            c = c - {-lit}
            if not c:
                return None
        out.append(c)
    return out


def satisfiable(clauses: Iterable[Clause]) -> bool:
    """DPLL with unit propagation; branches on a literal of a shortest clause."""
    clauses = list(clauses)
    if any(not c for c in clauses):
        return False
    return _dpll(clauses)


def _dpll(clauses: list[Clause]) -> bool:
    while clauses:
        unit = next((c for c in clauses if len(c) == 1), None)
        if unit is None:
            break
        (lit,) = unit
        clauses = _assign(clauses, lit)
        if clauses is None:
            return False
    if not clauses:
        return True
    lit = next(iter(min(clauses, key=len)))
    for choice in (lit, -lit):
        rest = _assign(clauses, choice)
        if rest is not None and _dpll(rest):
            return True
    return False


def consistent_fast(premises: Sequence[Formula]) -> bool:
    premises = list(premises)
    index = {name: i for i, name in enumerate(atoms_of(premises))}
    return satisfiable(clausify(premises, index))


def entails_fast(premises: Sequence[Formula], conclusion: Formula) -> bool:
    premises = list(premises)
    return not consistent_fast(premises + [Not(conclusion)])


# -- ontology oracle ----------------------------------------------------------


@dataclass(frozen=True)
class Profile:
    """What ``ontology + pos + ~neg`` decides about each atom (as bit masks).

    An inconsistent premise set entails every literal, so both masks are full.
    """

    consistent: bool
    true: int
    false: int


class Theory:
    """A fixed ontology over an ordered atom signature, queried with unit sets.

    Atoms are addressed by their position in ``names``; ``pos`` and ``neg``
    in :meth:`profile` are bit masks over that order. With at most
    ``max_table_atoms`` atoms the ontology's models are tabulated once and
    each query filters the table; beyond that every query goes to DPLL.
    """

    def __init__(self, formulas: Sequence[Formula], names: Sequence[str],
                 max_table_atoms: int = DEFAULT_MAX_ATOMS):
        self.formulas = tuple(formulas)
        self.names = tuple(names)
        self.full = (1 << len(self.names)) - 1
        missing = set(atoms_of(list(self.formulas))) - set(self.names)
        if missing:
            raise ValueError(f"ontology mentions atoms outside the signature: {sorted(missing)}")
        self.index = {name: i for i, name in enumerate(self.names)}
        self._models: np.ndarray | None = None
        self._clauses: list[Clause] | None = None
        if len(self.names) <= max_table_atoms:
            ok = _satisfying_rows(self.formulas, self.names, max_table_atoms)
            self._models = np.flatnonzero(ok).astype(np.uint64)
        else:
            self._clauses = clausify(self.formulas, self.index)
        self.profile = lru_cache(maxsize=None)(self._profile)

    @property
    def tabulated(self) -> bool:
        return self._models is not None

    def _profile(self, pos: int, neg: int) -> Profile:
        if pos & neg:
            return Profile(False, self.full, self.full)
        if self._models is not None:
            m = self._models
            sel = m[((m & np.uint64(pos)) == np.uint64(pos)) & ((m & np.uint64(neg)) == 0)]
            if sel.size == 0:
                return Profile(False, self.full, self.full)
            must_true = int(np.bitwise_and.reduce(sel))
            may_true = int(np.bitwise_or.reduce(sel))
            return Profile(True, must_true, self.full & ~may_true)
        return self._profile_search(pos, neg)

    def _profile_search(self, pos: int, neg: int) -> Profile:
        units = [Clause([i + 1]) for i in range(len(self.names)) if pos >> i & 1]
        units += [Clause([-(i + 1)]) for i in range(len(self.names)) if neg >> i & 1]
        base = self._clauses + units
        if not satisfiable(base):
            return Profile(False, self.full, self.full)
        must_true = must_false = 0
        for i in range(len(self.names)):
            if not satisfiable(base + [Clause([-(i + 1)])]):
                must_true |= 1 << i
            elif not satisfiable(base + [Clause([i + 1])]):
                must_false |= 1 << i
        return Profile(True, must_true, must_false)

    def consistent(self, pos: int = 0, neg: int = 0) -> bool:
        return self.profile(pos, neg).consistent
