"""Ground hybrid knowledge bases: a propositional ontology plus normal rules.

Atoms are interned once per knowledge base. Atoms that occur in some rule
(the K-atoms) get the low ids ``0 .. k-1`` in order of first occurrence, so an
:class:`~recurrent_aft.lattice.PowersetLattice` over them and the entailment
oracle over the full signature share one bit layout. Ontology-only atoms
follow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .entail import Atom, Formula, Not, Theory, atoms_of
from .lattice import PowersetLattice


@dataclass(frozen=True)
class Rule:
    """``head :- pos..., not neg...`` with atoms given by name."""

    head: str
    pos: tuple[str, ...] = ()
    neg: tuple[str, ...] = ()

    def atoms(self) -> Iterable[str]:
        yield self.head
        yield from self.pos
        yield from self.neg


@dataclass(frozen=True)
class CompiledRule:
    head: int  # single-bit mask
    pos: int
    neg: int


@dataclass(frozen=True)
class KnowledgeBase:
    ontology: tuple[Formula, ...] = ()
    rules: tuple[Rule, ...] = ()
    names: tuple[str, ...] = field(init=False)
    lattice: PowersetLattice = field(init=False, compare=False, repr=False)
    compiled: tuple[CompiledRule, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "ontology", tuple(self.ontology))
        object.__setattr__(self, "rules", tuple(self.rules))
        ka: dict[str, None] = {}
        for rule in self.rules:
            for name in rule.atoms():
                ka.setdefault(name)
        lattice = PowersetLattice(list(ka))
        extra = [name for name in atoms_of(list(self.ontology)) if name not in ka]
        object.__setattr__(self, "names", lattice.names + tuple(extra))
        object.__setattr__(self, "lattice", lattice)
        enc = lattice.encode
        object.__setattr__(self, "compiled", tuple(
            CompiledRule(enc([r.head]), enc(r.pos), enc(r.neg)) for r in self.rules
        ))

    @property
    def ka(self) -> int:
        """KA(K) as a mask; by construction every K-atom is a lattice atom."""
        return self.lattice.top

    @property
    def ka_names(self) -> tuple[str, ...]:
        return self.lattice.names

    @cached_property
    def theory(self) -> Theory:
        return Theory(self.ontology, self.names)

    def with_rules(self, extra: Sequence[Rule]) -> "KnowledgeBase":
        return KnowledgeBase(self.ontology, self.rules + tuple(extra))

    def atoms(self, names: Iterable[str]) -> int:
        """Encode K-atom names; unknown names raise ``KeyError``."""
        return self.lattice.encode(names)


def ka_of(kb: KnowledgeBase) -> int:
    mask = 0
    for rule in kb.compiled:
        mask |= rule.head | rule.pos | rule.neg
    return mask


def ob_of(kb: KnowledgeBase, s: int) -> list[Formula]:
    """The ontology plus a positive unit for each atom of ``s``."""
    return list(kb.ontology) + [Atom(name) for name in kb.lattice.decode(s)]


def ob_of_neg(kb: KnowledgeBase, p: int, b: int) -> list[Formula]:
    """``ob_of(kb, p)`` plus a negative unit for each atom of ``b``."""
    return ob_of(kb, p) + [Not(Atom(name)) for name in kb.lattice.decode(b)]
