"""The recurrent approximator for hybrid knowledge bases.

Slots 1 and 4 are built from two ``add`` functions (ontology consequences and
rule firing) and two ``extract`` functions that block atoms in the upper
bound. ``extract0`` reasons with the ontology under sets ``B`` of atoms that
an earlier round already established as false; ``extract1`` blocks body atoms
of rules whose head and negative body are false. All sets are bit masks over
``kb.lattice``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .aft import TetraApproximator, stable_revision_tetra
from .kb import KnowledgeBase
from .lattice import TetraElement, lfp


@dataclass(frozen=True)
class FilterStrategy:
    """Chooses which subsets ``B`` of the false atoms ``extract0`` may assume.

    ``bound`` caps ``|B|`` (``None`` means no cap). ``empty`` yields no
    candidates at all, not even the empty set.
    """

    name: str
    bound: int | None = None
    empty: bool = False

    def candidates(self, f: int) -> Iterator[int]:
        """Subsets of ``f`` ordered by size, then lexicographically by atom id."""
        if self.empty:
            return
        bits = [1 << i for i in range(f.bit_length()) if f >> i & 1]
        top = len(bits) if self.bound is None else min(self.bound, len(bits))
        for size in range(top + 1):
            for combo in combinations(bits, size):
                yield sum(combo)

    def __call__(self, f: int) -> frozenset[int]:
        return frozenset(self.candidates(f))

    def __str__(self) -> str:
        return self.name


EMPTY = FilterStrategy("empty", empty=True)
NONE = FilterStrategy("none", bound=0)
SINGLETONS = FilterStrategy("singletons", bound=1)
POWERSET = FilterStrategy("powerset")


def bounded_subsets(k: int) -> FilterStrategy:
    if k < 0:
        raise ValueError("subset bound must be non-negative")
    return FilterStrategy(f"subsets:{k}", bound=k)


def parse_filter(text: str) -> FilterStrategy:
    """``none | empty | singletons | subsets:K | powerset``."""
    fixed = {"none": NONE, "empty": EMPTY, "singletons": SINGLETONS, "powerset": POWERSET}
    if text in fixed:
        return fixed[text]
    if text.startswith("subsets:"):
        try:
            k = int(text.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad subset bound in {text!r}") from None
        return bounded_subsets(k)
    raise ValueError(f"unknown filter {text!r}")


@dataclass(frozen=True)
class PhiConfig:
    filter: FilterStrategy = SINGLETONS
    #: baseline: no extract1, and extract0 only with B = {} (no stale false atoms)
    legacy: bool = False


# -- the four building blocks -------------------------------------------------


def add0(kb: KnowledgeBase, t: int) -> int:
    return kb.theory.profile(t, 0).true & kb.ka


def add1(kb: KnowledgeBase, t: int, p: int) -> int:
    out = 0
    for r in kb.compiled:
        if r.pos & ~t == 0 and r.neg & p == 0:
            out |= r.head
    return out


def extract0(kb: KnowledgeBase, t: int, f: int, p: int, filter: FilterStrategy = SINGLETONS) -> int:
    theory, ka = kb.theory, kb.ka
    out = 0
    for b in filter.candidates(f):
        if not theory.consistent(p, b):
            continue
        out |= theory.profile(t, b).false & ka
        if out == ka:
            break
    return out


def extract1(kb: KnowledgeBase, t: int, f: int) -> int:
    out = 0
    for r in kb.compiled:
        if r.head & f and r.neg & ~f == 0:
            missing = r.pos & ~t
            if missing == 0:
                out |= r.pos
            elif missing & (missing - 1) == 0:
                out |= missing
    return out


def phi(kb: KnowledgeBase, cfg: PhiConfig, x) -> TetraElement:
    t, f, _u, p = x
    ka = kb.ka
    lower = add0(kb, t) | add1(kb, t, p)
    if cfg.legacy:
        blocked = extract0(kb, t, f, p, NONE)
    else:
        blocked = extract0(kb, t, f, p, cfg.filter) | extract1(kb, t, f)
    upper = (add0(kb, p) | add1(kb, p, t)) & ~blocked
    return TetraElement(lower, ka ^ p, ka ^ t, upper)


def phi_operator(kb: KnowledgeBase, cfg: PhiConfig = PhiConfig()) -> TetraApproximator:
    """Φ as a memoised :class:`TetraApproximator` over ``kb.lattice``."""

    @lru_cache(maxsize=None)
    def apply(t: int, f: int, p: int) -> TetraElement:
        return phi(kb, cfg, (t, f, 0, p))

    ka = kb.ka

    def fn(x: TetraElement) -> TetraElement:
        y = apply(x.t, x.f, x.p)
        # U is never read; only slot 3 depends on the input's T
        return TetraElement(y.t, y.f, ka ^ x.t, y.p)

    name = "Φ[legacy]" if cfg.legacy else f"Φ[{cfg.filter}]"
    return TetraApproximator(kb.lattice, fn, recurrent=True, reads_u=False, name=name)


# -- model checking -----------------------------------------------------------


def upper_closure(kb: KnowledgeBase, t: int) -> int:
    """Least X with X = add0(X) | add1(X, t): the unblocked upper bound for T."""
    return lfp(lambda x: add0(kb, x) | add1(kb, x, t), 0, len(kb.lattice) + 2)


@dataclass(frozen=True)
class ModelVerdict:
    subset: bool
    fixpoint: bool
    consistent: bool

    @property
    def model(self) -> bool:
        return self.subset and self.fixpoint and self.consistent


def check_model(kb: KnowledgeBase, cfg: PhiConfig, t: int, p: int,
                op: TetraApproximator | None = None) -> ModelVerdict:
    """The three conditions under which (T, P) is induced by a 3-valued model."""
    if op is None:
        op = phi_operator(kb, cfg)
    x = kb.lattice.to_tetra((t, p))
    return ModelVerdict(
        subset=t & ~p == 0,
        fixpoint=stable_revision_tetra(op, x) == x,
        consistent=kb.theory.consistent(upper_closure(kb, t)),
    )


def sanity_threevalued(kb: KnowledgeBase, t: int, p: int) -> bool:
    """Rule satisfaction under the 3-valued reading of (T, P), plus consistency.

    A necessary condition for (T, P) to be induced by a model, evaluated
    without any stable revision.
    """
    if t & ~p:
        raise ValueError("sanity check needs T within P")

    def value(bit: int) -> int:
        return 2 if t & bit else 1 if p & bit else 0

    for r in kb.compiled:
        body = 2
        for i in range(r.pos.bit_length()):
            if r.pos >> i & 1:
                body = min(body, value(1 << i))
        for i in range(r.neg.bit_length()):
            if r.neg >> i & 1:
                body = min(body, 2 - value(1 << i))
        if value(r.head) < body:
            return False
    return kb.theory.consistent(p) and kb.theory.consistent(t)
