"""Finite complete lattices with a complement, their bilattice and tetralattice
orderings, and bounded Kleene iteration.

Elements of a :class:`PowersetLattice` are plain ``int`` bit-vectors over an
ordered signature, so every set operation is a single bitwise instruction.
Pairs and 4-tuples of elements are ordinary tuples; :class:`Approximation` and
:class:`TetraElement` are named views over them, which keeps the nested and
flattened spellings of a tetra element interchangeable.
"""

from __future__ import annotations

import random
from typing import Any, Callable, Hashable, Iterable, Iterator, NamedTuple, Sequence, Tuple

from .errors import NonConvergence

Element = Hashable
BiElement = Tuple[Any, Any]


class Approximation(NamedTuple):
    """A pair (true atoms, possibly-true atoms)."""

    t: Any
    p: Any


class TetraElement(NamedTuple):
    """A 4-tuple (T, F, U, P); equal to ``((T, F), (U, P))`` once flattened."""

    t: Any
    f: Any
    u: Any
    p: Any

    @classmethod
    def of(cls, *parts) -> "TetraElement":
        """Build from any nesting of pairs, e.g. ``of((T, F), (U, P))``."""
        flat = list(_flatten(parts))
        if len(flat) != 4:
            raise ValueError(f"expected 4 components after flattening, got {len(flat)}")
        return cls(*flat)

    @property
    def tf(self) -> BiElement:
        return (self.t, self.f)

    @property
    def up(self) -> BiElement:
        return (self.u, self.p)


def _flatten(parts) -> Iterator[Any]:
    for part in parts:
        if isinstance(part, tuple):
            yield from _flatten(part)
        else:
            yield part


class Lattice:
    """A finite complete lattice equipped with an order-reversing involution.

    Subclasses provide ``bot``, ``top``, ``height`` and the four primitive
    operations; the bilattice and tetralattice orderings are derived here.
    """

    bot: Any
    top: Any
    #: length of the longest strict chain; bounds Kleene iteration
    height: int

    def leq(self, a, b) -> bool:
        raise NotImplementedError

    def join(self, a, b):
        raise NotImplementedError

    def meet(self, a, b):
        raise NotImplementedError

    def comp(self, a):
        raise NotImplementedError

    def elements(self) -> Iterable:
        raise NotImplementedError

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    # -- bilattice ---------------------------------------------------------

    def leq_t2(self, x: BiElement, y: BiElement) -> bool:
        return self.leq(x[0], y[0]) and self.leq(x[1], y[1])

    def leq_p2(self, x: BiElement, y: BiElement) -> bool:
        return self.leq(x[0], y[0]) and self.leq(y[1], x[1])

    # -- tetralattice ------------------------------------------------------

    def leq_t4(self, x: TetraElement, y: TetraElement) -> bool:
        return all(self.leq(a, b) for a, b in zip(x, y))

    def leq_p4(self, x: TetraElement, y: TetraElement) -> bool:
        t, f, u, p = x
        t2, f2, u2, p2 = y
        return self.leq(t, t2) and self.leq(f, f2) and self.leq(u2, u) and self.leq(p2, p)

    def leq_p4_by_pairs(self, x: TetraElement, y: TetraElement) -> bool:
        """``leq_p4`` restated as (T,P) and (F,U) compared under ``leq_p2``."""
        t, f, u, p = x
        t2, f2, u2, p2 = y
        return self.leq_p2((t, p), (t2, p2)) and self.leq_p2((f, u), (f2, u2))

    def leq_p4_by_truth_pairs(self, x: TetraElement, y: TetraElement) -> bool:
        """``leq_p4`` restated as (T,F) up and (U,P) down under ``leq_t2``."""
        t, f, u, p = x
        t2, f2, u2, p2 = y
        return self.leq_t2((t, f), (t2, f2)) and self.leq_t2((u2, p2), (u, p))

    @property
    def tetra_bot(self) -> TetraElement:
        """Least element under ``leq_p4``."""
        return TetraElement(self.bot, self.bot, self.top, self.top)

    @property
    def tetra_top(self) -> TetraElement:
        """Greatest element under ``leq_p4``."""
        return TetraElement(self.top, self.top, self.bot, self.bot)

    def to_tetra(self, ap: BiElement) -> TetraElement:
        t, p = ap
        return TetraElement(t, self.comp(p), self.comp(t), p)

    def format_tetra(self, x: TetraElement) -> str:
        return "T={} F={} U={} P={}".format(*(self.format(a) for a in x))


def project_14(x: TetraElement) -> Approximation:
    return Approximation(x[0], x[3])


class PowersetLattice(Lattice):
    """Subsets of a fixed signature, encoded as bit-vectors."""

    def __init__(self, names: Sequence[str]):
        self.names: tuple[str, ...] = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("signature names must be distinct")
        self.index = {name: i for i, name in enumerate(self.names)}
        self.bot = 0
        self.top = (1 << len(self.names)) - 1
        self.height = len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"PowersetLattice({list(self.names)!r})"

    def leq(self, a: int, b: int) -> bool:
        return a & ~b == 0

    def join(self, a: int, b: int) -> int:
        return a | b

    def meet(self, a: int, b: int) -> int:
        return a & b

    def comp(self, a: int) -> int:
        return self.top ^ a

    def elements(self) -> Iterable[int]:
        return range(self.top + 1)

    def random_element(self, rng: random.Random) -> int:
        return rng.getrandbits(len(self.names)) if self.names else 0

    def contains(self, a: int) -> bool:
        return 0 <= a <= self.top

    def encode(self, names: Iterable[str]) -> int:
        mask = 0
        for name in names:
            try:
                mask |= 1 << self.index[name]
            except KeyError:
                raise KeyError(f"unknown atom {name!r}") from None
        return mask

    def decode(self, a: int) -> tuple[str, ...]:
        """Member names in signature order."""
        return tuple(name for i, name in enumerate(self.names) if a >> i & 1)

    def sorted_names(self, a: int) -> list[str]:
        return sorted(self.decode(a))

    def format(self, a: int) -> str:
        return "{" + ",".join(self.sorted_names(a)) + "}"


class ChainLattice(Lattice):
    """A finite linear order ``labels[0] < labels[1] < ...``.

    Elements are indices; the complement mirrors the chain, which is the only
    order-reversing involution a chain admits.
    """

    def __init__(self, labels: Sequence[str]):
        if not labels:
            raise ValueError("a chain needs at least one element")
        self.labels = tuple(labels)
        self.bot = 0
        self.top = len(self.labels) - 1
        self.height = len(self.labels) - 1

    def __repr__(self) -> str:
        return f"ChainLattice({list(self.labels)!r})"

    def leq(self, a: int, b: int) -> bool:
        return a <= b

    def join(self, a: int, b: int) -> int:
        return max(a, b)

    def meet(self, a: int, b: int) -> int:
        return min(a, b)

    def comp(self, a: int) -> int:
        return self.top - a

    def elements(self) -> Iterable[int]:
        return range(len(self.labels))

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(len(self.labels))

    def element(self, label: str) -> int:
        return self.labels.index(label)

    def format(self, a: int) -> str:
        return self.labels[a]


#: the three-element chain bot < + < top, with + self-complementary
THREE = ChainLattice(("⊥", "+", "⊤"))


def lfp(
    step: Callable[[Any], Any],
    start: Any,
    max_iters: int,
    log: list | None = None,
) -> Any:
    """Kleene iteration of ``step`` from ``start`` up to its first fixpoint.

    ``max_iters`` bounds the number of applications of ``step``; exceeding it
    raises :class:`NonConvergence`. When ``log`` is given, every iterate
    (``start`` included) is appended to it.
    """
    x = start
    if log is not None:
        log.append(x)
    for _ in range(max_iters):
        nxt = step(x)
        if nxt == x:
            return x
        x = nxt
        if log is not None:
            log.append(x)
    raise NonConvergence(f"no fixpoint after {max_iters} iterations")
