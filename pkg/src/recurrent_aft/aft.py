"""Approximators, stable revision and the recurrent-approximator toolkit.

Stable revision on the tetralattice fixes one half of a 4-tuple and runs
Kleene iteration on the other half from ``(bot, bot)`` under the truth
ordering of pairs. The U and F slots of the result are whatever the operator
puts there; for a recurrent operator they are ``(comp P, comp T)`` of the
input, which is how the previous upper bound is carried into the next round.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import InvalidSample, MonotonicityViolation, NonConvergence, TooLarge
from .lattice import (
    Approximation,
    BiElement,
    Lattice,
    PowersetLattice,
    TetraElement,
    lfp,
    project_14,
)

DEFAULT_ENUMERATION_CAP = 12


@dataclass(frozen=True)
class BiApproximator:
    """An operator on pairs of lattice elements, meant to be precision-monotone."""

    lattice: Lattice
    fn: Callable[[BiElement], BiElement]

    def __call__(self, x: BiElement) -> BiElement:
        return tuple(self.fn(tuple(x)))


@dataclass(frozen=True)
class TetraApproximator:
    """An operator on 4-tuples.

    ``recurrent`` records that slots 2 and 3 of every image are
    ``(comp P, comp T)``. ``reads_u`` may be cleared when the operator never
    looks at its U argument; enumeration then caches the lower half of stable
    revision per P.
    """

    lattice: Lattice
    fn: Callable[[TetraElement], Sequence]
    recurrent: bool = False
    reads_u: bool = True
    name: str = "o"

    def __call__(self, x) -> TetraElement:
        return TetraElement(*self.fn(TetraElement(*x)))

    @classmethod
    def lift(
        cls,
        lattice: Lattice,
        core: Callable[[TetraElement], BiElement],
        reads_u: bool = True,
        name: str = "o",
    ) -> "TetraApproximator":
        """Recurrent operator whose slots 1 and 4 come from ``core``."""
        comp = lattice.comp

        def fn(x: TetraElement) -> TetraElement:
            t, p = core(x)
            return TetraElement(t, comp(x.p), comp(x.t), p)

        return cls(lattice, fn, recurrent=True, reads_u=reads_u, name=name)

    @classmethod
    def from_bi(cls, o: BiApproximator, name: str = "o") -> "TetraApproximator":
        """Lift a pair approximator that ignores the recurrent slots."""
        return cls.lift(o.lattice, lambda x: o((x.t, x.p)), reads_u=False, name=name)


@dataclass
class StableTrace:
    """Outer iterates of stable revision plus the inner Kleene chains.

    ``steps[0]`` is the starting element; ``inner[i]`` holds the lower and
    upper inner chains computed while producing ``steps[i + 1]``.
    """

    lattice: Lattice
    steps: list[TetraElement] = field(default_factory=list)
    inner: list[tuple[list[BiElement], list[BiElement]]] = field(default_factory=list)

    def approximations(self) -> list[Approximation]:
        return [project_14(x) for x in self.steps]


def _pair_budget(lattice: Lattice) -> int:
    # a strict chain of pairs has at most 2 * height steps, plus one confirming application
    return 2 * lattice.height + 2


def stable_revision_bi(o: BiApproximator, x: BiElement) -> BiElement:
    lat = o.lattice
    t, p = x
    budget = lat.height + 2
    new_t = lfp(lambda a: o((a, p))[0], lat.bot, budget)
    new_p = lfp(lambda b: o((t, b))[1], lat.bot, budget)
    return (new_t, new_p)


def _lower_half(o: TetraApproximator, u, p, log: list | None = None) -> BiElement:
    lat = o.lattice
    return lfp(lambda tf: tuple(o((tf[0], tf[1], u, p))[:2]), (lat.bot, lat.bot),
               _pair_budget(lat), log)


def _upper_half(o: TetraApproximator, t, f, log: list | None = None) -> BiElement:
    lat = o.lattice
    return lfp(lambda up: tuple(o((t, f, up[0], up[1]))[2:]), (lat.bot, lat.bot),
               _pair_budget(lat), log)


def stable_revision_tetra(
    o: TetraApproximator,
    x,
    inner_log: tuple[list, list] | None = None,
) -> TetraElement:
    """One application of stable revision to ``x``.

    ``inner_log``, when given, receives the two inner Kleene chains.
    """
    x = TetraElement(*x)
    lo_log, hi_log = inner_log if inner_log is not None else (None, None)
    lower = _lower_half(o, x.u, x.p, lo_log)
    upper = _upper_half(o, x.t, x.f, hi_log)
    return TetraElement(*lower, *upper)


def stable_operator(o: TetraApproximator) -> TetraApproximator:
    """``S(o)`` packaged as an operator in its own right."""
    return TetraApproximator(
        o.lattice,
        lambda x: stable_revision_tetra(o, x),
        recurrent=o.recurrent,
        reads_u=o.reads_u,
        name=f"S({o.name})",
    )


def least_stable_fixpoint(
    o: TetraApproximator,
    start: TetraElement | None = None,
    max_iters: int | None = None,
) -> tuple[TetraElement, StableTrace]:
    """Iterate stable revision from the precision-least element to a fixpoint.

    Raises :class:`MonotonicityViolation` if two consecutive iterates are not
    precision-ordered, which can only happen when ``o`` is not monotone.
    """
    lat = o.lattice
    x = TetraElement(*(start if start is not None else lat.tetra_bot))
    if max_iters is None:
        max_iters = 4 * lat.height + 2
    trace = StableTrace(lat, [x])
    for _ in range(max_iters):
        logs: tuple[list, list] = ([], [])
        y = stable_revision_tetra(o, x, logs)
        trace.inner.append(logs)
        if y == x:
            return x, trace
        if not lat.leq_p4(x, y):
            raise MonotonicityViolation(
                f"stable revision of {o.name} moved down: {lat.format_tetra(x)} -> "
                f"{lat.format_tetra(y)}",
                (x, y),
            )
        trace.steps.append(y)
        x = y
    raise NonConvergence(f"stable revision of {o.name} did not converge in {max_iters} steps")


def check_recurrent(o: TetraApproximator, samples: Iterable) -> bool:
    comp = o.lattice.comp
    for x in samples:
        x = TetraElement(*x)
        y = o(x)
        if (y.f, y.u) != (comp(x.p), comp(x.t)):
            return False
    return True


def find_p4_violation(o: TetraApproximator, pairs: Iterable) -> tuple | None:
    """First ``(x, y)`` with ``x <=p4 y`` whose images break the relaxed check.

    For a recurrent operator, comparing the (1, 4) projections of the images
    under the pair precision ordering is equivalent to full precision
    monotonicity, so only that comparison is made.
    """
    lat = o.lattice
    for x, y in pairs:
        x, y = TetraElement(*x), TetraElement(*y)
        if not lat.leq_p4(x, y):
            raise InvalidSample(f"pair not precision-ordered: {lat.format_tetra(x)} vs "
                                f"{lat.format_tetra(y)}")
        if not lat.leq_p2(project_14(o(x)), project_14(o(y))):
            return (x, y)
    return None


def check_p4_monotone(o: TetraApproximator, pairs: Iterable) -> bool:
    return find_p4_violation(o, pairs) is None


def make_increasing(o: TetraApproximator) -> TetraApproximator:
    """``o+``: keep what the U slot already rules in, drop what F rules out."""
    lat = o.lattice

    def core(x: TetraElement) -> BiElement:
        y = o(x)
        return lat.join(y.t, lat.comp(x.u)), lat.meet(y.p, lat.comp(x.f))

    return TetraApproximator.lift(lat, core, reads_u=True, name=f"{o.name}+")


def make_decreasing(o: TetraApproximator) -> TetraApproximator:
    """``o-``: never claim more truth than comp(U), never fewer candidates than comp(F)."""
    lat = o.lattice

    def core(x: TetraElement) -> BiElement:
        y = o(x)
        return lat.meet(y.t, lat.comp(x.u)), lat.join(y.p, lat.comp(x.f))

    return TetraApproximator.lift(lat, core, reads_u=True, name=f"{o.name}-")


def _sort_key(lat: Lattice, ap: Approximation):
    if isinstance(lat, PowersetLattice):
        return (lat.sorted_names(ap.t), lat.sorted_names(ap.p))
    return (ap.t, ap.p)


def enumerate_stable_fixpoints(
    o: TetraApproximator,
    cap: int = DEFAULT_ENUMERATION_CAP,
    consistent_only: bool = True,
) -> list[Approximation]:
    """All (T, P) whose tuple ``(T, comp P, comp T, P)`` is fixed by stable revision.

    By default only consistent pairs (T below P) are reported; pass
    ``consistent_only=False`` to include the rest.
    """
    lat = o.lattice
    if isinstance(lat, PowersetLattice) and len(lat) > cap:
        raise TooLarge(f"{len(lat)} atoms exceeds the enumeration cap of {cap}")
    found = []
    elements = list(lat.elements())
    for p in elements:
        if o.reads_u:
            candidates = elements
        else:
            # the lower half cannot depend on T here, so it pins T directly
            t_star, _ = _lower_half(o, lat.comp(lat.bot), p)
            candidates = [t_star]
        for t in candidates:
            if consistent_only and not lat.leq(t, p):
                continue
            x = lat.to_tetra((t, p))
            lower = _lower_half(o, x.u, x.p)
            if lower != (x.t, x.f):
                continue
            if _upper_half(o, x.t, x.f) == (x.u, x.p):
                found.append(Approximation(t, p))
    found.sort(key=lambda ap: _sort_key(lat, ap))
    return found
