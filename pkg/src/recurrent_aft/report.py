"""Result records shared by the command line and the report printers."""

from __future__ import annotations

from dataclasses import dataclass, field

from .aft import DEFAULT_ENUMERATION_CAP, enumerate_stable_fixpoints, least_stable_fixpoint
from .kb import KnowledgeBase
from .lattice import Approximation, BiElement, PowersetLattice, TetraElement, project_14
from .phi import ModelVerdict, PhiConfig, check_model, phi_operator


@dataclass
class LfpReport:
    lattice: PowersetLattice
    steps: list[TetraElement]
    fixpoint: Approximation
    verdict: ModelVerdict
    inner: list[tuple[list[BiElement], list[BiElement]]] | None = None


@dataclass
class EnumerationReport:
    lattice: PowersetLattice
    fixpoints: list[tuple[Approximation, ModelVerdict]] = field(default_factory=list)


@dataclass
class CheckReport:
    lattice: PowersetLattice
    approximation: Approximation
    verdict: ModelVerdict


def compute_lfp(kb: KnowledgeBase, cfg: PhiConfig = PhiConfig(), inner: bool = False) -> LfpReport:
    op = phi_operator(kb, cfg)
    x, trace = least_stable_fixpoint(op)
    ap = project_14(x)
    verdict = check_model(kb, cfg, ap.t, ap.p, op)
    return LfpReport(kb.lattice, trace.steps, ap, verdict, trace.inner if inner else None)


def compute_enumeration(kb: KnowledgeBase, cfg: PhiConfig = PhiConfig(),
                        cap: int = DEFAULT_ENUMERATION_CAP,
                        consistent_only: bool = True) -> EnumerationReport:
    op = phi_operator(kb, cfg)
    found = enumerate_stable_fixpoints(op, cap, consistent_only)
    return EnumerationReport(kb.lattice, [(ap, check_model(kb, cfg, ap.t, ap.p, op)) for ap in found])


def compute_check(kb: KnowledgeBase, t: int, p: int, cfg: PhiConfig = PhiConfig()) -> CheckReport:
    return CheckReport(kb.lattice, Approximation(t, p), check_model(kb, cfg, t, p))
