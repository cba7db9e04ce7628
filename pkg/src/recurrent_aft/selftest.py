"""Regression checks over the bundled knowledge bases.

The expected values were worked out by hand for each knowledge base and
then confirmed against the truth-table oracle. They pin down the engine's
behaviour, which is not always the value one might guess at first glance
(see ``ex3``, where ``c`` stays possibly true and keeps ``x`` and ``y``
derivable).
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Callable, Iterator

from .kb import KnowledgeBase
from .phi import POWERSET, SINGLETONS, PhiConfig
from .report import compute_check, compute_enumeration, compute_lfp
from .textio import parse_kb

GOLDEN_FILES = ("ex1.kb", "ex1_rule4.kb", "ex3.kb", "lookahead.kb")


def golden_path(name: str):
    return resources.files(__package__).joinpath("golden", name)


def load_golden(name: str) -> KnowledgeBase:
    return parse_kb(golden_path(name).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class Outcome:
    name: str
    ok: bool
    detail: str


def _names(kb: KnowledgeBase, mask: int) -> frozenset[str]:
    return frozenset(kb.lattice.decode(mask))


def _lfp_case(file: str, cfg: PhiConfig, t: set[str], p: set[str]) -> Callable[[], tuple[bool, str]]:
    def run():
        kb = load_golden(file)
        fp = compute_lfp(kb, cfg).fixpoint
        got = (_names(kb, fp.t), _names(kb, fp.p))
        return got == (frozenset(t), frozenset(p)), f"T={sorted(got[0])} P={sorted(got[1])}"
    return run


def _enum_case(file: str, expected: dict[tuple[frozenset, frozenset], bool]):
    def run():
        kb = load_golden(file)
        rep = compute_enumeration(kb)
        got = {(_names(kb, ap.t), _names(kb, ap.p)): v.model for ap, v in rep.fixpoints}
        return got == expected, f"{len(got)} fixpoints, {sum(got.values())} models"
    return run


def _check_case(file: str, t: set[str], p: set[str], model: bool):
    def run():
        kb = load_golden(file)
        v = compute_check(kb, kb.atoms(t), kb.atoms(p)).verdict
        return v.model == model, f"model={v.model}"
    return run


def _fs(*names: str) -> frozenset[str]:
    return frozenset(names)


CASES: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("ex1 lfp", _lfp_case("ex1.kb", PhiConfig(SINGLETONS), {"a'"}, {"a'"})),
    ("ex1 lfp legacy", _lfp_case("ex1.kb", PhiConfig(legacy=True), set(), {"a", "a'"})),
    ("ex1_rule4 lfp", _lfp_case("ex1_rule4.kb", PhiConfig(), set(), {"a", "a'", "b"})),
    ("ex1_rule4 enumerate", _enum_case("ex1_rule4.kb", {
        (_fs(), _fs("a", "a'", "b")): False,
        (_fs("a", "b"), _fs("a", "b")): True,
        (_fs("a'"), _fs("a'")): True,
    })),
    ("ex1_rule4 check", _check_case("ex1_rule4.kb", {"a", "b"}, {"a", "b"}, True)),
    ("ex3 lfp powerset", _lfp_case("ex3.kb", PhiConfig(POWERSET), set(),
                                   {"b", "b'", "c", "c'", "x", "y"})),
    ("lookahead lfp", _lfp_case("lookahead.kb", PhiConfig(), set(), {"b", "b'", "c", "c'"})),
    ("lookahead check", _check_case("lookahead.kb", {"b", "c'"}, {"b", "c'"}, True)),
]


def run_selftest() -> Iterator[Outcome]:
    for name, case in CASES:
        ok, detail = case()
        yield Outcome(name, ok, detail)
