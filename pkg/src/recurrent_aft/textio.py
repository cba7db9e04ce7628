"""The knowledge-base text format and the report printers.

Document grammar::

    document := section*
    section  := "%ontology" formula* | "%rules" rule*
    formula  := expr "."
    expr     := atom | "~" expr | "(" expr ")" | expr "&" expr | expr "|" expr
              | expr "->" expr | expr "<->" expr
    rule     := atom (":-" lit ("," lit)*)? "."
    lit      := atom | "not" atom
    atom     := [a-z][A-Za-z0-9_']*

Binding strength is ``~ > & > | > -> > <->``; ``->`` groups to the right and
the other binary connectives to the left. ``#`` starts a line comment.
Identifiers starting with an upper-case letter are variables and rejected,
since only ground rules are accepted.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterator

from .entail import And, Atom, Falsum, Formula, Iff, Implies, Not, Or
from .errors import KbSyntaxError
from .kb import KnowledgeBase, Rule
from .lattice import PowersetLattice
from .phi import ModelVerdict
from .report import CheckReport, EnumerationReport, LfpReport

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<section>%[A-Za-z_]+)
  | (?P<iff><->)
  | (?P<implies>->)
  | (?P<if>:-)
  | (?P<ident>[a-z][A-Za-z0-9_']*)
  | (?P<var>[A-Z_][A-Za-z0-9_']*)
  | (?P<punct>[~&|().,])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        column = pos - line_start + 1
        if m is None:
            raise KbSyntaxError(f"unexpected character {text[pos]!r}", line, column)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "var":
            raise KbSyntaxError(f"variable {m.group()!r} not allowed: ground rules only", line, column)
        elif kind == "punct":
            tokens.append(Token(m.group(), m.group(), line, column))
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, column))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


@dataclass
class KbDocument:
    ontology: list[Formula] = field(default_factory=list)
    rules: list[Rule] = field(default_factory=list)
    #: (line, column) of each ontology formula and each rule
    ontology_positions: list[tuple[int, int]] = field(default_factory=list)
    rule_positions: list[tuple[int, int]] = field(default_factory=list)

    def to_kb(self) -> KnowledgeBase:
        return KnowledgeBase(tuple(self.ontology), tuple(self.rules))


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None) -> KbSyntaxError:
        tok = tok or self.tok
        return KbSyntaxError(message, tok.line, tok.column)

    def take(self, kind: str) -> Token:
        tok = self.tok
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        self.i += 1
        return tok

    def document(self) -> KbDocument:
        doc = KbDocument()
        section = None
        while self.tok.kind != "eof":
            tok = self.tok
            if tok.kind == "section":
                if tok.text not in ("%ontology", "%rules"):
                    raise self.error(f"unknown section {tok.text!r}")
                section = tok.text
                self.i += 1
            elif section == "%ontology":
                doc.ontology_positions.append((tok.line, tok.column))
                doc.ontology.append(self.expr())
                self.take(".")
            elif section == "%rules":
                doc.rule_positions.append((tok.line, tok.column))
                doc.rules.append(self.rule())
            else:
                raise self.error("expected %ontology or %rules before any content")
        return doc

    def rule(self) -> Rule:
        head = self.take("ident").text
        pos: list[str] = []
        neg: list[str] = []
        if self.tok.kind == "if":
            self.i += 1
            while True:
                tok = self.take("ident")
                if tok.text == "not" and self.tok.kind == "ident":
                    neg.append(self.take("ident").text)
                else:
                    pos.append(tok.text)
                if self.tok.kind != ",":
                    break
                self.i += 1
        self.take(".")
        return Rule(head, tuple(pos), tuple(neg))

    # precedence climbing, loosest first

    def expr(self) -> Formula:
        left = self.implication()
        while self.tok.kind == "iff":
            self.i += 1
            left = Iff(left, self.implication())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.tok.kind == "implies":
            self.i += 1
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.tok.kind == "|":
            self.i += 1
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.tok.kind == "&":
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.tok
        if tok.kind == "~":
            self.i += 1
            return Not(self.unary())
        if tok.kind == "(":
            self.i += 1
            inner = self.expr()
            self.take(")")
            return inner
        if tok.kind == "ident":
            self.i += 1
            return Atom(tok.text)
        raise self.error(f"expected a formula, found {tok.text or 'end of input'!r}")


def parse_document(text: str) -> KbDocument:
    return _Parser(text).document()


def parse_kb(text: str) -> KnowledgeBase:
    return parse_document(text).to_kb()


# -- printing knowledge bases -------------------------------------------------

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5, Atom: 6}
_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def format_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Falsum):
        raise ValueError("the contradiction constant has no surface syntax")
    if isinstance(f, Not):
        inner = format_formula(f.arg)
        return "~" + (f"({inner})" if _PREC[type(f.arg)] < _PREC[Not] else inner)
    q = _PREC[type(f)]
    right_assoc = isinstance(f, Implies)
    left, right = format_formula(f.left), format_formula(f.right)
    lq, rq = _PREC[type(f.left)], _PREC[type(f.right)]
    if lq < q or (lq == q and right_assoc):
        left = f"({left})"
    if rq < q or (rq == q and not right_assoc):
        right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


def format_rule(rule: Rule) -> str:
    body = list(rule.pos) + [f"not {n}" for n in rule.neg]
    return f"{rule.head} :- {', '.join(body)}." if body else f"{rule.head}."


def print_kb(kb: KnowledgeBase) -> str:
    lines = ["%ontology"]
    lines += [format_formula(f) + "." for f in kb.ontology]
    lines.append("%rules")
    lines += [format_rule(r) for r in kb.rules]
    return "\n".join(lines) + "\n"


# -- printing reports ---------------------------------------------------------


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _verdict_text(v: ModelVerdict) -> str:
    return (f"subset={_yes(v.subset)} fixpoint={_yes(v.fixpoint)} "
            f"consistent={_yes(v.consistent)} model={_yes(v.model)}")


def _verdict_json(v: ModelVerdict) -> dict:
    return {"subset": v.subset, "fixpoint": v.fixpoint, "consistent": v.consistent}


def _ap_text(lat: PowersetLattice, t: int, p: int) -> str:
    return f"T={lat.format(t)} P={lat.format(p)}"


def _pair_text(lat: PowersetLattice, pair) -> str:
    return "(" + ", ".join(lat.format(a) for a in pair) + ")"


def _lfp_lines(r: LfpReport) -> Iterator[str]:
    lat = r.lattice
    for i, x in enumerate(r.steps):
        yield f"iteration {i}: {lat.format_tetra(x)}"
        if r.inner is not None and i < len(r.inner):
            lower, upper = r.inner[i]
            yield "  lower: " + " -> ".join(_pair_text(lat, q) for q in lower)
            yield "  upper: " + " -> ".join(_pair_text(lat, q) for q in upper)
    yield f"verdicts: {_verdict_text(r.verdict)}"
    yield f"least stable fixpoint: {_ap_text(lat, r.fixpoint.t, r.fixpoint.p)}"


def _lfp_json(r: LfpReport) -> dict:
    lat = r.lattice
    out = {
        "iterations": [dict(zip("tfup", (lat.sorted_names(a) for a in x))) for x in r.steps],
        "fixpoint": {"t": lat.sorted_names(r.fixpoint.t), "p": lat.sorted_names(r.fixpoint.p)},
        "verdicts": _verdict_json(r.verdict),
        "model": r.verdict.model,
    }
    if r.inner is not None:
        out["inner"] = [
            {"lower": [[lat.sorted_names(a) for a in q] for q in lower],
             "upper": [[lat.sorted_names(a) for a in q] for q in upper]}
            for lower, upper in r.inner
        ]
    return out


def print_report(result, format: str = "text") -> str:
    if format not in ("text", "json"):
        raise ValueError(f"unknown report format {format!r}")
    lat = result.lattice
    if isinstance(result, LfpReport):
        if format == "json":
            return json.dumps(_lfp_json(result), indent=2, sort_keys=True) + "\n"
        return "\n".join(_lfp_lines(result)) + "\n"
    if isinstance(result, EnumerationReport):
        if format == "json":
            return json.dumps({"fixpoints": [
                {"t": lat.sorted_names(ap.t), "p": lat.sorted_names(ap.p),
                 "verdicts": _verdict_json(v), "model": v.model}
                for ap, v in result.fixpoints
            ]}, indent=2, sort_keys=True) + "\n"
        lines = [f"{len(result.fixpoints)} stable fixpoints"]
        lines += [f"{_ap_text(lat, ap.t, ap.p)} {_verdict_text(v)}" for ap, v in result.fixpoints]
        return "\n".join(lines) + "\n"
    if isinstance(result, CheckReport):
        ap, v = result.approximation, result.verdict
        if format == "json":
            return json.dumps({
                "fixpoint": {"t": lat.sorted_names(ap.t), "p": lat.sorted_names(ap.p)},
                "verdicts": _verdict_json(v), "model": v.model,
            }, indent=2, sort_keys=True) + "\n"
        return "\n".join([
            _ap_text(lat, ap.t, ap.p),
            f"subset: {_yes(v.subset)}",
            f"fixpoint: {_yes(v.fixpoint)}",
            f"consistent: {_yes(v.consistent)}",
            f"model: {_yes(v.model)}",
        ]) + "\n"
    raise TypeError(f"no printer for {type(result).__name__}")
