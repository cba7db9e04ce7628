import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbgen import corpus
from recurrent_aft.entail import And, Atom, Iff, Implies, Not, Or
from recurrent_aft.errors import KbSyntaxError
from recurrent_aft.kb import KnowledgeBase, Rule
from recurrent_aft.phi import PhiConfig
from recurrent_aft.report import compute_check, compute_enumeration, compute_lfp
from recurrent_aft.textio import format_formula, parse_document, parse_kb, print_kb, print_report

EX1 = "%ontology\n~c.\n%rules\na :- not a'.\na' :- not a.\nc :- a, not b."
EX1_KB = KnowledgeBase(
    (Not(Atom("c")),),
    (Rule("a", (), ("a'",)), Rule("a'", (), ("a",)), Rule("c", ("a",), ("b",))),
)


class TestParse:
    def test_example1(self):
        assert parse_kb(EX1) == EX1_KB

    def test_appended_rule(self):
        kb = parse_kb(EX1 + "\n%rules\nb :- a.")
        assert kb == EX1_KB.with_rules([Rule("b", ("a",))])

    def test_variable_rejected(self):
        with pytest.raises(KbSyntaxError, match="ground rules only"):
            parse_kb("%rules\na :- X.")

    def test_error_position(self):
        with pytest.raises(KbSyntaxError) as err:
            parse_kb("%rules\na :- b\nc.")
        assert (err.value.line, err.value.column) == (3, 1)

    def test_bad_character(self):
        with pytest.raises(KbSyntaxError, match="unexpected character"):
            parse_kb("%rules\na :- b; c.")

    def test_content_before_section(self):
        with pytest.raises(KbSyntaxError):
            parse_kb("a.")

    def test_unknown_section(self):
        with pytest.raises(KbSyntaxError, match="unknown section"):
            parse_kb("%facts\na.")

    def test_comments_and_positions(self):
        doc = parse_document("# header\n%ontology\n  x | y.  # trailing\n%rules\np.\n")
        assert doc.ontology == [Or(Atom("x"), Atom("y"))]
        assert doc.ontology_positions == [(3, 3)]
        assert doc.rule_positions == [(5, 1)]

    def test_precedence(self):
        (f,) = parse_kb("%ontology\n~a & b | c -> d -> e <-> f <-> g.").ontology
        a, b, c, d, e, f_, g = (Atom(n) for n in "abcdefg")
        left = Implies(Or(And(Not(a), b), c), Implies(d, e))
        assert f == Iff(Iff(left, f_), g)

    def test_not_as_atom_name(self):
        # "not" directly before a separator is an ordinary atom
        kb = parse_kb("%rules\na :- not.")
        assert kb.rules == (Rule("a", ("not",)),)


class TestFormat:
    def test_parentheses(self):
        a, b, c = Atom("a"), Atom("b"), Atom("c")
        assert format_formula(And(Or(a, b), c)) == "(a | b) & c"
        assert format_formula(Implies(Implies(a, b), c)) == "(a -> b) -> c"
        assert format_formula(Implies(a, Implies(b, c))) == "a -> b -> c"
        assert format_formula(Not(And(a, b))) == "~(a & b)"
        assert format_formula(Or(a, Or(b, c))) == "a | (b | c)"

    def test_print_kb(self):
        assert parse_kb(print_kb(EX1_KB)) == EX1_KB


NAMES = ["p", "q", "r'", "s_1"]
formula = st.recursive(
    st.sampled_from(NAMES).map(Atom),
    lambda sub: st.one_of(
        st.builds(Not, sub), st.builds(And, sub, sub), st.builds(Or, sub, sub),
        st.builds(Implies, sub, sub), st.builds(Iff, sub, sub),
    ),
    max_leaves=10,
)
rule = st.builds(
    Rule,
    st.sampled_from(NAMES),
    st.lists(st.sampled_from(NAMES), max_size=3).map(tuple),
    st.lists(st.sampled_from(NAMES), max_size=3).map(tuple),
)


@settings(max_examples=200, deadline=None)
@given(st.lists(formula, max_size=4), st.lists(rule, max_size=6))
def test_round_trip(ontology, rules):
    kb = KnowledgeBase(tuple(ontology), tuple(rules))
    assert parse_kb(print_kb(kb)) == kb


def test_round_trip_corpus():
    for kb in corpus(0, 100):
        assert parse_kb(print_kb(kb)) == kb


class TestReports:
    def test_lfp_text(self, golden):
        out = print_report(compute_lfp(golden["ex1"], PhiConfig()))
        lines = out.splitlines()
        assert lines[0] == "iteration 0: T={} F={} U={a,a',b,c} P={a,a',b,c}"
        assert lines[-1].endswith("T={a'} P={a'}")

    def test_empty_kb(self):
        out = print_report(compute_lfp(KnowledgeBase(), PhiConfig()))
        assert out.splitlines()[-1].endswith("T={} P={}")

    def test_lfp_json_schema(self, golden):
        data = json.loads(print_report(compute_lfp(golden["ex1"], PhiConfig()), "json"))
        assert set(data) == {"iterations", "fixpoint", "verdicts", "model"}
        assert all(set(it) == {"t", "f", "u", "p"} for it in data["iterations"])
        assert data["fixpoint"] == {"t": ["a'"], "p": ["a'"]}
        assert data["verdicts"] == {"subset": True, "fixpoint": True, "consistent": True}
        assert data["iterations"][0]["p"] == sorted(data["iterations"][0]["p"])

    def test_trace_json(self, golden):
        data = json.loads(print_report(compute_lfp(golden["ex1"], PhiConfig(), inner=True), "json"))
        assert len(data["inner"]) == len(data["iterations"])
        assert data["inner"][0]["upper"][-1] == [["a", "a'", "b", "c"], ["a", "a'"]]

    def test_trace_text(self, golden):
        out = print_report(compute_lfp(golden["ex1"], PhiConfig(), inner=True))
        assert "  lower: " in out and "  upper: " in out

    def test_enumeration(self, golden):
        kb = golden["ex1_rule4"]
        rep = compute_enumeration(kb, PhiConfig())
        text = print_report(rep)
        assert text.splitlines()[0] == "3 stable fixpoints"
        assert text.count("model=yes") == 2
        data = json.loads(print_report(rep, "json"))
        assert [fp["model"] for fp in data["fixpoints"]].count(True) == 2

    def test_check(self, golden):
        kb = golden["ex1_rule4"]
        rep = compute_check(kb, kb.atoms(["a", "b"]), kb.atoms(["a", "b"]))
        assert "model: yes" in print_report(rep)
        assert json.loads(print_report(rep, "json"))["model"] is True

    def test_bad_format(self, golden):
        with pytest.raises(ValueError):
            print_report(compute_lfp(golden["ex1"], PhiConfig()), "xml")
