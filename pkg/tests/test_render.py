import json

from alctab.engine import EngineConfig, Satisfiable, canonical_interpretation, decide_sat_abox
from alctab.render import emit_model, emit_trace
from alctab.syntax import And, Atom, Inst, Named, Rel, Role, Some

A, B = Atom("A"), Atom("B")
r = Role("r")
x, y = Named("x"), Named("y")


def test_emit_model_canonical_example():
    interp = canonical_interpretation((Inst(x, A), Rel(r, x, y), Inst(y, B)))
    assert emit_model(interp) == (
        "domain: [0, 1]\n"
        "concept A: [0]\n"
        "concept B: [1]\n"
        "role r: [(0, 1)]\n"
        "x -> 0\n"
        "y -> 1\n"
    )


def test_emit_model_empty_abox():
    interp = canonical_interpretation(())
    assert emit_model(interp) == "domain: [0]\n"


def test_emit_model_renders_witnesses():
    verdict = decide_sat_abox((Inst(x, Some(r, A)),))
    assert isinstance(verdict, Satisfiable)
    text = emit_model(verdict.model)
    assert "_0 -> " in text


def test_emit_model_byte_deterministic():
    branch = (Inst(x, A), Rel(r, x, y), Inst(y, B))
    a = emit_model(canonical_interpretation(branch))
    b = emit_model(canonical_interpretation(branch))
    assert a == b


def test_emit_trace_and_rule_record():
    verdict = decide_sat_abox((Inst(x, And(A, B)),), EngineConfig(record_trace=True))
    lines = list(emit_trace(verdict.trace))
    assert len(lines) == 1
    record = json.loads(lines[0])
    assert record["step"] == 0
    assert record["rule"] == "and"
    assert record["pivot"] == "x : A and B"
    assert record["pivot_index"] == 0
    assert record["successors"] == 1
    assert record["fresh"] is None
    assert record["measure_before"] == [[3, 0]]
    assert record["measure_after"] == [[0, 0], [0, 0], [0, 0]]


def test_emit_trace_some_rule_records_witness():
    verdict = decide_sat_abox((Inst(x, Some(r, A)),), EngineConfig(record_trace=True))
    record = json.loads(next(emit_trace(verdict.trace)))
    assert record["rule"] == "some"
    assert record["fresh"] == "_0"


def test_emit_trace_empty():
    assert list(emit_trace(())) == []


def test_emit_trace_measures_sorted_descending():
    abox = (Inst(x, And(A, And(A, B))), Inst(y, And(A, B)))
    verdict = decide_sat_abox(abox, EngineConfig(record_trace=True))
    for line in emit_trace(verdict.trace):
        record = json.loads(line)
        for key in ("measure_before", "measure_after"):
            pairs = [tuple(p) for p in record[key]]
            assert pairs == sorted(pairs, reverse=True)
