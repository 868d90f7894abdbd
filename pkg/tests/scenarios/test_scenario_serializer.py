from hypothesis import given, settings
from hypothesis import strategies as st

from scenarios.scenario import is_option_value, validate_scenario
from scenarios.scenario_parser import parse_scenario
from scenarios.scenario_serializer import serialize_scenario
from tests.conftest import COFFEE_CUP_PATH
from tests.test_utils.strategies import scenarios
from world.world_model import State


def _with(scenario, model=None, options=None):
    return type(scenario)(
        model or scenario.model,
        scenario.observer,
        scenario.expresser,
        scenario.rules,
        scenario.script,
        scenario.options if options is None else options,
    )
def test_coffee_cup_canonical_text(coffee_scenario):
    text = serialize_scenario(coffee_scenario)
    assert text.splitlines()[:4] == [
        "agents: robot, user",
        "atoms: cup_intact, have_coffee",
        "actions: drop_empty, drop_full",
        "state s0: cup_intact=1, have_coffee=1",
    ]
    assert "trans: s0 -drop_full-> s1\ntrans: s2 -drop_empty-> s3\n" in text
    assert "val user @ *: have_coffee\n" in text
    assert "epistemic" not in text
    assert text.endswith(
        "obs 1: state=s1 action=drop_full express=distress?\n"
        "obs 2: state=s3 action=drop_empty express=none(distress)\n"
    )
    assert parse_scenario(text) == coffee_scenario


def test_non_identity_relations_are_written(coffee_scenario, coffee_model):
    model = coffee_model.with_changes(
        epistemic={**coffee_model.epistemic, "robot": frozenset({("s1", "s3")})}
    )
    scenario = type(coffee_scenario)(
        model,
        coffee_scenario.observer,
        coffee_scenario.expresser,
        coffee_scenario.rules,
        coffee_scenario.script,
        {"disclose": "full", "note": "x"},
    )
    text = serialize_scenario(scenario)
    assert "epistemic robot: s1->s3\n" in text
    assert text.endswith("disclose: full\noption note: x\n")
    assert parse_scenario(text) == scenario


@settings(max_examples=500, deadline=None)
@given(scenarios())
def test_parse_inverts_serialize(scenario):
    text = serialize_scenario(scenario)
    assert parse_scenario(text) == scenario
    assert serialize_scenario(parse_scenario(text)) == text


def test_agent_without_relation_is_written_empty(coffee_scenario, coffee_model):
    relations = {a: r for a, r in coffee_model.epistemic.items() if a != "robot"}
    model = type(coffee_model)(
        atoms=coffee_model.atoms,
        agents=coffee_model.agents,
        actions=coffee_model.actions,
        states=coffee_model.states,
        transitions=coffee_model.transitions,
        epistemic=relations,
        values=coffee_model.values,
    )
    scenario = _with(coffee_scenario, model=model)
    assert model.epistemic["robot"] == frozenset()

    text = serialize_scenario(scenario)
    assert "epistemic robot:\n" in text
    assert parse_scenario(text) == scenario


def test_option_value_with_comment_marker_is_fatal(coffee_scenario):
    scenario = _with(coffee_scenario, options={"note": "a#b"})
    codes = [(d.code, d.subject) for d in validate_scenario(scenario) if d.is_fatal]
    assert codes == [("bad-option", "note")]


def test_numeric_state_id_is_fatal(coffee_scenario, coffee_model):
    first = coffee_model.states[0]
    model = coffee_model.with_changes(
        states=coffee_model.states + (State("0", dict(first.valuation)),)
    )
    diagnostics = validate_scenario(_with(coffee_scenario, model=model))
    assert ("bad-identifier", "0") in {(d.code, d.subject) for d in diagnostics}


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=8))
def test_any_option_value_is_refused_or_round_trips(value):
    coffee_scenario = parse_scenario(COFFEE_CUP_PATH.read_text())
    scenario = _with(coffee_scenario, options={"note": value})
    codes = {d.code for d in validate_scenario(scenario) if d.is_fatal}
    if is_option_value(value):
        assert codes == set()
        assert parse_scenario(serialize_scenario(scenario)) == scenario
    else:
        assert codes == {"bad-option"}
