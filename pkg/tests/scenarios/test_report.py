import json

import pytest

from scenarios.report import render_report
from workflows.simulation import simulate
from workflows.trace import Trace


@pytest.fixture
def coffee_trace(coffee_scenario):
    return simulate(coffee_scenario)


def test_structured_report_with_steps(coffee_trace):
    document = json.loads(render_report(coffee_trace, "structured"))
    assert list(document) == ["steps", "final_verdicts"]

    first = document["steps"][0]
    assert first["observation"] == {
        "index": 1,
        "state": "s1",
        "expresser": "user",
        "action": "drop_full",
        "expression": "distress?",
    }
    argument = first["new_arguments"][1]
    assert argument["id"] == "sup_1_pos_have_coffee"
    assert argument["polarity"] == "supports"
    assert "Val_user(have_coffee)" in argument["claim"]
    assert sorted(first["new_attacks"]) == [
        ["sup_1_pos_cup_intact", "sup_1_pos_have_coffee"],
        ["sup_1_pos_have_coffee", "sup_1_pos_cup_intact"],
    ]
    assert first["verdicts"]["undecided"] == ["cup_intact", "have_coffee"]


def test_structured_report_without_steps(coffee_trace):
    document = json.loads(render_report(coffee_trace, "structured", include_steps=False))
    assert document == {
        "final_verdicts": {
            "believed": ["have_coffee"],
            "believed_not": ["cup_intact"],
            "undecided": [],
        }
    }


def test_structured_report_is_stable(coffee_trace, coffee_scenario):
    assert render_report(coffee_trace, "structured") == render_report(
        simulate(coffee_scenario), "structured"
    )


def test_human_report(coffee_trace):
    text = render_report(coffee_trace)
    assert "obs 2: user none(distress) on drop_empty at s3" in text
    assert "opp_2_pos_cup_intact" in text
    assert "opposes" in text
    assert text.rstrip().endswith("+")
    assert "final verdicts" in text
    assert "\x1b[" not in text


def test_human_report_without_steps(coffee_trace):
    text = render_report(coffee_trace, include_steps=False)
    assert "obs 1" not in text
    assert "have_coffee" in text


def test_human_report_shows_notes(coffee_text):
    from scenarios.scenario_parser import parse_scenario

    text = coffee_text.replace("rule: drop_empty => ~cup_intact\n", "")
    report = render_report(simulate(parse_scenario(text)))
    assert "note: observation 2: no background rule for action 'drop_empty'" in report


def test_empty_trace():
    assert "final verdicts" in render_report(Trace())
    assert json.loads(render_report(Trace(), "structured"))["steps"] == []


def test_unknown_mode(coffee_trace):
    with pytest.raises(ValueError, match="Unknown report mode"):
        render_report(coffee_trace, "yaml")
