import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emotions.appraisal import holds_complete, holds_incomplete, witnesses
from emotions.emotion import CompleteEmotion, EmotionKind, IncompleteEmotion
from tests.test_utils.strategies import ACTIONS, AGENTS, world_models
from world.literal import Literal
from world.world_model import ModelError, build_model

DISTRESS = EmotionKind.DISTRESS
JOY = EmotionKind.JOY


@pytest.fixture
def ice_cream_model():
    return build_model(
        atoms=["have_ice_cream"],
        agents=["child"],
        actions=["buy"],
        valuations={"s0": {"have_ice_cream": False}, "s1": {"have_ice_cream": True}},
        transitions=[("s0", "buy", "s1")],
        values={
            ("child", "s0"): [Literal("have_ice_cream")],
            ("child", "s1"): [Literal("have_ice_cream")],
        },
    )


class TestCoffeeCup:
    def test_distress_about_coffee_after_dropping_full_cup(self, coffee_model):
        emotion = CompleteEmotion("user", DISTRESS, "drop_full", Literal("have_coffee"))
        assert holds_complete(coffee_model, "s1", emotion)

    def test_no_distress_about_the_cup_the_user_does_not_value(self, coffee_model):
        emotion = CompleteEmotion("user", DISTRESS, "drop_full", Literal("cup_intact"))
        assert not holds_complete(coffee_model, "s1", emotion)

    def test_incomplete_distress_and_its_witness(self, coffee_model):
        emotion = IncompleteEmotion("user", DISTRESS, "drop_full")
        assert holds_incomplete(coffee_model, "s1", emotion)
        assert witnesses(coffee_model, "s1", emotion) == {Literal("have_coffee")}

    def test_no_distress_after_dropping_empty_cup(self, coffee_model):
        emotion = IncompleteEmotion("user", DISTRESS, "drop_empty")
        assert not holds_incomplete(coffee_model, "s3", emotion)
        assert witnesses(coffee_model, "s3", emotion) == frozenset()

    def test_no_emotion_without_values(self, coffee_model):
        for kind in EmotionKind:
            for state_id in coffee_model.state_ids:
                emotion = IncompleteEmotion("robot", kind, "drop_full")
                assert not holds_incomplete(coffee_model, state_id, emotion)

    @pytest.mark.parametrize(
        "emotion,name",
        [
            (IncompleteEmotion("cat", DISTRESS, "drop_full"), "cat"),
            (IncompleteEmotion("user", DISTRESS, "spill"), "spill"),
        ],
    )
    def test_undeclared_ids(self, coffee_model, emotion, name):
        with pytest.raises(ModelError, match=name):
            witnesses(coffee_model, "s1", emotion)
        with pytest.raises(ModelError, match=name):
            holds_incomplete(coffee_model, "s1", emotion)


def test_joy_about_a_gained_value(ice_cream_model):
    emotion = IncompleteEmotion("child", JOY, "buy")
    assert witnesses(ice_cream_model, "s1", emotion) == {Literal("have_ice_cream")}
    assert not holds_incomplete(ice_cream_model, "s1", IncompleteEmotion("child", DISTRESS, "buy"))


def test_formula_of_joy_and_distress_mirror_each_other():
    value = Literal("v")
    joy = CompleteEmotion("i", JOY, "a", value).as_formula()
    distress = CompleteEmotion("i", DISTRESS, "a", value).as_formula()
    assert str(joy) == "(B_i(v & <-a>~v) & Val_i(v))"
    assert str(distress) == "(B_i(~v & <-a>v) & Val_i(v))"


@st.composite
def appraisal_cases(draw, serial=False):
    model = draw(world_models(max_states=6, max_atoms=3, serial=serial))
    state_id = draw(st.sampled_from(sorted(model.state_ids)))
    emotion = IncompleteEmotion(
        draw(st.sampled_from(AGENTS)),
        draw(st.sampled_from(list(EmotionKind))),
        draw(st.sampled_from(ACTIONS)),
    )
    return model, state_id, emotion


@settings(max_examples=500, deadline=None)
@given(appraisal_cases())
def test_incomplete_emotion_is_the_disjunction_over_literals(case):
    model, state_id, emotion = case
    found = witnesses(model, state_id, emotion)
    some_complete = any(
        holds_complete(model, state_id, emotion.with_value(v)) for v in model.literals()
    )
    assert holds_incomplete(model, state_id, emotion) == bool(found) == some_complete
    for value in found:
        assert holds_complete(model, state_id, emotion.with_value(value))


@settings(max_examples=200, deadline=None)
@given(appraisal_cases(serial=True))
def test_witnesses_never_contain_a_literal_and_its_complement(case):
    model, state_id, emotion = case
    found = witnesses(model, state_id, emotion)
    assert not any(value.complement() in found for value in found)
