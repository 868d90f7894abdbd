import pytest
from hypothesis import given, settings

from argumentation.semantics import grounded
from emotions.emotion import EmotionKind
from observer.observation import (
    Expression,
    HistoryOrderError,
    Observation,
    ObservationHistory,
)
from tests.test_utils.strategies import EXPRESSER, observation_runs
from workflows.session import (
    Session,
    SessionError,
    ValueVerdicts,
    observe,
    replay,
    verdicts,
)
from world.literal import Literal

DISTRESS = EmotionKind.DISTRESS
A1 = "sup_1_pos_cup_intact"
A2 = "sup_1_pos_have_coffee"
B1 = "opp_2_pos_cup_intact"

OBS_1 = Observation(1, "s1", "user", "drop_full", Expression.incomplete(DISTRESS))
OBS_2 = Observation(2, "s3", "user", "drop_empty", Expression.absent(DISTRESS))


@pytest.fixture
def session(coffee_scenario):
    return Session.start("user", coffee_scenario.rules)


def literals(*names):
    return frozenset(Literal.parse(n) for n in names)


def test_coffee_observations_one_at_a_time(session):
    after_first, delta = observe(session, OBS_1)
    assert {a.id for a in delta.arguments} == {A1, A2}
    assert delta.attacks == {(A1, A2), (A2, A1)}
    assert verdicts(after_first) == ValueVerdicts(
        undecided=literals("cup_intact", "have_coffee")
    )

    after_second, delta = observe(after_first, OBS_2)
    assert {a.id for a in delta.arguments} == {B1}
    assert delta.attacks == {(B1, A1)}
    assert verdicts(after_second) == ValueVerdicts(
        believed=literals("have_coffee"), believed_not=literals("cup_intact")
    )
    assert verdicts(after_second).to_dict() == {
        "believed": ["have_coffee"],
        "believed_not": ["cup_intact"],
        "undecided": [],
    }


def test_observe_does_not_touch_the_old_session(session):
    observe(session, OBS_1)
    assert len(session.history) == 0
    assert session.afv.arguments == frozenset()


def test_empty_session_has_no_verdicts(session):
    assert verdicts(session) == ValueVerdicts()


def test_observation_without_arguments_leaves_verdicts_unchanged(session):
    first, _ = observe(session, OBS_1)
    idle = Observation(2, "s0", "user", "wave", Expression.incomplete(DISTRESS))
    second, delta = observe(first, idle)
    assert delta.is_empty
    assert delta.notes
    assert verdicts(second) == verdicts(first)


def test_non_increasing_index_is_rejected(session):
    first, _ = observe(session, OBS_2)
    with pytest.raises(HistoryOrderError) as exc_info:
        observe(first, OBS_1)
    assert (exc_info.value.previous, exc_info.value.index) == (2, 1)


def test_other_expresser_is_rejected(session):
    other = Observation(1, "s1", "robot", "drop_full", Expression.incomplete(DISTRESS))
    with pytest.raises(SessionError, match="robot"):
        observe(session, other)


def test_single_incomplete_observation_with_two_consequences(session):
    updated, _ = observe(session, OBS_1)
    assert verdicts(updated).undecided == literals("cup_intact", "have_coffee")
    assert verdicts(updated).believed == frozenset()


@settings(max_examples=300, deadline=None)
@given(observation_runs(max_observations=20, max_atoms=4, max_rules=6))
def test_incremental_equals_batch(run):
    rules, observations = run
    incremental, deltas = replay(EXPRESSER, rules, observations)
    batch = Session.rebuild(EXPRESSER, rules, ObservationHistory.of(observations))

    assert len(deltas) == len(observations)
    assert incremental.afv == batch.afv
    assert incremental.labelling == batch.labelling == grounded(batch.afv)
    assert set(incremental.arguments) == set(batch.arguments)

    result = verdicts(incremental)
    assert result == verdicts(batch)
    assert not result.believed & result.believed_not
    assert not result.believed & result.undecided
    assert not result.believed_not & result.undecided
    mentioned = {a.value for a in batch.arguments.values()}
    assert result.believed | result.believed_not | result.undecided == mentioned
