from typing import FrozenSet

from emotions.emotion import CompleteEmotion, IncompleteEmotion
from world.formula import evaluate
from world.literal import Literal
from world.world_model import WorldModel


def holds_complete(model: WorldModel, state_id: str, emotion: CompleteEmotion) -> bool:
    return evaluate(model, state_id, emotion.as_formula())


def witnesses(
    model: WorldModel, state_id: str, emotion: IncompleteEmotion
) -> FrozenSet[Literal]:
    """Every literal v of the model for which the complete emotion holds."""
    model.require_state(state_id)
    model.require_agent(emotion.agent)
    model.require_action(emotion.action)
    return frozenset(
        value
        for value in model.literals()
        if holds_complete(model, state_id, emotion.with_value(value))
    )


def holds_incomplete(
    model: WorldModel, state_id: str, emotion: IncompleteEmotion
) -> bool:
    model.require_state(state_id)
    model.require_agent(emotion.agent)
    model.require_action(emotion.action)
    return any(
        holds_complete(model, state_id, emotion.with_value(value))
        for value in model.literals()
    )
