from typing import FrozenSet, Iterable, List, Set, Tuple

from emotions.emotion import EmotionKind
from observer.argument import Argument, Polarity
from observer.background_rule import BackgroundRule, rules_for
from observer.observation import ExpressionMode, Observation, ObservationHistory
from utils.logger import get_main_logger
from world.literal import Literal

logger = get_main_logger(__name__)


def candidate_value(kind: EmotionKind, consequence: Literal) -> Literal:
    """
    The value an emotion of `kind` would be about if `consequence` triggered it.
    Joy is about a consequence gained; distress is about the literal the
    consequence destroyed.
    """
    if kind is EmotionKind.JOY:
        return consequence
    return consequence.complement()


def arguments_for_observation(
    rules: Iterable[BackgroundRule], observation: Observation
) -> Tuple[FrozenSet[Argument], List[str]]:
    """
    Arguments built from a single observation, plus diagnostic notes.
    Complete expressions need no background knowledge; incomplete and absent
    ones yield one argument per rule about the observed action.
    """
    expression = observation.expression
    notes: List[str] = []

    if expression.mode is ExpressionMode.COMPLETE:
        return (
            frozenset(
                {
                    Argument(
                        Polarity.SUPPORTS,
                        expression.value,
                        observation.index,
                        observation.action,
                        expression.kind,
                    )
                }
            ),
            notes,
        )

    polarity = (
        Polarity.SUPPORTS
        if expression.mode is ExpressionMode.INCOMPLETE
        else Polarity.OPPOSES
    )
    matching = rules_for(rules, observation.action)
    if not matching:
        note = (
            f"observation {observation.index}: no background rule for action "
            f"'{observation.action}', {expression} yields no argument"
        )
        logger.warning(note)
        notes.append(note)

    arguments: Set[Argument] = {
        Argument(
            polarity,
            candidate_value(expression.kind, rule.consequence),
            observation.index,
            observation.action,
            expression.kind,
        )
        for rule in matching
    }
    return frozenset(arguments), notes


def build_arguments(
    rules: Iterable[BackgroundRule], history: ObservationHistory
) -> FrozenSet[Argument]:
    rules = tuple(rules)
    arguments: Set[Argument] = set()
    for observation in history:
        built, _ = arguments_for_observation(rules, observation)
        arguments |= built
    return frozenset(arguments)
