from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Tuple

from argumentation.framework import (
    ArgumentationFramework,
    Attack,
    build_afv,
    derive_attacks,
)
from argumentation.labelling import Label, Labelling
from argumentation.semantics import grounded
from observer.argument import Argument
from observer.argument_builder import arguments_for_observation, build_arguments
from observer.background_rule import BackgroundRule
from observer.observation import Observation, ObservationHistory
from utils.logger import get_main_logger
from world.literal import Literal, sorted_literals

logger = get_main_logger(__name__)


class SessionError(ValueError):
    pass


@dataclass(frozen=True)
class ValueVerdicts:
    believed: FrozenSet[Literal] = frozenset()
    believed_not: FrozenSet[Literal] = frozenset()
    undecided: FrozenSet[Literal] = frozenset()

    def to_dict(self) -> dict:
        return {
            "believed": [str(v) for v in sorted_literals(self.believed)],
            "believed_not": [str(v) for v in sorted_literals(self.believed_not)],
            "undecided": [str(v) for v in sorted_literals(self.undecided)],
        }


@dataclass(frozen=True)
class Delta:
    """What one observation added to the framework."""

    observation: Observation
    arguments: FrozenSet[Argument] = frozenset()
    attacks: FrozenSet[Attack] = frozenset()
    notes: Tuple[str, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.arguments and not self.attacks


@dataclass(frozen=True)
class Session:
    """
    An observer's view of one expresser: the history seen so far, the
    arguments and framework built from it, and its grounded labelling.
    Sessions are values; `observe` returns a new one.
    """

    expresser: str
    rules: FrozenSet[BackgroundRule]
    history: ObservationHistory = ObservationHistory()
    arguments: Dict[str, Argument] = field(default_factory=dict)
    afv: ArgumentationFramework = ArgumentationFramework()
    labelling: Labelling = Labelling({})

    @classmethod
    def start(cls, expresser: str, rules: Iterable[BackgroundRule]) -> "Session":
        return cls(expresser, frozenset(rules))

    @classmethod
    def rebuild(
        cls,
        expresser: str,
        rules: Iterable[BackgroundRule],
        history: ObservationHistory,
    ) -> "Session":
        """Build the session for a whole history in one go."""
        rules = frozenset(rules)
        arguments = build_arguments(rules, history)
        afv = build_afv(arguments)
        return cls(
            expresser,
            rules,
            history,
            {a.id: a for a in arguments},
            afv,
            grounded(afv),
        )


def observe(session: Session, observation: Observation) -> Tuple[Session, Delta]:
    """
    Add one observation: build its arguments, derive the attacks they take
    part in, add both to the current framework and relabel.
    """
    if observation.expresser != session.expresser:
        raise SessionError(
            f"Observation {observation.index} is about '{observation.expresser}', "
            f"session tracks '{session.expresser}'"
        )
    history = session.history.append(observation)

    built, notes = arguments_for_observation(session.rules, observation)
    added = [a for a in built if a.id not in session.arguments]
    attacks = derive_attacks(session.arguments.values(), added)
    afv = session.afv.extend((a.id for a in added), attacks)

    arguments = dict(session.arguments)
    arguments.update({a.id: a for a in added})
    updated = Session(
        session.expresser,
        session.rules,
        history,
        arguments,
        afv,
        grounded(afv),
    )
    delta = Delta(observation, frozenset(added), attacks, tuple(notes))
    logger.debug(
        f"Observation {observation.index} ({observation.expression} on "
        f"{observation.action}) added {len(added)} arguments and {len(attacks)} attacks"
    )
    return updated, delta


def verdicts(session: Session) -> ValueVerdicts:
    """
    A value is believed when an ordinary argument for it is IN, believed not
    when a blocking argument against it is IN, and undecided when arguments
    mention it but neither holds. Values no argument mentions are left out.
    """
    believed = set()
    believed_not = set()
    mentioned = set()
    for argument in session.arguments.values():
        mentioned.add(argument.value)
        if session.labelling[argument.id] is not Label.IN:
            continue
        if argument.supports:
            believed.add(argument.value)
        else:
            believed_not.add(argument.value)
    return ValueVerdicts(
        frozenset(believed),
        frozenset(believed_not),
        frozenset(mentioned - believed - believed_not),
    )


def replay(
    expresser: str, rules: Iterable[BackgroundRule], observations: Iterable[Observation]
) -> Tuple[Session, List[Delta]]:
    """Fold `observe` over a sequence of observations from an empty session."""
    session = Session.start(expresser, rules)
    deltas = []
    for observation in observations:
        session, delta = observe(session, observation)
        deltas.append(delta)
    return session, deltas
