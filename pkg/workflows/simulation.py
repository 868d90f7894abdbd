from dataclasses import dataclass
from typing import List, Mapping, Optional

from emotions.appraisal import holds_complete, holds_incomplete, witnesses
from emotions.emotion import EmotionKind, IncompleteEmotion
from observer.observation import Expression, ExpressionMode, Observation
from scenarios.scenario import (
    ABSENT_KIND_OPTION,
    DISCLOSE_OPTION,
    KNOWN_OPTIONS,
    Scenario,
    ScriptedEvent,
    validate_scenario,
)
from utils.config import BaseConfig
from utils.logger import get_main_logger
from workflows.session import Session, observe, verdicts
from workflows.trace import Trace, TraceStep
from world.validation import has_fatal
from world.world_model import WorldModel

logger = get_main_logger(__name__)

DISCLOSURE_MODES = ("full", "partial")


class ConsistencyError(ValueError):
    """A scripted expression contradicts what the world model says the expresser feels."""

    def __init__(self, index: int, message: str):
        super().__init__(f"obs {index}: {message}")
        self.index = index


class InvalidScenarioError(ValueError):
    def __init__(self, diagnostics):
        fatal = [d for d in diagnostics if d.is_fatal]
        super().__init__("; ".join(str(d) for d in fatal))
        self.diagnostics = diagnostics


@dataclass
class SimulationConfig(BaseConfig):
    """
    disclose: with "full", an `auto` event whose emotion has exactly one
        witness value is expressed completely; otherwise incompletely.
    absent_kind: kind reported absent by a bare `auto` event when no emotion
        holds and the expresser has not expressed any kind yet.
    """

    disclose: str = "partial"
    absent_kind: str = EmotionKind.JOY.value

    def validate(self) -> None:
        if self.disclose not in DISCLOSURE_MODES:
            raise ValueError(
                f"disclose must be one of {', '.join(DISCLOSURE_MODES)}, got '{self.disclose}'"
            )
        EmotionKind.parse(self.absent_kind)

    @classmethod
    def from_options(cls, options: Mapping[str, str]) -> "SimulationConfig":
        for key in sorted(set(options) - set(KNOWN_OPTIONS)):
            logger.debug(f"Ignoring unknown scenario option '{key}'")
        settings = {}
        if DISCLOSE_OPTION in options:
            settings["disclose"] = options[DISCLOSE_OPTION]
        if ABSENT_KIND_OPTION in options:
            settings["absent_kind"] = options[ABSENT_KIND_OPTION]
        return cls(**settings)


def synthesize_expression(
    model: WorldModel,
    expresser: str,
    event: ScriptedEvent,
    config: SimulationConfig,
    last_kind: Optional[EmotionKind] = None,
) -> Expression:
    """
    Ground-truth expression for an `auto` event. Kinds are tried in order
    (joy, then distress) unless the event names one. If none holds, the
    expresser is shown not to express the named kind, else the kind it last
    expressed, else the configured fallback.
    """
    requested = event.expression.kind
    kinds = [requested] if requested is not None else list(EmotionKind)
    for kind in kinds:
        emotion = IncompleteEmotion(expresser, kind, event.action)
        found = witnesses(model, event.state, emotion)
        if not found:
            continue
        if config.disclose == "full" and len(found) == 1:
            (value,) = found
            return Expression.complete(kind, value)
        return Expression.incomplete(kind)

    if requested is not None:
        absent = requested
    elif last_kind is not None:
        absent = last_kind
    else:
        absent = EmotionKind.parse(config.absent_kind)
    return Expression.absent(absent)


def check_consistency(
    model: WorldModel, expresser: str, event: ScriptedEvent
) -> None:
    expression: Expression = event.expression
    emotion = IncompleteEmotion(expresser, expression.kind, event.action)
    if expression.mode is ExpressionMode.COMPLETE:
        if not holds_complete(model, event.state, emotion.with_value(expression.value)):
            raise ConsistencyError(
                event.index,
                f"{expression} is scripted but {emotion.with_value(expression.value)} "
                f"does not hold at {event.state}",
            )
    elif expression.mode is ExpressionMode.INCOMPLETE:
        if not holds_incomplete(model, event.state, emotion):
            raise ConsistencyError(
                event.index,
                f"{expression} is scripted but {emotion} does not hold at {event.state}",
            )
    elif holds_incomplete(model, event.state, emotion):
        raise ConsistencyError(
            event.index,
            f"{expression} is scripted but {emotion} holds at {event.state}",
        )


def resolve_script(
    scenario: Scenario, config: Optional[SimulationConfig] = None
) -> List[Observation]:
    """Turn the script into observations, synthesizing `auto` expressions."""
    config = config or SimulationConfig.from_options(scenario.options)
    observations = []
    last_kind: Optional[EmotionKind] = None
    for event in scenario.script:
        if event.is_auto:
            expression = synthesize_expression(
                scenario.model, scenario.expresser, event, config, last_kind
            )
            logger.debug(f"obs {event.index}: auto resolved to {expression}")
        else:
            check_consistency(scenario.model, scenario.expresser, event)
            expression = event.expression
        if expression.mode is not ExpressionMode.ABSENT:
            last_kind = expression.kind
        observations.append(
            Observation(
                event.index, event.state, scenario.expresser, event.action, expression
            )
        )
    return observations


def simulate(scenario: Scenario, config: Optional[SimulationConfig] = None) -> Trace:
    """
    Replay the scenario's script through an observer session and record what
    every observation added and what the observer concludes afterwards.
    """
    diagnostics = validate_scenario(scenario)
    if has_fatal(diagnostics):
        raise InvalidScenarioError(diagnostics)
    for diagnostic in diagnostics:
        logger.warning(str(diagnostic))

    logger.status(
        f"Simulating {len(scenario.script)} events: {scenario.observer} watching {scenario.expresser}"
    )
    observations = resolve_script(scenario, config)

    session = Session.start(scenario.expresser, scenario.rules)
    steps = []
    for observation in observations:
        session, delta = observe(session, observation)
        steps.append(TraceStep.from_delta(delta, verdicts(session)))

    trace = Trace(tuple(steps))
    logger.status(f"Simulation finished after {len(trace)} steps", True)
    return trace

