from dataclasses import dataclass, field
from typing import FrozenSet, List, Mapping, Optional, Tuple, Union

from emotions.emotion import EmotionKind
from observer.background_rule import BackgroundRule
from observer.observation import Expression, ExpressionMode
from world.literal import is_identifier
from world.validation import Diagnostic, fatal, validate, warning
from world.world_model import WorldModel

DISCLOSE_OPTION = "disclose"
ABSENT_KIND_OPTION = "absent_kind"
KNOWN_OPTIONS = (DISCLOSE_OPTION, ABSENT_KIND_OPTION)
COMMENT_MARKER = "#"
MAX_OBS_INDEX = 999_999_999


def is_option_value(value: str) -> bool:
    """One non-empty line with no comment marker and no surrounding whitespace."""
    return (
        isinstance(value, str)
        and value == value.strip()
        and COMMENT_MARKER not in value
        and value.splitlines() == [value]
    )


@dataclass(frozen=True)
class AutoExpression:
    """Placeholder resolved by the simulation from the world model's ground truth."""

    kind: Optional[EmotionKind] = None

    def __str__(self):
        return "auto" if self.kind is None else f"auto({self.kind})"


ScriptedExpression = Union[Expression, AutoExpression]


@dataclass(frozen=True)
class ScriptedEvent:
    index: int
    state: str
    action: str
    expression: ScriptedExpression

    @property
    def is_auto(self) -> bool:
        return isinstance(self.expression, AutoExpression)


@dataclass(frozen=True)
class Scenario:
    """A world model, who watches whom, the observer's rules and the script of events."""

    model: WorldModel
    observer: str
    expresser: str
    rules: FrozenSet[BackgroundRule] = frozenset()
    script: Tuple[ScriptedEvent, ...] = ()
    options: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "rules", frozenset(self.rules))
        object.__setattr__(self, "script", tuple(self.script))
        object.__setattr__(self, "options", dict(self.options))


def validate_scenario(scenario: Scenario) -> List[Diagnostic]:
    """Model diagnostics plus the scenario's own invariants."""
    diagnostics = validate(scenario.model)
    model = scenario.model

    for role, agent in (("observer", scenario.observer), ("expresser", scenario.expresser)):
        if agent not in model.agents:
            diagnostics.append(
                fatal("undeclared-agent", agent, f"{role} '{agent}' is not a declared agent")
            )
    if scenario.observer == scenario.expresser:
        diagnostics.append(
            fatal(
                "observer-is-expresser",
                scenario.observer,
                f"observer and expresser are both '{scenario.observer}'",
            )
        )

    for rule in sorted(scenario.rules, key=lambda r: r.sort_key):
        if rule.action not in model.actions:
            diagnostics.append(
                fatal(
                    "undeclared-action",
                    rule.action,
                    f"rule '{rule}' uses undeclared action '{rule.action}'",
                )
            )
        if rule.consequence.atom not in model.atoms:
            diagnostics.append(
                fatal(
                    "undeclared-atom",
                    rule.consequence.atom,
                    f"rule '{rule}' uses undeclared atom '{rule.consequence.atom}'",
                )
            )

    previous: Optional[int] = None
    for event in scenario.script:
        if previous is not None and event.index <= previous:
            diagnostics.append(
                fatal(
                    "script-order",
                    str(event.index),
                    f"obs {event.index} does not follow obs {previous}",
                )
            )
        previous = event.index
        if not 1 <= event.index <= MAX_OBS_INDEX:
            diagnostics.append(
                fatal(
                    "bad-index",
                    str(event.index),
                    f"obs index {event.index} is outside 1..{MAX_OBS_INDEX}",
                )
            )
        if event.state not in model.state_ids:
            diagnostics.append(
                fatal(
                    "undeclared-state",
                    event.state,
                    f"obs {event.index} happens in undeclared state '{event.state}'",
                )
            )
        if event.action not in model.actions:
            diagnostics.append(
                fatal(
                    "undeclared-action",
                    event.action,
                    f"obs {event.index} uses undeclared action '{event.action}'",
                )
            )
        expression = event.expression
        if (
            isinstance(expression, Expression)
            and expression.mode is ExpressionMode.COMPLETE
            and expression.value.atom not in model.atoms
        ):
            diagnostics.append(
                fatal(
                    "undeclared-atom",
                    expression.value.atom,
                    f"obs {event.index} expresses undeclared atom '{expression.value.atom}'",
                )
            )

    for key in sorted(scenario.options):
        if not is_identifier(key):
            diagnostics.append(
                fatal("bad-option", key, f"option name '{key}' is not an identifier")
            )
        elif not is_option_value(scenario.options[key]):
            diagnostics.append(
                fatal(
                    "bad-option",
                    key,
                    f"option '{key}' needs a single-line value without '#' "
                    "or surrounding whitespace",
                )
            )
        if key not in KNOWN_OPTIONS:
            diagnostics.append(
                warning("unknown-option", key, f"option '{key}' is not recognised")
            )
    disclose = scenario.options.get(DISCLOSE_OPTION)
    if disclose is not None and disclose not in ("full", "partial"):
        diagnostics.append(
            fatal(
                "bad-option",
                DISCLOSE_OPTION,
                f"disclose must be full or partial, got '{disclose}'",
            )
        )
    absent_kind = scenario.options.get(ABSENT_KIND_OPTION)
    if absent_kind is not None and absent_kind not in {k.value for k in EmotionKind}:
        diagnostics.append(
            fatal(
                "bad-option",
                ABSENT_KIND_OPTION,
                f"absent_kind must be an emotion kind, got '{absent_kind}'",
            )
        )
    return diagnostics
