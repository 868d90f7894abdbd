import re
from typing import Dict, List, Optional, Set, Tuple, Union

from emotions.emotion import EmotionKind
from observer.background_rule import BackgroundRule
from observer.observation import Expression
from scenarios.scenario import (
    DISCLOSE_OPTION,
    AutoExpression,
    Scenario,
    ScriptedEvent,
    ScriptedExpression,
)
from world.literal import IDENTIFIER_PATTERN, Literal, is_identifier
from world.world_model import State, Transition, WorldModel, identity_relation

ID = IDENTIFIER_PATTERN
LIT = rf"~?{ID}"
KIND = "|".join(kind.value for kind in EmotionKind)

REQUIRED_SECTIONS = ("agents", "atoms", "actions", "observer", "expresser")
DISCLOSE_VALUES = ("full", "partial")
ALL_STATES = "*"

STATE_HEAD_RE = re.compile(rf"state\s+({ID})")
EPISTEMIC_HEAD_RE = re.compile(rf"epistemic\s+({ID})")
VAL_HEAD_RE = re.compile(rf"val\s+({ID})\s*@\s*({ID}|\*)")
OBS_HEAD_RE = re.compile(r"obs\s+([0-9]{1,9})")
OPTION_HEAD_RE = re.compile(rf"option\s+({ID})")
ASSIGNMENT_RE = re.compile(rf"({ID})\s*=\s*([01])")
TRANSITION_RE = re.compile(rf"({ID})\s*-({ID})->\s*({ID})")
PAIR_RE = re.compile(rf"({ID})\s*->\s*({ID})")
RULE_RE = re.compile(rf"({ID})\s*=>\s*({LIT})")
OBS_FIELD_RE = re.compile(r"([a-z]+)=(\S+)")

INCOMPLETE_RE = re.compile(rf"({KIND})\?")
COMPLETE_RE = re.compile(rf"({KIND})\(\s*({LIT})\s*\)")
ABSENT_RE = re.compile(rf"none\(\s*({KIND})\s*\)")
AUTO_RE = re.compile(rf"auto(?:\(\s*({KIND})\s*\))?")

EXPRESSION_HINT = "joy? | distress? | joy(LIT) | distress(LIT) | none(KIND) | auto | auto(KIND)"
OBS_FIELDS = ("state", "action", "express")


class ScenarioSyntaxError(ValueError):
    """Input outside the scenario grammar. Positions are 1-based."""

    def __init__(
        self, message: str, line: int, column: int = 1, expected: Optional[str] = None
    ):
        text = f"line {line}, column {column}: {message}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)
        self.line = line
        self.column = column
        self.expected = expected


def parse_expression(text: str) -> ScriptedExpression:
    """Parse one `express=` payload; raises ValueError outside the grammar."""
    text = text.strip()
    match = INCOMPLETE_RE.fullmatch(text)
    if match:
        return Expression.incomplete(EmotionKind(match.group(1)))
    match = COMPLETE_RE.fullmatch(text)
    if match:
        return Expression.complete(
            EmotionKind(match.group(1)), Literal.parse(match.group(2))
        )
    match = ABSENT_RE.fullmatch(text)
    if match:
        return Expression.absent(EmotionKind(match.group(1)))
    match = AUTO_RE.fullmatch(text)
    if match:
        kind = match.group(1)
        return AutoExpression(EmotionKind(kind) if kind else None)
    raise ValueError(f"Not an expression: {text!r}")


class _Line:
    """One significant line: its number, the head before ':' and the payload after it."""

    def __init__(self, number: int, raw: str):
        self.number = number
        self.raw = raw
        head, _, payload = raw.partition(":")
        self.head = head.strip()
        self.payload = payload.strip()
        self.payload_column = len(head) + 2 + (len(payload) - len(payload.lstrip()))

    def error(self, message: str, expected: Optional[str] = None, in_payload=True):
        column = self.payload_column if in_payload else len(self.raw) - len(self.raw.lstrip()) + 1
        return ScenarioSyntaxError(message, self.number, column, expected)


class ScenarioParser:
    """
    Line-oriented scenario reader. Every statement is `head: payload`;
    `#` starts a comment. Only syntax is checked here: undeclared ids and
    other model invariants are left to validation.
    """

    def __init__(self):
        self.sections: Dict[str, int] = {}
        self.agents: Tuple[str, ...] = ()
        self.atoms: Tuple[str, ...] = ()
        self.actions: Tuple[str, ...] = ()
        self.states: List[State] = []
        self.transitions: Set[Transition] = set()
        self.epistemic: Dict[str, frozenset] = {}
        self.values: Dict[Tuple[str, str], Set[Literal]] = {}
        self.uniform_values: Dict[str, Set[Literal]] = {}
        self.observer: Optional[str] = None
        self.expresser: Optional[str] = None
        self.rules: Set[BackgroundRule] = set()
        self.script: List[ScriptedEvent] = []
        self.options: Dict[str, str] = {}

    def parse(self, text: Union[str, bytes]) -> Scenario:
        text = self._decode(text)
        for number, raw in enumerate(text.splitlines(), start=1):
            content = raw.split("#", 1)[0]
            if not content.strip():
                continue
            self._statement(_Line(number, content.rstrip()))

        for section in REQUIRED_SECTIONS:
            if section not in self.sections:
                raise ScenarioSyntaxError(
                    f"missing required section: {section}",
                    len(text.splitlines()) + 1,
                )
        return self._scenario()

    @staticmethod
    def _decode(text: Union[str, bytes]) -> str:
        if isinstance(text, str):
            return text
        try:
            return text.decode("utf-8")
        except UnicodeDecodeError as e:
            line = text[: e.start].count(b"\n") + 1
            raise ScenarioSyntaxError("input is not valid UTF-8", line) from None

    def _statement(self, line: _Line) -> None:
        if ":" not in line.raw:
            raise line.error("statement without ':'", "HEAD: PAYLOAD", in_payload=False)
        head = line.head
        keyword = head.split(None, 1)[0] if head else ""
        handler = {
            "agents": self._names,
            "atoms": self._names,
            "actions": self._names,
            "state": self._state,
            "trans": self._transition,
            "epistemic": self._epistemic,
            "val": self._value,
            "observer": self._role,
            "expresser": self._role,
            "rule": self._rule,
            "obs": self._observation,
            "disclose": self._disclose,
            "option": self._option,
        }.get(keyword)
        if handler is None:
            raise line.error(
                f"unknown statement '{head}'",
                "agents, atoms, actions, state, trans, epistemic, val, observer, "
                "expresser, rule, obs, disclose or option",
                in_payload=False,
            )
        handler(line)

    def _once(self, line: _Line, section: str) -> None:
        if section in self.sections:
            raise line.error(
                f"duplicate section '{section}' (first on line {self.sections[section]})",
                in_payload=False,
            )
        self.sections[section] = line.number

    def _identifier_list(self, line: _Line, what: str) -> List[str]:
        if not line.payload:
            return []
        names = [name.strip() for name in line.payload.split(",")]
        seen: Set[str] = set()
        for name in names:
            if not is_identifier(name):
                raise line.error(f"bad {what} name '{name}'", "identifier")
            if name in seen:
                raise line.error(f"{what} '{name}' listed twice")
            seen.add(name)
        return names

    def _names(self, line: _Line) -> None:
        if line.head not in ("agents", "atoms", "actions"):
            raise line.error(f"unknown statement '{line.head}'", in_payload=False)
        self._once(line, line.head)
        names = tuple(self._identifier_list(line, line.head[:-1]))
        setattr(self, line.head, names)

    def _state(self, line: _Line) -> None:
        match = STATE_HEAD_RE.fullmatch(line.head)
        if match is None:
            raise line.error("bad state header", "state ID", in_payload=False)
        valuation: Dict[str, bool] = {}
        if line.payload:
            for part in line.payload.split(","):
                assignment = ASSIGNMENT_RE.fullmatch(part.strip())
                if assignment is None:
                    raise line.error(f"bad assignment '{part.strip()}'", "ATOM=0|1")
                atom, bit = assignment.groups()
                if atom in valuation:
                    raise line.error(f"atom '{atom}' assigned twice")
                valuation[atom] = bit == "1"
        self.states.append(State(match.group(1), valuation))

    def _transition(self, line: _Line) -> None:
        if line.head != "trans":
            raise line.error(f"unknown statement '{line.head}'", in_payload=False)
        match = TRANSITION_RE.fullmatch(line.payload)
        if match is None:
            raise line.error("bad transition", "STATE -ACTION-> STATE")
        self.transitions.add(Transition(*match.groups()))

    def _epistemic(self, line: _Line) -> None:
        match = EPISTEMIC_HEAD_RE.fullmatch(line.head)
        if match is None:
            raise line.error("bad epistemic header", "epistemic AGENT", in_payload=False)
        agent = match.group(1)
        if agent in self.epistemic:
            raise line.error(f"duplicate epistemic relation for '{agent}'", in_payload=False)
        pairs = set()
        if line.payload:
            for part in line.payload.split(","):
                pair = PAIR_RE.fullmatch(part.strip())
                if pair is None:
                    raise line.error(f"bad pair '{part.strip()}'", "STATE->STATE")
                pairs.add(pair.groups())
        self.epistemic[agent] = frozenset(pairs)

    def _value(self, line: _Line) -> None:
        match = VAL_HEAD_RE.fullmatch(line.head)
        if match is None:
            raise line.error("bad value header", "val AGENT @ STATE|*", in_payload=False)
        agent, state = match.groups()
        literals = set()
        if line.payload:
            for part in line.payload.split(","):
                part = part.strip()
                try:
                    literals.add(Literal.parse(part))
                except ValueError:
                    raise line.error(f"bad literal '{part}'", "ATOM or ~ATOM") from None
        if state == ALL_STATES:
            target = self.uniform_values.setdefault(agent, set())
        else:
            target = self.values.setdefault((agent, state), set())
        target |= literals

    def _role(self, line: _Line) -> None:
        if line.head not in ("observer", "expresser"):
            raise line.error(f"unknown statement '{line.head}'", in_payload=False)
        self._once(line, line.head)
        if not is_identifier(line.payload):
            raise line.error(f"bad agent name '{line.payload}'", "identifier")
        setattr(self, line.head, line.payload)

    def _rule(self, line: _Line) -> None:
        if line.head != "rule":
            raise line.error(f"unknown statement '{line.head}'", in_payload=False)
        match = RULE_RE.fullmatch(line.payload)
        if match is None:
            raise line.error("bad rule", "ACTION => LITERAL")
        self.rules.add(BackgroundRule(match.group(1), Literal.parse(match.group(2))))

    def _observation(self, line: _Line) -> None:
        match = OBS_HEAD_RE.fullmatch(line.head)
        if match is None:
            raise line.error("bad observation header", "obs N", in_payload=False)
        index = int(match.group(1))
        if index < 1:
            raise line.error("observation index must be positive", in_payload=False)
        if any(event.index == index for event in self.script):
            raise line.error(f"duplicate observation index {index}", in_payload=False)

        fields: Dict[str, str] = {}
        for token in line.payload.split():
            field_match = OBS_FIELD_RE.fullmatch(token)
            if field_match is None or field_match.group(1) not in OBS_FIELDS:
                raise line.error(f"bad observation field '{token}'", "state=ID action=ID express=EXPR")
            name, value = field_match.groups()
            if name in fields:
                raise line.error(f"observation field '{name}' given twice")
            fields[name] = value
        for name in OBS_FIELDS:
            if name not in fields:
                raise line.error(f"observation {index} lacks '{name}='", f"{name}=...")
        for name in ("state", "action"):
            if not is_identifier(fields[name]):
                raise line.error(f"bad {name} '{fields[name]}'", "identifier")
        try:
            expression = parse_expression(fields["express"])
        except ValueError:
            raise line.error(f"bad expression '{fields['express']}'", EXPRESSION_HINT) from None
        self.script.append(
            ScriptedEvent(index, fields["state"], fields["action"], expression)
        )

    def _disclose(self, line: _Line) -> None:
        if line.head != "disclose":
            raise line.error(f"unknown statement '{line.head}'", in_payload=False)
        self._once(line, "disclose")
        if line.payload not in DISCLOSE_VALUES:
            raise line.error(f"bad disclosure '{line.payload}'", " or ".join(DISCLOSE_VALUES))
        self.options[DISCLOSE_OPTION] = line.payload

    def _option(self, line: _Line) -> None:
        match = OPTION_HEAD_RE.fullmatch(line.head)
        if match is None:
            raise line.error("bad option header", "option NAME", in_payload=False)
        name = match.group(1)
        if name == DISCLOSE_OPTION:
            raise line.error("disclosure is set with 'disclose:'", in_payload=False)
        if name in self.options:
            raise line.error(f"duplicate option '{name}'", in_payload=False)
        if not line.payload:
            raise line.error(f"option '{name}' has no value", "VALUE")
        self.options[name] = line.payload

    def _scenario(self) -> Scenario:
        state_ids = [state.state_id for state in self.states]
        values = {key: set(lits) for key, lits in self.values.items()}
        for agent, literals in self.uniform_values.items():
            for state_id in state_ids:
                values.setdefault((agent, state_id), set()).update(literals)
        epistemic = dict(self.epistemic)
        for agent in self.agents:
            epistemic.setdefault(agent, identity_relation(state_ids))

        model = WorldModel(
            atoms=frozenset(self.atoms),
            agents=frozenset(self.agents),
            actions=frozenset(self.actions),
            states=tuple(self.states),
            transitions=frozenset(self.transitions),
            epistemic=epistemic,
            values={key: frozenset(lits) for key, lits in values.items()},
        )
        return Scenario(
            model,
            self.observer,
            self.expresser,
            frozenset(self.rules),
            tuple(self.script),
            dict(self.options),
        )


def parse_scenario(text: Union[str, bytes]) -> Scenario:
    """Parse scenario text; raises ScenarioSyntaxError on anything outside the grammar."""
    return ScenarioParser().parse(text)
