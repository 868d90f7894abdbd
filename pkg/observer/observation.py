from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional, Tuple

from emotions.emotion import EmotionKind
from world.literal import Literal


class HistoryOrderError(ValueError):
    def __init__(self, previous: int, index: int):
        super().__init__(
            f"Observation index {index} does not follow the last recorded index {previous}"
        )
        self.previous = previous
        self.index = index


class ExpressionMode(Enum):
    COMPLETE = "complete"
    INCOMPLETE = "incomplete"
    ABSENT = "absent"


@dataclass(frozen=True)
class Expression:
    """
    What the observer saw the expresser express about an action:
    an emotion with its value, an emotion without it, or the explicit
    absence of an emotion kind.
    """

    mode: ExpressionMode
    kind: EmotionKind
    value: Optional[Literal] = None

    def __post_init__(self):
        if (self.mode is ExpressionMode.COMPLETE) != (self.value is not None):
            raise ValueError("Only complete expressions carry a value")

    @classmethod
    def complete(cls, kind: EmotionKind, value: Literal) -> "Expression":
        return cls(ExpressionMode.COMPLETE, kind, value)

    @classmethod
    def incomplete(cls, kind: EmotionKind) -> "Expression":
        return cls(ExpressionMode.INCOMPLETE, kind)

    @classmethod
    def absent(cls, kind: EmotionKind) -> "Expression":
        return cls(ExpressionMode.ABSENT, kind)

    def __str__(self):
        if self.mode is ExpressionMode.COMPLETE:
            return f"{self.kind}({self.value})"
        if self.mode is ExpressionMode.INCOMPLETE:
            return f"{self.kind}?"
        return f"none({self.kind})"


@dataclass(frozen=True)
class Observation:
    index: int
    state: str
    expresser: str
    action: str
    expression: Expression

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"Observation index must be positive, got {self.index}")

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "state": self.state,
            "expresser": self.expresser,
            "action": self.action,
            "expression": str(self.expression),
        }


@dataclass(frozen=True)
class ObservationHistory:
    """Append-only, strictly index-ordered sequence of observations."""

    observations: Tuple[Observation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "observations", tuple(self.observations))
        for previous, current in zip(self.observations, self.observations[1:]):
            if current.index <= previous.index:
                raise HistoryOrderError(previous.index, current.index)

    @classmethod
    def of(cls, observations: Iterable[Observation]) -> "ObservationHistory":
        return cls(tuple(observations))

    @property
    def last_index(self) -> int:
        return self.observations[-1].index if self.observations else 0

    def append(self, observation: Observation) -> "ObservationHistory":
        if self.observations and observation.index <= self.last_index:
            raise HistoryOrderError(self.last_index, observation.index)
        return ObservationHistory(self.observations + (observation,))

    def __iter__(self) -> Iterator[Observation]:
        return iter(self.observations)

    def __len__(self) -> int:
        return len(self.observations)
