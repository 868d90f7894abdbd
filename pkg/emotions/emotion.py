from dataclasses import dataclass
from enum import Enum

from world.formula import And, BeforeAction, Believes, Formula, HasValue, Lit
from world.literal import Literal


class EmotionKind(Enum):
    JOY = "joy"
    DISTRESS = "distress"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text: str) -> "EmotionKind":
        try:
            return cls(text)
        except ValueError:
            raise ValueError(
                f"Unknown emotion kind '{text}'; expected one of "
                f"{', '.join(kind.value for kind in cls)}"
            ) from None


@dataclass(frozen=True)
class CompleteEmotion:
    """An emotion indexed by both its triggering action and the value at stake."""

    agent: str
    kind: EmotionKind
    action: str
    value: Literal

    def as_formula(self) -> Formula:
        """
        Joy: the agent believes v holds now and did not hold before the action,
        and holds v as a value. Distress mirrors it: the agent believes v was
        lost through the action.
        """
        if self.kind is EmotionKind.JOY:
            now, before = self.value, self.value.complement()
        else:
            now, before = self.value.complement(), self.value
        return And(
            Believes(self.agent, And(Lit(now), BeforeAction(self.action, Lit(before)))),
            HasValue(self.agent, self.value),
        )

    def __str__(self):
        return f"{self.kind}_{self.agent}({self.action}, {self.value})"


@dataclass(frozen=True)
class IncompleteEmotion:
    """An emotion whose value is unknown: a disjunction over all literals."""

    agent: str
    kind: EmotionKind
    action: str

    def with_value(self, value: Literal) -> CompleteEmotion:
        return CompleteEmotion(self.agent, self.kind, self.action, value)

    def __str__(self):
        return f"{self.kind}_{self.agent}({self.action})"
