from dataclasses import dataclass, field
from enum import Enum

from emotions.emotion import CompleteEmotion, EmotionKind
from world.literal import Literal


class Polarity(Enum):
    SUPPORTS = "sup"
    OPPOSES = "opp"

    def __str__(self):
        return self.value


def argument_id(polarity: Polarity, value: Literal, obs_index: int) -> str:
    sign = "pos" if value.positive else "neg"
    return f"{polarity.value}_{obs_index}_{sign}_{value.atom}"


@dataclass(frozen=True)
class Argument:
    """
    An ordinary (SUPPORTS) or blocking (OPPOSES) argument about one value of
    the expresser, anchored to the observation it was built from.
    """

    polarity: Polarity
    value: Literal
    obs_index: int
    action: str
    kind: EmotionKind
    id: str = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "id", argument_id(self.polarity, self.value, self.obs_index)
        )

    @property
    def supports(self) -> bool:
        return self.polarity is Polarity.SUPPORTS

    @property
    def opposes(self) -> bool:
        return self.polarity is Polarity.OPPOSES

    def claimed_emotion(self, expresser: str) -> CompleteEmotion:
        """
        The complete emotion this argument asserts (SUPPORTS) or denies
        (OPPOSES) for the expresser. Its belief conjunct is what the observer
        learns about the expresser's view of the world.
        """
        return CompleteEmotion(expresser, self.kind, self.action, self.value)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "polarity": "supports" if self.supports else "opposes",
            "value": str(self.value),
            "obs_index": self.obs_index,
            "action": self.action,
            "kind": str(self.kind),
        }

    def __str__(self):
        return self.id
