from dataclasses import dataclass
from typing import Iterable, List

from world.literal import Literal


@dataclass(frozen=True)
class BackgroundRule:
    """Defeasible knowledge: `action` usually brings about `consequence`."""

    action: str
    consequence: Literal

    @property
    def sort_key(self):
        return (self.action, self.consequence.sort_key)

    def __str__(self):
        return f"{self.action} => {self.consequence}"


def rules_for(rules: Iterable[BackgroundRule], action: str) -> List[BackgroundRule]:
    return sorted(
        (rule for rule in rules if rule.action == action), key=lambda r: r.sort_key
    )
