from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Mapping

from argumentation.framework import ArgumentationFramework


class Label(Enum):
    IN = "in"
    OUT = "out"
    UNDEC = "undec"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Labelling:
    labels: Mapping[str, Label]

    def _with(self, label: Label) -> FrozenSet[str]:
        return frozenset(arg for arg, lab in self.labels.items() if lab is label)

    @property
    def in_set(self) -> FrozenSet[str]:
        return self._with(Label.IN)

    @property
    def out_set(self) -> FrozenSet[str]:
        return self._with(Label.OUT)

    @property
    def undec_set(self) -> FrozenSet[str]:
        return self._with(Label.UNDEC)

    def __getitem__(self, argument: str) -> Label:
        return self.labels[argument]

    def __len__(self):
        return len(self.labels)

    def is_legal(self, af: ArgumentationFramework) -> bool:
        """
        IN arguments have only OUT attackers, OUT arguments have an IN attacker,
        UNDEC arguments have no IN attacker and at least one UNDEC attacker.
        """
        if set(self.labels) != set(af.arguments):
            return False
        for argument, label in self.labels.items():
            attacker_labels = {self.labels[a] for a in af.attackers(argument)}
            if label is Label.IN and attacker_labels - {Label.OUT}:
                return False
            if label is Label.OUT and Label.IN not in attacker_labels:
                return False
            if label is Label.UNDEC and (
                Label.IN in attacker_labels or Label.UNDEC not in attacker_labels
            ):
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "in": sorted(self.in_set),
            "out": sorted(self.out_set),
            "undec": sorted(self.undec_set),
        }
