from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Tuple

from argumentation.framework import ArgumentationFramework, Attack
from observer.argument import Argument
from observer.observation import Observation
from workflows.session import Delta, ValueVerdicts


@dataclass(frozen=True)
class TraceStep:
    observation: Observation
    new_arguments: FrozenSet[Argument]
    new_attacks: FrozenSet[Attack]
    verdicts: ValueVerdicts
    notes: Tuple[str, ...] = ()

    @classmethod
    def from_delta(cls, delta: Delta, verdicts: ValueVerdicts) -> "TraceStep":
        return cls(
            delta.observation, delta.arguments, delta.attacks, verdicts, delta.notes
        )

    def sorted_arguments(self) -> List[Argument]:
        return sorted(self.new_arguments, key=lambda a: a.id)

    def to_dict(self) -> dict:
        expresser = self.observation.expresser
        return {
            "observation": self.observation.to_dict(),
            "new_arguments": [
                {
                    **a.to_dict(),
                    "claim": str(a.claimed_emotion(expresser).as_formula()),
                }
                for a in self.sorted_arguments()
            ],
            "new_attacks": [list(pair) for pair in sorted(self.new_attacks)],
            "verdicts": self.verdicts.to_dict(),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class Trace:
    steps: Tuple[TraceStep, ...] = ()

    def __iter__(self) -> Iterator[TraceStep]:
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def final_verdicts(self) -> ValueVerdicts:
        return self.steps[-1].verdicts if self.steps else ValueVerdicts()

    def arguments(self) -> FrozenSet[Argument]:
        return frozenset(a for step in self.steps for a in step.new_arguments)

    def framework(self) -> ArgumentationFramework:
        """The AFV the trace ends with: everything its steps added."""
        return ArgumentationFramework(
            frozenset(a.id for a in self.arguments()),
            frozenset(pair for step in self.steps for pair in step.new_attacks),
        )

    def to_dict(self) -> dict:
        return {
            "steps": [step.to_dict() for step in self.steps],
            "final_verdicts": self.final_verdicts.to_dict(),
        }
