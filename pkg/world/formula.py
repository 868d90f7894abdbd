"""
Modal language over a WorldModel: literals, Boolean connectives, belief,
the converse-action diamond and the value predicate.

Each formula class knows how to check itself at a state (`sat`) and which
model ids it mentions (`references`). `evaluate` checks references first so
an undeclared name is reported instead of surfacing as a KeyError mid-way.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterator, Tuple

from world.literal import Literal
from world.world_model import WorldModel

Reference = Tuple[str, str]


class Formula(ABC):
    @abstractmethod
    def sat(self, model: WorldModel, state_id: str) -> bool:
        pass

    @abstractmethod
    def references(self) -> Iterator[Reference]:
        """Yield (kind, name) pairs for every model id the formula mentions."""
        pass

    def depth(self) -> int:
        return 0


@dataclass(frozen=True)
class Lit(Formula):
    literal: Literal

    def sat(self, model, state_id):
        return model.state(state_id).satisfies(self.literal)

    def references(self):
        yield ("atom", self.literal.atom)

    def __str__(self):
        return str(self.literal)


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula

    def sat(self, model, state_id):
        return not self.operand.sat(model, state_id)

    def references(self):
        yield from self.operand.references()

    def depth(self):
        return 1 + self.operand.depth()

    def __str__(self):
        return f"!{self.operand}"


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def sat(self, model, state_id):
        return self.left.sat(model, state_id) and self.right.sat(model, state_id)

    def references(self):
        yield from self.left.references()
        yield from self.right.references()

    def depth(self):
        return 1 + max(self.left.depth(), self.right.depth())

    def __str__(self):
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def sat(self, model, state_id):
        return self.left.sat(model, state_id) or self.right.sat(model, state_id)

    def references(self):
        yield from self.left.references()
        yield from self.right.references()

    def depth(self):
        return 1 + max(self.left.depth(), self.right.depth())

    def __str__(self):
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Believes(Formula):
    """True iff the operand holds at every epistemically accessible state."""

    agent: str
    operand: Formula

    def sat(self, model, state_id):
        return all(
            self.operand.sat(model, successor)
            for successor in model.believed_states(self.agent, state_id)
        )

    def references(self):
        yield ("agent", self.agent)
        yield from self.operand.references()

    def depth(self):
        return 1 + self.operand.depth()

    def __str__(self):
        return f"B_{self.agent}{_wrap(self.operand)}"


@dataclass(frozen=True)
class BeforeAction(Formula):
    """Converse-action diamond: some `action`-predecessor satisfies the operand."""

    action: str
    operand: Formula

    def sat(self, model, state_id):
        return any(
            self.operand.sat(model, predecessor)
            for predecessor in model.predecessors(state_id, self.action)
        )

    def references(self):
        yield ("action", self.action)
        yield from self.operand.references()

    def depth(self):
        return 1 + self.operand.depth()

    def __str__(self):
        return f"<-{self.action}>{self.operand}"


@dataclass(frozen=True)
class HasValue(Formula):
    agent: str
    value: Literal

    def sat(self, model, state_id):
        return self.value in model.values_of(self.agent, state_id)

    def references(self):
        yield ("agent", self.agent)
        yield ("atom", self.value.atom)

    def __str__(self):
        return f"Val_{self.agent}({self.value})"


def _wrap(formula: Formula) -> str:
    text = str(formula)
    return text if text.startswith("(") else f"({text})"


def check_references(model: WorldModel, formula: Formula) -> None:
    require = {
        "atom": model.require_atom,
        "agent": model.require_agent,
        "action": model.require_action,
    }
    for kind, name in formula.references():
        require[kind](name)


def evaluate(model: WorldModel, state_id: str, formula: Formula) -> bool:
    """Truth of `formula` at `state_id`. Raises ModelError on undeclared ids."""
    model.require_state(state_id)
    check_references(model, formula)
    return formula.sat(model, state_id)
