from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Set, Tuple

from world.literal import Literal


class ModelError(ValueError):
    """Raised when a query references an id the world model does not declare."""

    def __init__(self, kind: str, name: str):
        super().__init__(f"Undeclared {kind}: '{name}'")
        self.kind = kind
        self.name = name


@dataclass(frozen=True)
class State:
    state_id: str
    valuation: Mapping[str, bool]

    def satisfies(self, literal: Literal) -> bool:
        return self.valuation[literal.atom] == literal.positive

    def true_atoms(self) -> FrozenSet[str]:
        return frozenset(atom for atom, value in self.valuation.items() if value)


@dataclass(frozen=True, order=True)
class Transition:
    source: str
    action: str
    target: str

    def __str__(self) -> str:
        return f"{self.source} -{self.action}-> {self.target}"


EpistemicRelation = FrozenSet[Tuple[str, str]]


@dataclass(frozen=True)
class WorldModel:
    """
    Multi-agent transition system: states with total valuations, action-labelled
    transitions, one epistemic accessibility relation per agent and the values
    each agent holds at each state.

    The model is a plain container. Nothing is checked on construction so that
    a scenario with mistakes can still be loaded and reported on; call
    world.validation.validate() to list invariant violations. A declared agent
    given no epistemic relation gets the empty one.
    """

    atoms: FrozenSet[str]
    agents: FrozenSet[str]
    actions: FrozenSet[str]
    states: Tuple[State, ...]
    transitions: FrozenSet[Transition] = frozenset()
    epistemic: Mapping[str, EpistemicRelation] = field(default_factory=dict)
    values: Mapping[Tuple[str, str], FrozenSet[Literal]] = field(
        default_factory=dict
    )

    def __post_init__(self):
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        object.__setattr__(self, "agents", frozenset(self.agents))
        object.__setattr__(self, "actions", frozenset(self.actions))
        # stable sort keeps duplicates visible to validation
        object.__setattr__(
            self, "states", tuple(sorted(self.states, key=lambda s: s.state_id))
        )
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(
            self,
            "epistemic",
            {
                **{agent: frozenset() for agent in self.agents},
                **{agent: frozenset(pairs) for agent, pairs in self.epistemic.items()},
            },
        )
        object.__setattr__(
            self,
            "values",
            {key: frozenset(vals) for key, vals in self.values.items() if vals},
        )

    @cached_property
    def _state_index(self) -> Dict[str, State]:
        return {state.state_id: state for state in self.states}

    @cached_property
    def _predecessor_index(self) -> Dict[Tuple[str, str], Set[str]]:
        index: Dict[Tuple[str, str], Set[str]] = {}
        for t in self.transitions:
            index.setdefault((t.target, t.action), set()).add(t.source)
        return index

    @cached_property
    def _successor_index(self) -> Dict[Tuple[str, str], Set[str]]:
        index: Dict[Tuple[str, str], Set[str]] = {}
        for agent, pairs in self.epistemic.items():
            for source, target in pairs:
                index.setdefault((agent, source), set()).add(target)
        return index

    @property
    def state_ids(self) -> FrozenSet[str]:
        return frozenset(self._state_index)

    def literals(self) -> FrozenSet[Literal]:
        """The finite literal set L generated by the atoms."""
        return frozenset(
            Literal(atom, positive) for atom in self.atoms for positive in (True, False)
        )

    def state(self, state_id: str) -> State:
        try:
            return self._state_index[state_id]
        except KeyError:
            raise ModelError("state", state_id) from None

    def require_state(self, state_id: str) -> None:
        self.state(state_id)

    def require_agent(self, agent: str) -> None:
        if agent not in self.agents:
            raise ModelError("agent", agent)

    def require_action(self, action: str) -> None:
        if action not in self.actions:
            raise ModelError("action", action)

    def require_atom(self, atom: str) -> None:
        if atom not in self.atoms:
            raise ModelError("atom", atom)

    def predecessors(self, state_id: str, action: str) -> FrozenSet[str]:
        """States from which `action` leads to `state_id`."""
        self.require_state(state_id)
        self.require_action(action)
        return frozenset(self._predecessor_index.get((state_id, action), ()))

    def believed_states(self, agent: str, state_id: str) -> FrozenSet[str]:
        """Epistemic successors of `state_id` for `agent`."""
        self.require_agent(agent)
        self.require_state(state_id)
        return frozenset(self._successor_index.get((agent, state_id), ()))

    def values_of(self, agent: str, state_id: str) -> FrozenSet[Literal]:
        self.require_agent(agent)
        self.require_state(state_id)
        return self.values.get((agent, state_id), frozenset())

    def with_changes(self, **changes) -> "WorldModel":
        """Copy of the model with some fields replaced."""
        current = {
            "atoms": self.atoms,
            "agents": self.agents,
            "actions": self.actions,
            "states": self.states,
            "transitions": self.transitions,
            "epistemic": self.epistemic,
            "values": self.values,
        }
        current.update(changes)
        return WorldModel(**current)


def identity_relation(state_ids: Iterable[str]) -> EpistemicRelation:
    return frozenset((s, s) for s in state_ids)


def build_model(
    atoms: Iterable[str],
    agents: Iterable[str],
    actions: Iterable[str],
    valuations: Mapping[str, Mapping[str, bool]],
    transitions: Iterable[Tuple[str, str, str]] = (),
    epistemic: Optional[Mapping[str, Iterable[Tuple[str, str]]]] = None,
    values: Optional[Mapping[Tuple[str, str], Iterable[Literal]]] = None,
) -> WorldModel:
    """
    Convenience constructor. Agents without an epistemic relation get the
    identity relation over the declared states.
    """
    agents = frozenset(agents)
    states = tuple(State(sid, dict(val)) for sid, val in valuations.items())
    relation = {agent: frozenset(pairs) for agent, pairs in (epistemic or {}).items()}
    for agent in agents:
        relation.setdefault(agent, identity_relation(valuations))
    return WorldModel(
        atoms=frozenset(atoms),
        agents=agents,
        actions=frozenset(actions),
        states=states,
        transitions=frozenset(Transition(*t) for t in transitions),
        epistemic=relation,
        values={k: frozenset(v) for k, v in (values or {}).items()},
    )
