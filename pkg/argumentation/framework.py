from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Collection, Dict, FrozenSet, Iterable, List, Set, Tuple

import networkx as nx

from observer.argument import Argument

Attack = Tuple[str, str]


class FrameworkError(ValueError):
    """Raised for malformed frameworks: duplicate ids or dangling attacks."""


@dataclass(frozen=True)
class ArgumentationFramework:
    arguments: FrozenSet[str] = frozenset()
    attacks: FrozenSet[Attack] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "arguments", frozenset(self.arguments))
        object.__setattr__(self, "attacks", frozenset(self.attacks))
        for attacker, target in self.attacks:
            for end in (attacker, target):
                if end not in self.arguments:
                    raise FrameworkError(
                        f"Attack ({attacker}, {target}) references undeclared argument '{end}'"
                    )

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.arguments)
        graph.add_edges_from(self.attacks)
        return graph

    def attackers(self, argument: str) -> FrozenSet[str]:
        return frozenset(self.graph.predecessors(argument))

    def attacked_by(self, argument: str) -> FrozenSet[str]:
        return frozenset(self.graph.successors(argument))

    def is_conflict_free(self, extension: Collection[str]) -> bool:
        members = set(extension)
        return not any(a in members and b in members for a, b in self.attacks)

    def defends(self, extension: Collection[str], argument: str) -> bool:
        """Every attacker of `argument` is attacked by some member of `extension`."""
        members = set(extension)
        return all(
            self.attackers(attacker) & members for attacker in self.attackers(argument)
        )

    def extend(
        self, arguments: Iterable[str], attacks: Iterable[Attack]
    ) -> "ArgumentationFramework":
        return ArgumentationFramework(
            self.arguments | frozenset(arguments), self.attacks | frozenset(attacks)
        )

    def sorted_arguments(self) -> List[str]:
        return sorted(self.arguments)

    def sorted_attacks(self) -> List[Attack]:
        return sorted(self.attacks)

    def __len__(self):
        return len(self.arguments)


def _check_unique(arguments: Iterable[Argument]) -> Dict[str, Argument]:
    by_id: Dict[str, Argument] = {}
    for argument in arguments:
        known = by_id.get(argument.id)
        if known is not None and known != argument:
            raise FrameworkError(f"Duplicate argument id '{argument.id}'")
        by_id[argument.id] = argument
    return by_id


def derive_attacks(
    existing: Iterable[Argument], added: Iterable[Argument]
) -> FrozenSet[Attack]:
    """
    Attacks with at least one end in `added`, given the arguments already in
    the framework.

    Two ordinary arguments from the same observation attack each other when
    they support different values. A blocking argument attacks every ordinary
    argument supporting the value it opposes. Blocking arguments are never
    attacked.
    """
    existing = list(existing)
    added = list(added)
    everything = list(_check_unique(existing + added).values())

    supports_by_obs: Dict[int, List[Argument]] = defaultdict(list)
    supports_by_value = defaultdict(list)
    opposes_by_value = defaultdict(list)
    for argument in everything:
        if argument.supports:
            supports_by_obs[argument.obs_index].append(argument)
            supports_by_value[argument.value].append(argument)
        else:
            opposes_by_value[argument.value].append(argument)

    attacks: Set[Attack] = set()
    for argument in added:
        if argument.supports:
            for other in supports_by_obs[argument.obs_index]:
                if other.value != argument.value:
                    attacks.add((argument.id, other.id))
                    attacks.add((other.id, argument.id))
            for blocker in opposes_by_value[argument.value]:
                attacks.add((blocker.id, argument.id))
        else:
            for target in supports_by_value[argument.value]:
                attacks.add((argument.id, target.id))

    return frozenset(attacks)


def build_afv(arguments: Iterable[Argument]) -> ArgumentationFramework:
    """The framework of all arguments built from an observation history."""
    arguments = list(arguments)
    by_id = _check_unique(arguments)
    return ArgumentationFramework(
        frozenset(by_id), derive_attacks((), by_id.values())
    )
