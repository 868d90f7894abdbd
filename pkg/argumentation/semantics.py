from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional

from argumentation.framework import ArgumentationFramework, FrameworkError
from argumentation.labelling import Label, Labelling
from utils.config import BaseConfig
from utils.logger import get_main_logger

logger = get_main_logger(__name__)

DEFAULT_ENUMERATION_CAP = 15


class EnumerationCapExceeded(FrameworkError):
    def __init__(self, size: int, cap: int):
        super().__init__(
            f"Refusing to enumerate extensions of {size} arguments (cap is {cap})"
        )
        self.size = size
        self.cap = cap


@dataclass
class SolverConfig(BaseConfig):
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP

    def validate(self) -> None:
        if not isinstance(self.enumeration_cap, int) or self.enumeration_cap < 0:
            raise ValueError(
                f"enumeration_cap must be a non-negative integer, got {self.enumeration_cap!r}"
            )


def grounded(af: ArgumentationFramework) -> Labelling:
    """
    Grounded labelling as a least fixpoint: repeatedly label IN every
    unlabelled argument whose attackers are all OUT and OUT every unlabelled
    argument with an IN attacker; whatever is left is UNDEC.
    """
    labels: Dict[str, Label] = {}
    attackers = {arg: af.attackers(arg) for arg in af.arguments}

    changed = True
    while changed:
        changed = False
        for argument in sorted(af.arguments):
            if argument in labels:
                continue
            if all(labels.get(a) is Label.OUT for a in attackers[argument]):
                labels[argument] = Label.IN
                changed = True
        for argument in sorted(af.arguments):
            if argument in labels:
                continue
            if any(labels.get(a) is Label.IN for a in attackers[argument]):
                labels[argument] = Label.OUT
                changed = True

    for argument in af.arguments:
        labels.setdefault(argument, Label.UNDEC)
    return Labelling(labels)


def characteristic(af: ArgumentationFramework, extension: FrozenSet[str]) -> FrozenSet[str]:
    """F(S): the arguments whose every attacker is attacked by S."""
    return frozenset(arg for arg in af.arguments if af.defends(extension, arg))


def characteristic_oracle(af: ArgumentationFramework) -> FrozenSet[str]:
    """Grounded extension by iterating the characteristic function from the empty set."""
    extension: FrozenSet[str] = frozenset()
    while True:
        following = characteristic(af, extension)
        if following == extension:
            return extension
        extension = following


def is_complete(af: ArgumentationFramework, extension: FrozenSet[str]) -> bool:
    return af.is_conflict_free(extension) and characteristic(af, extension) == extension


def enumerate_complete(
    af: ArgumentationFramework, config: Optional[SolverConfig] = None
) -> List[FrozenSet[str]]:
    """
    All complete extensions by brute force over subsets, smallest first.
    Only meant for small frameworks: refuses above the configured cap.
    """
    config = config or SolverConfig()
    if len(af.arguments) > config.enumeration_cap:
        raise EnumerationCapExceeded(len(af.arguments), config.enumeration_cap)

    ordered = sorted(af.arguments)
    extensions = []
    for size in range(len(ordered) + 1):
        for subset in combinations(ordered, size):
            candidate = frozenset(subset)
            if is_complete(af, candidate):
                extensions.append(candidate)
    logger.debug(f"Found {len(extensions)} complete extensions over {len(ordered)} arguments")
    return extensions
