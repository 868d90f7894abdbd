import re
from dataclasses import dataclass
from typing import Iterable, List, Tuple

IDENTIFIER_PATTERN = r"[A-Za-z_][A-Za-z0-9_]*"
IDENTIFIER_RE = re.compile(IDENTIFIER_PATTERN)
LITERAL_RE = re.compile(rf"(~?)({IDENTIFIER_PATTERN})")

NEGATION_PREFIX = "~"


def is_identifier(name: str) -> bool:
    return isinstance(name, str) and IDENTIFIER_RE.fullmatch(name) is not None


@dataclass(frozen=True)
class Literal:
    """An atom or its negation. Values held by agents are literals."""

    atom: str
    positive: bool = True

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    @property
    def sort_key(self) -> Tuple[str, bool]:
        # positive literal first within the same atom
        return (self.atom, not self.positive)

    @classmethod
    def parse(cls, text: str) -> "Literal":
        match = LITERAL_RE.fullmatch(text.strip())
        if match is None:
            raise ValueError(f"Not a literal: {text!r}")
        return cls(match.group(2), match.group(1) != NEGATION_PREFIX)

    def __str__(self) -> str:
        return self.atom if self.positive else f"{NEGATION_PREFIX}{self.atom}"


def sorted_literals(literals: Iterable[Literal]) -> List[Literal]:
    return sorted(literals, key=lambda lit: lit.sort_key)
