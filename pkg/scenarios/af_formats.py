import re
from typing import Callable, Collection, Dict, Iterable, List, Set, Tuple

from argumentation.framework import ArgumentationFramework, Attack

ARG_NAME = r"[A-Za-z0-9_]+"
APX_ARG_RE = re.compile(rf"arg\(\s*({ARG_NAME})\s*\)\.")
APX_ATT_RE = re.compile(rf"att\(\s*({ARG_NAME})\s*,\s*({ARG_NAME})\s*\)\.")
TGF_NODE_RE = re.compile(rf"({ARG_NAME})")
TGF_EDGE_RE = re.compile(rf"({ARG_NAME})\s+({ARG_NAME})")
TGF_SEPARATOR = "#"


class AFFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def to_apx(af: ArgumentationFramework) -> str:
    lines = [f"arg({a})." for a in af.sorted_arguments()]
    lines += [f"att({a},{b})." for a, b in af.sorted_attacks()]
    return "".join(f"{line}\n" for line in lines)


def to_tgf(af: ArgumentationFramework) -> str:
    lines = af.sorted_arguments() + [TGF_SEPARATOR]
    lines += [f"{a} {b}" for a, b in af.sorted_attacks()]
    return "\n".join(lines) + "\n"


def to_dot(af: ArgumentationFramework, blocking: Collection[str] = ()) -> str:
    """Directed graph; blocking arguments get a dashed border."""
    blocking = set(blocking)
    lines = ["digraph afv {", "  node [shape=box];"]
    for argument in af.sorted_arguments():
        style = "dashed" if argument in blocking else "solid"
        lines.append(f'  "{argument}" [style={style}];')
    for attacker, target in af.sorted_attacks():
        lines.append(f'  "{attacker}" -> "{target}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


EXPORTERS: Dict[str, Callable[..., str]] = {
    "apx": lambda af, blocking: to_apx(af),
    "tgf": lambda af, blocking: to_tgf(af),
    "dot": to_dot,
}
EXPORT_FORMATS = tuple(EXPORTERS)


def export_af(
    af: ArgumentationFramework, fmt: str, blocking: Collection[str] = ()
) -> str:
    try:
        exporter = EXPORTERS[fmt]
    except KeyError:
        raise ValueError(
            f"Unknown framework format '{fmt}'; expected one of {', '.join(EXPORT_FORMATS)}"
        ) from None
    return exporter(af, blocking)


def _framework(
    arguments: List[str], attacks: List[Tuple[Attack, int]]
) -> ArgumentationFramework:
    declared = set(arguments)
    for (attacker, target), number in attacks:
        for end in (attacker, target):
            if end not in declared:
                raise AFFormatError(f"attack uses undeclared argument '{end}'", number)
    return ArgumentationFramework(frozenset(declared), frozenset(a for a, _ in attacks))


def _declare(arguments: List[str], seen: Set[str], name: str, number: int) -> None:
    if name in seen:
        raise AFFormatError(f"argument '{name}' declared twice", number)
    seen.add(name)
    arguments.append(name)


def parse_apx(text: str) -> ArgumentationFramework:
    """`arg(a).` and `att(a,b).` statements, one per line, in any order."""
    arguments: List[str] = []
    seen: Set[str] = set()
    attacks: List[Tuple[Attack, int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        match = APX_ARG_RE.fullmatch(line)
        if match:
            _declare(arguments, seen, match.group(1), number)
            continue
        match = APX_ATT_RE.fullmatch(line)
        if match:
            attacks.append((match.groups(), number))
            continue
        raise AFFormatError(f"expected arg(NAME). or att(NAME,NAME)., got {line!r}", number)
    return _framework(arguments, attacks)


def parse_tgf(text: str) -> ArgumentationFramework:
    """Node lines, a `#` line, then `attacker target` edge lines."""
    arguments: List[str] = []
    seen: Set[str] = set()
    attacks: List[Tuple[Attack, int]] = []
    in_edges = False
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line == TGF_SEPARATOR:
            if in_edges:
                raise AFFormatError("second '#' separator", number)
            in_edges = True
            continue
        if in_edges:
            match = TGF_EDGE_RE.fullmatch(line)
            if match is None:
                raise AFFormatError(f"expected an edge 'NAME NAME', got {line!r}", number)
            attacks.append((match.groups(), number))
        else:
            match = TGF_NODE_RE.fullmatch(line)
            if match is None:
                raise AFFormatError(f"expected a node name, got {line!r}", number)
            _declare(arguments, seen, match.group(1), number)
    return _framework(arguments, attacks)


PARSERS: Dict[str, Callable[[str], ArgumentationFramework]] = {
    "apx": parse_apx,
    "tgf": parse_tgf,
}


def parse_af(text: str, fmt: str) -> ArgumentationFramework:
    try:
        parser = PARSERS[fmt]
    except KeyError:
        raise ValueError(
            f"Unknown framework format '{fmt}'; expected one of {', '.join(PARSERS)}"
        ) from None
    return parser(text)


def format_extension(extension: Collection[str]) -> str:
    """Solver-competition rendering of one extension: `[a,b]`, ids sorted."""
    return "[" + ",".join(sorted(extension)) + "]"


def format_extensions(extensions: Iterable[Collection[str]]) -> str:
    """Extensions in the order given, e.g. `[[],[a],[b]]`."""
    return "[" + ",".join(format_extension(e) for e in extensions) + "]"
