from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import List

from utils.logger import get_main_logger
from world.literal import is_identifier
from world.world_model import WorldModel

logger = get_main_logger(__name__)


class Severity(Enum):
    FATAL = "fatal"
    WARNING = "warning"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    subject: str
    message: str

    @property
    def is_fatal(self) -> bool:
        return self.severity is Severity.FATAL

    def __str__(self):
        return f"{self.severity}: [{self.code}] {self.message}"


def fatal(code: str, subject: str, message: str) -> Diagnostic:
    return Diagnostic(Severity.FATAL, code, subject, message)


def warning(code: str, subject: str, message: str) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, subject, message)


def has_fatal(diagnostics: List[Diagnostic]) -> bool:
    return any(d.is_fatal for d in diagnostics)


def validate(model: WorldModel) -> List[Diagnostic]:
    """
    List every violated model invariant. An empty list means the model is
    valid. Non-serial epistemic relations are reported as warnings only,
    since belief is then vacuously true at the dead-end state.
    """
    diagnostics: List[Diagnostic] = []

    for kind, names in (
        ("atom", model.atoms),
        ("agent", model.agents),
        ("action", model.actions),
        ("state", model.state_ids),
    ):
        for name in sorted(names):
            if not is_identifier(name):
                diagnostics.append(
                    fatal("bad-identifier", name, f"{kind} '{name}' is not an identifier")
                )

    counts = Counter(state.state_id for state in model.states)
    for state_id in sorted(sid for sid, n in counts.items() if n > 1):
        diagnostics.append(
            fatal("duplicate-state", state_id, f"state '{state_id}' declared twice")
        )

    for state in model.states:
        missing = model.atoms - set(state.valuation)
        extra = set(state.valuation) - model.atoms
        for atom in sorted(missing):
            diagnostics.append(
                fatal(
                    "partial-valuation",
                    state.state_id,
                    f"state '{state.state_id}' gives no value to atom '{atom}'",
                )
            )
        for atom in sorted(extra):
            diagnostics.append(
                fatal(
                    "undeclared-atom",
                    atom,
                    f"state '{state.state_id}' assigns undeclared atom '{atom}'",
                )
            )

    state_ids = model.state_ids
    for t in sorted(model.transitions):
        for endpoint in (t.source, t.target):
            if endpoint not in state_ids:
                diagnostics.append(
                    fatal(
                        "undeclared-state",
                        endpoint,
                        f"transition {t} references undeclared state '{endpoint}'",
                    )
                )
        if t.action not in model.actions:
            diagnostics.append(
                fatal(
                    "undeclared-action",
                    t.action,
                    f"transition {t} uses undeclared action '{t.action}'",
                )
            )

    for agent in sorted(model.epistemic):
        if agent not in model.agents:
            diagnostics.append(
                fatal(
                    "undeclared-agent",
                    agent,
                    f"epistemic relation given for undeclared agent '{agent}'",
                )
            )
            continue
        pairs = model.epistemic[agent]
        for source, target in sorted(pairs):
            for endpoint in (source, target):
                if endpoint not in state_ids:
                    diagnostics.append(
                        fatal(
                            "undeclared-state",
                            endpoint,
                            f"epistemic relation of '{agent}' references undeclared state '{endpoint}'",
                        )
                    )
        sources = {source for source, _ in pairs}
        for state_id in sorted(state_ids - sources):
            diagnostics.append(
                warning(
                    "non-serial",
                    state_id,
                    f"epistemic relation of '{agent}' is non-serial at {state_id}",
                )
            )

    for agent, state_id in sorted(model.values):
        if agent not in model.agents:
            diagnostics.append(
                fatal(
                    "undeclared-agent",
                    agent,
                    f"values given for undeclared agent '{agent}'",
                )
            )
        if state_id not in state_ids:
            diagnostics.append(
                fatal(
                    "undeclared-state",
                    state_id,
                    f"values of '{agent}' given at undeclared state '{state_id}'",
                )
            )
        for literal in sorted(model.values[(agent, state_id)], key=lambda l: l.sort_key):
            if literal.atom not in model.atoms:
                diagnostics.append(
                    fatal(
                        "undeclared-atom",
                        literal.atom,
                        f"value '{literal}' of '{agent}' uses undeclared atom '{literal.atom}'",
                    )
                )

    for diagnostic in diagnostics:
        if not diagnostic.is_fatal:
            logger.debug(str(diagnostic))
    return diagnostics
