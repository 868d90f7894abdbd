import json
from io import StringIO

from rich import box
from rich.console import Console
from rich.table import Table

from workflows.session import ValueVerdicts
from workflows.trace import Trace, TraceStep

REPORT_MODES = ("human", "structured")
REPORT_WIDTH = 100


def _verdict_table(verdicts: ValueVerdicts, title: str) -> Table:
    table = Table(title=title, box=box.ASCII, title_justify="left")
    table.add_column("Verdict")
    table.add_column("Values")
    for name, values in verdicts.to_dict().items():
        table.add_row(name, ", ".join(values) or "-")
    return table


def _step_table(step: TraceStep) -> Table:
    observation = step.observation
    table = Table(
        title=(
            f"obs {observation.index}: {observation.expresser} {observation.expression} "
            f"on {observation.action} at {observation.state}"
        ),
        box=box.ASCII,
        title_justify="left",
    )
    table.add_column("Argument")
    table.add_column("Polarity")
    table.add_column("Value")
    table.add_column("Attacks")
    attacks_by = {}
    for attacker, target in sorted(step.new_attacks):
        attacks_by.setdefault(attacker, []).append(target)
    for argument in step.sorted_arguments():
        table.add_row(
            argument.id,
            argument.polarity.name.lower(),
            str(argument.value),
            ", ".join(attacks_by.pop(argument.id, [])) or "-",
        )
    # new attacks launched by arguments from earlier steps
    for attacker, targets in sorted(attacks_by.items()):
        table.add_row(attacker, "", "", ", ".join(targets))
    if not step.new_arguments and not attacks_by:
        table.add_row("-", "", "", "")
    return table


def render_human(trace: Trace, include_steps: bool = True) -> str:
    buffer = StringIO()
    console = Console(
        file=buffer,
        width=REPORT_WIDTH,
        color_system=None,
        force_terminal=False,
        highlight=False,
    )
    if include_steps:
        for step in trace:
            console.print(_step_table(step))
            for note in step.notes:
                console.print(f"note: {note}")
            console.print(_verdict_table(step.verdicts, "verdicts"))
    console.print(_verdict_table(trace.final_verdicts, "final verdicts"))
    return buffer.getvalue()


def render_structured(trace: Trace, include_steps: bool = True) -> str:
    document = trace.to_dict()
    if not include_steps:
        del document["steps"]
    return json.dumps(document, indent=2) + "\n"


def render_report(trace: Trace, mode: str = "human", include_steps: bool = True) -> str:
    """
    Human mode prints a table per observation followed by the verdicts.
    Structured mode is one JSON document with keys in a fixed order.
    """
    if mode == "human":
        return render_human(trace, include_steps)
    if mode == "structured":
        return render_structured(trace, include_steps)
    raise ValueError(
        f"Unknown report mode '{mode}'; expected one of {', '.join(REPORT_MODES)}"
    )
