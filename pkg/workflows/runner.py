import argparse
import asyncio
import json
import logging
import signal
import sys
import traceback
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import List, Optional, Sequence

from rich.console import Console
from rich.markup import escape
from rich.traceback import Traceback

from argumentation.semantics import (
    DEFAULT_ENUMERATION_CAP,
    SolverConfig,
    enumerate_complete,
    grounded,
)
from scenarios.af_formats import (
    EXPORT_FORMATS,
    PARSERS,
    export_af,
    format_extension,
    format_extensions,
    parse_af,
)
from scenarios.report import REPORT_MODES, render_report
from scenarios.scenario import Scenario, validate_scenario
from scenarios.scenario_parser import parse_scenario
from utils.logger import get_main_logger, logger_config
from workflows.simulation import simulate
from workflows.trace import Trace
from world.validation import has_fatal

# Single command-line entry point. Example usage:
# python -m workflows.runner validate scenarios/data/coffee_cup.scn
# python -m workflows.runner run scenarios/data/coffee_cup.scn --trace --report structured
# python -m workflows.runner run scenarios/data/coffee_cup.scn --export-af apx --out cs.apx
# python -m workflows.runner solve cs.apx --semantics grounded

logger = get_main_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_IO_ERROR = 2

LOGGING_LEVELS = [
    "DEBUG",
    "INFO",
    "STATUS",
    "SUCCESS_STATUS",
    "WARNING",
    "ERROR",
    "CRITICAL",
]

console = Console(stderr=True, record=True)


def print_error(message: str) -> None:
    console.print(f"[bold red]error:[/] {escape(message)}", soft_wrap=True, highlight=False)


def signal_handler(signum, frame):
    console.print(f"[bold red]Received signal {signum}. Exiting with error.[/]")
    sys.exit(EXIT_FAILURE)


class CommandFailed(Exception):
    """A command stopped early; carries the exit status to return."""

    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


@dataclass
class RunOutcome:
    path: Path
    status: int = EXIT_OK
    scenario: Optional[Scenario] = None
    trace: Optional[Trace] = None
    error: Optional[str] = None


def read_input(path: Path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise CommandFailed(EXIT_IO_ERROR, f"{path}: cannot read: {e.strerror or e}")


def write_output(path: Path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as e:
        raise CommandFailed(EXIT_IO_ERROR, f"{path}: cannot write: {e.strerror or e}")


def load_scenario(path: Path) -> Scenario:
    try:
        return parse_scenario(read_input(path))
    except ValueError as e:
        raise CommandFailed(EXIT_FAILURE, f"{path}: {e}")


def blocking_ids(trace: Trace) -> List[str]:
    return sorted(a.id for a in trace.arguments() if a.opposes)


class ScenarioRunner:
    """Parses the command line, dispatches to one command and maps failures to exit statuses."""

    def __init__(self, stdout=None):
        self.parser = self._create_parser()
        self.args: Optional[argparse.Namespace] = None
        self.stdout = stdout or sys.stdout
        self.error_log_dir = Path("error_logs")

    def _create_parser(self) -> argparse.ArgumentParser:
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument(
            "--logging_level",
            type=str,
            choices=LOGGING_LEVELS,
            default="WARNING",
            help="Set the logging level (default: WARNING)",
        )
        common.add_argument(
            "--log-file", type=Path, help="Also append log records to this file"
        )

        parser = argparse.ArgumentParser(
            description="Infer an agent's values from observed emotions"
        )
        commands = parser.add_subparsers(dest="command", required=True)

        validate = commands.add_parser(
            "validate", parents=[common], help="Parse and validate a scenario"
        )
        validate.add_argument("path", type=Path, help="Scenario file")

        run = commands.add_parser(
            "run", parents=[common], help="Simulate scenarios and report verdicts"
        )
        run.add_argument("paths", type=Path, nargs="+", help="Scenario files")
        run.add_argument(
            "--trace", action="store_true", help="Report every observation step"
        )
        run.add_argument(
            "--report",
            choices=REPORT_MODES,
            default="human",
            help="Report format (default: human)",
        )
        run.add_argument(
            "--export-af", choices=EXPORT_FORMATS, help="Also export the final framework"
        )
        run.add_argument(
            "--out",
            type=Path,
            help="Framework export target: a file, or a directory for several scenarios",
        )
        run.add_argument(
            "--jobs", type=int, default=1, help="Scenarios simulated concurrently"
        )

        solve = commands.add_parser(
            "solve", parents=[common], help="Solve an argumentation framework file"
        )
        solve.add_argument("path", type=Path, help="Framework file")
        solve.add_argument("--format", choices=list(PARSERS), default="apx")
        solve.add_argument(
            "--semantics", choices=["grounded", "complete"], default="grounded"
        )
        solve.add_argument(
            "--enumeration-cap",
            type=int,
            default=DEFAULT_ENUMERATION_CAP,
            help="Largest framework complete semantics will enumerate",
        )

        export = commands.add_parser(
            "export", parents=[common], help="Export the framework a scenario builds"
        )
        export.add_argument("path", type=Path, help="Scenario file")
        export.add_argument("--format", choices=EXPORT_FORMATS, default="apx")
        export.add_argument("--out", type=Path, help="Write here instead of stdout")
        return parser

    def parse_arguments(self, argv: Optional[Sequence[str]] = None) -> None:
        self.args = self.parser.parse_args(argv)

    def configure_logging(self) -> None:
        level = getattr(logging, self.args.logging_level.upper(), logging.WARNING)
        logger_config.set_global_log_level(level)
        if self.args.log_file is not None:
            try:
                logger_config.enable_file_logging(self.args.log_file)
            except OSError as e:
                raise CommandFailed(
                    EXIT_IO_ERROR, f"{self.args.log_file}: cannot open log file: {e}"
                )

    def emit(self, text: str) -> None:
        self.stdout.write(text)
        if not text.endswith("\n"):
            self.stdout.write("\n")

    async def run(self) -> int:
        """Execute the parsed command with error handling."""
        try:
            self.configure_logging()
            logger.info(f"Running command '{self.args.command}'")
            if self.args.command == "validate":
                return self.cmd_validate(self.args.path)
            if self.args.command == "run":
                return await self.cmd_run(self.args.paths)
            if self.args.command == "solve":
                return self.cmd_solve(self.args.path)
            return self.cmd_export(self.args.path)
        except CommandFailed as e:
            print_error(str(e))
            return e.status
        except Exception as e:
            console.print(f"[bold red]Error in {self.args.command}:[/] {escape(str(e))}")
            console.print(Traceback())
            self.create_error_report(e)
            return EXIT_FAILURE

    def cmd_validate(self, path: Path) -> int:
        scenario = load_scenario(path)
        diagnostics = validate_scenario(scenario)
        for diagnostic in diagnostics:
            console.print(
                f"{path}: {diagnostic}", markup=False, highlight=False, soft_wrap=True
            )
        if has_fatal(diagnostics):
            return EXIT_FAILURE
        self.emit(f"{path}: ok")
        return EXIT_OK

    def _simulate_one(self, path: Path) -> RunOutcome:
        outcome = RunOutcome(path)
        try:
            outcome.scenario = load_scenario(path)
            outcome.trace = simulate(outcome.scenario)
        except CommandFailed as e:
            outcome.status, outcome.error = e.status, str(e)
        except ValueError as e:
            outcome.status, outcome.error = EXIT_FAILURE, f"{path}: {e}"
        return outcome

    async def simulate_all(self, paths: Sequence[Path], jobs: int) -> List[RunOutcome]:
        """Simulate independent scenarios on worker threads, at most `jobs` at once."""
        semaphore = asyncio.Semaphore(max(1, jobs))

        async def bounded(path: Path) -> RunOutcome:
            async with semaphore:
                return await asyncio.to_thread(self._simulate_one, path)

        return list(await asyncio.gather(*(bounded(p) for p in paths)))

    def _export_target(self, outcome: RunOutcome, several: bool) -> Optional[Path]:
        out = self.args.out
        if out is None:
            return None
        if several:
            return out / f"{outcome.path.stem}.{self.args.export_af}"
        return out

    async def cmd_run(self, paths: Sequence[Path]) -> int:
        outcomes = await self.simulate_all(paths, self.args.jobs)
        several = len(outcomes) > 1
        if several and self.args.out is not None and self.args.export_af:
            try:
                self.args.out.mkdir(parents=True, exist_ok=True)
            except OSError as e:
                raise CommandFailed(EXIT_IO_ERROR, f"{self.args.out}: {e.strerror or e}")

        documents = []
        status = EXIT_OK
        for outcome in outcomes:
            if outcome.error is not None:
                print_error(outcome.error)
                status = max(status, outcome.status)
                continue

            report = render_report(outcome.trace, self.args.report, self.args.trace)
            if self.args.report == "structured" and several:
                documents.append({"scenario": str(outcome.path), **json.loads(report)})
            elif several:
                self.emit(f"== {outcome.path} ==\n{report}")
            else:
                self.emit(report)

            if self.args.export_af:
                exported = export_af(
                    outcome.trace.framework(),
                    self.args.export_af,
                    blocking_ids(outcome.trace),
                )
                target = self._export_target(outcome, several)
                if target is None:
                    self.emit(exported)
                else:
                    try:
                        write_output(target, exported)
                    except CommandFailed as e:
                        print_error(str(e))
                        status = max(status, e.status)

        if documents:
            self.emit(json.dumps({"runs": documents}, indent=2))
        return status

    def cmd_solve(self, path: Path) -> int:
        try:
            text = read_input(path).decode("utf-8")
        except UnicodeDecodeError:
            raise CommandFailed(EXIT_FAILURE, f"{path}: input is not valid UTF-8")
        try:
            af = parse_af(text, self.args.format)
            if self.args.semantics == "grounded":
                self.emit(format_extension(grounded(af).in_set))
            else:
                config = SolverConfig(enumeration_cap=self.args.enumeration_cap)
                self.emit(format_extensions(enumerate_complete(af, config)))
        except ValueError as e:
            raise CommandFailed(EXIT_FAILURE, f"{path}: {e}")
        return EXIT_OK

    def cmd_export(self, path: Path) -> int:
        outcome = self._simulate_one(path)
        if outcome.error is not None:
            raise CommandFailed(outcome.status, outcome.error)
        exported = export_af(
            outcome.trace.framework(), self.args.format, blocking_ids(outcome.trace)
        )
        if self.args.out is None:
            self.emit(exported)
        else:
            write_output(self.args.out, exported)
        return EXIT_OK

    def create_error_report(self, error: Exception) -> None:
        """Create an error report file with the error details and console output."""
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        try:
            self.error_log_dir.mkdir(exist_ok=True, parents=True)
        except OSError as e:
            console.print(f"[bold yellow]Could not create {self.error_log_dir}: {e}[/]")
            return

        error_file = self.error_log_dir / f"error_report_{timestamp}.txt"
        with error_file.open("w") as f:
            f.write("ERROR REPORT\n")
            f.write("=" * 50 + "\n\n")
            f.write(f"Command: {self.args.command if self.args else '?'}\n")
            f.write(f"Timestamp: {timestamp}\n\n")

            f.write("Arguments:\n")
            f.write("-" * 50 + "\n")
            for key, value in sorted(vars(self.args or argparse.Namespace()).items()):
                f.write(f"{key}: {value}\n")
            f.write("\n")

            f.write("Error Details:\n")
            f.write("-" * 50 + "\n")
            f.write(f"{error.__class__.__name__}: {error}\n\n")
            f.write("Traceback:\n")
            f.write(
                "".join(
                    traceback.format_exception(type(error), error, error.__traceback__)
                )
            )
            f.write("\n" + "=" * 50 + "\n\n")

            f.write("Recent Logs:\n")
            f.write("-" * 50 + "\n")
            for log_entry in logger_config.log_buffer_handler.get_logs():
                f.write(log_entry + "\n")
            f.write("=" * 50 + "\n\n")

            f.write("Console Output:\n")
            f.write("-" * 50 + "\n")
            f.write(console.export_text())

        console.print(f"[bold yellow]Error report created: {error_file}[/]")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the exit status."""
    runner = ScenarioRunner()
    runner.parse_arguments(argv)
    return asyncio.run(runner.run())


if __name__ == "__main__":
    signal.signal(signal.SIGTERM, signal_handler)
    signal.signal(signal.SIGINT, signal_handler)
    sys.exit(main())
