from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Literal, Optional

import typer
from rich.console import Console
from rich.markup import escape

from zerogrowth import __version__
from zerogrowth.common.accel import HAS_NUMBA
from zerogrowth.common.config import RunConfig, load_config
from zerogrowth.common.errors import InputError, NumericError, ParameterError
from zerogrowth.common.logging import configure_logging
from zerogrowth.parser.documents import load_report_doc
from zerogrowth.runner import COMMANDS, run_command
from zerogrowth.storage.reports import (
    ReportStore,
    render_csv,
    render_json,
    write_nested_plotdata,
    write_plotdata,
)

EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_USAGE = 64

app = typer.Typer(add_completion=False)
console = Console(stderr=True)

ConfigOption = Annotated[
    Optional[Path], typer.Option("--config", exists=True, dir_okay=False, help="TOML or JSON config file")
]


@app.callback()
def _main(
    verbose: Annotated[bool, typer.Option("--verbose")] = False,
) -> None:
    """
    Growth indicators, capacity probes and zero identities for sequences of entire functions.
    """

    configure_logging(verbose=verbose)


def _fail(code: int, message: str) -> typer.Exit:
    console.print(f"[red]error[/red] {escape(message)}")
    return typer.Exit(code)


@app.command()
def run(
    command: Annotated[str, typer.Argument(help="efun | growth | seq | cap | laplace | series")],
    input_path: Annotated[Path, typer.Argument(dir_okay=False, help="JSON input document")],
    nodes: Annotated[Optional[int], typer.Option("--nodes")] = None,
    tol: Annotated[Optional[float], typer.Option("--tol")] = None,
    seed: Annotated[Optional[int], typer.Option("--seed")] = None,
    out: Annotated[Optional[Path], typer.Option("--out", help="report path; stdout when omitted")] = None,
    fmt: Annotated[Optional[str], typer.Option("--format", help="json | csv")] = None,
    config: ConfigOption = None,
) -> None:
    """
    Run one analysis on an input document and write its report.
    """

    if command not in COMMANDS:
        raise _fail(EXIT_USAGE, f"unknown command {command!r}; choose from {', '.join(COMMANDS)}")

    overrides = {
        "nodes": nodes,
        "tol": tol,
        "seed": seed,
        "out_path": str(out) if out is not None else None,
        "format": fmt,
    }
    try:
        cfg = load_config(config, overrides)
        report = run_command(command, input_path, cfg)
    except InputError as e:
        raise _fail(EXIT_INPUT, f"{e} (field: {e.field or '<unknown>'})") from e
    except ParameterError as e:
        raise _fail(EXIT_INPUT, str(e)) from e
    except NumericError as e:
        raise _fail(EXIT_NUMERIC, f"numeric failure in {e.operation}: {e}") from e

    fmt_: Literal["json", "csv"] = cfg.format
    if cfg.out_path is not None:
        try:
            written = ReportStore(Path(cfg.out_path), fmt=fmt_).write(report)
        except OSError as e:
            raise _fail(EXIT_INPUT, f"cannot write report: {e}") from e
        for path in written:
            console.print(f"wrote {escape(str(path))}")
    elif fmt_ == "csv":
        typer.echo(render_csv(report.evidence), nl=False)
    else:
        typer.echo(render_json(report), nl=False)


@app.command()
def plotdata(
    report_path: Annotated[Path, typer.Argument(dir_okay=False, help="report-v1 JSON")],
    out: Annotated[Optional[Path], typer.Option("--out", help="CSV path; stdout when omitted")] = None,
    nested: Annotated[
        bool, typer.Option("--nested", help="also write each nested row list beside --out")
    ] = False,
) -> None:
    """
    Flatten a report's evidence table into tidy CSV for external plotting.
    """

    if nested and out is None:
        raise _fail(EXIT_USAGE, "--nested needs --out")
    try:
        report = load_report_doc(report_path)
    except InputError as e:
        raise _fail(EXIT_INPUT, f"{e} (field: {e.field or '<unknown>'})") from e
    try:
        text = write_plotdata(report, out)
        extra = write_nested_plotdata(report, out) if nested and out is not None else []
    except OSError as e:
        raise _fail(EXIT_INPUT, f"cannot write plot data: {e}") from e
    for path in extra:
        console.print(f"wrote {escape(str(path))}")
    if out is None:
        typer.echo(text, nl=False)


@app.command()
def doctor(config: ConfigOption = None) -> None:
    """
    Print the resolved config and the acceleration status.
    """

    try:
        cfg: RunConfig = load_config(config)
    except InputError as e:
        raise _fail(EXIT_INPUT, f"{e} (field: {e.field or '<unknown>'})") from e
    payload = {"version": __version__, "numba": HAS_NUMBA, "config": cfg.model_dump(mode="json")}
    typer.echo(json.dumps(payload, indent=2, sort_keys=True))


def main() -> None:
    app()


if __name__ == "__main__":
    main()
