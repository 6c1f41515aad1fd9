import typer

from snark_psi.commands import (
    census,
    check_theorems,
    dot,
    psi,
    superposition,
    synthesize,
    validate,
)

app = typer.Typer(rich_markup_mode="rich", no_args_is_help=True)
construct_app = typer.Typer(help="Build a snark from others.", no_args_is_help=True)

app.command()(census)
app.command()(psi)
app.command()(validate)
app.command()(synthesize)
app.command("check-theorems")(check_theorems)

construct_app.command()(dot)
construct_app.command("superpose")(superposition)
app.add_typer(construct_app, name="construct")


def main() -> None:
    app()
