import typer

from ebt.cli.commands import hecke, psi, structure, verify
from ebt.core.settings import settings

app = typer.Typer(
    name=settings.PROJECT_NAME,
    help="Exact computations in the equivariant birational type groups B_n(G) and M_n(G).",
    no_args_is_help=True,
    add_completion=False,
)


def include_commands(target: typer.Typer, source: typer.Typer) -> None:
    target.registered_commands.extend(source.registered_commands)


include_commands(app, structure.app)
include_commands(app, verify.app)
include_commands(app, hecke.app)
include_commands(app, psi.app)
