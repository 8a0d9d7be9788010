from __future__ import annotations

from typing import Annotated

import typer

from ebt.cli.options import ExprOption, FormatOption, GroupOption, NOption
from ebt.cli.render import OutputFormat, class_payload, finish, reporting
from ebt.cli.schemas import HeckeReport
from ebt.lattice.hecke import HeckeParams, enumerate_overlattices, hecke_apply
from ebt.lattice.cones import Lattice
from ebt.symbols.grammar import parse_expression, parse_group_spec

app = typer.Typer()


@app.command("hecke")
def cmd_hecke(
    group: GroupOption,
    n: NOption,
    ell: Annotated[int, typer.Option("--ell", help="Prime not dividing |G|.")],
    expr: ExprOption,
    r: Annotated[int, typer.Option("--r", help="Rank of L^/L, 1 <= r <= n-1.")] = 1,
    override: Annotated[bool, typer.Option("--override", help="Lift the scale guard.")] = False,
    fmt: FormatOption = OutputFormat.json,
) -> None:
    """Apply the Hecke operator T_{ell,r} to a class of B_n(G)."""
    with reporting(fmt):
        spec = parse_group_spec(group)
        params = HeckeParams(ell=ell, r=r)
        params.validate(spec, n, override=override)
        expression = parse_expression(expr, spec)
        element = hecke_apply(params, expression, spec, n, override=override)
        report = HeckeReport(
            group=spec.canonical(),
            n=n,
            variant="B",
            expression=expression.format(spec),
            ell=ell,
            r=r,
            overlattices=len(enumerate_overlattices(Lattice.standard(n), ell, r)),
            **class_payload(element),
        )
        finish(report, fmt)
