from __future__ import annotations

import logging
from typing import Annotated

import typer

from ebt.birational.relations import Variant, class_of
from ebt.birational.theorems import torsion_bound
from ebt.cli.options import (
    CacheDirOption,
    CheckCacheOption,
    ExprOption,
    FormatOption,
    GroupOption,
    NOption,
    NoCacheOption,
    VariantOption,
    open_cache,
)
from ebt.cli.render import OutputFormat, class_payload, finish, reporting
from ebt.cli.schemas import ClassReport, StructureReport
from ebt.symbols.grammar import parse_expression, parse_group_spec

logger = logging.getLogger(__name__)

app = typer.Typer()


@app.command("group")
def cmd_group(
    group: GroupOption,
    n: NOption,
    variant: VariantOption = "B",
    fmt: FormatOption = OutputFormat.json,
    show_generators: Annotated[
        bool, typer.Option("--show-generators", help="List the generator symbols.")
    ] = False,
    cache_dir: CacheDirOption = None,
    no_cache: NoCacheOption = False,
    check_cache: CheckCacheOption = False,
) -> None:
    """Structure (free rank and torsion) of the presented group."""
    with reporting(fmt):
        spec = parse_group_spec(group)
        kind = Variant.parse(variant)
        presentation = open_cache(cache_dir, no_cache).get(spec, n, kind, check=check_cache)
        logger.info("Presented %s, n=%d, variant %s", spec.canonical(), n, kind.label)
        report = StructureReport(
            group=spec.canonical(),
            n=n,
            variant=kind.label,
            rank=presentation.rank,
            torsion=presentation.torsion,
            generators=presentation.num_generators,
            relations=len(presentation.relations),
            generator_labels=(
                [presentation.format_generator(i) for i in range(presentation.num_generators)]
                if show_generators
                else None
            ),
        )
        finish(report, fmt)


@app.command("order")
def cmd_order(
    group: GroupOption,
    n: NOption,
    expr: ExprOption,
    variant: VariantOption = "B",
    fmt: FormatOption = OutputFormat.json,
    cache_dir: CacheDirOption = None,
    no_cache: NoCacheOption = False,
    check_cache: CheckCacheOption = False,
) -> None:
    """Order of the class of a symbol expression."""
    with reporting(fmt):
        spec = parse_group_spec(group)
        kind = Variant.parse(variant)
        expression = parse_expression(expr, spec)
        presentation = open_cache(cache_dir, no_cache).get(spec, n, kind, check=check_cache)
        element = class_of(expression, presentation)
        report = ClassReport(
            group=spec.canonical(),
            n=n,
            variant=kind.label,
            expression=expression.format(spec),
            bound=torsion_bound(spec, n, kind, expression),
            **class_payload(element),
        )
        finish(report, fmt)
