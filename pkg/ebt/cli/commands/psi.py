from __future__ import annotations

from typing import Annotated, List, Optional

import typer
from pydantic import ValidationError

from ebt.birational.relations import Variant, class_of, presented_group
from ebt.birational.theorems import class_from_fixed_point_data
from ebt.cli.options import FormatOption, GroupOption, NOption
from ebt.cli.render import OutputFormat, class_payload, finish, reporting
from ebt.cli.schemas import ClassReport, PsiReport, TripleIn
from ebt.core.errors import InvalidInputError
from ebt.lattice.cones import ChiVector, Cone, Lattice, LatticeTriple
from ebt.lattice.psi import psi_tilde_expression
from ebt.symbols.characters import FinAbelianGroupSpec, Symbol
from ebt.symbols.expressions import SymbolExpression
from ebt.symbols.grammar import parse_character_list, parse_group_spec

app = typer.Typer()


def triple_from_literal(text: str, group: FinAbelianGroupSpec) -> LatticeTriple:
    try:
        literal = TripleIn.model_validate_json(text)
    except ValidationError as exc:
        raise InvalidInputError(f"invalid triple literal: {exc.errors()[0]['msg']}") from exc
    n = len(literal.chi)
    basis = literal.basis or [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return LatticeTriple(
        group,
        Lattice(tuple(tuple(row) for row in basis), literal.denominator),
        ChiVector.of(group, literal.chi),
        Cone(tuple(tuple(g) for g in literal.cone)),
    )


@app.command("psi")
def cmd_psi(
    group: GroupOption,
    triple: Annotated[
        str,
        typer.Option("--triple", help='JSON {"basis", "denominator", "chi", "cone"} in lattice coordinates.'),
    ],
    fmt: FormatOption = OutputFormat.json,
) -> None:
    """Class in B_n(G) of a lattice triple with simplicial cone."""
    with reporting(fmt):
        spec = parse_group_spec(group)
        parsed = triple_from_literal(triple, spec)
        n = parsed.lattice.dim
        expression = psi_tilde_expression(parsed)
        element = class_of(expression, presented_group(spec, n, Variant.B))
        report = PsiReport(
            group=spec.canonical(),
            n=n,
            variant="B",
            expression=expression.format(spec),
            contributions=[f"{c}*{s.format(spec)}" for c, s in expression.terms],
            **class_payload(element),
        )
        finish(report, fmt)


@app.command("fixed-points")
def cmd_fixed_points(
    group: GroupOption,
    n: NOption,
    component: Annotated[
        Optional[List[str]],
        typer.Option("--component", "-c", help='Tangent characters of one fixed component, e.g. "1,2".'),
    ] = None,
    fmt: FormatOption = OutputFormat.json,
) -> None:
    """Class [X <- G] in B_n(G) from the characters at the fixed-point components."""
    with reporting(fmt):
        spec = parse_group_spec(group)
        components = [parse_character_list(text, spec) for text in component or []]
        element = class_from_fixed_point_data(components, spec, n)
        expression = SymbolExpression.from_terms((1, Symbol.of(spec, c)) for c in components)
        report = ClassReport(
            group=spec.canonical(),
            n=n,
            variant="B",
            expression=expression.format(spec),
            **class_payload(element),
        )
        finish(report, fmt)
