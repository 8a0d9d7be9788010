from __future__ import annotations

import logging
from enum import Enum
from typing import Annotated, Optional

import sympy
import typer

from ebt.birational.theorems import verify_001n, verify_compare, verify_lemma_suite, verify_pn
from ebt.cli.options import FormatOption
from ebt.cli.render import OutputFormat, finish, reporting
from ebt.cli.schemas import CheckResult, SuiteReport
from ebt.core.settings import settings
from ebt.lattice.hecke import verify_hecke
from ebt.lattice.psi import verify_subdivision_relations
from ebt.symbols.characters import FinAbelianGroupSpec

logger = logging.getLogger(__name__)

app = typer.Typer()

# (group order, ell pairs) exercised by the hecke suite in dimension 2.
HECKE_BATTERY = ((3, [(2, 5)]), (5, [(2, 3)]), (7, [(2, 5)]))
SUBDIVISION_N3_GROUP = 5


class Suite(str, Enum):
    pn = "pn"
    n001 = "001N"
    lemmas = "lemmas"
    compare = "compare"
    subdivision = "subdivision"
    hecke = "hecke"


def merge_reports(suite: str, reports: list[SuiteReport], parameters: dict[str, int]) -> SuiteReport:
    checks: list[CheckResult] = []
    for report in reports:
        for check in report.checks:
            checks.append(check.model_copy(update={"name": f"{report.suite}: {check.name}"}))
    return SuiteReport(
        suite=suite,
        passed=all(report.passed for report in reports),
        parameters=parameters,
        checks=checks,
        comparisons=[c for report in reports for c in report.comparisons],
    )


@app.command("verify")
def cmd_verify(
    suite: Annotated[Suite, typer.Option("--suite", "-s", help="Which statements to check.")],
    pmax: Annotated[Optional[int], typer.Option("--pmax", min=2, help="Largest prime.")] = None,
    order_max: Annotated[
        Optional[int], typer.Option("--Nmax", min=2, help="Largest group order N.")
    ] = None,
    nmax: Annotated[int, typer.Option("--nmax", min=2, help="Largest dimension n.")] = 3,
    samples: Annotated[int, typer.Option("--samples", min=0, help="Random triples per group.")] = 10,
    seed: Annotated[int, typer.Option("--seed", help="Seed for random triples.")] = 0,
    override: Annotated[bool, typer.Option("--override", help="Lift the Hecke scale guard.")] = False,
    fmt: FormatOption = OutputFormat.json,
) -> None:
    """Run a verification suite; exit code 1 when any check fails."""
    with reporting(fmt):
        if suite is Suite.pn:
            report = verify_pn(pmax, order_max)
        elif suite is Suite.n001:
            report = verify_001n(pmax, order_max, nmax)
        elif suite is Suite.compare:
            order_max3 = None if order_max is None else min(order_max, settings.N3MAX_COMPARE)
            report = verify_compare(order_max, order_max3, nmax)
        elif suite is Suite.lemmas:
            bound = min(pmax or settings.PMAX_DEFAULT, settings.LEMMA_PMAX)
            report = merge_reports(
                "lemmas",
                [verify_lemma_suite(p) for p in sympy.primerange(2, bound + 1)],
                {"pmax": bound},
            )
        elif suite is Suite.subdivision:
            bound = min(pmax or 7, 7)
            reports = [
                verify_subdivision_relations(FinAbelianGroupSpec.cyclic(p), 2, samples, seed=seed)
                for p in sympy.primerange(2, bound + 1)
            ]
            if nmax >= 3:
                reports.append(
                    verify_subdivision_relations(
                        FinAbelianGroupSpec.cyclic(SUBDIVISION_N3_GROUP), 3, samples, seed=seed
                    )
                )
            report = merge_reports(
                "subdivision", reports, {"pmax": bound, "nmax": nmax, "samples": samples, "seed": seed}
            )
        else:
            reports = [
                verify_hecke(FinAbelianGroupSpec.cyclic(order), 2, pairs, override=override)
                for order, pairs in HECKE_BATTERY
            ]
            report = merge_reports("hecke", reports, {"n": 2, "r": 1})
        logger.info("Suite %s finished", report.suite, extra={"passed": report.passed})
        finish(report, fmt)
