"""Checks of the torsion and comparison statements for concrete (G, n).

Every verifier computes exact classes in the presented groups and returns a
``SuiteReport`` whose checks carry the failing instances as witnesses.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

import sympy

from ebt.algebra.presented import GroupElementClass, class_order
from ebt.algebra.smith import int_matrix, matrix_rank
from ebt.birational.relations import (
    SymbolPresentation,
    Variant,
    apply_sparse,
    class_of,
    mu_matrix,
    presented_group,
    symbol_class,
)
from ebt.cli.schemas import CheckResult, RankComparison, SuiteReport
from ebt.core.errors import InvalidInputError
from ebt.core.settings import settings
from ebt.symbols.characters import FinAbelianGroupSpec, Symbol, require_faithful
from ebt.symbols.expressions import SymbolExpression

logger = logging.getLogger(__name__)

# Groups exercised by the comparison suite in dimension 3 besides the cyclic ones.
NONCYCLIC_N3 = ((2, 2), (2, 4))


@dataclass
class CheckLog:
    """Collects named checks; a check fails as soon as one instance fails."""

    suite: str
    checks: dict[str, CheckResult] = field(default_factory=dict)

    def record(
        self,
        name: str,
        passed: bool,
        witness: str = "",
        detail: str = "",
        *,
        informational: bool = False,
    ) -> None:
        check = self.checks.setdefault(
            name, CheckResult(name=name, passed=True, informational=informational)
        )
        if detail:
            check.detail = detail
        if not passed:
            check.passed = False
            if witness:
                check.witnesses.append(witness)
            if informational:
                logger.info("Informational check %s/%s does not hold: %s", self.suite, name, witness)
            else:
                logger.warning("Check %s/%s failed: %s", self.suite, name, witness)

    def report(self, parameters: dict[str, int], comparisons: list[RankComparison] | None = None) -> SuiteReport:
        comparisons = comparisons or []
        passed = all(c.passed for c in self.checks.values() if not c.informational) and all(
            c.iso_over_Q for c in comparisons
        )
        return SuiteReport(
            suite=self.suite,
            passed=passed,
            parameters=parameters,
            checks=list(self.checks.values()),
            comparisons=comparisons,
        )


def _order_text(order: int | None) -> str:
    return "infinite" if order is None else str(order)


def divides(order: int | None, bound: int) -> bool:
    return order is not None and bound % order == 0


# ---------------------------------------------------------------------------
# Distinguished classes
# ---------------------------------------------------------------------------


def delta_expression(group: FinAbelianGroupSpec, n: int, a: int = 1) -> SymbolExpression:
    """``[a,0,...,0] + [-a,0,...,0]`` over a cyclic group."""
    if not group.is_cyclic or group.is_trivial:
        raise InvalidInputError(f"delta is defined over a nontrivial cyclic group, got {group}")
    if n < 2:
        raise InvalidInputError(f"delta needs n >= 2, got {n}")
    if gcd(a, group.exponent) != 1:
        raise InvalidInputError(f"{a} is not a unit modulo {group.exponent}")
    padding = [0] * (n - 1)
    return SymbolExpression.from_terms(
        [(1, Symbol.of(group, [a, *padding])), (1, Symbol.of(group, [-a, *padding]))]
    )


def delta_class(N: int, n: int = 2, a: int = 1) -> GroupElementClass:
    group = FinAbelianGroupSpec.cyclic(N)
    return class_of(delta_expression(group, n, a), presented_group(group, n, Variant.B))


def delta_is_independent(N: int, n: int = 2) -> tuple[bool, list[str]]:
    """Whether ``[a,0..]+[-a,0..]`` has the same class for every unit a."""
    reference = delta_class(N, n, 1)
    witnesses = [
        f"a={a}"
        for a in range(2, N)
        if gcd(a, N) == 1 and delta_class(N, n, a) != reference
    ]
    return not witnesses, witnesses


def zero_zero_one_symbol(group: FinAbelianGroupSpec, n: int) -> Symbol:
    """``[0,0,1,0,...]``; over a non-cyclic group the 1 becomes the standard generators."""
    if n < 3:
        raise InvalidInputError(f"[0,0,1,...] needs n >= 3, got {n}")
    generators = [tuple(1 if i == j else 0 for i in range(group.rank)) for j in range(group.rank)]
    if group.is_trivial:
        generators = []
    if 2 + len(generators) > n:
        raise InvalidInputError(f"[0,0,...] cannot span the characters of {group} with n = {n}")
    entries = [group.zero(), group.zero(), *generators]
    entries += [group.zero()] * (n - len(entries))
    return require_faithful(group, Symbol.of(group, entries))


def zero_zero_one_class(group: FinAbelianGroupSpec, n: int) -> GroupElementClass:
    symbol = zero_zero_one_symbol(group, n)
    return class_of(SymbolExpression.of(symbol), presented_group(group, n, Variant.B))


def class_from_fixed_point_data(
    components: Iterable[Sequence[int | Sequence[int]]], group: FinAbelianGroupSpec, n: int
) -> GroupElementClass:
    """Sum over fixed-point components of the symbols of their tangent characters, in B_n(G)."""
    terms = []
    for component in components:
        if len(component) != n:
            raise InvalidInputError(
                f"fixed-point component {list(component)} has {len(component)} characters, expected {n}"
            )
        symbol = require_faithful(group, Symbol.of(group, component))
        terms.append((1, symbol))
    return class_of(SymbolExpression.from_terms(terms), presented_group(group, n, Variant.B))


# ---------------------------------------------------------------------------
# mu and the comparison over Q
# ---------------------------------------------------------------------------


def _mu_pair(group: FinAbelianGroupSpec, n: int, minus: bool) -> tuple[SymbolPresentation, SymbolPresentation]:
    if minus:
        return presented_group(group, n, Variant.Bminus), presented_group(group, n, Variant.Mminus)
    return presented_group(group, n, Variant.B), presented_group(group, n, Variant.M)


def mu_descent_witnesses(group: FinAbelianGroupSpec, n: int, minus: bool = False) -> list[str]:
    """Relations of the source whose mu-image is nonzero in the target."""
    source, target = _mu_pair(group, n, minus)
    mu = mu_matrix(group, n)
    witnesses = []
    for k, relation in enumerate(source.relations):
        coords = [0] * source.num_generators
        for i, c in relation.items():
            coords[i] = c
        if not target.element(apply_sparse(mu, coords, target.num_generators)).is_zero:
            terms = " + ".join(f"{c}*{source.format_generator(i)}" for i, c in relation.items())
            witnesses.append(f"relation {k}: {terms}")
    return witnesses


def verify_mu_descends(group: FinAbelianGroupSpec, n: int, minus: bool = False) -> bool:
    witnesses = mu_descent_witnesses(group, n, minus)
    if witnesses:
        logger.warning("mu does not descend on %s, n=%d: %s", group, n, witnesses[0])
    return not witnesses


def rank_compare(group: FinAbelianGroupSpec, n: int, minus: bool = False) -> RankComparison:
    source, target = _mu_pair(group, n, minus)
    mu = mu_matrix(group, n)
    rows = []
    for j in range(source.num_generators):
        coords = [0] * source.num_generators
        coords[j] = 1
        rows.append(list(target.element(apply_sparse(mu, coords, target.num_generators)).free))
    mu_rank = matrix_rank(int_matrix(rows, n_cols=target.rank)) if rows and target.rank else 0
    return RankComparison(
        group=group.canonical(),
        n=n,
        map="mu-" if minus else "mu",
        rank_B=source.rank,
        rank_M=target.rank,
        mu_rank=mu_rank,
        iso_over_Q=source.rank == target.rank == mu_rank,
    )


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def _require_prime(p: int) -> None:
    if not sympy.isprime(p):
        raise InvalidInputError(f"{p} is not prime")


def verify_lemma_suite(p: int) -> SuiteReport:
    """The identities in B_2(Z/p) leading up to the torsion bound for delta."""
    _require_prime(p)
    if p > settings.LEMMA_PMAX:
        raise InvalidInputError(f"lemma suite is limited to p <= {settings.LEMMA_PMAX}, got {p}")
    group = FinAbelianGroupSpec.cyclic(p)
    presentation = presented_group(group, 2, Variant.B)
    log = CheckLog(suite=f"lemmas(p={p})")

    def cls(x: int, y: int) -> GroupElementClass:
        return symbol_class(presentation, [x, y])

    units = range(1, p)
    delta = cls(1, 0) + cls(-1, 0)

    for a in units:
        delta_a = cls(a, 0) + cls(-a, 0)
        log.record("delta independent of a", delta_a == delta, f"a={a}")
        for b in units:
            log.record("[a,b]+[a,-b]=[a,0]", cls(a, b) + cls(a, -b) == cls(a, 0), f"a={a}, b={b}")
            four = cls(a, b) + cls(a, -b) + cls(-a, b) + cls(-a, -b)
            log.record("[a,0]+[-a,0]=four-term sum", four == delta_a, f"a={a}, b={b}")
            log.record("four-term sum independent of a, b", four == delta, f"a={a}, b={b}")
            if (a + b) % p == 0:
                continue
            three = cls(a, b) + cls(-b, a + b) + cls(-a - b, a)
            log.record("[a,0]=three-term sum", three == cls(a, 0), f"a={a}, b={b}")
            six = three + cls(-a, -b) + cls(b, -a - b) + cls(a + b, -a)
            log.record("delta=six-term sum", six == delta, f"a={a}, b={b}")

    if p > 2:
        half = (p - 1) // 2
        diagonal = presentation.zero()
        skew = presentation.zero()
        for a in units:
            diagonal = diagonal + cls(a, a)
            skew = skew + cls(a, -2 * a)
        log.record("sum [a,a]=(p-1)/2 delta", diagonal == half * delta, f"p={p}")
        log.record("sum [a,-2a]=0", skew.is_zero, f"p={p}")

        for beta in units:
            if beta == p - 1:
                continue
            beta1 = (-pow(beta, -1, p) - 1) % p
            beta2 = -pow(beta + 1, -1, p) % p
            total = presentation.zero()
            for a in units:
                total = total + cls(a, beta * a) + cls(a, beta1 * a) + cls(a, beta2 * a)
            log.record(
                "sum over beta, beta', beta''=(p-1)/2 delta",
                total == half * delta,
                f"beta={beta}, beta'={beta1}, beta''={beta2}",
            )

        if p % 3 == 1:
            cube_roots = [beta for beta in units if (beta * beta + beta + 1) % p == 0]
            for beta in cube_roots:
                total = presentation.zero()
                for a in units:
                    total = total + cls(a, beta * a)
                log.record(
                    "cube root: sum [a,beta a]=(p-1)/6 delta",
                    total == ((p - 1) // 6) * delta,
                    f"beta={beta}",
                )

    return log.report({"p": p})


def verify_pn(pmax: int | None = None, order_max: int | None = None) -> SuiteReport:
    """Torsion of delta: vanishing for p <= 5, the (p^2-1)/24 bound, torsion for composite N."""
    pmax = settings.PMAX_DEFAULT if pmax is None else pmax
    order_max = settings.NMAX_DEFAULT if order_max is None else order_max
    log = CheckLog(suite="pn")

    for p in sympy.primerange(2, pmax + 1):
        order = class_order(delta_class(p))
        if p <= 5:
            log.record("delta = 0 for p <= 5", order == 1, f"p={p}: order {_order_text(order)}")
        else:
            bound = (p * p - 1) // 24
            log.record(
                "order(delta) divides (p^2-1)/24",
                divides(order, bound),
                f"p={p}: order {_order_text(order)}, bound {bound}",
            )
            log.record("order(delta) divides (p^2-1)/12", divides(order, (p * p - 1) // 12), f"p={p}")
            log.record("order(delta) divides (p^2-1)/8", divides(order, (p * p - 1) // 8), f"p={p}")
        independent, witnesses = delta_is_independent(p)
        log.record("delta independent of a", independent, f"p={p}: {', '.join(witnesses)}")

    for N in range(4, order_max + 1):
        if sympy.isprime(N):
            continue
        for a in range(1, N):
            if gcd(a, N) != 1:
                continue
            order = class_order(delta_class(N, 2, a))
            log.record(
                "[a,0]+[-a,0] torsion for composite N",
                order is not None,
                f"N={N}, a={a}",
            )
        modular = presented_group(FinAbelianGroupSpec.cyclic(N), 2, Variant.M)
        for a in range(N):
            for b in range(N):
                if gcd(gcd(a, b), N) != 1:
                    continue
                expr = SymbolExpression.from_terms(
                    (1, Symbol.of(modular.group, [x, y])) for x, y in ((a, b), (-a, b), (a, -b), (-a, -b))
                )
                order = class_order(class_of(expr, modular))
                log.record("delta(a,b) torsion in M_2(Z/N)", order is not None, f"N={N}, a={a}, b={b}")

    return log.report({"pmax": pmax, "Nmax": order_max})


def verify_001n(
    pmax: int | None = None, order_max: int | None = None, dim_max: int = 3
) -> SuiteReport:
    """[0,0,1] in B_3: vanishing for p <= 5, the (p^2-1)/24 bound, torsion otherwise."""
    pmax = settings.P3MAX_DEFAULT if pmax is None else pmax
    order_max = settings.N3MAX_DEFAULT if order_max is None else order_max
    log = CheckLog(suite="001N")
    parameters = {"pmax": pmax, "Nmax": order_max, "nmax": dim_max}
    if dim_max < 3:
        logger.info("Suite 001N needs n = 3, skipped for nmax=%d", dim_max)
        return log.report(parameters)

    for p in sympy.primerange(2, pmax + 1):
        order = class_order(zero_zero_one_class(FinAbelianGroupSpec.cyclic(p), 3))
        if p <= 5:
            log.record("[0,0,1] = 0 for p <= 5", order == 1, f"p={p}: order {_order_text(order)}")
        else:
            bound = (p * p - 1) // 24
            log.record(
                "order([0,0,1]) divides (p^2-1)/24",
                divides(order, bound),
                f"p={p}: order {_order_text(order)}, bound {bound}",
            )

    for N in range(2, order_max + 1):
        group = FinAbelianGroupSpec.cyclic(N)
        presentation = presented_group(group, 3, Variant.B)
        if not sympy.isprime(N):
            order = class_order(zero_zero_one_class(group, 3))
            log.record("[0,0,1] torsion for composite N", order is not None, f"N={N}")
        for symbol in presentation.symbols:
            if symbol.zero_count() < 2:
                continue
            order = class_order(class_of(SymbolExpression.of(symbol), presentation))
            log.record(
                "symbols [0,0,...] are torsion",
                order is not None,
                f"N={N}: {symbol.format(group)}",
            )

    return log.report(parameters)


def comparison_battery(
    order_max: int, order_max3: int, dim_max: int = 3
) -> list[tuple[FinAbelianGroupSpec, int]]:
    """(group, n) pairs of the comparison suite: cyclic groups up to order_max for n = 2,
    and up to order_max3 plus a few non-cyclic groups for n = 3 when dim_max allows."""
    battery = [(FinAbelianGroupSpec.cyclic(N), 2) for N in range(2, order_max + 1)]
    if dim_max < 3:
        return battery
    battery += [(FinAbelianGroupSpec.cyclic(N), 3) for N in range(2, order_max3 + 1)]
    battery += [(FinAbelianGroupSpec(factors), 3) for factors in NONCYCLIC_N3]
    return battery


def verify_compare(
    order_max: int | None = None, order_max3: int | None = None, dim_max: int = 3
) -> SuiteReport:
    """mu and mu- are isomorphisms over Q and descend to the quotients."""
    order_max = settings.NMAX_DEFAULT if order_max is None else order_max
    order_max3 = settings.N3MAX_COMPARE if order_max3 is None else order_max3
    log = CheckLog(suite="compare")
    comparisons = []

    for group, n in comparison_battery(order_max, order_max3, dim_max):
        label = f"{group}, n={n}"
        for minus in (False, True):
            comparison = rank_compare(group, n, minus)
            comparisons.append(comparison)
            if not comparison.iso_over_Q:
                logger.warning("%s is not an isomorphism over Q for %s", comparison.map, label)
            name = "mu- descends" if minus else "mu descends"
            log.record(name, verify_mu_descends(group, n, minus), label)

        for variant in (Variant.Bminus, Variant.Mminus):
            presentation = presented_group(group, n, variant)
            for symbol in presentation.symbols:
                if symbol.zero_count() == 0:
                    continue
                order = class_order(class_of(SymbolExpression.of(symbol), presentation))
                log.record(
                    f"zero-entry symbols torsion in {variant.label}",
                    order is not None,
                    f"{label}: {symbol.format(group)}",
                )

    return log.report({"Nmax": order_max, "Nmax3": order_max3, "nmax": dim_max}, comparisons)


def torsion_bound(
    group: FinAbelianGroupSpec, n: int, variant: Variant, expr: SymbolExpression
) -> int | None:
    """Known annihilator of delta and [0,0,1,...] in B_n(Z/p); None for other classes."""
    if variant is not Variant.B or not group.is_cyclic or not sympy.isprime(group.order) or n < 2:
        return None
    p = group.order
    candidates = [delta_expression(group, n, a) for a in range(1, p)]
    if n >= 3:
        candidates.append(SymbolExpression.of(zero_zero_one_symbol(group, n)))
    if expr not in candidates:
        return None
    return 1 if p <= 5 else (p * p - 1) // 24
