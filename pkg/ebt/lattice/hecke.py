"""Hecke operators T_{ell,r} on B_n(G) as sums over overlattices.

An overlattice L < L^ < L (x) Q with L^/L = (Z/ell)^r corresponds to an
r-dimensional subspace of F_ell^n; subspaces are enumerated by their reduced
row echelon forms. For a symbol the operator sums psi over the identity triple
re-expressed in every overlattice.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from itertools import combinations, product
from math import gcd

import numpy as np
import sympy
from cachetools import LRUCache, cached

from ebt.algebra.presented import GroupElementClass
from ebt.birational.relations import Variant, class_of, presented_group
from ebt.birational.theorems import CheckLog
from ebt.cli.schemas import SuiteReport
from ebt.core.errors import InvalidInputError
from ebt.core.settings import settings
from ebt.lattice.cones import ChiVector, Cone, Lattice, LatticeTriple, primitive
from ebt.lattice.psi import psi_tilde_expression
from ebt.symbols.characters import Character, FinAbelianGroupSpec, Symbol
from ebt.symbols.expressions import SymbolExpression

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HeckeParams:
    ell: int
    r: int

    def validate(self, group: FinAbelianGroupSpec, n: int, *, override: bool = False) -> None:
        if n < 2:
            raise InvalidInputError(f"Hecke operators need n >= 2, got {n}")
        if not sympy.isprime(self.ell):
            raise InvalidInputError(f"ell must be prime, got {self.ell}")
        if group.order % self.ell == 0:
            raise InvalidInputError(
                f"ell must be a prime not dividing the order of G: {self.ell} divides |{group}| = {group.order}"
            )
        if not 1 <= self.r <= n - 1:
            raise InvalidInputError(f"r must satisfy 1 <= r <= n-1 = {n - 1}, got {self.r}")
        if n > settings.HECKE_MAX_N or self.ell > settings.HECKE_MAX_ELL:
            if not override:
                raise InvalidInputError(
                    f"Hecke evaluation is limited to n <= {settings.HECKE_MAX_N} and "
                    f"ell <= {settings.HECKE_MAX_ELL}; pass the override flag to go beyond"
                )
            logger.warning("Hecke scale guard overridden", extra={"n": n, "ell": self.ell})


def gaussian_binomial(n: int, r: int, q: int) -> int:
    numerator = 1
    denominator = 1
    for i in range(r):
        numerator *= q ** (n - i) - 1
        denominator *= q ** (i + 1) - 1
    return numerator // denominator


def echelon_forms(n: int, r: int, ell: int) -> list[list[tuple[int, ...]]]:
    """Reduced row echelon r x n matrices over F_ell, one per r-dimensional subspace."""
    forms = []
    for pivots in combinations(range(n), r):
        free = [(k, j) for k, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivots]
        for values in product(range(ell), repeat=len(free)):
            rows = [[0] * n for _ in range(r)]
            for k, p in enumerate(pivots):
                rows[k][p] = 1
            for (k, j), value in zip(free, values):
                rows[k][j] = value
            forms.append([tuple(row) for row in rows])
    return forms


def _relative_basis(rows: list[tuple[int, ...]], n: int, ell: int) -> np.ndarray:
    """Numerators (over ell) of the overlattice basis in the coordinates of L."""
    basis = np.zeros((n, n), dtype=object)
    for i in range(n):
        basis[i, i] = ell
    for row in rows:
        p = row.index(1)
        for i in range(n):
            basis[i, p] = row[i]
    return basis


def enumerate_overlattices(lattice: Lattice, ell: int, r: int) -> list[Lattice]:
    n = lattice.dim
    if not sympy.isprime(ell):
        raise InvalidInputError(f"ell must be prime, got {ell}")
    if not 1 <= r <= n:
        raise InvalidInputError(f"r must satisfy 1 <= r <= {n}, got {r}")
    out = []
    numerators = lattice.numerators()
    for rows in echelon_forms(n, r, ell):
        ambient = numerators.dot(_relative_basis(rows, n, ell))
        out.append(
            Lattice(
                tuple(tuple(int(v) for v in row) for row in ambient),
                lattice.denominator * ell,
            )
        )
    return out


def transport_chi(
    chi: ChiVector, source: Lattice, target: Lattice, group: FinAbelianGroupSpec
) -> ChiVector:
    """Re-express chi = sum e_i (x) a_i in the basis of ``target``."""
    numerator, denominator = source.change_of_basis(target)
    # chi coordinates transform like vectors: a^ = M a with M the change of basis.
    if gcd(denominator, group.exponent) != 1:
        raise InvalidInputError(
            f"change of basis has denominator {denominator}, not invertible modulo {group.exponent}"
        )
    inverse = pow(denominator, -1, group.exponent) if group.exponent > 1 else 0
    coords: list[Character] = []
    for j in range(numerator.shape[0]):
        value = group.zero()
        for k, a in enumerate(chi.coords):
            value = group.add(value, group.scale(int(numerator[j, k]) * inverse, a))
        coords.append(value)
    transported = ChiVector(tuple(coords))
    if not transported.is_surjective(group) and chi.is_surjective(group):
        raise InvalidInputError("transported chi is no longer surjective")
    return transported


def transport_cone(cone: Cone, source: Lattice, target: Lattice) -> Cone:
    numerator, _ = source.change_of_basis(target)
    generators = []
    for g in cone.generators:
        image = numerator.dot(np.array(g, dtype=object))
        generators.append(primitive(image))
    return Cone(tuple(generators))


def overlattice_triples(triple: LatticeTriple, ell: int, r: int) -> list[LatticeTriple]:
    out = []
    for lattice in enumerate_overlattices(triple.lattice, ell, r):
        chi = transport_chi(triple.chi, triple.lattice, lattice, triple.group)
        cone = transport_cone(triple.cone, triple.lattice, lattice)
        out.append(LatticeTriple(triple.group, lattice, chi, cone))
    return out


_hecke_cache: LRUCache = LRUCache(maxsize=settings.HECKE_CACHE_SIZE)
_hecke_lock = threading.Lock()


@cached(_hecke_cache, lock=_hecke_lock)
def hecke_symbol(group: FinAbelianGroupSpec, symbol: Symbol, ell: int, r: int) -> SymbolExpression:
    """T_{ell,r} of one symbol as an unreduced combination of symbols."""
    total = SymbolExpression()
    for triple in overlattice_triples(LatticeTriple.identity(group, symbol), ell, r):
        total = total + psi_tilde_expression(triple)
    return total


def hecke_expression(
    params: HeckeParams,
    expr: SymbolExpression,
    group: FinAbelianGroupSpec,
    n: int,
    *,
    override: bool = False,
) -> SymbolExpression:
    params.validate(group, n, override=override)
    total = SymbolExpression()
    for coefficient, symbol in expr.terms:
        if symbol.n != n:
            raise InvalidInputError(f"symbol {symbol.format(group)} has {symbol.n} entries, expected {n}")
        total = total + coefficient * hecke_symbol(group, symbol, params.ell, params.r)
    return total


def hecke_apply(
    params: HeckeParams,
    expr: SymbolExpression,
    group: FinAbelianGroupSpec,
    n: int,
    *,
    override: bool = False,
) -> GroupElementClass:
    result = hecke_expression(params, expr, group, n, override=override)
    return class_of(result, presented_group(group, n, Variant.B))


def verify_hecke(
    group: FinAbelianGroupSpec,
    n: int,
    param_pairs: list[tuple[int, int]],
    r: int = 1,
    *,
    override: bool = False,
) -> SuiteReport:
    """Well-definedness on every (B)-relation and commutation of T_{l1,r}, T_{l2,r}.

    Commutation is asserted over Q only; the integral verdict is reported as
    informational.
    """
    presentation = presented_group(group, n, Variant.B)
    log = CheckLog(suite=f"hecke({group}, n={n}, r={r})")
    ells = sorted({ell for pair in param_pairs for ell in pair})

    for ell in ells:
        params = HeckeParams(ell, r)
        params.validate(group, n, override=override)
        log.record(
            "overlattice count is the Gaussian binomial",
            len(echelon_forms(n, r, ell)) == gaussian_binomial(n, r, ell),
            f"ell={ell}",
        )
        for k, relation in enumerate(presentation.relations):
            expr = SymbolExpression.from_terms((c, presentation.symbols[i]) for i, c in relation.items())
            image = hecke_apply(params, expr, group, n, override=override)
            log.record(f"T_{ell},{r} kills (B)-relations", image.is_zero, f"relation {k}: {expr.format(group)}")

    for ell1, ell2 in param_pairs:
        first, second = HeckeParams(ell1, r), HeckeParams(ell2, r)
        integral_name = f"T_{ell1},{r} and T_{ell2},{r} commute integrally"
        for symbol in presentation.symbols:
            expr = SymbolExpression.of(symbol)
            one = hecke_expression(second, hecke_expression(first, expr, group, n, override=override), group, n, override=override)
            two = hecke_expression(first, hecke_expression(second, expr, group, n, override=override), group, n, override=override)
            x, y = class_of(one, presentation), class_of(two, presentation)
            log.record(
                f"T_{ell1},{r} and T_{ell2},{r} commute over Q",
                x.free == y.free,
                symbol.format(group),
            )
            log.record(integral_name, x == y, symbol.format(group), informational=True)

    return log.report({"n": n, "r": r})
