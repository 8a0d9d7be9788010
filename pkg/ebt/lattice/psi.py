"""Evaluation of lattice triples in B_n(G) and the subdivision-relation checks."""

from __future__ import annotations

import logging
import random
from itertools import combinations

from ebt.algebra.presented import GroupElementClass
from ebt.birational.relations import SymbolPresentation, Variant, class_of, presented_group
from ebt.birational.theorems import CheckLog
from ebt.cli.schemas import SuiteReport
from ebt.core.errors import InvalidInputError
from ebt.lattice.cones import (
    ChiVector,
    Cone,
    LatticeTriple,
    all_faces,
    apply_to_characters,
    chi_condition,
    cone_coordinates,
    is_smooth,
    random_unimodular,
    smooth_symbol,
    star_subdivision,
    subdivide_smooth,
)
from ebt.symbols.characters import FinAbelianGroupSpec, enumerate_symbols
from ebt.symbols.expressions import SymbolExpression

logger = logging.getLogger(__name__)


def interior_faces(cone: Cone, subdivision: list[Cone]) -> list[Cone]:
    """Faces of the subdivision cones that lie in no proper face of ``cone``."""
    kept = []
    for face in all_faces(subdivision):
        support: set[int] = set()
        for generator in face.generators:
            support.update(i for i, c in enumerate(cone_coordinates(cone, generator)) if c > 0)
        if len(support) == cone.dim:
            kept.append(face)
    return kept


def psi_tilde_expression(
    triple: LatticeTriple, subdivision: list[Cone] | None = None
) -> SymbolExpression:
    if not triple.chi.is_surjective(triple.group):
        raise InvalidInputError("chi does not induce a surjection onto the character group")
    if not chi_condition(triple, saturated=True):
        raise InvalidInputError("chi violates the chi-condition for the cone's saturated sublattice")
    cone = triple.cone
    if subdivision is None and is_smooth(cone):
        return SymbolExpression.of(smooth_symbol(triple))
    if subdivision is None:
        subdivision = subdivide_smooth(cone, triple.lattice)
    terms = []
    for face in interior_faces(cone, subdivision):
        piece = triple.with_cone(face)
        if not chi_condition(piece):
            continue
        terms.append(((-1) ** (cone.dim - face.dim), smooth_symbol(piece)))
    return SymbolExpression.from_terms(terms)


def psi_tilde(
    triple: LatticeTriple,
    target: SymbolPresentation | None = None,
    *,
    subdivision: list[Cone] | None = None,
) -> GroupElementClass:
    """Class in B_n(G) of a triple with simplicial cone; smooth subdivision on demand."""
    if target is None:
        target = presented_group(triple.group, triple.lattice.dim, Variant.B)
    return class_of(psi_tilde_expression(triple, subdivision), target)


def subdivision_relation(triple: LatticeTriple, face: Cone) -> SymbolExpression:
    """psi(L, chi, cone) minus the signed sum over the star subdivision at ``face``."""
    expression = psi_tilde_expression(triple)
    for sub, sign in star_subdivision(triple.cone, face):
        piece = triple.with_cone(sub)
        if chi_condition(piece):
            expression = expression - sign * psi_tilde_expression(piece)
    return expression


def refine_once(cones: list[Cone], index: int) -> list[Cone]:
    """Star-subdivide ``cones[index]`` at its full face."""
    target = cones[index]
    pieces = [sub for sub, _ in star_subdivision(target, target) if sub.dim == target.dim]
    return cones[:index] + pieces + cones[index + 1 :]


def random_basic_triple(group: FinAbelianGroupSpec, n: int, rng: random.Random) -> LatticeTriple:
    symbols = enumerate_symbols(group, n)
    symbol = rng.choice(symbols)
    basis = random_unimodular(n, rng)
    cone = Cone(tuple(tuple(int(basis[i, j]) for i in range(n)) for j in range(n)))
    # chi = sum f_j (x) b_j with f_j the cone generators, written in lattice coordinates
    chi = apply_to_characters(group, basis, symbol.entries)
    identity = LatticeTriple.identity(group, symbol)
    return LatticeTriple(group, identity.lattice, ChiVector(chi), cone)


def verify_subdivision_relations(
    group: FinAbelianGroupSpec, n: int, samples: int = 20, *, seed: int = 0
) -> SuiteReport:
    """Round trip on all generators, relation (S) for r = 2 (and r = 3 when n = 3)
    on random basic triples, and subdivision independence in dimension 2."""
    rng = random.Random(seed)
    target = presented_group(group, n, Variant.B)
    log = CheckLog(suite=f"subdivision({group}, n={n})")

    for symbol in target.symbols:
        triple = LatticeTriple.identity(group, symbol)
        log.record(
            "round trip symbol -> triple -> class",
            psi_tilde(triple, target) == class_of(SymbolExpression.of(symbol), target),
            symbol.format(group),
        )

    for _ in range(samples):
        triple = random_basic_triple(group, n, rng)
        for r in range(2, n + 1):
            if r > 3:
                break
            for generators in combinations(triple.cone.generators, r):
                relation = subdivision_relation(triple, Cone(generators))
                log.record(
                    f"star subdivision relation, r={r}",
                    class_of(relation, target).is_zero,
                    f"cone {list(triple.cone.generators)}, chi {triple.chi.coords}, face {list(generators)}",
                )
        for s in range(2, n):
            for generators in combinations(triple.cone.generators, s):
                face_triple = triple.with_cone(Cone(generators))
                if not chi_condition(face_triple):
                    continue
                relation = subdivision_relation(face_triple, face_triple.cone)
                log.record(
                    "star subdivision relation on a smooth face",
                    class_of(relation, target).is_zero,
                    f"face {list(generators)}, chi {triple.chi.coords}",
                )

    if n == 2:
        cone = Cone(((1, 0), (2, 3)))
        coarse = subdivide_smooth(cone)
        fine = refine_once(coarse, len(coarse) // 2)
        for symbol in target.symbols:
            triple = LatticeTriple.identity(group, symbol).with_cone(cone)
            log.record(
                "psi independent of the smooth subdivision",
                psi_tilde(triple, target) == psi_tilde(triple, target, subdivision=fine),
                f"chi {symbol.entries}",
            )

    logger.debug("Subdivision checks finished for %s, n=%d", group, n)
    return log.report({"n": n, "samples": samples, "seed": seed})
