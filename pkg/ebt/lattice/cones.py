"""Lattices, cones and lattice triples (L, chi, cone).

All cone data and chi are kept in lattice coordinates: a cone generator is an
integer vector over the lattice basis and chi is the list of characters a_i in
``chi = sum e_i (x) a_i``. The lattice basis itself only matters when passing
between a lattice and an overlattice.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Iterable, Sequence

import numpy as np
from sympy.core.intfunc import igcdex

from ebt.algebra.smith import (
    determinant,
    identity,
    int_matrix,
    rational_inverse,
    smith_normal_form,
    solve_mod,
    unimodular_inverse,
)
from ebt.core.errors import InvalidInputError
from ebt.symbols.characters import Character, FinAbelianGroupSpec, Symbol, is_faithful

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]


def primitive(vector: Iterable[int]) -> Vector:
    vector = tuple(int(v) for v in vector)
    g = gcd(*vector)
    if g == 0:
        raise InvalidInputError("cone generators must be nonzero")
    return tuple(v // g for v in vector)


@dataclass(frozen=True)
class Lattice:
    """Integer column span of ``basis / denominator`` inside Q^n."""

    basis: tuple[tuple[int, ...], ...]
    denominator: int = 1

    def __post_init__(self) -> None:
        if self.denominator < 1:
            raise InvalidInputError("lattice denominator must be positive")
        if any(len(row) != len(self.basis) for row in self.basis):
            raise InvalidInputError("lattice basis must be square")
        if self.basis and determinant(self.numerators()) == 0:
            raise InvalidInputError("lattice basis is singular")

    @classmethod
    def standard(cls, n: int) -> Lattice:
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def numerators(self) -> np.ndarray:
        return int_matrix(self.basis, n_cols=len(self.basis))

    def change_of_basis(self, other: Lattice) -> tuple[np.ndarray, int]:
        """``(N, d)`` with ``N / d`` taking coordinates in ``self`` to coordinates in ``other``."""
        inverse, inverse_den = rational_inverse(other.numerators())
        product_ = inverse.dot(self.numerators())
        scale = Fraction(other.denominator, self.denominator * inverse_den)
        numerator = product_ * scale.numerator
        denominator = scale.denominator
        g = gcd(denominator, *[int(v) for v in numerator.flat])
        return numerator // g, denominator // g


@dataclass(frozen=True)
class ChiVector:
    coords: tuple[Character, ...]

    @classmethod
    def of(cls, group: FinAbelianGroupSpec, coords: Iterable[Sequence[int] | int]) -> ChiVector:
        return cls(tuple(group.reduce(a) for a in coords))

    def is_surjective(self, group: FinAbelianGroupSpec) -> bool:
        return is_faithful(group, self.coords)


@dataclass(frozen=True)
class Cone:
    """Simplicial cone spanned by primitive generators (lattice coordinates)."""

    generators: tuple[Vector, ...]

    def __post_init__(self) -> None:
        if not self.generators:
            raise InvalidInputError("a cone needs at least one generator")
        sizes = {len(g) for g in self.generators}
        if len(sizes) != 1:
            raise InvalidInputError("cone generators must have the same length")
        object.__setattr__(self, "generators", tuple(primitive(g) for g in self.generators))
        if smith_normal_form(self.matrix()).rank != len(self.generators):
            raise InvalidInputError("cone generators are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def ambient_dim(self) -> int:
        return len(self.generators[0])

    def matrix(self) -> np.ndarray:
        """Generators as columns."""
        n = len(self.generators[0])
        return int_matrix([[g[i] for g in self.generators] for i in range(n)], n_cols=len(self.generators))

    def key(self) -> frozenset[Vector]:
        return frozenset(self.generators)


@dataclass(frozen=True)
class LatticeTriple:
    group: FinAbelianGroupSpec
    lattice: Lattice
    chi: ChiVector
    cone: Cone

    def __post_init__(self) -> None:
        n = self.lattice.dim
        if len(self.chi.coords) != n or self.cone.ambient_dim != n:
            raise InvalidInputError(
                f"triple dimensions disagree: lattice {n}, chi {len(self.chi.coords)}, cone {self.cone.ambient_dim}"
            )

    @classmethod
    def identity(cls, group: FinAbelianGroupSpec, symbol: Symbol) -> LatticeTriple:
        n = symbol.n
        lattice = Lattice.standard(n)
        cone = Cone(tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n)))
        return cls(group, lattice, ChiVector(symbol.entries), cone)

    def with_cone(self, cone: Cone) -> LatticeTriple:
        return LatticeTriple(self.group, self.lattice, self.chi, cone)


def apply_to_characters(
    group: FinAbelianGroupSpec, matrix: np.ndarray, characters: Sequence[Character]
) -> tuple[Character, ...]:
    """``b_j = sum_k M[j, k] * a_k`` in A."""
    out = []
    for j in range(matrix.shape[0]):
        value = group.zero()
        for k, a in enumerate(characters):
            coefficient = int(matrix[j, k])
            if coefficient:
                value = group.add(value, group.scale(coefficient, a))
        out.append(value)
    return tuple(out)


def _check_cone(cone: Cone, lattice: Lattice | None) -> None:
    if lattice is not None and cone.ambient_dim != lattice.dim:
        raise InvalidInputError(f"cone lives in dimension {cone.ambient_dim}, lattice has {lattice.dim}")


def is_smooth(cone: Cone, lattice: Lattice | None = None) -> bool:
    _check_cone(cone, lattice)
    return all(d == 1 for d in smith_normal_form(cone.matrix()).diag)


def is_basic(cone: Cone, lattice: Lattice | None = None) -> bool:
    return cone.dim == cone.ambient_dim and is_smooth(cone, lattice)


def saturation_basis(cone: Cone) -> tuple[np.ndarray, np.ndarray]:
    """``(W, Q)``: W is an n x n unimodular matrix whose first s columns span
    L cap (cone (x) R); Q (s x s) holds the cone generators in those coordinates."""
    snf = smith_normal_form(cone.matrix())
    W = unimodular_inverse(snf.U)
    Q = snf.U.dot(cone.matrix())[: cone.dim, :]
    return W, Q


def smooth_symbol(triple: LatticeTriple) -> Symbol:
    """Symbol of a smooth cone satisfying the chi-condition: ``[b_1..b_s, 0..0]``."""
    cone, group = triple.cone, triple.group
    if not is_smooth(cone):
        raise InvalidInputError("cone is not smooth")
    s = cone.dim
    W, _ = saturation_basis(cone)
    basis = cone.matrix()
    if s < cone.ambient_dim:
        basis = np.concatenate([basis, W[:, s:]], axis=1)
    b = apply_to_characters(group, unimodular_inverse(basis), triple.chi.coords)
    if any(any(c) for c in b[s:]):
        raise InvalidInputError("chi does not lie in the image of the cone's sublattice")
    return Symbol.of(group, b)


def symbol_of_basic_triple(triple: LatticeTriple) -> Symbol:
    if not is_basic(triple.cone, triple.lattice):
        raise InvalidInputError("symbol_of_basic_triple needs a basic cone")
    return smooth_symbol(triple)


def chi_condition(triple: LatticeTriple, *, saturated: bool = False) -> bool:
    """chi in Im(L' (x) A -> L (x) A), L' spanned by the cone (or its saturation)."""
    group = triple.group
    if group.is_trivial:
        return True
    if saturated:
        W, _ = saturation_basis(triple.cone)
        span = W[:, : triple.cone.dim]
    else:
        span = triple.cone.matrix()
    for c, d in enumerate(group.invariant_factors):
        rhs = [a[c] for a in triple.chi.coords]
        if solve_mod(span, rhs, d) is None:
            return False
    return True


def star_subdivision(cone: Cone, face: Cone) -> list[tuple[Cone, int]]:
    """The 2^r - 1 cones of the star subdivision of ``cone`` at ``face``, with signs
    ``(-1)^(dim cone - dim subcone)``; larger subsets first."""
    face_generators = [primitive(g) for g in face.generators]
    r = len(face_generators)
    if r < 2:
        raise InvalidInputError(f"star subdivision needs a face of dimension >= 2, got {r}")
    missing = [g for g in face_generators if g not in cone.generators]
    if missing:
        raise InvalidInputError(f"{missing[0]} is not a generator of the cone")
    others = [g for g in cone.generators if g not in face_generators]
    w = primitive(np.array(face_generators, dtype=object).sum(axis=0))
    out = []
    for size in range(r - 1, -1, -1):
        for subset in combinations(face_generators, size):
            sub = Cone((w, *others, *subset))
            out.append((sub, (-1) ** (cone.dim - sub.dim)))
    return out


def _det2(u: Vector, w: Vector) -> int:
    return u[0] * w[1] - u[1] * w[0]


def _hirzebruch_jung(u: Vector, w: Vector) -> list[tuple[Vector, Vector]]:
    """Minimal smooth subdivision of the 2-dimensional cone <u, w> in Z^2."""
    m = _det2(u, w)
    if m < 0:
        u, w, m = w, u, -m
    cones = []
    while m > 1:
        x, y, g = igcdex(u[0], u[1])
        if g < 0:
            x, y = -x, -y
        t = (-int(y), int(x))
        alpha = _det2(w, t)
        c = alpha // m
        p = (u[0] + t[0] + c * u[0], u[1] + t[1] + c * u[1])
        cones.append((u, p))
        u, m = p, _det2(p, w)
    cones.append((u, w))
    return cones


def _box_point(Q: np.ndarray) -> tuple[Vector, tuple[Fraction, ...]]:
    """Nonzero lattice point of the fundamental box of Q minimizing sum(lambda), then lex."""
    s = Q.shape[0]
    snf = smith_normal_form(Q)
    U_inv = unimodular_inverse(snf.U)
    inverse, den = rational_inverse(Q)
    best: tuple[Fraction, tuple[Fraction, ...], Vector] | None = None
    for residues in product(*(range(d) for d in snf.diag)):
        if not any(residues):
            continue
        x = U_inv.dot(np.array(residues, dtype=object))
        numerators = [int(v) % den for v in inverse.dot(x)]
        lam = tuple(Fraction(v, den) for v in numerators)
        point = Q.dot(np.array(numerators, dtype=object))
        point = tuple(int(v) // den for v in point)
        candidate = (sum(lam), lam, point)
        if best is None or candidate[:2] < best[:2]:
            best = candidate
    assert best is not None
    return best[2], best[1]


def _stellar(Q: np.ndarray) -> list[np.ndarray]:
    """Smooth subdivision of a full-dimensional simplicial cone (columns of Q)."""
    if abs(determinant(Q)) == 1:
        return [Q]
    point, lam = _box_point(Q)
    out = []
    for i, value in enumerate(lam):
        if value == 0:
            continue
        child = Q.copy()
        for k in range(Q.shape[0]):
            child[k, i] = point[k]
        out.extend(_stellar(child))
    return out


def subdivide_smooth(cone: Cone, lattice: Lattice | None = None) -> list[Cone]:
    """Smooth cones of the same dimension covering the cone."""
    _check_cone(cone, lattice)
    if is_smooth(cone):
        return [cone]
    s = cone.dim
    W, Q = saturation_basis(cone)
    if s == 2:
        columns = [(int(Q[0, j]), int(Q[1, j])) for j in range(2)]
        pieces = [
            int_matrix([[u[0], v[0]], [u[1], v[1]]]) for u, v in _hirzebruch_jung(*columns)
        ]
    else:
        pieces = _stellar(Q)
    embed = W[:, :s]
    out = []
    for piece in pieces:
        ambient = embed.dot(piece)
        out.append(Cone(tuple(tuple(int(ambient[i, j]) for i in range(ambient.shape[0])) for j in range(s))))
    logger.debug("Subdivided a %d-dimensional cone into %d smooth cones", s, len(out))
    return out


def cone_coordinates(cone: Cone, vector: Vector) -> tuple[Fraction, ...]:
    """Coefficients of ``vector`` in the cone generators (vector must lie in their span)."""
    W, Q = saturation_basis(cone)
    inside = unimodular_inverse(W).dot(np.array(vector, dtype=object))
    if any(inside[cone.dim :]):
        raise InvalidInputError(f"{vector} is not in the linear span of the cone")
    inverse, den = rational_inverse(Q)
    return tuple(Fraction(int(v), den) for v in inverse.dot(inside[: cone.dim]))


def all_faces(cones: Iterable[Cone]) -> list[Cone]:
    seen: dict[frozenset[Vector], Cone] = {}
    for cone in cones:
        for size in range(cone.dim, 0, -1):
            for subset in combinations(cone.generators, size):
                key = frozenset(subset)
                if key not in seen:
                    seen[key] = Cone(subset)
    return list(seen.values())


def random_unimodular(n: int, rng, steps: int = 6) -> np.ndarray:
    """A GL_n(Z) matrix built from ``steps`` random elementary operations (and a sign)."""
    M = identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            break
        M[:, j] += rng.choice([-2, -1, 1, 2]) * M[:, i]
    if rng.random() < 0.5:
        M[:, 0] = -M[:, 0]
    return M
