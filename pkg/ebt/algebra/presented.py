from __future__ import annotations

import logging
import threading
import time
from dataclasses import dataclass
from math import gcd, lcm
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from ebt.algebra.smith import SmithForm, dense_from_columns, smith_normal_form
from ebt.core.errors import GroupMismatchError, InvalidInputError

logger = logging.getLogger(__name__)


class PresentedAbelianGroup:
    """Cokernel of a relation matrix: Z^generators / (column span of the relations).

    Relations are sparse columns ``{generator_index: coefficient}``. The Smith
    form is computed once, on first use, under a lock; afterwards it is read-only.
    """

    def __init__(
        self,
        generator_labels: Sequence[Hashable],
        relations: Iterable[Mapping[int, int]],
        *,
        name: str = "",
        smith: SmithForm | None = None,
    ) -> None:
        self.name = name
        self.generator_labels: tuple[Hashable, ...] = tuple(generator_labels)
        self.relations: tuple[dict[int, int], ...] = tuple(
            dict(sorted(column.items())) for column in relations
        )
        self._index = {label: i for i, label in enumerate(self.generator_labels)}
        if len(self._index) != len(self.generator_labels):
            raise ValueError("generator labels must be distinct")
        self._smith = smith
        self._lock = threading.Lock()
        self._torsion_slots: tuple[tuple[int, int], ...] | None = None
        self._free_slots: tuple[int, ...] | None = None

    def __repr__(self) -> str:
        return (
            f"PresentedAbelianGroup({self.name or '?'}: "
            f"{self.num_generators} generators, {len(self.relations)} relations)"
        )

    @property
    def num_generators(self) -> int:
        return len(self.generator_labels)

    def relation_matrix(self) -> np.ndarray:
        return dense_from_columns(self.relations, self.num_generators)

    @property
    def snf(self) -> SmithForm:
        if self._smith is None:
            with self._lock:
                if self._smith is None:
                    started = time.perf_counter()
                    smith = smith_normal_form(self.relation_matrix())
                    logger.info(
                        "Smith normal form computed for %s",
                        self.name or "presentation",
                        extra={
                            "generators": self.num_generators,
                            "relations": len(self.relations),
                            "seconds": round(time.perf_counter() - started, 3),
                        },
                    )
                    self._smith = smith
        return self._smith

    def _slots(self) -> tuple[tuple[tuple[int, int], ...], tuple[int, ...]]:
        if self._torsion_slots is None or self._free_slots is None:
            diag = self.snf.diag
            torsion = []
            free = []
            for i in range(self.num_generators):
                d = diag[i] if i < len(diag) else 0
                if d == 0:
                    free.append(i)
                elif d > 1:
                    torsion.append((i, d))
            self._torsion_slots = tuple(torsion)
            self._free_slots = tuple(free)
        return self._torsion_slots, self._free_slots

    @property
    def rank(self) -> int:
        return len(self._slots()[1])

    @property
    def torsion(self) -> list[int]:
        return [d for _, d in self._slots()[0]]

    def index_of(self, label: Hashable) -> int | None:
        return self._index.get(label)

    def reduce(self, coords: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Canonical (torsion residues, free coordinates) of a generator-coordinate vector."""
        if len(coords) != self.num_generators:
            raise ValueError(
                f"expected {self.num_generators} coordinates, got {len(coords)}"
            )
        torsion_slots, free_slots = self._slots()
        if not coords:
            return (), ()
        y = self.snf.U.dot(np.array([int(c) for c in coords], dtype=object))
        torsion = tuple(int(y[i]) % d for i, d in torsion_slots)
        free = tuple(int(y[i]) for i in free_slots)
        return torsion, free

    def element(self, coords: Sequence[int]) -> GroupElementClass:
        coords = tuple(int(c) for c in coords)
        torsion, free = self.reduce(coords)
        return GroupElementClass(group=self, coords=coords, torsion=torsion, free=free)

    def element_from_terms(self, terms: Iterable[tuple[Hashable, int]]) -> GroupElementClass:
        coords = [0] * self.num_generators
        for label, coefficient in terms:
            index = self._index.get(label)
            if index is None:
                raise InvalidInputError(f"{label} is not a generator of {self.name or 'the group'}")
            coords[index] += coefficient
        return self.element(coords)

    def zero(self) -> GroupElementClass:
        return self.element([0] * self.num_generators)

    def generator(self, label: Hashable) -> GroupElementClass:
        return self.element_from_terms([(label, 1)])


@dataclass(frozen=True, eq=False)
class GroupElementClass:
    group: PresentedAbelianGroup
    coords: tuple[int, ...]
    torsion: tuple[int, ...]
    free: tuple[int, ...]

    @property
    def reduced(self) -> tuple[int, ...]:
        return self.torsion + self.free

    @property
    def is_zero(self) -> bool:
        return not any(self.torsion) and not any(self.free)

    @property
    def order(self) -> int | None:
        return class_order(self)

    def _check(self, other: GroupElementClass) -> None:
        if other.group is not self.group:
            raise GroupMismatchError(
                f"classes live in different groups: {self.group!r} vs {other.group!r}"
            )

    def __add__(self, other: GroupElementClass) -> GroupElementClass:
        self._check(other)
        return self.group.element([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: GroupElementClass) -> GroupElementClass:
        self._check(other)
        return self.group.element([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> GroupElementClass:
        return self.group.element([-a for a in self.coords])

    def __rmul__(self, scalar: int) -> GroupElementClass:
        return self.group.element([scalar * a for a in self.coords])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElementClass):
            return NotImplemented
        return classes_equal(self, other)

    def __hash__(self) -> int:
        return hash((id(self.group), self.reduced))


def class_order(x: GroupElementClass) -> int | None:
    """Least m >= 1 with m*x == 0; None stands for infinite order."""
    if any(x.free):
        return None
    torsion_slots, _ = x.group._slots()
    order = 1
    for (_, d), c in zip(torsion_slots, x.torsion):
        order = lcm(order, d // gcd(d, c))
    return order


def classes_equal(x: GroupElementClass, y: GroupElementClass) -> bool:
    x._check(y)
    return x.torsion == y.torsion and x.free == y.free
