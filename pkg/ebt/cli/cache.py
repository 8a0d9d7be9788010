"""Versioned on-disk cache of presentations (relations plus Smith normal form)."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

import numpy as np
from platformdirs import user_cache_path

from ebt.algebra.smith import SmithForm, int_matrix, smith_normal_form, to_lists
from ebt.birational.relations import SymbolPresentation, Variant, presented_group, seed_presentation
from ebt.core.errors import EXIT_VERIFICATION_FAILED, EbtError
from ebt.core.settings import settings
from ebt.symbols.characters import FinAbelianGroupSpec

logger = logging.getLogger(__name__)


def default_cache_dir() -> Path:
    if settings.CACHE_DIR:
        return Path(settings.CACHE_DIR)
    return user_cache_path(settings.PROJECT_NAME)


def cache_key(group: FinAbelianGroupSpec, n: int, variant: Variant) -> dict:
    return {
        "group": group.canonical(),
        "n": n,
        "variant": variant.value,
        "version": settings.VERSION,
    }


def _matrix_payload(matrix: np.ndarray) -> dict:
    return {"shape": list(matrix.shape), "rows": to_lists(matrix)}


def _matrix_from_payload(payload: dict) -> np.ndarray:
    return int_matrix(payload["rows"], n_cols=payload["shape"][1])


def _smith_from_payload(snf: dict) -> SmithForm:
    D = np.zeros(tuple(snf["shape"]), dtype=object)
    for i, d in enumerate(snf["diag"]):
        D[i, i] = d
    return SmithForm(
        U=_matrix_from_payload(snf["U"]),
        D=D,
        V=_matrix_from_payload(snf["V"]),
        diag=tuple(snf["diag"]),
    )


def _same_smith(a: SmithForm, b: SmithForm) -> bool:
    return (
        a.diag == b.diag
        and a.U.shape == b.U.shape
        and a.V.shape == b.V.shape
        and to_lists(a.U) == to_lists(b.U)
        and to_lists(a.V) == to_lists(b.V)
    )


class PresentationCache:
    def __init__(self, directory: Path | None = None, *, enabled: bool = True) -> None:
        self.directory = directory or default_cache_dir()
        self.enabled = enabled

    def path_for(self, key: dict) -> Path:
        digest = hashlib.sha256(json.dumps(key, sort_keys=True).encode("utf-8")).hexdigest()
        return self.directory / f"{digest}.json"

    def load(self, group: FinAbelianGroupSpec, n: int, variant: Variant) -> SymbolPresentation | None:
        key = cache_key(group, n, variant)
        path = self.path_for(key)
        if not path.exists():
            logger.info("Cache miss", extra={"key": key})
            return None
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            logger.warning("Unreadable cache entry %s: %s", path, exc)
            return None
        stale = not isinstance(payload, dict) or payload.get("schema") != settings.SCHEMA
        if stale or payload.get("key") != key:
            logger.warning("Stale cache entry %s", path)
            return None
        try:
            smith = _smith_from_payload(payload["snf"])
            cached_relations = [dict((int(i), c) for i, c in column) for column in payload["relations"]]
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            logger.warning("Incomplete cache entry %s: %r", path, exc)
            return None
        presentation = SymbolPresentation(group, n, variant, smith=smith)
        if cached_relations != [dict(column) for column in presentation.relations]:
            logger.warning("Cache entry %s does not match the current relations", path)
            return None
        logger.info("Cache hit", extra={"key": key})
        return presentation

    def store(self, presentation: SymbolPresentation) -> Path:
        key = cache_key(presentation.group, presentation.n, presentation.variant)
        snf = presentation.snf
        payload = {
            "schema": settings.SCHEMA,
            "key": key,
            "generators": [presentation.format_generator(i) for i in range(presentation.num_generators)],
            "relations": [sorted(column.items()) for column in presentation.relations],
            "snf": {
                "shape": list(snf.D.shape),
                "diag": list(snf.diag),
                "U": _matrix_payload(snf.U),
                "V": _matrix_payload(snf.V),
            },
        }
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path_for(key)
        with tempfile.NamedTemporaryFile(
            "w", encoding="utf-8", dir=self.directory, suffix=".tmp", delete=False
        ) as handle:
            json.dump(payload, handle)
            temp_name = handle.name
        os.replace(temp_name, path)
        logger.info("Cache write %s", path, extra={"key": key})
        return path

    def get(
        self, group: FinAbelianGroupSpec, n: int, variant: Variant, *, check: bool = False
    ) -> SymbolPresentation:
        """The presentation, from disk when possible; ``check`` recomputes and compares."""
        if not self.enabled:
            return presented_group(group, n, variant)
        presentation = self.load(group, n, variant)
        if presentation is None:
            presentation = presented_group(group, n, variant)
            self.store(presentation)
            return presentation
        if check:
            fresh = smith_normal_form(presentation.relation_matrix())
            if not _same_smith(fresh, presentation.snf):
                raise EbtError(
                    f"cache entry for {presentation.name} differs from recomputation",
                    exit_code=EXIT_VERIFICATION_FAILED,
                )
        seed_presentation(presentation)
        return presentation
