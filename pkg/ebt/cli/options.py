from __future__ import annotations

from pathlib import Path
from typing import Annotated, Optional

import typer

from ebt.cli.cache import PresentationCache
from ebt.cli.render import OutputFormat

GroupOption = Annotated[str, typer.Option("--group", "-g", help='Group spec, e.g. "Z/4 x Z/2".')]
NOption = Annotated[int, typer.Option("--n", "-n", min=1, help="Symbol length.")]
VariantOption = Annotated[str, typer.Option("--variant", help="B, M, Bminus (B-) or Mminus (M-).")]
ExprOption = Annotated[str, typer.Option("--expr", "-e", help='Symbol expression, e.g. "[1,0] + [-1,0]".')]
FormatOption = Annotated[OutputFormat, typer.Option("--format", "-f", help="Output format.")]
CacheDirOption = Annotated[
    Optional[Path],
    typer.Option("--cache-dir", envvar="EBT_CACHE_DIR", help="Presentation cache directory."),
]
NoCacheOption = Annotated[bool, typer.Option("--no-cache", help="Skip the presentation cache.")]
CheckCacheOption = Annotated[
    bool, typer.Option("--check-cache", help="Recompute cached presentations and compare.")
]


def open_cache(cache_dir: Optional[Path], no_cache: bool) -> PresentationCache:
    return PresentationCache(cache_dir, enabled=not no_cache)
