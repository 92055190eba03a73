"""On-disk cache of tilde tables, one JSON file per grid."""

from __future__ import annotations

import hashlib
import logging
import os
import tempfile
from pathlib import Path
from typing import Optional

from .f2_homology import GradedDimTable
from .grid_core import GridDiagram
from .serialize import SchemaError, table_from_json, table_to_json

log = logging.getLogger(__name__)

ENV_VAR = "HFL_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "torushfl"


def grid_hash(g: GridDiagram) -> str:
    return hashlib.sha256(g.key().encode()).hexdigest()[:8]


def cache_path(root: Path, g: GridDiagram) -> Path:
    n, s = g.params if g.family == "torus" else (g.n_components, 0)
    return Path(root) / f"{g.family}_{n}_{s}_{grid_hash(g)}.json"


class TableCache:
    def __init__(self, root: Optional[Path] = None):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.corrupt: list[Path] = []

    def load(self, g: GridDiagram) -> Optional[GradedDimTable]:
        """Cached tilde table, or None when missing.  Corrupt files are reported and dropped."""
        path = cache_path(self.root, g)
        if not path.exists():
            return None
        try:
            t = table_from_json(path.read_text())
            if t.kind != "tilde" or t.link.get("grid_size") != g.size:
                raise SchemaError("cache entry does not describe this grid")
        except (SchemaError, OSError, UnicodeDecodeError) as exc:
            log.warning("corrupt cache entry %s (%s); rebuilding", path, exc)
            self.corrupt.append(path)
            path.unlink(missing_ok=True)
            return None
        t.link.update({"n_components": g.n_components, "family": g.family})
        return t

    def store(self, g: GridDiagram, t: GradedDimTable) -> Path:
        path = cache_path(self.root, g)
        self.root.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(table_to_json(t))
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return path
