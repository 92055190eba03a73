"""Backend selection for the hot loops.

The compiled extension ``_kernels`` is used when importable; otherwise, or
when ``HFL_PURE_PYTHON`` is set to a non-empty value other than ``0``, the
numpy implementation in ``_pykernels`` is used.  Both expose the same
functions with identical results.
"""

from __future__ import annotations

import os

import numpy as np

from .grid_core import GridDiagram, alexander_constants


def _load():
    if os.environ.get("HFL_PURE_PYTHON", "0") not in ("", "0"):
        from . import _pykernels
        return _pykernels, "python"
    try:
        from . import _kernels
        return _kernels, "compiled"
    except ImportError:
        from . import _pykernels
        return _pykernels, "python"


impl, BACKEND = _load()


def get_backend(name: str | None = None):
    """Return a kernel module by name ("compiled" / "python"), or the active one."""
    if name is None:
        return impl
    if name == "python":
        from . import _pykernels
        return _pykernels
    if name == "compiled":
        from . import _kernels
        return _kernels
    raise ValueError(f"unknown backend {name!r}")


def maslov_constant(g: GridDiagram) -> int:
    """J(O, O) + 1, the state-independent part of the Maslov grading."""
    o = g.o_markings()
    j2 = sum(
        1
        for ca, ra in o
        for cb, rb in o
        if (ca < cb and ra < rb) or (cb < ca and rb < ra)
    )
    return j2 // 2 + 1


def marking_free_table(g: GridDiagram) -> np.ndarray:
    """``free[a, b, r1, r2]``: rectangle over columns a..b-1, rows r1..r2-1 has no marking."""
    n = g.size
    marks = np.zeros((n, n), dtype=np.int64)
    for c in range(n):
        marks[c, g.o_perm[c]] = 1
        marks[c, g.x_perm[c]] = 1
    tiled = np.tile(marks, (2, 2))
    pre = np.zeros((2 * n + 1, 2 * n + 1), dtype=np.int64)
    pre[1:, 1:] = tiled.cumsum(0).cumsum(1)
    free = np.zeros((n, n, n, n), dtype=np.uint8)
    r1 = np.arange(n)[:, None]
    r2 = np.arange(n)[None, :]
    h = (r2 - r1) % n
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            w = (b - a) % n
            top = r1 + h
            total = pre[a + w, top] - pre[a, top] - pre[a + w, r1] + pre[a, r1]
            free[a, b] = ((total == 0) & (h > 0)).astype(np.uint8)
    return free


def grade_all(g: GridDiagram, backend=None):
    """(maslov[N!], alexander2[N!, ell]) for all states in lexicographic order."""
    k = backend or impl
    return k.grade_all(
        g.size,
        list(g.o_perm),
        list(g.x_perm),
        list(g.component_of),
        g.n_components,
        list(alexander_constants(g)),
        maslov_constant(g),
    )
