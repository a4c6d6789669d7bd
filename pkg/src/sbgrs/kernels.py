"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it imported and the field
has log tables (q <= 2**16); otherwise the pure-Python ``_pykernels`` run.
``use_backend("python")`` forces the fallback, e.g. for benchmarking; the
SBGRS_BACKEND environment variable does the same at import.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

HAVE_COMPILED = _ckernels is not None
_active = "cython" if HAVE_COMPILED and os.environ.get("SBGRS_BACKEND") != "python" else "python"


def backend() -> str:
    return _active


def use_backend(name: str) -> None:
    global _active
    if name not in ("cython", "python"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "cython" and not HAVE_COMPILED:
        raise RuntimeError("compiled kernels are not available")
    _active = name


@contextmanager
def backend_set(name: str):
    prev = _active
    use_backend(name)
    try:
        yield
    finally:
        use_backend(prev)


def _ctx(gf):
    """Compiled context for gf, or None when the Python path must be used."""
    if _active != "cython" or not gf.has_tables:
        return None
    ctx = getattr(gf, "_ckernel_ctx", None)
    if ctx is None:
        ctx = _ckernels.make_context(gf.tables())
        gf._ckernel_ctx = ctx
    return ctx


def det(gf, M) -> int:
    if len(M) == 0:
        return 1
    ctx = _ctx(gf)
    return _ckernels.det(ctx, M) if ctx is not None else _pykernels.det(gf, M)


def rank(gf, M) -> int:
    ctx = _ctx(gf)
    return _ckernels.rank(ctx, M) if ctx is not None else _pykernels.rank(gf, M)


def elem_sym(gf, values) -> list[int]:
    ctx = _ctx(gf)
    if ctx is not None and len(values):
        return _ckernels.elem_sym(ctx, values)
    return _pykernels.elem_sym(gf, list(values))


def xi_value(gf, points, supports, k: int) -> int:
    ctx = _ctx(gf)
    if ctx is not None:
        return _ckernels.xi_value(ctx, points, supports, k)
    return _pykernels.xi_value(gf, points, supports, k)


def first_singular_minor(gf, G, combos) -> int:
    if len(combos) == 0:
        return -1
    ctx = _ctx(gf)
    if ctx is not None:
        return _ckernels.first_singular_minor(ctx, G, combos)
    return _pykernels.first_singular_minor(gf, G, combos)


def min_weight(gf, G) -> int:
    ctx = _ctx(gf)
    return _ckernels.min_weight(ctx, G) if ctx is not None else _pykernels.min_weight(gf, G)


def encode_batch(gf, G, messages) -> list[list[int]]:
    if len(messages) == 0:
        return []
    ctx = _ctx(gf)
    if ctx is not None:
        return _ckernels.encode_batch(ctx, G, messages)
    return _pykernels.encode_batch(gf, G, messages)
