"""Sift kernel backends.

The envelope kernels exist twice: a Cython extension (``_sift``) for speed
and a numpy/scipy fallback (``numpy_backend``) so the package works from a
plain source checkout.  Selection happens here, at import time, and can be
forced with the ``HHTSCALE_BACKEND`` environment variable (``compiled`` or
``python``).
"""

import logging
import os

from . import numpy_backend
from .common import mirror_extrema

logger = logging.getLogger(__name__)

try:
    from . import _sift as compiled_backend
except ImportError:  # pragma: no cover - depends on the build environment
    compiled_backend = None

_ENV_VAR = "HHTSCALE_BACKEND"

__all__ = ["get_backend", "available_backends", "mirror_extrema"]


def available_backends():
    """Names of the backends importable in this environment."""
    names = ["python"]
    if compiled_backend is not None:
        names.insert(0, "compiled")
    return tuple(names)


def get_backend(name=None):
    """Resolve a backend module by name.

    ``None`` (the default) consults ``HHTSCALE_BACKEND`` and falls back to
    the compiled kernel when built, else the numpy implementation.
    """
    if name is None:
        name = os.environ.get(_ENV_VAR, "auto")
    if name in ("auto", ""):
        if compiled_backend is not None:
            return compiled_backend
        logger.info("compiled sift kernel not built; using the numpy fallback")
        return numpy_backend
    if name == "compiled":
        if compiled_backend is None:
            raise RuntimeError(
                "compiled backend requested via %s but the extension is not built"
                % _ENV_VAR
            )
        return compiled_backend
    if name == "python":
        return numpy_backend
    raise ValueError(f"unknown sift backend {name!r} (use 'compiled' or 'python')")
