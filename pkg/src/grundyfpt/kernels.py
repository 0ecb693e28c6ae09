"""Hot-kernel dispatch: compiled extension when importable, Python otherwise.

Set ``GRUNDYFPT_PURE_PYTHON=1`` to force the Python twin.  ``BACKEND`` names
the implementation selected at import.
"""

from __future__ import annotations

import os

from . import _pykernels

_compiled = None
if not os.environ.get("GRUNDYFPT_PURE_PYTHON"):
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

_WORD = 64


def _pick(n: int):
    return _compiled if _compiled is not None and n <= _WORD else _pykernels


def prefix_colorings(masks, vertices):
    """Distinct first-fit colorings of ``G[vertices]``; see ``_pykernels.prefix_colorings``."""
    return _pick(len(masks)).prefix_colorings(masks, list(vertices))


def extend_count(masks, base, suffix):
    return _pick(len(masks)).extend_count(masks, base, list(suffix))


def best_extension(masks, bases, suffix):
    return _pick(len(masks)).best_extension(masks, bases, list(suffix))


def max_flow(node_count, tails, heads, caps, source, sink):
    impl = _compiled if _compiled is not None else _pykernels
    return impl.max_flow(node_count, tails, heads, caps, source, sink)
