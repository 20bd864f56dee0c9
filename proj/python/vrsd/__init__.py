"""Variance-reduced SGD with sufficient decrease."""

try:
    from vrsd._vrsd import *  # noqa: F401,F403  (installed wheel layout)
    from vrsd._vrsd import __doc__ as _doc
except ImportError:
    from _vrsd import *  # noqa: F401,F403  (in-tree build layout)
    from _vrsd import __doc__ as _doc

__doc__ = _doc
