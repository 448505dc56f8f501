"""Suit-body interaction analysis for cable-driven shoulder-assist suits.

Thin wrapper over the compiled _ergo module. Installed wheels carry _ergo
inside this package; in-tree builds put it on sys.path directly.
"""

try:
    from ._ergo import *  # noqa: F401,F403
    from ._ergo import __version__  # noqa: F401
except ImportError:  # CMake build tree layout
    from _ergo import *  # noqa: F401,F403
    from _ergo import __version__  # noqa: F401
