"""Two-electron double quantum dot simulator."""

try:
    from ._qdmol import *  # noqa: F401,F403  (installed package layout)
except ImportError:
    from _qdmol import *  # noqa: F401,F403  (in-tree build layout)
