"""Cut-off KPP front laboratory: travelling waves, moving-boundary evolution,
and the matched-expansion constants around them."""

try:
    from ._kppcut import *  # noqa: F401,F403  (installed package layout)
except ImportError:
    from _kppcut import *  # noqa: F401,F403  (build-tree layout)
