"""Exact combinatorics of undirected graphs with loose ends.

The package implements one category of graphs in several interlocking
layers: graph values and isomorphisms (:mod:`graphcat.core`), embeddings
and their classes (:mod:`graphcat.embeddings`), graph substitution
(:mod:`graphcat.substitution`), graphical maps with composition and
images (:mod:`graphcat.maps`), factorization systems and Reedy audits
(:mod:`graphcat.factorization`), finite set-valued presheaves with Segal
checks (:mod:`graphcat.presheaf`), genus-graded and simply-connected
variants (:mod:`graphcat.variants`), plus text formats
(:mod:`graphcat.textio`) and a command line front end
(:mod:`graphcat.cli`).
"""

from .core import (
    DAGGER,
    MODE_CORE,
    MODE_EXTENDED,
    Graph,
    GraphIso,
    automorphisms,
    betti1,
    build_graph,
    build_standard,
    connected_components,
    core_graph,
    degree,
    delete,
    find_isomorphism,
    is_connected,
)

__version__ = "0.1.0"

__all__ = [
    "DAGGER", "MODE_CORE", "MODE_EXTENDED",
    "Graph", "GraphIso",
    "automorphisms", "betti1", "build_graph", "build_standard",
    "connected_components", "core_graph", "degree", "delete",
    "find_isomorphism", "is_connected",
    "__version__",
]
