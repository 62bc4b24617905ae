"""Relative trisection diagrams of compact 4-manifolds.

Diagrams are stored as combinatorial maps (rotation systems) on compact
oriented surfaces with boundary, decorated with labelled strands for the
three curve-and-arc families of a relative trisection.  On top of the maps
the package provides the standard diagram moves, the open-book monodromy
of the induced boundary structure, first homology of the boundary
3-manifold, and certificate checking for paths in the cut-system complex,
which bound the relative invariants of the 4-manifold.
"""

from .combmap import CombMap, StrandLabel, SurfaceClass
from .canonical import canonical_key, canonical_map, map_isomorphic
from .rtdio import loads_map, dumps_map, load_map, dump_map

__version__ = "0.1.0"
