"""Persistent majority colorings and their four triple constructions.

A persistent majority triple certifies that every valuation of the
coloring language has an exact SA(2,3) relaxation. This demo builds
triples from a track layout, a distance-2 coloring, a vertex re-addition,
and a shadow-complete layering, verifying each exhaustively.
"""

from homlab import (
    Coloring,
    Graph,
    TrackLayout,
    bfs_layering,
    cohen_triple,
    crisp_language_of_coloring,
    distance2_coloring,
    extend_after_deletion,
    shadow_combine,
    triple_from_track_layout,
    verify_persistent_triple,
)
from homlab.polymorphisms import cohen_on_subset

# 1. Track layout: median/min/max of the layout order.
p4 = Graph(4, [(1, 2), (2, 3), (3, 4)])
layout = TrackLayout(Coloring(p4, {1: 1, 2: 2, 3: 1, 4: 2}), [1, 2, 3, 4])
F = triple_from_track_layout(layout)
lang = crisp_language_of_coloring(p4, layout.coloring)
print("track layout triple verifies:", verify_persistent_triple(lang, F)[0])
print("  F(1,3,4) =", F.apply(1, 3, 4))

# 2. Distance-2 coloring: the first/second/minority triple.
c5 = Graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
gamma = distance2_coloring(c5)
F2 = cohen_triple(c5.vertices, gamma)
print(f"distance-2 coloring of C5 uses {gamma.k} colors (max degree bound "
      f"{c5.max_degree() ** 2 + 1})")
print("cohen triple verifies:",
      verify_persistent_triple(crisp_language_of_coloring(c5, gamma), F2)[0])

# 3. Re-adding a deleted vertex: one fresh color, identity/swap extension.
g = Graph(4, [(1, 2), (2, 3), (1, 4), (2, 4), (3, 4)])
mu, base = cohen_on_subset(g, [1, 2, 3])
gamma3, F3 = extend_after_deletion(g, [4], mu, base)
print("extension after re-adding vertex 4 verifies:",
      verify_persistent_triple(crisp_language_of_coloring(g, gamma3), F3)[0],
      f"(colors: {gamma3.k})")

# 4. Shadow-combine along a shadow-complete layering (a depth-2 tree).
tree = Graph(7, [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)])
gamma4, F4 = shadow_combine(tree, bfs_layering(tree, 1))
print("shadow-combined triple verifies:",
      verify_persistent_triple(crisp_language_of_coloring(tree, gamma4), F4)[0],
      f"(colors: {gamma4.k}, bound 3*(c+1)^(s+1) = 12)")
