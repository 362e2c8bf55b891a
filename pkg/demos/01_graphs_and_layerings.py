"""Graphs, layerings, shadows, and rich tree decompositions.

Walks through the structural layer of the toolkit: building graphs,
checking shadow-completeness of layerings, and completing tree
decompositions into k-rich ones.
"""

from homlab import (
    Graph,
    Layering,
    TreeDecomposition,
    bfs_layering,
    exact_treewidth_decomposition,
    is_shadow_complete,
    make_rich_supergraph,
)

# A path, a cycle, and the BFS layering of the path from its endpoint.
path5 = Graph(5, [(1, 2), (2, 3), (3, 4), (4, 5)])
layering = bfs_layering(path5, 1)
print("BFS layers of P5:", [sorted(layer) for layer in layering.layers])
ok, witness = is_shadow_complete(path5, layering)
print("shadow-complete:", ok)

# The BFS layering of C4 from vertex 1 puts {2,4} in one layer; the
# component {3} of the tail has shadow {2,4}, which is not an edge.
c4 = Graph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
lay_c4 = Layering(c4, [[1], [2, 4], [3]])
ok, witness = is_shadow_complete(c4, lay_c4)
print("C4 layering shadow-complete:", ok)
print("  violating shadow:", witness)

# Completing adhesions of a tree decomposition yields a rich decomposition
# of a supergraph.
sparse = Graph(4, [(1, 2), (3, 4)])
td = TreeDecomposition(Graph(2, [(1, 2)]), {1: [1, 2, 3], 2: [2, 3, 4]})
g_rich, _, k = make_rich_supergraph(sparse, td)
print("added edges:", sorted(g_rich.edges - sparse.edges), "adhesion bound k =", k)

# Exact treewidth by subset dynamic programming (test scaffolding, n <= 10).
print("treewidth of C5:", exact_treewidth_decomposition(
    Graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
).width())
