"""Complete search for persistent majority triples.

The searcher decides, for a binary crisp language over a small domain,
whether any persistent majority triple exists. On the odd-cycle list
languages the answer is negative — notably for C_9 with the three-set
family, reproducing the computed nonexistence that separates the
randomized decision algorithm from exact optimization.
"""

import time

from homlab import (
    Coloring,
    Graph,
    TrackLayout,
    crisp_language_of_coloring,
    odd_cycle_language,
    search_triple,
    verify_persistent_triple,
)

# A language from a track layout always admits a triple; the search finds
# one (not necessarily median/min/max) and verifies it.
g = Graph(4, [(1, 2), (2, 3), (3, 4)])
layout = TrackLayout(Coloring(g, {1: 1, 2: 2, 3: 1, 4: 2}), [1, 2, 3, 4])
lang = crisp_language_of_coloring(g, layout.coloring)
t0 = time.perf_counter()
found = search_triple(lang)
print(f"track-layout language: triple found={found is not None} "
      f"({time.perf_counter() - t0:.2f}s), verifies="
      f"{verify_persistent_triple(lang, found)[0]}")

# The C_{2k+1} list languages: majority polymorphisms exist for every k,
# but persistent majority triples do not.
for k in (1, 2, 3, 4):
    lang_k, fam = odd_cycle_language(k)
    t0 = time.perf_counter()
    result = search_triple(lang_k)
    print(f"C_{2 * k + 1} list language: triple="
          f"{'NONE' if result is None else 'found'} "
          f"({time.perf_counter() - t0:.2f}s)")
