"""Why the point has Ramsey degree 2 in the age of S2.

Split the circle into two half-planes and color each point by its half.
No cyclic triangle is monochromatic, because three points in the same open
half circle are linearly ordered.  So two colors can never be forced down
to one.
"""

from structramsey import ArrowQuery, check_arrow
from structramsey.experiments import CYCLIC, POINT, half_plane_coloring
from structramsey.ramsey import verify_bad_coloring
from structramsey.registry import catalog

for n in range(3, 8):
    members = catalog("s2", 7).of_size(n)
    bad = 0
    for c in members:
        q = ArrowQuery(c, CYCLIC, POINT, 2, 1)
        assert not check_arrow(q).holds
        bad += verify_bad_coloring(q, half_plane_coloring(c))
    print(f"size {n}: {len(members)} members, half-plane coloring bad for {bad}")
