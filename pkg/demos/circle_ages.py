"""Count the finite substructures of the circular digraphs.

Points of the circle with rational angles (denominators prime to 6) carry
an arc x -> y when y lies less than half a turn (S2) or a third of a turn
(S3) counterclockwise from x.  This script lists how many pairwise
non-isomorphic finite substructures each has, and how many vertex
partitions ("expansions") each small member admits.
"""

from structramsey import catalog, list_expansions, standard_pair
from structramsey.structures import automorphism_order

for name in ("s2", "s3"):
    cat = catalog(name, 6)
    print(name, [len(cat.of_size(n)) for n in range(1, 7)])

pair = standard_pair("s3", 4)
print("\nsize  aut  expansions")
for a in pair.base_cat.iter_members(4):
    print(f"{a.size:4}  {automorphism_order(a):3}  {list_expansions(pair, a).count:10}")
