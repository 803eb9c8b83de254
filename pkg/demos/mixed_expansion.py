"""A two-part expansion of linear orders without the expansion property.

Color points of a linear order in two colors.  The expansion with the
second color below the first can be dodged: color every point of a large
order so that the first color comes first.  Restricting to sorted colorings
repairs it.
"""

from structramsey import ep_witness_for_expansion, standard_pair
from structramsey.circle import qn_structure

mixed = qn_structure([1, 0], 2)
cert = ep_witness_for_expansion(standard_pair("lo-q2", 5), mixed, 5)
print("all colorings:", cert.kind.value, f"({len(cert.refutations)} refutations)")

cert = ep_witness_for_expansion(standard_pair("q2k", 4), qn_structure([0, 1], 2), 4)
print("sorted colorings:", cert.kind.value, "witness size", cert.witness.size)
