"""Finite combinatorics of circular tournaments and their expansions.

Relational structures, ages as catalogs, expansion counts, arrow relations
and the doubled-circle coding of the partitions of S(2) and S(3).
"""

from .structures import (
    CanonicalCode,
    Mapping,
    Signature,
    Structure,
    StructureError,
    are_isomorphic,
    automorphism_order,
    canonical_form,
    enumerate_copies,
    enumerate_embeddings,
    find_isomorphism,
    induced_substructure,
    is_embedding,
    is_rigid,
)
from .classes import (
    AgeCatalog,
    ClassSpec,
    Kind,
    WitnessCertificate,
    age_membership,
    age_subset,
    check_amalgamation,
    check_jep,
    generate_age,
)
from .circle import CirclePlacement, Family, realize, qn_generator
from .expansions import (
    ExpansionPair,
    check_expansion_property,
    ep_witness_for_expansion,
    list_expansions,
    precompactness_profile,
    reduct,
)
from .ramsey import ArrowQuery, check_arrow, ramsey_degree_report, search_arrow_witness
from .flow import FlowPoint, Interval, Variant
from .registry import catalog, standard_pair

__version__ = "0.1.0"
