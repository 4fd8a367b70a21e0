"""Homomorphism-homogeneity of finite reflexive digraphs.

A structure is homomorphism-homogeneous when every homomorphism between
finite induced substructures extends to an endomorphism.  This package
decides that property for reflexive digraphs: a polynomial-time structural
classifier for the bidirectionally disconnected case, exhaustive search
oracles for ground truth at desk scale, and the independent-set gadget
showing why the bidirectionally connected case resists a catalogue.
"""

from .classifier import Classification, ClassVerdict, Tag, classify, verify_certificate
from .digraph import (
    Digraph,
    EdgeKind,
    Kind,
    canonical_form,
    complete_reflexive,
    disjoint_union,
    edge_kind,
    induced,
    inflate,
    is_homomorphism,
    make_digraph,
    oriented_cycle,
    reflexive_closure,
)
from .errors import CapabilityError, InputError, PreconditionError
from .gadget import build_gk, forward_witness, max_independent_set, verify_equivalence
from .involution import (
    classify_twi,
    extract_base,
    is_digraph_with_involution,
    is_hh_dwi,
    is_tournament_with_involution,
    make_alpha,
    make_zeta4,
)
from .oracle import (
    ConeDir,
    HHVerdict,
    PartialHom,
    Verdict,
    arrow,
    cone_of_type,
    extension_images,
    is_hh_bruteforce,
    is_hh_cone_criterion,
)
from .posets import as_poset, is_hh_poset, is_hh_proper_reflexive, is_hh_quasiorder, PosetReason
from .structure import (
    Connectivity,
    ConnectivityReport,
    Partition,
    connected_components,
    connectivity_report,
    gamma_partition,
    quotient,
    recognize_inflation,
    theta_classes,
    twin_partition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
