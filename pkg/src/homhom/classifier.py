"""Polynomial-time homogeneity classification for reflexive digraphs.

For a bidirectionally disconnected reflexive digraph, homogeneity holds
exactly in three recognisable situations: the digraph is a homogeneous
quasiorder, or it is a block inflation of a nonempty disjoint union of
reflexive oriented triangles and looped points, or a block inflation of a
homogeneous digraph with involution.  Bidirectionally connected inputs are
reported as requiring the exponential oracle; no polynomial catalogue can
exist for them.

Every homogeneous verdict carries a certificate that re-verifies from
scratch through the public recognisers, without trusting the classifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .digraph import Digraph, inflate, is_homomorphism
from .errors import InputError
from .involution import TwiClass, hh_dwi_components, is_digraph_with_involution
from .oracle import Witness
from .posets import (
    PosetReason,
    as_poset,
    c3_one_counts,
    is_hh_poset,
    is_transitive,
    mutual_partition,
)
from .structure import (
    Connectivity,
    Partition,
    connectivity_report,
    quotient,
    recognize_inflation,
)


class ClassVerdict(Enum):
    HH = "HH"
    NOT_HH = "NOT_HH"
    ORACLE_REQUIRED = "ORACLE_REQUIRED"


class Tag(Enum):
    QUASIORDER = "quasiorder"
    C3_ONE_INFLATION = "c3-one-inflation"
    DWI_INFLATION = "dwi-inflation"
    NONE = "none"


@dataclass(frozen=True)
class QuasiorderCertificate:
    poset: Digraph
    partition: Partition
    reason: PosetReason
    retraction: tuple[int, ...]
    injection: tuple[int, ...]


@dataclass(frozen=True)
class C3OneCertificate:
    quotient: Digraph
    partition: Partition
    cycles: int
    points: int


@dataclass(frozen=True)
class DwiCertificate:
    quotient: Digraph
    partition: Partition
    pairing: tuple[int, ...]
    components: tuple[TwiClass, ...]


Certificate = Union[QuasiorderCertificate, C3OneCertificate, DwiCertificate]


@dataclass(frozen=True)
class Classification:
    verdict: ClassVerdict
    tag: Tag
    certificate: Optional[Certificate] = None
    witness: Optional[Witness] = None


def check_c3_one_components(q: Digraph) -> Optional[tuple[int, int]]:
    """(cycle count, point count) when every component of q is a reflexive
    oriented triangle or a looped point; None otherwise."""
    return c3_one_counts(q)


def classify(d: Digraph) -> Classification:
    """Classify a reflexive digraph, certificates included.

    Cases are tested in a fixed order (quasiorder, triangle/point inflation,
    involution inflation); for bidirectionally disconnected inputs they are
    mutually exclusive apart from degenerate overlaps, so the order only
    affects the reported tag, never the verdict.
    """
    if not d.is_reflexive:
        raise InputError("classification is defined for reflexive digraphs")
    report = connectivity_report(d)
    if report.status is Connectivity.BIDIR_CONNECTED:
        return Classification(ClassVerdict.ORACLE_REQUIRED, Tag.NONE)
    if is_transitive(d):
        partition = mutual_partition(d)
        q = quotient(d, partition)
        view = as_poset(q.digraph)
        assert view is not None
        reason = is_hh_poset(view)
        if reason is not PosetReason.NONE:
            cert = QuasiorderCertificate(q.digraph, partition, reason, q.retraction, q.injection)
            return Classification(ClassVerdict.HH, Tag.QUASIORDER, cert)
    rec = recognize_inflation(d)
    if rec.valid:
        counts = check_c3_one_components(rec.quotient)
        if counts is not None and sum(counts) >= 1:
            cert = C3OneCertificate(rec.quotient, rec.partition, counts[0], counts[1])
            return Classification(ClassVerdict.HH, Tag.C3_ONE_INFLATION, cert)
        is_dwi, pairing = is_digraph_with_involution(rec.quotient)
        if is_dwi:
            parts = hh_dwi_components(rec.quotient)
            if parts is not None:
                cert = DwiCertificate(rec.quotient, rec.partition, pairing, parts)
                return Classification(ClassVerdict.HH, Tag.DWI_INFLATION, cert)
    return Classification(ClassVerdict.NOT_HH, Tag.NONE)


def verify_certificate(d: Digraph, result: Classification) -> bool:
    """Re-check a homogeneous classification from first principles.

    Uses only the public recognisers: the retract identities, the inflation
    round trip against the exact block layout, and the family membership of
    the quotient.  Never consults the classifier's own intermediate state.
    """
    if result.verdict is not ClassVerdict.HH or result.certificate is None:
        return False
    cert = result.certificate
    if isinstance(cert, QuasiorderCertificate):
        if not d.is_reflexive or not is_transitive(d):
            return False
        q = quotient(d, cert.partition)
        if q.digraph != cert.poset:
            return False
        if tuple(cert.retraction) != q.retraction or tuple(cert.injection) != q.injection:
            return False
        if not is_homomorphism(d, cert.poset, cert.retraction):
            return False
        if not is_homomorphism(cert.poset, d, cert.injection):
            return False
        if any(cert.retraction[cert.injection[i]] != i for i in range(cert.poset.n)):
            return False
        view = as_poset(cert.poset)
        return view is not None and is_hh_poset(view) is not PosetReason.NONE
    if isinstance(cert, (C3OneCertificate, DwiCertificate)):
        if not _inflation_round_trip(d, cert.quotient, cert.partition):
            return False
        if isinstance(cert, C3OneCertificate):
            counts = c3_one_counts(cert.quotient)
            return counts == (cert.cycles, cert.points) and cert.cycles + cert.points >= 1
        is_dwi, pairing = is_digraph_with_involution(cert.quotient)
        if not is_dwi or pairing != tuple(cert.pairing):
            return False
        return hh_dwi_components(cert.quotient) == cert.components
    return False


def _inflation_round_trip(d: Digraph, q: Digraph, partition: Partition) -> bool:
    """Inflating q by the block sizes must rebuild d under the block layout."""
    if partition.n != d.n or len(partition.blocks) != q.n:
        return False
    rebuilt, blocks = inflate(q, partition.sizes())
    # correspondence: i-th vertex of block b  <->  i-th vertex of rebuilt block b
    mapping = [0] * d.n
    for b, block in enumerate(partition.blocks):
        for old, new in zip(sorted(block), sorted(blocks[b])):
            mapping[old] = new
    return is_homomorphism(d, rebuilt, mapping) and is_homomorphism(
        rebuilt, d, _inverse(mapping)
    )


def _inverse(mapping):
    inv = [0] * len(mapping)
    for i, j in enumerate(mapping):
        inv[j] = i
    return inv
