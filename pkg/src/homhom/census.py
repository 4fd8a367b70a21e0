"""Exhaustive census of small reflexive digraphs and cross-validation.

Labelled reflexive digraphs on n vertices are the 2^(n(n-1)) settings of
the off-diagonal adjacency bits.  Enumeration packs them into integer
codes, minimises each code over all vertex permutations with vectorised
bit gathers, and keeps one representative per orbit.  Cross-validation
then runs the polynomial classifier against the exhaustive oracle on every
bidirectionally disconnected class, and the cone criterion against the
oracle on every bidirectionally connected improper class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .classifier import ClassVerdict, Tag, classify
from .digraph import Digraph, find_isomorphism
from .errors import CapabilityError
from .involution import is_tournament_with_involution, twi_from_base
from .oracle import Verdict, Witness, is_hh_bruteforce, is_hh_cone_criterion
from .structure import Connectivity, connectivity_report

ENUMERATION_GUARD = 5
WITNESS_SAMPLE = 5


def _offdiag_positions(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def _digraph_from_code(n: int, code: int) -> Digraph:
    rows = [1 << v for v in range(n)]
    for bit, (i, j) in enumerate(_offdiag_positions(n)):
        if code >> bit & 1:
            rows[i] |= 1 << j
    return Digraph(n, rows)


def enumerate_reflexive(n: int) -> list[Digraph]:
    """One representative per isomorphism class of reflexive digraphs on n
    vertices, in ascending order of the orbit-minimal adjacency code."""
    if n > ENUMERATION_GUARD:
        raise CapabilityError(f"enumeration is guarded to n <= {ENUMERATION_GUARD}")
    if n == 0:
        return [Digraph(0, ())]
    positions = _offdiag_positions(n)
    m = len(positions)
    index = {p: b for b, p in enumerate(positions)}
    codes = np.arange(1 << m, dtype=np.uint32)
    minimal = codes.copy()
    for perm in itertools.permutations(range(n)):
        relabeled = np.zeros_like(codes)
        for src, (i, j) in enumerate(positions):
            dst = index[(perm[i], perm[j])]
            relabeled |= ((codes >> np.uint32(src)) & np.uint32(1)) << np.uint32(dst)
        np.minimum(minimal, relabeled, out=minimal)
    reps = np.unique(minimal)
    return [_digraph_from_code(n, int(code)) for code in reps]


def enumerate_tournaments_with_involution(pairs: int) -> list[Digraph]:
    """All tournaments with involution on 2*pairs vertices, up to isomorphism.

    Every such digraph doubles some reflexive tournament on `pairs` vertices,
    so the labelled tournaments are doubled and deduplicated by isomorphism
    search.  Far cheaper than a census of all reflexive digraphs of that
    order.
    """
    if pairs < 1:
        return []
    slots = [(i, j) for i in range(pairs) for j in range(i + 1, pairs)]
    reps: list[Digraph] = []
    for choice in range(1 << len(slots)):
        rows = [1 << v for v in range(pairs)]
        for b, (i, j) in enumerate(slots):
            if choice >> b & 1:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
        doubled = twi_from_base(Digraph(pairs, rows))
        assert is_tournament_with_involution(doubled)
        if not any(find_isomorphism(doubled, seen) is not None for seen in reps):
            reps.append(doubled)
    return reps


@dataclass
class CensusReport:
    n: int
    total: int = 0
    hh_quasiorder: int = 0
    hh_c3_inflation: int = 0
    hh_dwi_inflation: int = 0
    not_hh: int = 0
    connected_checked: int = 0     # improper, cone criterion vs oracle
    connected_skipped: int = 0     # graphs / proper connected, no cross-check
    disagreements: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    def counts_consistent(self) -> bool:
        return self.total == (
            self.hh_quasiorder
            + self.hh_c3_inflation
            + self.hh_dwi_inflation
            + self.not_hh
            + self.connected_checked
            + self.connected_skipped
        )

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "total": self.total,
            "hh_quasiorder": self.hh_quasiorder,
            "hh_c3_inflation": self.hh_c3_inflation,
            "hh_dwi_inflation": self.hh_dwi_inflation,
            "not_hh": self.not_hh,
            "connected_checked": self.connected_checked,
            "connected_skipped": self.connected_skipped,
            "disagreements": list(self.disagreements),
            "witnesses": list(self.witnesses),
        }


def _witness_payload(d: Digraph, witness: Optional[Witness]) -> Optional[dict]:
    if witness is None:
        return None
    return {
        "edges": d.edges(),
        "map": {str(u): y for u, y in witness.hom.pairs},
        "vertex": witness.vertex,
    }


def _examine(d: Digraph) -> tuple[str, Optional[str], Optional[dict]]:
    """Worker for one isomorphism class: (bucket, disagreement, witness)."""
    report = connectivity_report(d)
    if report.status is Connectivity.BIDIR_DISCONNECTED:
        decided = classify(d)
        oracle = is_hh_bruteforce(d)
        ok = (decided.verdict is ClassVerdict.HH) == (oracle.decision is Verdict.HH)
        disagreement = None
        if not ok:
            disagreement = (
                f"classifier={decided.verdict.value} oracle={oracle.decision.value} "
                f"edges={d.edges()}"
            )
        if decided.verdict is ClassVerdict.HH:
            bucket = {
                Tag.QUASIORDER: "hh_quasiorder",
                Tag.C3_ONE_INFLATION: "hh_c3_inflation",
                Tag.DWI_INFLATION: "hh_dwi_inflation",
            }[decided.tag]
            return bucket, disagreement, None
        return "not_hh", disagreement, _witness_payload(d, oracle.witness)
    if not d.is_symmetric and not d.is_antisymmetric:
        cone = is_hh_cone_criterion(d)
        oracle = is_hh_bruteforce(d)
        disagreement = None
        if cone.decision is not oracle.decision:
            disagreement = (
                f"cone={cone.decision.value} oracle={oracle.decision.value} edges={d.edges()}"
            )
        return "connected_checked", disagreement, None
    return "connected_skipped", None, None


def crossvalidate(n: int, jobs: int = 1, keep_all_witnesses: bool = False) -> CensusReport:
    """Run the classifier/oracle cross-validation over the full census."""
    classes = enumerate_reflexive(n)
    report = CensusReport(n=n, total=len(classes))
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            results = pool.map(_examine, classes)
    else:
        results = [_examine(d) for d in classes]
    for bucket, disagreement, witness in results:
        setattr(report, bucket, getattr(report, bucket) + 1)
        if disagreement is not None:
            report.disagreements.append(disagreement)
        if witness is not None and (keep_all_witnesses or len(report.witnesses) < WITNESS_SAMPLE):
            report.witnesses.append(witness)
    assert report.counts_consistent()
    return report
