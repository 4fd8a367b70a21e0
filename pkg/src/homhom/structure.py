"""Connectivity and quotient machinery.

Components, double-edge classes, twin partitions, retract quotients and the
two-block side classes used by the back-and-forth analysis.  Everything here
is a pure function of an immutable digraph.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .digraph import Digraph, bits, induced, is_homomorphism, mask_of
from .errors import InputError, PreconditionError


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks covering 0..n-1, with a per-vertex index."""

    n: int
    blocks: tuple[frozenset[int], ...]
    block_of: tuple[int, ...]

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        blocks = tuple(frozenset(b) for b in blocks)
        block_of = [-1] * n
        for i, b in enumerate(blocks):
            if not b:
                raise InputError("partition blocks must be nonempty")
            for v in b:
                if not 0 <= v < n:
                    raise InputError(f"vertex {v} out of range")
                if block_of[v] != -1:
                    raise InputError(f"vertex {v} appears in two blocks")
                block_of[v] = i
        if any(i == -1 for i in block_of):
            raise InputError("partition must cover every vertex")
        return cls(n, blocks, tuple(block_of))

    def __len__(self) -> int:
        return len(self.blocks)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)


class Connectivity(Enum):
    BIDIR_CONNECTED = "bidirectionally connected"
    BIDIR_DISCONNECTED = "bidirectionally disconnected"


@dataclass(frozen=True)
class ConnectivityReport:
    components: Partition
    theta: Partition
    status: Connectivity


def _closure_partition(d: Digraph, neighbour_mask) -> Partition:
    """Partition into maximal sets closed under the given neighbour relation."""
    seen = 0
    blocks = []
    for v in range(d.n):
        if seen >> v & 1:
            continue
        frontier = 1 << v
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            for u in bits(frontier):
                nxt |= neighbour_mask(u)
            frontier = nxt & ~comp
        seen |= comp
        blocks.append(sorted(bits(comp)))
    return Partition.from_blocks(d.n, blocks)


def connected_components(d: Digraph) -> Partition:
    """Maximal weakly connected sets (edge direction ignored)."""
    return _closure_partition(d, lambda u: d.rows[u] | d.cols[u])


def theta_classes(d: Digraph) -> Partition:
    """Maximal sets linked by chains of double edges; loops do not link."""
    return _closure_partition(d, lambda u: d.rows[u] & d.cols[u] & ~(1 << u))


def connectivity_report(d: Digraph) -> ConnectivityReport:
    comps = connected_components(d)
    theta = theta_classes(d)
    status = (
        Connectivity.BIDIR_CONNECTED
        if len(comps) == len(theta)
        else Connectivity.BIDIR_DISCONNECTED
    )
    return ConnectivityReport(comps, theta, status)


def twin_partition(d: Digraph) -> Partition:
    """Group mutually double-edged vertices with equal outside neighbourhoods.

    Two distinct vertices are twins when they see a double edge between them
    and agree, arc for arc, towards and from every third vertex.  Equality of
    punctured neighbourhoods makes this an equivalence; each block induces a
    complete reflexive subdigraph.
    """
    if not d.is_reflexive:
        raise InputError("twin partition is defined for reflexive digraphs")
    assigned = [-1] * d.n
    blocks: list[list[int]] = []
    for v in range(d.n):
        if assigned[v] != -1:
            continue
        block = [v]
        assigned[v] = len(blocks)
        for w in range(v + 1, d.n):
            if assigned[w] != -1 or not d.double(v, w):
                continue
            outside = d.full_mask & ~(1 << v) & ~(1 << w)
            if d.rows[v] & outside == d.rows[w] & outside and d.cols[v] & outside == d.cols[w] & outside:
                block.append(w)
                assigned[w] = len(blocks)
        blocks.append(block)
    return Partition.from_blocks(d.n, blocks)


@dataclass(frozen=True)
class QuotientResult:
    digraph: Digraph
    retraction: tuple[int, ...]   # vertex -> block index, a homomorphism
    injection: tuple[int, ...]    # block index -> representative vertex


def quotient(d: Digraph, partition: Partition) -> QuotientResult:
    """Collapse clique blocks to single vertices; returns the retract pair.

    Preconditions: every block induces a complete reflexive subdigraph, and
    between distinct blocks each arc direction is either absent or a full
    bundle.  (A stray partial bundle would stop the block map from being a
    homomorphism, so it is rejected loudly.)
    """
    if partition.n != d.n:
        raise PreconditionError("partition does not match the digraph")
    masks = [mask_of(b) for b in partition.blocks]
    for i, b in enumerate(partition.blocks):
        for v in b:
            if d.rows[v] & masks[i] != masks[i]:
                raise PreconditionError(f"block {i} does not induce a complete reflexive subdigraph")
    k = len(partition.blocks)
    rows = [1 << i for i in range(k)]
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            arcs = sum(bin(d.rows[v] & masks[j]).count("1") for v in partition.blocks[i])
            full = len(partition.blocks[i]) * len(partition.blocks[j])
            if arcs == full:
                rows[i] |= 1 << j
            elif arcs != 0:
                raise PreconditionError(
                    f"blocks {i} and {j} have a partial edge bundle ({arcs} of {full} arcs)"
                )
    q = Digraph(k, rows)
    retraction = tuple(partition.block_of)
    injection = tuple(min(b) for b in partition.blocks)
    assert all(retraction[injection[i]] == i for i in range(k))
    assert is_homomorphism(d, q, retraction)
    assert is_homomorphism(q, d, injection)
    return QuotientResult(q, retraction, injection)


def gamma_partition(d: Digraph, s: Iterable[int], t: Iterable[int]) -> tuple[frozenset[int], ...]:
    """Side classes of s induced by the middle class t.

    Vertices x, y of s fall together when no vertex of t lies strictly
    between them (x -> t -> y or y -> t -> x).  The raw relation is reflexive
    and symmetric but transitive only for well-behaved inputs, so its
    transitive closure is returned; callers read off the block count rather
    than assuming two.
    """
    if not d.is_reflexive:
        raise InputError("side classes are defined for reflexive digraphs")
    report = connectivity_report(d)
    if report.status is not Connectivity.BIDIR_DISCONNECTED or d.is_symmetric or d.is_antisymmetric:
        raise PreconditionError(
            "side classes require a reflexive improper bidirectionally disconnected digraph"
        )
    s = frozenset(s)
    t = frozenset(t)
    theta_sets = set(report.theta.blocks)
    if s not in theta_sets or t not in theta_sets or s == t:
        raise PreconditionError("s and t must be distinct double-edge classes")
    s_mask, t_mask = mask_of(s), mask_of(t)
    if not (any(d.rows[x] & t_mask for x in s) and any(d.rows[y] & s_mask for y in t)):
        raise PreconditionError("s and t must have arcs in both directions between them")
    members = sorted(s)
    idx = {v: i for i, v in enumerate(members)}
    parent = list(range(len(members)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, x in enumerate(members):
        for y in members[i + 1:]:
            between = (d.rows[x] & d.cols[y] | d.rows[y] & d.cols[x]) & t_mask
            if not between:
                ra, rb = find(idx[x]), find(idx[y])
                if ra != rb:
                    parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for i, v in enumerate(members):
        groups.setdefault(find(i), []).append(v)
    return tuple(frozenset(g) for g in sorted(groups.values()))


@dataclass(frozen=True)
class InflationRecognition:
    quotient: Digraph
    partition: Partition
    valid: bool


def recognize_inflation(d: Digraph) -> InflationRecognition:
    """Inverse of inflate over the twin partition.

    The quotient joins distinct blocks exactly when a full bundle runs
    between them.  The validity flag records whether every realised bundle
    is full, i.e. whether inflating the quotient by the block sizes gives
    back d vertex for vertex.
    """
    if not d.is_reflexive:
        raise InputError("inflation recognition is defined for reflexive digraphs")
    partition = twin_partition(d)
    masks = [mask_of(b) for b in partition.blocks]
    k = len(partition.blocks)
    rows = [1 << i for i in range(k)]
    valid = True
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            arcs = sum(bin(d.rows[v] & masks[j]).count("1") for v in partition.blocks[i])
            if arcs == len(partition.blocks[i]) * len(partition.blocks[j]):
                rows[i] |= 1 << j
            elif arcs != 0:
                valid = False
    return InflationRecognition(Digraph(k, rows), partition, valid)
