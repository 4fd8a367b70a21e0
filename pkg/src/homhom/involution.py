"""Digraphs with involution: recognition, bases, and the two named families.

A digraph with involution is a reflexive digraph carrying an automorphism
``'`` with x'' = x, x -> y implying y -> x', and every double edge between
distinct vertices joining a vertex to its partner.  Such a digraph is a
tournament with involution when every pair of distinct vertices is
adjacent.  Each tournament with involution is determined up to isomorphism
by a base: a reflexive tournament holding one vertex per partner pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .digraph import Digraph, bits, complete_reflexive, find_isomorphism, induced, make_digraph
from .errors import InputError, PreconditionError
from .structure import connected_components, theta_classes

Involution = tuple  # vertex -> partner, a total pairing map


class TwiTag(Enum):
    ALPHA = "acyclic"
    ZETA4 = "cyclic-8"
    NOT_HH_TWI = "not-hh"


@dataclass(frozen=True)
class TwiClass:
    tag: TwiTag
    pairs: int    # number of partner pairs (0 for the single looped vertex)


@dataclass(frozen=True)
class Base:
    """One vertex per partner pair; every non-apex vertex dominates the apex."""

    vertices: tuple[int, ...]   # apex first
    digraph: Digraph            # induced reflexive tournament

    @property
    def apex(self) -> int:
        return self.vertices[0]


def involution_candidate(d: Digraph) -> Optional[Involution]:
    """The only pairing that could satisfy the involution axioms, if any.

    Every vertex may have at most one distinct double-edge partner; vertices
    without one are paired with themselves.  No axiom checking happens here.
    """
    if not d.is_reflexive:
        raise InputError("involutions are defined for reflexive digraphs")
    pairing = []
    for v in range(d.n):
        partners = d.double_mask(v) & ~(1 << v)
        if partners == 0:
            pairing.append(v)
        elif partners & (partners - 1):
            return None
        else:
            pairing.append(partners.bit_length() - 1)
    return tuple(pairing)


def is_digraph_with_involution(d: Digraph) -> tuple[bool, Optional[Involution]]:
    """Check the involution axioms for the forced candidate pairing.

    Degenerate shapes whose components are single looped vertices or looped
    double-edge pairs are admitted even though they are not improper; they
    occur as building blocks of the disjoint-union families below.
    """
    pairing = involution_candidate(d)
    if pairing is None:
        return False, None
    for u in range(d.n):
        for v in bits(d.rows[u]):
            if not d.rows[pairing[u]] >> pairing[v] & 1:   # automorphism
                return False, None
            if not d.rows[v] >> pairing[u] & 1:            # x -> y forces y -> x'
                return False, None
    return True, pairing


def is_tournament_with_involution(d: Digraph) -> bool:
    if not d.is_reflexive:
        return False
    ok, _ = is_digraph_with_involution(d)
    if not ok:
        return False
    return all(d.adjacent(u, v) for u in range(d.n) for v in range(u + 1, d.n))


def twi_from_base(base: Digraph) -> Digraph:
    """Double a reflexive tournament into a tournament with involution.

    Vertex i of the base becomes the pair (2i, 2i+1); each base arc i -> j
    expands into the four-cycle 2i -> 2j -> 2i+1 -> 2j+1 -> 2i forced by the
    involution axioms.
    """
    k = base.n
    if not base.is_reflexive:
        raise InputError("the base must be reflexive")
    if not base.is_antisymmetric or not all(
        base.adjacent(i, j) for i in range(k) for j in range(i + 1, k)
    ):
        raise InputError("the base must be a tournament")
    edges = []
    for v in range(2 * k):
        edges.append((v, v))
    for i in range(k):
        edges.append((2 * i, 2 * i + 1))
        edges.append((2 * i + 1, 2 * i))
    for i in range(k):
        for j in bits(base.rows[i]):
            if j != i:
                edges.extend(
                    [(2 * i, 2 * j), (2 * j, 2 * i + 1), (2 * i + 1, 2 * j + 1), (2 * j + 1, 2 * i)]
                )
    return make_digraph(2 * k, edges)


def make_alpha(n: int) -> Digraph:
    """The acyclic tournament with involution on 2n vertices (n = 0: one loop)."""
    if n < 0:
        raise InputError("n must be nonnegative")
    if n == 0:
        return complete_reflexive(1)
    base = make_digraph(
        n, [(i, i) for i in range(n)] + [(i, j) for i in range(n) for j in range(i)]
    )
    return twi_from_base(base)


def make_zeta4() -> Digraph:
    """The 8-vertex tournament with involution whose base holds a 3-cycle."""
    base = make_digraph(
        4,
        [(i, i) for i in range(4)]
        + [(1, 0), (2, 0), (3, 0)]      # every other vertex dominates the apex
        + [(1, 2), (2, 3), (3, 1)],
    )
    return twi_from_base(base)


def extract_base(d: Digraph, seed: int) -> Base:
    """The base of a tournament with involution determined by an apex seed."""
    if not is_tournament_with_involution(d):
        raise PreconditionError("base extraction needs a tournament with involution")
    d._check_vertex(seed)
    if d.n < 2:
        raise PreconditionError("base extraction needs at least one partner pair")
    classes = theta_classes(d)
    chosen = [seed]
    for block in classes.blocks:
        if seed in block:
            continue
        # exactly one vertex per pair dominates the apex seed
        dominating = [v for v in block if d.rows[v] >> seed & 1]
        assert len(dominating) == 1
        chosen.append(dominating[0])
    order = [chosen[0]] + sorted(chosen[1:])
    rows = [0] * len(order)
    for i, v in enumerate(order):
        for j, w in enumerate(order):
            if d.rows[v] >> w & 1:
                rows[i] |= 1 << j
    base = Digraph(len(order), rows)
    assert base.is_antisymmetric and all(
        base.adjacent(i, j) for i in range(base.n) for j in range(i + 1, base.n)
    )
    return Base(tuple(order), base)


def classify_twi(d: Digraph) -> TwiClass:
    """Sort a tournament with involution into acyclic / the 8-vertex cyclic
    one / neither.

    Acyclicity is checked on one extracted base per apex class: swapping a
    non-apex base vertex for its partner reverses all arcs at that position,
    which preserves acyclicity, so one representative per apex choice covers
    every base.
    """
    if not is_tournament_with_involution(d):
        raise PreconditionError("classification needs a tournament with involution")
    if d.n == 1:
        return TwiClass(TwiTag.ALPHA, 0)
    classes = theta_classes(d)
    pairs = len(classes.blocks)
    if all(_base_is_acyclic(extract_base(d, min(b)).digraph) for b in classes.blocks):
        return TwiClass(TwiTag.ALPHA, pairs)
    if find_isomorphism(d, make_zeta4()) is not None:
        return TwiClass(TwiTag.ZETA4, pairs)
    return TwiClass(TwiTag.NOT_HH_TWI, pairs)


def _base_is_acyclic(base: Digraph) -> bool:
    """No directed cycle through distinct vertices (loops ignored)."""
    n = base.n
    state = [0] * n

    def visit(v: int) -> bool:
        state[v] = 1
        for w in bits(base.rows[v] & ~(1 << v)):
            if state[w] == 1:
                return False
            if state[w] == 0 and not visit(w):
                return False
        state[v] = 2
        return True

    return all(state[v] or visit(v) for v in range(n))


def hh_dwi_components(d: Digraph) -> Optional[tuple[TwiClass, ...]]:
    """Component classification when d is a homogeneous digraph with involution.

    Returns one class per connected component if every component is a
    tournament with involution, each component is itself homogeneous, and
    the mix is compatible: the cyclic 8-vertex tournament may share a
    digraph only with acyclic components of at most two pairs.  (Partial
    homs out of a cyclic component into a 3-pair-or-larger acyclic one can
    fail to extend; into the 2-pair one every partial hom extends, checked
    exhaustively, so that mix stays homogeneous.)  None otherwise.
    """
    parts = []
    for block in connected_components(d).blocks:
        sub, _ = induced(d, block)
        if not is_tournament_with_involution(sub):
            return None
        cls = classify_twi(sub)
        if cls.tag is TwiTag.NOT_HH_TWI:
            return None
        parts.append(cls)
    if any(c.tag is TwiTag.ZETA4 for c in parts):
        if not all(c.tag is TwiTag.ZETA4 or c.pairs <= 2 for c in parts):
            return None
    return tuple(parts)


def is_hh_dwi(d: Digraph) -> bool:
    """Homogeneity test for digraphs with involution via component families."""
    ok, _ = is_digraph_with_involution(d)
    if not ok:
        raise PreconditionError("input must be a digraph with involution")
    return hh_dwi_components(d) is not None
