"""Hardness gadget: encode independent sets into homogeneity.

From an irreflexive graph G and an integer k >= 2, build the reflexive
improper digraph whose homogeneity fails exactly when G holds a
k-independent set.  The construction adds a transitive tournament block I
of k+1 vertices, a double-edge clique S of k+1 escort vertices, and wires
the original vertices so that every independent set becomes a transitive
tournament pointing into I.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .digraph import Digraph, bits, make_digraph
from .errors import CapabilityError, InputError
from .oracle import (
    SIZE_GUARD,
    ConeDir,
    HHVerdict,
    PartialHom,
    Verdict,
    cone_of_type,
    is_hh_bruteforce,
)

INDEPENDENT_SET_GUARD = 20


@dataclass(frozen=True)
class GadgetLayout:
    host: Digraph
    k: int
    graph_vertices: tuple[int, ...]    # images of the original vertices
    tournament: tuple[int, ...]        # the k+1 transitive tournament vertices
    escorts: tuple[int, ...]           # the k+1 double-edge clique vertices


def build_gk(g: Digraph, k: int) -> GadgetLayout:
    """Assemble the gadget for graph g and parameter k."""
    if k < 2:
        raise InputError("the gadget needs k >= 2")
    if not g.is_irreflexive:
        raise InputError("the input graph must be irreflexive")
    if not g.is_symmetric:
        raise InputError("the input graph must be symmetric")
    n = g.n
    verts = tuple(range(n))
    tour = tuple(range(n, n + k + 1))
    esc = tuple(range(n + k + 1, n + 2 * k + 2))
    total = n + 2 * k + 2
    edges: list[tuple[int, int]] = [(v, v) for v in range(total)]
    edges.extend(g.edges())
    for i in range(n):                       # non-adjacent pairs become one-way arcs
        for j in range(i + 1, n):
            if not g.adjacent(i, j):
                edges.append((i, j))
    for a in esc:                            # escort clique: all double edges
        for b in esc:
            if a != b:
                edges.append((a, b))
    for i in range(k + 1):                   # transitive tournament q_i -> q_j, i < j
        for j in range(i + 1, k + 1):
            edges.append((tour[i], tour[j]))
    for v in verts:
        edges.append((v, tour[0]))           # one-way into the tournament bottom
        for q in tour[1:]:
            edges.extend([(v, q), (q, v)])
        for s in esc:
            edges.extend([(v, s), (s, v)])
    for i in range(k + 1):
        for j in range(k + 1):
            if i == j:
                edges.append((esc[i], tour[i]))
            else:
                edges.extend([(esc[i], tour[j]), (tour[j], esc[i])])
    host = make_digraph(total, edges)
    layout = GadgetLayout(host, k, verts, tour, esc)
    _assert_layout(g, layout)
    return layout


def _assert_layout(g: Digraph, layout: GadgetLayout) -> None:
    host = layout.host
    for u in range(host.n):
        for v in range(u + 1, host.n):
            assert host.adjacent(u, v), (u, v)
    for u, v in g.edges():
        assert host.double(u, v)


def max_independent_set(g: Digraph) -> tuple[int, frozenset[int]]:
    """A maximum independent set by branch and bound."""
    if not g.is_irreflexive or not g.is_symmetric:
        raise InputError("independent sets are defined for irreflexive graphs")
    if g.n > INDEPENDENT_SET_GUARD:
        raise CapabilityError(f"independent set search is guarded to {INDEPENDENT_SET_GUARD} vertices")
    best_mask = 0
    best_size = 0

    def grow(allowed: int, chosen: int, size: int) -> None:
        nonlocal best_mask, best_size
        if size + bin(allowed).count("1") <= best_size:
            return
        if allowed == 0:
            if size > best_size:
                best_size, best_mask = size, chosen
            return
        v = (allowed & -allowed).bit_length() - 1
        grow(allowed & ~(1 << v) & ~g.rows[v], chosen | 1 << v, size + 1)
        grow(allowed & ~(1 << v), chosen, size)

    grow(g.full_mask, 0, 0)
    return best_size, frozenset(bits(best_mask))


def forward_witness(layout: GadgetLayout, indep) -> PartialHom:
    """The canonical non-extendable map induced by a k-independent set.

    The set, ordered by vertex index, forms a transitive tournament in the
    gadget; it is shifted one notch up the tournament block, pushing the
    bottom tournament vertex to the top.
    """
    members = sorted(indep)
    if len(members) != layout.k:
        raise InputError(f"need an independent set of exactly {layout.k} vertices")
    host = layout.host
    for i, u in enumerate(members):
        if u not in layout.graph_vertices:
            raise InputError(f"{u} is not an original graph vertex")
        for v in members[i + 1:]:
            if host.double(u, v):
                raise InputError("the given set is not independent")
    mapping = {u: layout.tournament[i] for i, u in enumerate(members)}
    mapping[layout.tournament[0]] = layout.tournament[layout.k]
    return PartialHom.from_map(host, host, mapping)


@dataclass(frozen=True)
class EquivalenceReport:
    k: int
    independent_size: int
    has_k_independent: bool
    oracle: HHVerdict
    agree: bool
    witness_is_hom: Optional[bool]
    target_tuple_coneless: Optional[bool]


def verify_equivalence(g: Digraph, k: int) -> EquivalenceReport:
    """Check both sides of the gadget equivalence on one graph.

    The left side is decided by independent-set search, the right side by
    the exhaustive oracle on the gadget; when the left side holds, the
    canonical witness is validated as a homomorphism whose image tuple has
    no all-double cone.
    """
    layout = build_gk(g, k)
    if layout.host.n > SIZE_GUARD:
        raise CapabilityError(
            f"gadget verification is guarded to {SIZE_GUARD} gadget vertices, got {layout.host.n}"
        )
    size, best = max_independent_set(g)
    has = size >= k
    verdict = is_hh_bruteforce(layout.host)
    agree = has == (verdict.decision is Verdict.NOT_HH)
    wit_hom = coneless = None
    if has:
        wit = forward_witness(layout, sorted(best)[:k])
        wit_hom = wit.is_valid()
        full_double = (ConeDir.BOTH,) * (k + 1)
        coneless = not cone_of_type(layout.host, layout.tournament, full_double)
    return EquivalenceReport(k, size, has, verdict, agree, wit_hom, coneless)
