"""Core digraph value type and elementary operations.

A digraph is a finite binary relational system: vertices 0..n-1 and an
arbitrary edge relation, loops included.  Adjacency is stored as one
out-neighbour bitmask per vertex (dense, word-parallel), which keeps the
neighbourhood comparisons used by twin detection and the homomorphism
searches cheap.  Instances are immutable and hashable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence

from .errors import CapabilityError, InputError

CANONICAL_GUARD = 10


class Kind(Enum):
    GRAPH = "graph"          # symmetric edge relation
    PROPER = "proper"        # antisymmetric edge relation
    IMPROPER = "improper"    # neither


@dataclass(frozen=True)
class EdgeKind:
    kind: Kind
    reflexive: bool


class Digraph:
    """Immutable digraph on vertices 0..n-1 with bitmask adjacency rows."""

    __slots__ = ("n", "rows", "cols", "_hash")

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        if len(rows) != n:
            raise InputError("adjacency must have one row per vertex")
        mask = (1 << n) - 1
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", tuple(r & mask for r in rows))
        cols = [0] * n
        for u in range(n):
            r = self.rows[u]
            while r:
                v = (r & -r).bit_length() - 1
                cols[v] |= 1 << u
                r &= r - 1
        object.__setattr__(self, "cols", tuple(cols))
        object.__setattr__(self, "_hash", hash((n, self.rows)))

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("Digraph is immutable")

    def __reduce__(self):
        return (Digraph, (self.n, self.rows))

    def __eq__(self, other):
        return isinstance(other, Digraph) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Digraph(n={self.n}, edges={self.edges()})"

    # -- elementary queries ------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.rows[u] >> v & 1)

    def adjacent(self, u: int, v: int) -> bool:
        """u -> v or v -> u."""
        return bool((self.rows[u] >> v | self.rows[v] >> u) & 1)

    def double(self, u: int, v: int) -> bool:
        """u -> v and v -> u."""
        return bool(self.rows[u] >> v & self.rows[v] >> u & 1)

    def double_mask(self, u: int) -> int:
        """Vertices joined to u in both directions (u itself when looped)."""
        return self.rows[u] & self.cols[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u])]

    def vertices(self) -> range:
        return range(self.n)

    @property
    def is_reflexive(self) -> bool:
        return all(self.rows[v] >> v & 1 for v in range(self.n))

    @property
    def is_symmetric(self) -> bool:
        return self.rows == self.cols

    @property
    def is_antisymmetric(self) -> bool:
        return all(not self.double(u, v) for u in range(self.n) for v in range(u + 1, self.n))

    @property
    def is_irreflexive(self) -> bool:
        return not any(self.rows[v] >> v & 1 for v in range(self.n))

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InputError(f"vertex {v} out of range 0..{self.n - 1}")


def bits(mask: int) -> Iterable[int]:
    """Iterate set bit positions, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# -- constructors ------------------------------------------------------------


def make_digraph(n: int, edges: Iterable[tuple[int, int]]) -> Digraph:
    """Build a digraph from an edge list; duplicate edges are idempotent."""
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) out of range 0..{n - 1}")
        rows[u] |= 1 << v
    return Digraph(n, rows)


def empty_digraph() -> Digraph:
    return Digraph(0, ())


def oriented_cycle(n: int, reflexive: bool = False) -> Digraph:
    """Oriented cycle 0 -> 1 -> ... -> n-1 -> 0, optionally with all loops."""
    if n < 3:
        raise InputError("an oriented cycle needs at least 3 vertices")
    d = make_digraph(n, [(i, (i + 1) % n) for i in range(n)])
    return reflexive_closure(d) if reflexive else d


def complete_reflexive(n: int) -> Digraph:
    """All edges present, loops included."""
    full = (1 << n) - 1
    return Digraph(n, [full] * n)


def complete_irreflexive(n: int) -> Digraph:
    full = (1 << n) - 1
    return Digraph(n, [full ^ (1 << v) for v in range(n)])


def reflexive_closure(d: Digraph) -> Digraph:
    """Add every loop; idempotent."""
    return Digraph(d.n, [d.rows[v] | (1 << v) for v in range(d.n)])


def relabel(d: Digraph, perm: Sequence[int]) -> Digraph:
    """Apply the vertex bijection perm (old -> new) to d."""
    if sorted(perm) != list(range(d.n)):
        raise InputError("perm must be a permutation of the vertex range")
    rows = [0] * d.n
    for u in range(d.n):
        for v in bits(d.rows[u]):
            rows[perm[u]] |= 1 << perm[v]
    return Digraph(d.n, rows)


# -- classification and restriction -------------------------------------------


def edge_kind(d: Digraph) -> EdgeKind:
    """Symmetric / antisymmetric / neither, plus the reflexivity flag.

    Antisymmetry is quantified over distinct vertices only, so loops never
    disqualify a proper digraph.
    """
    if d.is_symmetric:
        kind = Kind.GRAPH
    elif d.is_antisymmetric:
        kind = Kind.PROPER
    else:
        kind = Kind.IMPROPER
    return EdgeKind(kind, d.is_reflexive)


def induced(d: Digraph, vertices: Iterable[int]) -> tuple[Digraph, tuple[int, ...]]:
    """Induced subdigraph plus the new-index -> old-vertex map.

    Vertices are renumbered in increasing order of their original ids.
    """
    old = sorted(set(vertices))
    if not old:
        raise InputError("induced subdigraph needs a nonempty vertex set")
    for v in old:
        d._check_vertex(v)
    pos = {v: i for i, v in enumerate(old)}
    rows = [0] * len(old)
    for v in old:
        for w in bits(d.rows[v]):
            if w in pos:
                rows[pos[v]] |= 1 << pos[w]
    return Digraph(len(old), rows), tuple(old)


def disjoint_union(parts: Sequence[Digraph]) -> Digraph:
    """Concatenate vertex ranges; no cross edges.  Empty list gives O."""
    n = sum(p.n for p in parts)
    rows = []
    shift = 0
    for p in parts:
        rows.extend(r << shift for r in p.rows)
        shift += p.n
    return Digraph(n, rows)


def inflate(d: Digraph, sizes: Sequence[int]) -> tuple[Digraph, "tuple[frozenset[int], ...]"]:
    """Replace vertex i by a reflexive clique of sizes[i] vertices.

    For i != j every arc i -> j of d becomes a full edge bundle between the
    clique blocks, so a double edge of d yields bundles in both directions.
    Returns the inflated digraph together with its block partition (a tuple
    of vertex sets in block order).
    """
    if len(sizes) != d.n:
        raise InputError("need one block size per vertex")
    if any(s < 1 for s in sizes):
        raise InputError("block sizes must be positive")
    starts = [0] * d.n
    total = 0
    for i, s in enumerate(sizes):
        starts[i] = total
        total += s
    block_mask = [((1 << sizes[i]) - 1) << starts[i] for i in range(d.n)]
    rows = [0] * total
    for i in range(d.n):
        out = block_mask[i]
        for j in bits(d.rows[i]):
            if j != i:
                out |= block_mask[j]
        for v in range(starts[i], starts[i] + sizes[i]):
            rows[v] = out
    blocks = tuple(frozenset(range(starts[i], starts[i] + sizes[i])) for i in range(d.n))
    return Digraph(total, rows), blocks


# -- homomorphisms -------------------------------------------------------------


def is_homomorphism(d1: Digraph, d2: Digraph, f: Mapping[int, int] | Sequence[int]) -> bool:
    """True iff the total map f sends every edge of d1 to an edge of d2."""
    images = [None] * d1.n
    if isinstance(f, Mapping):
        items = f.items()
    else:
        items = enumerate(f)
    for u, y in items:
        if not (0 <= u < d1.n):
            raise InputError(f"source vertex {u} out of range")
        if not (0 <= y < d2.n):
            raise InputError(f"image {y} out of range")
        images[u] = y
    if any(y is None for y in images):
        raise InputError("map must be total on the source digraph")
    for u in range(d1.n):
        fu = images[u]
        for v in bits(d1.rows[u]):
            if not d2.rows[fu] >> images[v] & 1:
                return False
    return True


def are_isomorphic(d1: Digraph, d2: Digraph) -> bool:
    """Backtracking isomorphism test with invariant pruning."""
    return find_isomorphism(d1, d2) is not None


def find_isomorphism(d1: Digraph, d2: Digraph) -> Optional[tuple[int, ...]]:
    """An isomorphism d1 -> d2 as a vertex tuple, or None."""
    if d1.n != d2.n:
        return None
    inv1 = [_vertex_invariant(d1, v) for v in range(d1.n)]
    inv2 = [_vertex_invariant(d2, v) for v in range(d2.n)]
    if sorted(inv1) != sorted(inv2):
        return None
    n = d1.n
    image = [-1] * n
    used = 0

    def extend(u: int) -> bool:
        nonlocal used
        if u == n:
            return True
        for w in range(n):
            if used >> w & 1 or inv1[u] != inv2[w]:
                continue
            ok = True
            for v in range(u):
                if (d1.rows[u] >> v & 1) != (d2.rows[w] >> image[v] & 1):
                    ok = False
                    break
                if (d1.rows[v] >> u & 1) != (d2.rows[image[v]] >> w & 1):
                    ok = False
                    break
            if ok and (d1.rows[u] >> u & 1) == (d2.rows[w] >> w & 1):
                image[u] = w
                used |= 1 << w
                if extend(u + 1):
                    return True
                used ^= 1 << w
        return False

    if extend(0):
        return tuple(image)
    return None


def _vertex_invariant(d: Digraph, v: int):
    loop = d.rows[v] >> v & 1
    out = bin(d.rows[v]).count("1") - loop
    inn = bin(d.cols[v]).count("1") - loop
    dbl = bin(d.rows[v] & d.cols[v]).count("1") - loop
    return (loop, out, inn, dbl)


# -- canonical form -------------------------------------------------------------


def canonical_form(d: Digraph) -> tuple[tuple[int, ...], bytes]:
    """Canonical labelling and canonical byte string.

    Two digraphs are isomorphic iff their canonical strings are equal.  The
    labelling maps original vertices to canonical positions and is itself an
    isomorphism onto the canonical representative.

    Minimises the packed adjacency code over all labellings compatible with
    an iterated neighbourhood-colour refinement; guarded because symmetric
    instances degenerate to factorial enumeration.
    """
    if d.n > CANONICAL_GUARD:
        raise CapabilityError(f"canonical form is guarded to n <= {CANONICAL_GUARD}")
    n = d.n
    if n == 0:
        return (), b"\x00"
    colors = _refine_colors(d)
    # Vertices grouped by colour, groups sorted by colour key; labellings
    # permute only within groups.
    groups: dict[object, list[int]] = {}
    for v in range(n):
        groups.setdefault(colors[v], []).append(v)
    ordered_groups = [groups[k] for k in sorted(groups)]
    best_code = None
    best_order = None
    for pieces in itertools.product(*(itertools.permutations(g) for g in ordered_groups)):
        order = [v for piece in pieces for v in piece]
        code = 0
        for i, u in enumerate(order):
            row = d.rows[u]
            base = i * n
            for j, v in enumerate(order):
                if row >> v & 1:
                    code |= 1 << (base + j)
        if best_code is None or code < best_code:
            best_code = code
            best_order = order
    labeling = [0] * n
    for pos, v in enumerate(best_order):
        labeling[v] = pos
    payload = bytes([n]) + best_code.to_bytes((n * n + 7) // 8, "big")
    return tuple(labeling), payload


def canonical_code(d: Digraph) -> bytes:
    return canonical_form(d)[1]


def digraph_from_canonical(code: bytes) -> Digraph:
    """Rebuild the canonical representative from a canonical byte string."""
    n = code[0]
    packed = int.from_bytes(code[1:], "big")
    rows = [0] * n
    for i in range(n):
        for j in range(n):
            if packed >> (i * n + j) & 1:
                rows[i] |= 1 << j
    return Digraph(n, rows)


def _refine_colors(d: Digraph) -> list:
    """Iterated colour refinement; colours are hashable, totally ordered keys."""
    n = d.n
    colors = [_vertex_invariant(d, v) for v in range(n)]
    while True:
        sig = []
        for v in range(n):
            nb = sorted(
                (colors[w], d.rows[v] >> w & 1, d.rows[w] >> v & 1)
                for w in range(n)
                if w != v
            )
            sig.append((colors[v], tuple(nb)))
        # Rename to dense ranks to keep keys small and comparable.
        ranks = {key: i for i, key in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new
