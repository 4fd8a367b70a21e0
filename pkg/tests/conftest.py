"""Shared test helpers: independent oracles kept deliberately naive."""

import itertools
import random

import pytest

from homhom.digraph import make_digraph, relabel
from homhom.oracle import PartialHom, extension_images


@pytest.fixture
def rng():
    return random.Random(20240817)


def random_reflexive(rng, n, p=0.4):
    edges = [(v, v) for v in range(n)]
    edges += [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return make_digraph(n, edges)


def naive_unextendable(d1, d2):
    """Raw-product enumeration of every partial map; the slowest possible
    oracle for the extension property, used to check the search engine."""
    for assignment in itertools.product([None, *range(d2.n)], repeat=d1.n):
        f = {u: y for u, y in enumerate(assignment) if y is not None}
        if not f:
            continue
        ok = True
        for u in f:
            for v in f:
                if d1.rows[u] >> v & 1 and not d2.rows[f[u]] >> f[v] & 1:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        hom = PartialHom(d1, d2, tuple(sorted(f.items())))
        for x in range(d1.n):
            if x not in f and not extension_images(hom, x):
                return f, x
    return None


def all_partial_homs(d1, d2):
    """Every partial homomorphism d1[U] -> d2 with nonempty U, as dicts."""
    out = []

    def grow(v, f):
        if v == d1.n:
            if f:
                out.append(dict(f))
            return
        grow(v + 1, f)
        for y in range(d2.n):
            ok = True
            for u, fu in f.items():
                if d1.rows[u] >> v & 1 and not d2.rows[fu] >> y & 1:
                    ok = False
                    break
                if d1.rows[v] >> u & 1 and not d2.rows[y] >> fu & 1:
                    ok = False
                    break
            if ok and (not d1.rows[v] >> v & 1 or d2.rows[y] >> y & 1):
                f[v] = y
                grow(v + 1, f)
                del f[v]

    grow(0, {})
    return out


def brute_iso_classes(digraphs):
    """Pairwise isomorphism dedup by trying every vertex permutation."""
    reps = []
    for d in digraphs:
        found = False
        for r in reps:
            if r.n != d.n:
                continue
            for perm in itertools.permutations(range(d.n)):
                if relabel(d, perm) == r:
                    found = True
                    break
            if found:
                break
        if not found:
            reps.append(d)
    return reps


def labelled_graphs(n):
    """All labelled irreflexive graphs on n vertices."""
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for choice in range(1 << len(slots)):
        edges = []
        for b, (i, j) in enumerate(slots):
            if choice >> b & 1:
                edges += [(i, j), (j, i)]
        yield make_digraph(n, edges)
