import itertools

import pytest

from homhom.digraph import (
    Digraph,
    Kind,
    canonical_code,
    canonical_form,
    complete_reflexive,
    digraph_from_canonical,
    disjoint_union,
    edge_kind,
    induced,
    inflate,
    is_homomorphism,
    make_digraph,
    oriented_cycle,
    reflexive_closure,
    relabel,
)
from homhom.errors import CapabilityError, InputError
from homhom.involution import make_alpha, twi_from_base
from conftest import brute_iso_classes, random_reflexive


def test_make_digraph_named_instances():
    looped_point = make_digraph(1, [(0, 0)])
    assert looped_point.edges() == [(0, 0)]
    bare_point = make_digraph(1, [])
    assert bare_point.edges() == []
    c3 = make_digraph(3, [(0, 1), (1, 2), (2, 0), (0, 0), (1, 1), (2, 2)])
    assert c3 == oriented_cycle(3, reflexive=True)


def test_make_digraph_rejects_bad_endpoints():
    with pytest.raises(InputError):
        make_digraph(2, [(0, 5)])


def test_duplicate_edges_idempotent():
    assert make_digraph(2, [(0, 1), (0, 1)]) == make_digraph(2, [(0, 1)])


def test_reflexive_closure():
    assert reflexive_closure(make_digraph(1, [])) == complete_reflexive(1)
    assert reflexive_closure(oriented_cycle(3)) == oriented_cycle(3, reflexive=True)
    once = reflexive_closure(complete_reflexive(1))
    assert once == complete_reflexive(1)


def test_reflexive_closure_idempotent_on_randoms(rng):
    for _ in range(25):
        d = random_reflexive(rng, rng.randint(0, 6))
        assert reflexive_closure(d) == d
        bare = make_digraph(d.n, [(u, v) for u, v in d.edges() if u != v])
        assert reflexive_closure(reflexive_closure(bare)) == reflexive_closure(bare)


def test_edge_kind_trichotomy():
    assert edge_kind(complete_reflexive(2)).kind is Kind.GRAPH
    assert edge_kind(complete_reflexive(2)).reflexive
    assert edge_kind(oriented_cycle(3, reflexive=True)).kind is Kind.PROPER
    assert edge_kind(make_alpha(2)).kind is Kind.IMPROPER


def test_induced_examples():
    c3 = oriented_cycle(3, reflexive=True)
    sub, old = induced(c3, {0, 1})
    assert old == (0, 1)
    assert sub == make_digraph(2, [(0, 0), (1, 1), (0, 1)])
    whole, _ = induced(c3, range(3))
    assert whole == c3
    k2, _ = induced(complete_reflexive(3), {0, 2})
    assert k2 == complete_reflexive(2)
    with pytest.raises(InputError):
        induced(c3, set())


def test_induced_functorial(rng):
    for _ in range(20):
        d = random_reflexive(rng, 6)
        outer = sorted(rng.sample(range(6), 4))
        inner_positions = sorted(rng.sample(range(4), 2))
        first, old = induced(d, outer)
        second, _ = induced(first, inner_positions)
        direct, _ = induced(d, [old[i] for i in inner_positions])
        assert second == direct


def test_disjoint_union():
    c3 = oriented_cycle(3, reflexive=True)
    one = complete_reflexive(1)
    both = disjoint_union([c3, one])
    assert both.n == 4
    assert both.has_edge(3, 3) and not both.has_edge(2, 3)
    assert disjoint_union([]) == Digraph(0, ())
    assert disjoint_union([one, one, one]).n == 3


def test_inflate_examples():
    c3 = oriented_cycle(3, reflexive=True)
    big, blocks = inflate(c3, [2, 1, 1])
    assert big.n == 4
    assert blocks == (frozenset({0, 1}), frozenset({2}), frozenset({3}))
    first, _ = induced(big, {0, 1})
    assert first == complete_reflexive(2)
    assert big.has_edge(0, 2) and big.has_edge(1, 2) and not big.has_edge(2, 0)

    km, _ = inflate(complete_reflexive(1), [5])
    assert km == complete_reflexive(5)

    unit, _ = inflate(c3, [1, 1, 1])
    assert unit == c3

    with pytest.raises(InputError):
        inflate(c3, [1, 0, 1])
    with pytest.raises(InputError):
        inflate(c3, [1, 1])


def test_is_homomorphism():
    c3 = oriented_cycle(3, reflexive=True)
    assert is_homomorphism(c3, c3, [0, 1, 2])
    assert is_homomorphism(c3, complete_reflexive(1), [0, 0, 0])
    assert is_homomorphism(c3, c3, [0, 0, 0])  # constant onto a looped vertex
    assert not is_homomorphism(c3, c3, [0, 1, 0])  # sends 1 -> 2 onto the non-edge 1 -> 0
    with pytest.raises(InputError):
        is_homomorphism(c3, c3, [0, 1])
    with pytest.raises(InputError):
        is_homomorphism(c3, c3, [0, 1, 7])


def test_four_cycle_collapse_map_is_homomorphism():
    # A tournament with involution whose base holds the 4-cycle p->q->r->s->p
    # admits the collapse (p', q, r, s') -> (r, q, r, q).
    base = make_digraph(
        5,
        [(v, v) for v in range(5)]
        + [(1, 0), (2, 0), (3, 0), (4, 0)]
        + [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3), (2, 4)],
    )
    twi = twi_from_base(base)
    p, q, r, s = 2, 4, 6, 8
    collapse = {p + 1: r, q: q, r: r, s + 1: q}
    sub, old = induced(twi, sorted(collapse))
    mapping = {old.index(v): collapse[v] for v in collapse}
    assert is_homomorphism(sub, twi, mapping)


def test_homomorphism_composition(rng):
    for _ in range(20):
        d = random_reflexive(rng, 4)
        e = random_reflexive(rng, 4)
        g = random_reflexive(rng, 4)
        for f1 in itertools.islice(itertools.product(range(4), repeat=4), 0, 256, 17):
            if not is_homomorphism(d, e, f1):
                continue
            for f2 in itertools.islice(itertools.product(range(4), repeat=4), 0, 256, 13):
                if is_homomorphism(e, g, f2):
                    composed = [f2[f1[v]] for v in range(4)]
                    assert is_homomorphism(d, g, composed)


def test_canonical_form_orbit():
    c3 = oriented_cycle(3, reflexive=True)
    codes = {canonical_code(relabel(c3, perm)) for perm in itertools.permutations(range(3))}
    assert len(codes) == 1
    assert canonical_code(complete_reflexive(1)) != canonical_code(make_digraph(1, []))


def test_canonical_form_count_matches_pairwise_oracle():
    labelled = []
    for code in range(64):
        edges = [(v, v) for v in range(3)]
        positions = [(i, j) for i in range(3) for j in range(3) if i != j]
        for bit, (i, j) in enumerate(positions):
            if code >> bit & 1:
                edges.append((i, j))
        labelled.append(make_digraph(3, edges))
    via_canonical = len({canonical_code(d) for d in labelled})
    via_pairwise = len(brute_iso_classes(labelled))
    assert via_canonical == via_pairwise


def test_canonical_labeling_is_isomorphism(rng):
    for _ in range(15):
        d = random_reflexive(rng, 5)
        labeling, code = canonical_form(d)
        rep = digraph_from_canonical(code)
        assert relabel(d, labeling) == rep
        assert is_homomorphism(d, rep, labeling)
        inverse = [0] * 5
        for old, new in enumerate(labeling):
            inverse[new] = old
        assert is_homomorphism(rep, d, inverse)
        perm = list(range(5))
        rng.shuffle(perm)
        assert canonical_code(relabel(d, perm)) == code


def test_canonical_guard():
    with pytest.raises(CapabilityError):
        canonical_form(complete_reflexive(11))


def test_inflate_then_quotient_round_trip(rng):
    from homhom.structure import Partition, quotient

    for _ in range(15):
        d = random_reflexive(rng, rng.randint(1, 4))
        sizes = [rng.randint(1, 3) for _ in range(d.n)]
        big, blocks = inflate(d, sizes)
        q = quotient(big, Partition.from_blocks(big.n, blocks))
        assert q.digraph == d
